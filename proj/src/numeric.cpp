#include "mfl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfl/error.hpp"

namespace mfl {

void StreamingLogSumExp::add(double log_weight, double value) {
  if (log_weight > max_) {
    if (!empty()) {
      const double f = std::exp(max_ - log_weight);
      weight_.scale(f);
      numerator_.scale(f);
    }
    max_ = log_weight;
  }
  const double w = std::exp(log_weight - max_);
  weight_.add(w);
  numerator_.add(w * value);
}

double StreamingLogSumExp::log_sum() const {
  if (empty()) return max_;
  return max_ + std::log(weight_.value());
}

double StreamingLogSumExp::mean() const {
  return numerator_.value() / weight_.value();
}

double log_sum_exp(std::span<const double> xs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : xs) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  CompensatedSum s;
  for (double x : xs) s.add(std::exp(x - mx));
  return mx + std::log(s.value());
}

WeightedMoments weighted_moments(std::span<const double> log_w, double log_z,
                                 std::span<const double> values) {
  CompensatedSum m;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    m.add(std::exp(log_w[i] - log_z) * values[i]);
  }
  WeightedMoments out;
  out.mean = m.value();
  CompensatedSum v;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    const double d = values[i] - out.mean;
    v.add(std::exp(log_w[i] - log_z) * d * d);
  }
  out.variance = v.value();
  return out;
}

double weighted_mean(std::span<const double> log_w, double log_z,
                     std::span<const double> values) {
  CompensatedSum m;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    m.add(std::exp(log_w[i] - log_z) * values[i]);
  }
  return m.value();
}

std::uint64_t binomial_exact(int n, int k) {
  if (n < 0 || n > 66) {
    throw DomainError("binomial_exact: n=" + std::to_string(n) + " outside [0, 66]");
  }
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(r);
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("log_binomial: invalid (n, k)");
  }
  if (n <= 66) return std::log(static_cast<double>(binomial_exact(n, k)));
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace mfl
