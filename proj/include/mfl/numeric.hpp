#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace mfl {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void scale(double f) {
    sum_ *= f;
    comp_ *= f;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Streaming log-sum-exp with an optional weighted numerator, used where the
/// terms cannot be materialized (configuration enumeration).
class StreamingLogSumExp {
 public:
  void add(double log_weight, double value = 0.0);
  double log_sum() const;
  /// Weighted mean of the values passed to add().
  double mean() const;
  bool empty() const { return max_ == -std::numeric_limits<double>::infinity(); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  CompensatedSum weight_;
  CompensatedSum numerator_;
};

/// ln sum_i exp(x_i) in ascending index order: max pass, then compensated sum.
double log_sum_exp(std::span<const double> xs);

/// Moments of a sector observable under normalized weights exp(log_w - log_z).
struct WeightedMoments {
  double mean = 0.0;
  double variance = 0.0;
};
WeightedMoments weighted_moments(std::span<const double> log_w, double log_z,
                                 std::span<const double> values);
double weighted_mean(std::span<const double> log_w, double log_z,
                     std::span<const double> values);

/// Exact C(n, k) for n <= 66; throws DomainError beyond.
std::uint64_t binomial_exact(int n, int k);
/// ln C(n, k): exact-integer route for n <= 66, log-gamma otherwise.
double log_binomial(int n, int k);

}  // namespace mfl
