#include "mfl/limit_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "mfl/error.hpp"
#include "mfl/interpolator.hpp"
#include "mfl/sector.hpp"

namespace mfl {

namespace {

ModelSpec prefix_model(const ModelSpec& model, int n) {
  if (const auto f = model.fixed_size()) {
    if (n > *f) throw DomainError("ladder size exceeds the model's disorder length");
    return model.restrict(0, n);
  }
  return model;
}

LimitFit fit_limit(const std::vector<int>& sizes, const std::vector<double>& alpha) {
  LimitFit fit;
  const std::size_t total = sizes.size();
  const std::size_t first = total / 2;
  const std::size_t count = total - first;
  if (count < 3) return fit;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(count), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const double n = sizes[first + i];
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = 1.0 / n;
    a(r, 2) = std::log(n) / n;
    y(r) = alpha[first + i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  fit.valid = true;
  fit.points = static_cast<int>(count);
  fit.alpha_inf = c(0);
  fit.a = c(1);
  fit.b = c(2);
  fit.residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(count));
  return fit;
}

}  // namespace

double max_achievable_g(const ModelSpec& model, int n) {
  const auto table = build_model_table(model, n);
  const auto e = sector_energies(model, table, false);
  double best = -std::numeric_limits<double>::infinity();
  for (double h : e.full) best = std::max(best, -h / n);
  return best;
}

ConvergenceSeries ladder(const ModelSpec& model, std::span<const int> sizes, double beta) {
  if (sizes.empty()) throw DomainError("ladder needs at least one size");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw DomainError("ladder sizes must be strictly increasing");
  }
  ConvergenceSeries s;
  double inf = std::numeric_limits<double>::infinity();
  for (int n : sizes) {
    const auto m = prefix_model(model, n);
    const auto table = build_model_table(m, n);
    const double a = alpha(m, table, beta).alpha;
    inf = std::min(inf, a);
    s.sizes.push_back(n);
    s.alpha.push_back(a);
    s.running_inf.push_back(inf);
    s.max_sector_g.push_back(max_achievable_g(m, n));
  }
  s.limit_estimate = s.alpha.back();
  s.fit = fit_limit(s.sizes, s.alpha);
  if (const auto g = model.limit_g()) s.oracle_value = variational_oracle(*g, beta);
  return s;
}

std::vector<int> doubling_ladder(int start, int stop) {
  if (start < 1 || stop < start) throw DomainError("doubling_ladder: need 1 <= start <= stop");
  std::vector<int> out;
  for (long n = start; n <= stop; n *= 2) out.push_back(static_cast<int>(n));
  return out;
}

double binary_entropy(double m) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log(p); };
  return term((1.0 + m) / 2.0) + term((1.0 - m) / 2.0);
}

double variational_oracle(const GFunction& g, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and >= 0");
  constexpr int kSeed = 10000;
  auto f = [&](double m) { return beta * g(m) + binary_entropy(m); };
  int best_i = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSeed; ++i) {
    const double v = f(static_cast<double>(2 * i - kSeed) / kSeed);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double lo = static_cast<double>(2 * std::max(best_i - 1, 0) - kSeed) / kSeed;
  double hi = static_cast<double>(2 * std::min(best_i + 1, kSeed) - kSeed) / kSeed;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2, f(0.5 * (lo + hi))});
}

SlackReport subadditivity_scan(const ModelSpec& model, int n, double beta) {
  const auto splits = admissible_splits(model, n);
  if (splits.empty()) throw DomainError("no admissible split for this model and N");
  const double lz = alpha(model, build_model_table(model, n), beta).log_z;
  SlackReport r;
  r.worst_slack = std::numeric_limits<double>::infinity();
  // Scalar models: block partition functions depend only on the block size.
  std::vector<double> cache(static_cast<std::size_t>(n) + 1, std::numeric_limits<double>::quiet_NaN());
  auto block_lz = [&](int begin, int end) {
    if (model.disordered()) return block_log_partition(model, begin, end, beta);
    auto& slot = cache[static_cast<std::size_t>(end - begin)];
    if (std::isnan(slot)) slot = block_log_partition(model, begin, end, beta);
    return slot;
  };
  for (const auto& sp : splits) {
    const double slack = (block_lz(0, sp.n1) + block_lz(sp.n1, n) - lz) / n;
    r.n1.push_back(sp.n1);
    r.slack.push_back(slack);
    if (slack < r.worst_slack) {
      r.worst_slack = slack;
      r.worst_n1 = sp.n1;
    }
  }
  return r;
}

}  // namespace mfl
