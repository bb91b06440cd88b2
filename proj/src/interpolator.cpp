#include "mfl/interpolator.hpp"

#include <cmath>
#include <string>

#include "mfl/error.hpp"
#include "mfl/numeric.hpp"

namespace mfl {

namespace {

std::vector<int> cut_of(SplitSpec split) {
  if (split.n1 < 1 || split.n2 < 1) {
    throw DomainError("split blocks must both be nonempty (N1=" + std::to_string(split.n1) +
                      ", N2=" + std::to_string(split.n2) + ")");
  }
  return {split.n1};
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("interpolation parameter t outside [0, 1]");
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and >= 0");
}

}  // namespace

std::vector<SplitSpec> admissible_splits(const ModelSpec& model, int n) {
  model.check_system_size(n);
  std::vector<SplitSpec> out;
  for (int n1 = 1; n1 < n; ++n1) {
    try {
      model.check_block_size(n1);
      model.check_block_size(n - n1);
    } catch (const DomainError&) {
      continue;
    }
    out.push_back({n1, n - n1});
  }
  return out;
}

Interpolation::Interpolation(const ModelSpec& model, SplitSpec split, std::size_t budget)
    : split_(split), table_([&] {
        const auto cut = cut_of(split);
        return build_model_table(model, split.total(), cut, budget);
      }()) {
  auto e = sector_energies(model, table_, true);
  full_ = std::move(e.full);
  blocks_ = std::move(e.blocks);
  delta_.resize(full_.size());
  for (std::size_t i = 0; i < full_.size(); ++i) delta_[i] = full_[i] - blocks_[i];
}

InterpolationPoint Interpolation::evaluate(double beta, double t) const {
  check_beta(beta);
  check_t(t);
  const auto lm = table_.log_multiplicity();
  std::vector<double> w(full_.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = lm[i] - beta * (t * full_[i] + (1.0 - t) * blocks_[i]);
  }
  const double lz = log_sum_exp(w);
  const auto mom = weighted_moments(w, lz, delta_);
  const double n = split_.total();
  return {lz / n, -beta / n * mom.mean, beta * beta / n * mom.variance};
}

double Interpolation::condition_gap(double beta) const {
  check_beta(beta);
  const auto lm = table_.log_multiplicity();
  std::vector<double> w(full_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = lm[i] - beta * full_[i];
  return weighted_mean(w, log_sum_exp(w), delta_);
}

double alpha_of_t(const ModelSpec& model, SplitSpec split, double beta, double t) {
  check_t(t);
  return Interpolation(model, split).evaluate(beta, t).alpha;
}

double dalpha_dt(const ModelSpec& model, SplitSpec split, double beta, double t) {
  check_t(t);
  return Interpolation(model, split).evaluate(beta, t).dalpha;
}

double d2alpha_dt2(const ModelSpec& model, SplitSpec split, double beta, double t) {
  check_t(t);
  return Interpolation(model, split).evaluate(beta, t).d2alpha;
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw DomainError("t-grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return g;
}

InterpolationReport interpolate(const ModelSpec& model, SplitSpec split, double beta,
                                const std::vector<double>& t_grid) {
  const Interpolation interp(model, split);
  InterpolationReport r;
  r.split = split;
  r.beta = beta;
  r.t_grid = t_grid;
  for (double t : t_grid) {
    const auto p = interp.evaluate(beta, t);
    r.alpha_t.push_back(p.alpha);
    r.dalpha.push_back(p.dalpha);
    r.d2alpha.push_back(p.d2alpha);
  }
  const int n = split.total();
  r.condition_gap = interp.condition_gap(beta);
  r.alpha_one = interp.evaluate(beta, 1.0).alpha;
  r.alpha_zero = interp.evaluate(beta, 0.0).alpha;
  r.alpha_full = alpha(model, build_model_table(model, n), beta).alpha;
  r.alpha_n1 = block_log_partition(model, 0, split.n1, beta) / split.n1;
  r.alpha_n2 = block_log_partition(model, split.n1, n, beta) / split.n2;
  r.block_average = (split.n1 * r.alpha_n1 + split.n2 * r.alpha_n2) / n;
  return r;
}

InterpolationChecks check_report(const InterpolationReport& r) {
  InterpolationChecks c;
  c.boundary_one = std::abs(r.alpha_one - r.alpha_full) <= 1e-11;
  c.boundary_zero = std::abs(r.alpha_zero - r.block_average) <= 1e-11;
  for (std::size_t i = 0; i < r.d2alpha.size(); ++i) {
    if (r.d2alpha[i] < -1e-10) c.convex = false;
    if (i > 0 && r.t_grid[i] > r.t_grid[i - 1] && r.dalpha[i] < r.dalpha[i - 1] - 1e-9) {
      c.monotone = false;
    }
  }
  return c;
}

ConditionReport condition_check(const ModelSpec& model, SplitSpec split, double beta,
                                std::optional<double> tolerance) {
  ConditionReport r;
  r.split = split;
  r.beta = beta;
  r.gap = Interpolation(model, split).condition_gap(beta);
  r.tolerance = tolerance.value_or(1e-10 * split.total());
  r.satisfied = r.gap >= -r.tolerance;
  return r;
}

SignPropagationReport sign_propagation_check(const ModelSpec& model, SplitSpec split,
                                             double beta, const std::vector<double>& t_grid,
                                             double tolerance) {
  const Interpolation interp(model, split);
  SignPropagationReport r;
  r.dalpha_at_one = interp.evaluate(beta, 1.0).dalpha;
  r.applicable = r.dalpha_at_one <= tolerance;
  r.max_dalpha = r.dalpha_at_one;
  r.holds = true;
  for (double t : t_grid) {
    const double d = interp.evaluate(beta, t).dalpha;
    r.max_dalpha = std::max(r.max_dalpha, d);
    if (d > tolerance && r.holds) {
      r.holds = false;
      r.offending_t = t;
    }
  }
  return r;
}

}  // namespace mfl
