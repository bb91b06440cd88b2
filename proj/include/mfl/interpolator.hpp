#pragma once

#include <optional>
#include <vector>

#include "mfl/model.hpp"
#include "mfl/sector.hpp"

namespace mfl {

/// Ordered partition {1..N1}, {N1+1..N} with both blocks nonempty.
struct SplitSpec {
  int n1 = 0;
  int n2 = 0;
  int total() const { return n1 + n2; }
};

/// Every split of n sites whose blocks are admissible for the model.
std::vector<SplitSpec> admissible_splits(const ModelSpec& model, int n);

struct InterpolationPoint {
  double alpha = 0.0;
  double dalpha = 0.0;   // -(beta/N) omega_t(Delta H)
  double d2alpha = 0.0;  // (beta^2/N) Var_t(Delta H)
};

/// The linear interpolation H(t) = t H_N + (1 - t)(H_N1 + H_N2) for one
/// model and split. Sector energies are computed once; evaluation at any
/// (beta, t) is a pass over the split table.
class Interpolation {
 public:
  Interpolation(const ModelSpec& model, SplitSpec split,
                std::size_t budget = SectorTable::kDefaultBudget);

  SplitSpec split() const { return split_; }
  const SectorTable& table() const { return table_; }

  InterpolationPoint evaluate(double beta, double t) const;
  double alpha(double beta, double t) const { return evaluate(beta, t).alpha; }

  /// omega_N(H_N) - omega_N(H_N1 + H_N2) under the t = 1 state.
  double condition_gap(double beta) const;

  /// Energies per sector: full system, sum of blocks, and their difference.
  const std::vector<double>& full_energy() const { return full_; }
  const std::vector<double>& block_energy() const { return blocks_; }
  const std::vector<double>& delta_energy() const { return delta_; }

 private:
  SplitSpec split_;
  SectorTable table_;
  std::vector<double> full_, blocks_, delta_;
};

double alpha_of_t(const ModelSpec& model, SplitSpec split, double beta, double t);
double dalpha_dt(const ModelSpec& model, SplitSpec split, double beta, double t);
double d2alpha_dt2(const ModelSpec& model, SplitSpec split, double beta, double t);

struct InterpolationReport {
  SplitSpec split;
  double beta = 0.0;
  std::vector<double> t_grid;
  std::vector<double> alpha_t;
  std::vector<double> dalpha;
  std::vector<double> d2alpha;
  double condition_gap = 0.0;
  double alpha_one = 0.0;      // alpha(t = 1)
  double alpha_zero = 0.0;     // alpha(t = 0)
  double alpha_full = 0.0;     // alpha_N from its own table
  double alpha_n1 = 0.0;
  double alpha_n2 = 0.0;
  double block_average = 0.0;  // (N1 alpha_N1 + N2 alpha_N2) / N
};

std::vector<double> uniform_grid(int points = 21);

InterpolationReport interpolate(const ModelSpec& model, SplitSpec split, double beta,
                                const std::vector<double>& t_grid = uniform_grid());

struct InterpolationChecks {
  bool boundary_one = true;   // |alpha(1) - alpha_N| <= 1e-11
  bool boundary_zero = true;  // |alpha(0) - block average| <= 1e-11
  bool convex = true;         // alpha'' >= -1e-10 on the grid
  bool monotone = true;       // alpha' nondecreasing within 1e-9
  bool all() const { return boundary_one && boundary_zero && convex && monotone; }
};
InterpolationChecks check_report(const InterpolationReport& report);

struct ConditionReport {
  SplitSpec split;
  double beta = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
};

/// Default tolerance 1e-10 * N.
ConditionReport condition_check(const ModelSpec& model, SplitSpec split, double beta,
                                std::optional<double> tolerance = {});

struct SignPropagationReport {
  bool applicable = false;  // alpha'(1) <= 0
  bool holds = false;       // alpha'(t) <= tolerance on the whole grid
  double dalpha_at_one = 0.0;
  double max_dalpha = 0.0;
  std::optional<double> offending_t;
};

SignPropagationReport sign_propagation_check(const ModelSpec& model, SplitSpec split,
                                             double beta,
                                             const std::vector<double>& t_grid = uniform_grid(),
                                             double tolerance = 1e-12);

}  // namespace mfl
