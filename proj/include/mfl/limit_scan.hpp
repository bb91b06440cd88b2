#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mfl/gfunction.hpp"
#include "mfl/model.hpp"

namespace mfl {

/// Heuristic rate model alpha_N = alpha + a/N + b ln(N)/N, least-squares fit
/// on the top half of a ladder.
struct LimitFit {
  bool valid = false;
  int points = 0;
  double alpha_inf = 0.0;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // RMS residual of the fit
};

struct ConvergenceSeries {
  std::vector<int> sizes;
  std::vector<double> alpha;
  std::vector<double> running_inf;
  std::vector<double> max_sector_g;  // max of g over achievable sectors, per N
  double limit_estimate = 0.0;       // alpha at the largest N
  LimitFit fit;
  std::optional<double> oracle_value;
};

/// alpha_N for each N (strictly increasing). Disordered models use the
/// disorder restricted to the first N sites.
ConvergenceSeries ladder(const ModelSpec& model, std::span<const int> sizes, double beta);

/// N = start, 2 start, 4 start, ... up to stop.
std::vector<int> doubling_ladder(int start = 25, int stop = 12800);

/// max over m in [-1, 1] of beta g(m) + s(m), s the binary entropy with
/// 0 ln 0 = 0: 10^4-point seed grid, then golden-section refinement.
double variational_oracle(const GFunction& g, double beta);

/// Binary entropy s(m) = -((1+m)/2) ln((1+m)/2) - ((1-m)/2) ln((1-m)/2).
double binary_entropy(double m);

struct SlackReport {
  double worst_slack = 0.0;
  int worst_n1 = 0;
  std::vector<int> n1;
  std::vector<double> slack;  // (N1 alpha_N1 + N2 alpha_N2)/N - alpha_N per split
};

/// Subadditivity slack over every admissible split of N.
SlackReport subadditivity_scan(const ModelSpec& model, int n, double beta);

/// max of -H_N/N over achievable sectors; alpha_N >= beta times this value.
double max_achievable_g(const ModelSpec& model, int n);

}  // namespace mfl
