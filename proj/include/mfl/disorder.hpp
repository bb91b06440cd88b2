#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfl/interpolator.hpp"
#include "mfl/model.hpp"

namespace mfl {

/// RandomField: i.i.d. symmetric +-1 fields h_i. Patterns: an M x N matrix of
/// i.i.d. symmetric +-1 entries. UniformField: h_i = +1 everywhere (a
/// degenerate kind used to test the single-class reduction).
enum class DisorderKind { RandomField, Patterns, UniformField };

std::string to_string(DisorderKind kind);
std::optional<DisorderKind> disorder_kind_from_string(const std::string& s);

struct DisorderSample {
  std::uint64_t seed = 0;
  DisorderKind kind = DisorderKind::RandomField;
  int sites = 0;
  int patterns = 1;
  std::vector<std::int8_t> values;  // N entries, or M x N row-major

  ModelSpec model() const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Seed of sample `index` under `base_seed`; independent of scheduling.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Deterministic +-1 draws from the raw 64-bit output of mt19937_64.
DisorderSample sample_disorder(std::uint64_t seed, DisorderKind kind, int sites,
                               int patterns = 1);

struct SubadditivityReport {
  std::uint64_t seed = 0;
  SplitSpec split;
  double alpha_n = 0.0;
  double alpha_n1 = 0.0;
  double alpha_n2 = 0.0;
  /// (N1 alpha_N1 + N2 alpha_N2) / N - alpha_N; nonnegative when subadditive.
  double slack = 0.0;
  bool failed = false;
};

/// Failure threshold on N * slack, scaled with N.
constexpr double kSubadditivityTolerancePerSite = 1e-9;

/// alpha_N(h) <= (N1/N) alpha_N1(h) + (N2/N) alpha_N2(h) for one disorder
/// realization; each block keeps its own restriction of the disorder.
SubadditivityReport pointwise_subadditivity(const ModelSpec& model, SplitSpec split, double beta,
                                            std::uint64_t seed = 0);

struct QuenchedEstimate {
  int sample_count = 0;
  double mean_alpha = 0.0;
  double std_error = 0.0;
  int per_sample_subadditivity_failures = 0;
  std::vector<SubadditivityReport> samples;
};

struct QuenchedOptions {
  int patterns = 1;
  std::optional<SplitSpec> split;  // default: halves (N/2, N - N/2)
  int workers = 0;                 // 0: default_worker_count()
};

/// Mean and standard error of alpha_N over sample_count independent
/// realizations with seeds derive_seed(base_seed, i). Aggregation runs in
/// sample order, so the result is bit-identical for any worker count.
QuenchedEstimate quenched_average(DisorderKind kind, int sites, double beta, int sample_count,
                                  std::uint64_t base_seed, const QuenchedOptions& options = {});

}  // namespace mfl
