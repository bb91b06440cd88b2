#include "mfl/disorder.hpp"

#include <cmath>
#include <random>

#include "mfl/error.hpp"
#include "mfl/numeric.hpp"
#include "mfl/parallel.hpp"
#include "mfl/sector.hpp"

namespace mfl {

std::string to_string(DisorderKind kind) {
  switch (kind) {
    case DisorderKind::RandomField: return "random-field";
    case DisorderKind::Patterns: return "patterns";
    case DisorderKind::UniformField: return "uniform-field";
  }
  return "?";
}

std::optional<DisorderKind> disorder_kind_from_string(const std::string& s) {
  if (s == "random-field" || s == "rfcw") return DisorderKind::RandomField;
  if (s == "patterns" || s == "hopfield") return DisorderKind::Patterns;
  if (s == "uniform-field") return DisorderKind::UniformField;
  return std::nullopt;
}

ModelSpec DisorderSample::model() const {
  if (kind == DisorderKind::Patterns) return ModelSpec::hopfield(patterns, values);
  return ModelSpec::random_field(values);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(base_seed ^ mix64(index));
}

DisorderSample sample_disorder(std::uint64_t seed, DisorderKind kind, int sites, int patterns) {
  if (sites < 1) throw DomainError("sample_disorder: N must be >= 1");
  if (kind == DisorderKind::Patterns && patterns < 1) {
    throw DomainError("sample_disorder: M must be >= 1");
  }
  DisorderSample s;
  s.seed = seed;
  s.kind = kind;
  s.sites = sites;
  s.patterns = kind == DisorderKind::Patterns ? patterns : 1;
  const std::size_t count = static_cast<std::size_t>(s.patterns) * static_cast<std::size_t>(sites);
  s.values.resize(count, 1);
  if (kind == DisorderKind::UniformField) return s;
  std::mt19937_64 engine(seed);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) bits = engine();
    s.values[i] = (bits >> (i % 64)) & 1ULL ? 1 : -1;
  }
  return s;
}

SubadditivityReport pointwise_subadditivity(const ModelSpec& model, SplitSpec split, double beta,
                                            std::uint64_t seed) {
  const int n = split.total();
  if (split.n1 < 1 || split.n2 < 1) throw DomainError("split blocks must both be nonempty");
  SubadditivityReport r;
  r.seed = seed;
  r.split = split;
  const double lz = alpha(model, build_model_table(model, n), beta).log_z;
  const double lz1 = block_log_partition(model, 0, split.n1, beta);
  const double lz2 = block_log_partition(model, split.n1, n, beta);
  r.alpha_n = lz / n;
  r.alpha_n1 = lz1 / split.n1;
  r.alpha_n2 = lz2 / split.n2;
  const double extensive = (lz1 + lz2) - lz;
  r.slack = extensive / n;
  r.failed = extensive < -kSubadditivityTolerancePerSite * n;
  return r;
}

QuenchedEstimate quenched_average(DisorderKind kind, int sites, double beta, int sample_count,
                                  std::uint64_t base_seed, const QuenchedOptions& options) {
  if (sample_count < 2) throw DomainError("quenched_average needs at least two samples");
  if (sites < 2) throw DomainError("quenched_average needs N >= 2 to split");
  const SplitSpec split = options.split.value_or(SplitSpec{sites / 2, sites - sites / 2});
  if (split.total() != sites) throw DomainError("split does not partition N sites");

  std::vector<SubadditivityReport> reports(static_cast<std::size_t>(sample_count));
  parallel_for(reports.size(), options.workers, [&](std::size_t i) {
    const auto seed = derive_seed(base_seed, i);
    const auto sample = sample_disorder(seed, kind, sites, options.patterns);
    reports[i] = pointwise_subadditivity(sample.model(), split, beta, seed);
  });

  QuenchedEstimate q;
  q.sample_count = sample_count;
  CompensatedSum sum;
  for (const auto& r : reports) sum.add(r.alpha_n);
  q.mean_alpha = sum.value() / sample_count;
  CompensatedSum sq;
  for (const auto& r : reports) {
    const double d = r.alpha_n - q.mean_alpha;
    sq.add(d * d);
    q.per_sample_subadditivity_failures += r.failed;
  }
  q.std_error = std::sqrt(sq.value() / (sample_count - 1)) / std::sqrt(sample_count);
  q.samples = std::move(reports);
  return q;
}

}  // namespace mfl
