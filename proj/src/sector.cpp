#include "mfl/sector.hpp"

#include <cmath>
#include <ostream>

#include "mfl/error.hpp"
#include "mfl/numeric.hpp"

namespace mfl {

long SectorView::block_sum(int block, int d) const {
  return block_sums[static_cast<std::size_t>(block) * static_cast<std::size_t>(table->dimension()) +
                    static_cast<std::size_t>(d)];
}

double SectorView::m(int d) const {
  return static_cast<double>(total_sums[static_cast<std::size_t>(d)]) / table->system_size();
}

double SectorView::block_m(int block, int d) const {
  return static_cast<double>(block_sum(block, d)) /
         table->block_sizes()[static_cast<std::size_t>(block)];
}

SectorTable::SectorTable(std::vector<SectorClass> classes, int dimension, std::size_t budget)
    : classes_(std::move(classes)), dimension_(dimension) {
  if (classes_.empty()) throw DomainError("sector table needs at least one class");
  if (dimension_ < 1) throw DomainError("sector table dimension must be >= 1");
  int max_block = -1;
  for (const auto& c : classes_) {
    if (c.size < 1) throw DomainError("sector table classes must be nonempty");
    if (c.block < 0) throw DomainError("negative block index");
    if (static_cast<int>(c.signature.size()) != dimension_) {
      throw DomainError("class signature length does not match the table dimension");
    }
    max_block = std::max(max_block, c.block);
  }
  block_sizes_.assign(static_cast<std::size_t>(max_block) + 1, 0);
  for (const auto& c : classes_) {
    block_sizes_[static_cast<std::size_t>(c.block)] += c.size;
    system_size_ += c.size;
  }
  for (int b : block_sizes_) {
    if (b == 0) throw DomainError("block indices must be contiguous from 0");
  }

  std::size_t count = 1;
  for (const auto& c : classes_) {
    const std::size_t r = static_cast<std::size_t>(c.size) + 1;
    if (count > budget / r) {
      throw BudgetError("sector table would exceed the budget of " + std::to_string(budget) +
                        " sectors");
    }
    count *= r;
  }

  // Per-class log-binomials, combined by the same odometer as for_each.
  std::vector<std::vector<double>> lb(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (int k = 0; k <= classes_[c].size; ++k) lb[c].push_back(log_binomial(classes_[c].size, k));
  }
  log_mult_.resize(count);
  std::vector<int> k(classes_.size(), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    double s = 0.0;
    for (std::size_t c = 0; c < classes_.size(); ++c) s += lb[c][static_cast<std::size_t>(k[c])];
    log_mult_[idx] = s;
    for (std::size_t c = classes_.size(); c-- > 0;) {
      if (k[c] < classes_[c].size) {
        ++k[c];
        break;
      }
      k[c] = 0;
    }
  }
}

std::vector<int> SectorTable::counts(std::size_t index) const {
  if (index >= size()) throw DomainError("sector index out of range");
  std::vector<int> k(classes_.size());
  for (std::size_t c = classes_.size(); c-- > 0;) {
    const std::size_t r = static_cast<std::size_t>(classes_[c].size) + 1;
    k[c] = static_cast<int>(index % r);
    index /= r;
  }
  return k;
}

std::uint64_t SectorTable::exact_multiplicity(std::size_t index) const {
  if (system_size_ > 30) throw DomainError("exact multiplicities are limited to N <= 30");
  const auto k = counts(index);
  std::uint64_t m = 1;
  for (std::size_t c = 0; c < classes_.size(); ++c) m *= binomial_exact(classes_[c].size, k[c]);
  return m;
}

double SectorTable::log_total() const { return log_sum_exp(log_mult_); }

OrderParameterPoint SectorTable::order_point(std::size_t index) const {
  const auto k = counts(index);
  const std::size_t dim = static_cast<std::size_t>(dimension_);
  std::vector<long> block(block_sizes_.size() * dim, 0), total(dim, 0);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (std::size_t d = 0; d < dim; ++d) {
      const long v = static_cast<long>(2 * k[c] - classes_[c].size) * classes_[c].signature[d];
      block[static_cast<std::size_t>(classes_[c].block) * dim + d] += v;
      total[d] += v;
    }
  }
  OrderParameterPoint p;
  if (block_sizes_.size() > 1 && dim == 1) {
    for (std::size_t b = 0; b < block_sizes_.size(); ++b) {
      p.values.push_back(static_cast<double>(block[b]) / block_sizes_[b]);
    }
  } else {
    for (std::size_t d = 0; d < dim; ++d) p.values.push_back(static_cast<double>(total[d]) / system_size_);
  }
  return p;
}

SectorTable build_scalar_table(int n) {
  if (n < 1) throw DomainError("build_scalar_table: N must be >= 1");
  return SectorTable({SectorClass{n, 0, {1}}}, 1);
}

SectorTable build_two_block_table(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw DomainError("build_two_block_table: block sizes must be >= 1");
  return SectorTable({SectorClass{n1, 0, {1}}, SectorClass{n2, 1, {1}}}, 1);
}

SectorTable build_class_table(std::span<const int> class_sizes,
                              const std::vector<std::vector<int>>& signatures,
                              std::size_t budget) {
  if (class_sizes.size() != signatures.size()) {
    throw DomainError("build_class_table: " + std::to_string(class_sizes.size()) +
                      " class sizes but " + std::to_string(signatures.size()) + " signatures");
  }
  if (class_sizes.empty()) throw DomainError("build_class_table: no classes");
  std::vector<SectorClass> classes;
  for (std::size_t c = 0; c < class_sizes.size(); ++c) {
    classes.push_back({class_sizes[c], 0, signatures[c]});
  }
  const int dim = static_cast<int>(signatures.front().size());
  return SectorTable(std::move(classes), dim, budget);
}

SectorTable build_model_table(const ModelSpec& model, int n, std::span<const int> cuts,
                              std::size_t budget) {
  model.check_system_size(n);
  std::vector<int> edges{0};
  for (int c : cuts) {
    if (c <= edges.back() || c >= n) throw DomainError("split cuts must be increasing inside (0, N)");
    edges.push_back(c);
  }
  edges.push_back(n);
  std::vector<SectorClass> classes;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    if (edges.size() > 2) model.check_block_size(edges[b + 1] - edges[b]);
    for (auto& sc : model.classes(edges[b], edges[b + 1])) {
      classes.push_back({sc.size, static_cast<int>(b), std::move(sc.signature)});
    }
  }
  return SectorTable(std::move(classes), model.dimension(), budget);
}

namespace {

void check_compatible(const ModelSpec& model, const SectorTable& table) {
  if (table.dimension() != model.dimension()) {
    throw DomainError("sector table dimension " + std::to_string(table.dimension()) +
                      " is incompatible with model " + model.describe());
  }
  model.check_system_size(table.system_size());
}

}  // namespace

SectorEnergies sector_energies(const ModelSpec& model, const SectorTable& table,
                               bool with_blocks) {
  check_compatible(model, table);
  if (with_blocks) {
    for (int b : table.block_sizes()) model.check_block_size(b);
  }
  SectorEnergies e;
  e.full.resize(table.size());
  if (with_blocks) e.blocks.resize(table.size());
  const int n = table.system_size();
  const int dim = table.dimension();
  const auto& sizes = table.block_sizes();
  table.for_each([&](const SectorView& v) {
    e.full[v.index] = model.energy(v.total_sums, n);
    if (with_blocks) {
      double s = 0.0;
      for (std::size_t b = 0; b < sizes.size(); ++b) {
        s += model.energy(v.block_sums.subspan(b * static_cast<std::size_t>(dim),
                                               static_cast<std::size_t>(dim)),
                          sizes[b]);
      }
      e.blocks[v.index] = s;
    }
  });
  return e;
}

namespace {

std::vector<double> log_weights(const std::vector<double>& energies,
                                std::span<const double> log_mult, double beta) {
  std::vector<double> w(energies.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = log_mult[i] - beta * energies[i];
  return w;
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and >= 0");
}

}  // namespace

GibbsSummary alpha(const ModelSpec& model, const SectorTable& table, double beta) {
  check_beta(beta);
  const auto e = sector_energies(model, table, false);
  const auto w = log_weights(e.full, table.log_multiplicity(), beta);
  GibbsSummary s;
  s.beta = beta;
  s.log_z = log_sum_exp(w);
  s.alpha = s.log_z / table.system_size();

  const int dim = table.dimension();
  std::vector<std::vector<double>> m(static_cast<std::size_t>(dim), std::vector<double>(table.size()));
  std::vector<double> msq(table.size());
  table.for_each([&](const SectorView& v) {
    double q = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double md = v.m(d);
      m[static_cast<std::size_t>(d)][v.index] = md;
      q += md * md;
    }
    msq[v.index] = q;
  });
  s.expectations["energy"] = weighted_mean(w, s.log_z, e.full);
  s.expectations["energy_density"] = s.expectations["energy"] / table.system_size();
  for (int d = 0; d < dim; ++d) {
    s.expectations["m" + std::to_string(d)] = weighted_mean(w, s.log_z, m[static_cast<std::size_t>(d)]);
  }
  s.expectations["m_sq"] = weighted_mean(w, s.log_z, msq);
  return s;
}

std::vector<double> sector_probabilities(const ModelSpec& model, const SectorTable& table,
                                         double beta) {
  check_beta(beta);
  const auto e = sector_energies(model, table, false);
  auto w = log_weights(e.full, table.log_multiplicity(), beta);
  const double lz = log_sum_exp(w);
  for (double& x : w) x = std::exp(x - lz);
  return w;
}

double gibbs_expect(const ModelSpec& model, const SectorTable& table, double beta,
                    const SectorObservable& observable) {
  check_beta(beta);
  const auto e = sector_energies(model, table, false);
  const auto w = log_weights(e.full, table.log_multiplicity(), beta);
  const double lz = log_sum_exp(w);
  std::vector<double> values(table.size());
  table.for_each([&](const SectorView& v) {
    const double o = observable(v);
    if (!std::isfinite(o)) {
      throw DomainError("observable undefined on sector " + std::to_string(v.index));
    }
    values[v.index] = o;
  });
  return weighted_mean(w, lz, values);
}

double block_log_partition(const ModelSpec& model, int begin, int end, double beta) {
  check_beta(beta);
  model.check_block_size(end - begin);
  std::vector<SectorClass> classes;
  for (auto& sc : model.classes(begin, end)) classes.push_back({sc.size, 0, std::move(sc.signature)});
  const SectorTable table(std::move(classes), model.dimension());
  std::vector<double> w(table.size());
  const int n = end - begin;
  table.for_each([&](const SectorView& v) {
    w[v.index] = v.log_multiplicity - beta * model.energy(v.total_sums, n);
  });
  return log_sum_exp(w);
}

void write_table_csv(const SectorTable& table, std::ostream& os) {
  const auto& classes = table.classes();
  for (std::size_t c = 0; c < classes.size(); ++c) os << "k" << c << ",";
  os << "log_multiplicity";
  const auto first = table.order_point(0);
  for (std::size_t d = 0; d < first.values.size(); ++d) os << ",point" << d;
  os << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto k = table.counts(i);
    for (int x : k) os << x << ",";
    os << table.log_multiplicity()[i];
    for (double v : table.order_point(i).values) os << "," << v;
    os << "\n";
  }
}

}  // namespace mfl
