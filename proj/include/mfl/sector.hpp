#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mfl/model.hpp"

namespace mfl {

/// One class of sites in a sector table: its size, the split block it belongs
/// to, and its order-parameter signature.
struct SectorClass {
  int size = 0;
  int block = 0;
  std::vector<int> signature;
};

class SectorTable;

/// A sector as seen while iterating a table: per-class up-spin counts and
/// the integer order-parameter sums sum_i signature(i) * sigma_i, per block
/// and in total.
struct SectorView {
  std::size_t index = 0;
  std::span<const int> counts;
  std::span<const long> block_sums;  // block-major, block_count x dimension
  std::span<const long> total_sums;  // dimension
  double log_multiplicity = 0.0;
  const SectorTable* table = nullptr;

  long block_sum(int block, int d) const;
  /// Global order parameter m_d = total_sums[d] / N.
  double m(int d = 0) const;
  /// Block order parameter m_{N_b, d} = block_sums[b, d] / N_b.
  double block_m(int block, int d = 0) const;
};

/// Exact reorganization of the 2^N configuration sum by order-parameter
/// sector. Sectors are the mixed-radix enumeration of per-class up-spin counts
/// k_c in [0, n_c], last class fastest; the multiplicity of a sector is
/// prod_c C(n_c, k_c), stored as its logarithm. Immutable once built.
class SectorTable {
 public:
  static constexpr std::size_t kDefaultBudget = 100'000'000;

  SectorTable(std::vector<SectorClass> classes, int dimension,
              std::size_t budget = kDefaultBudget);

  int system_size() const { return system_size_; }
  int dimension() const { return dimension_; }
  int block_count() const { return static_cast<int>(block_sizes_.size()); }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  const std::vector<SectorClass>& classes() const { return classes_; }
  std::size_t size() const { return log_mult_.size(); }

  std::span<const double> log_multiplicity() const { return log_mult_; }
  std::vector<int> counts(std::size_t index) const;
  /// Exact prod_c C(n_c, k_c); requires N <= 30 (throws DomainError otherwise).
  std::uint64_t exact_multiplicity(std::size_t index) const;
  /// ln sum of all multiplicities; equals N ln 2.
  double log_total() const;

  /// Order point of a sector: the per-block magnetizations (m_{N1}, m_{N2},
  /// ...) for scalar split tables, otherwise the global order parameters.
  OrderParameterPoint order_point(std::size_t index) const;

  /// Visits every sector in ascending index order.
  template <class F>
  void for_each(F&& f) const;

 private:
  std::vector<SectorClass> classes_;
  std::vector<int> block_sizes_;
  int dimension_ = 1;
  int system_size_ = 0;
  std::vector<double> log_mult_;
};

SectorTable build_scalar_table(int n);
SectorTable build_two_block_table(int n1, int n2);
/// A single-block table over classes with the given sizes and signatures.
SectorTable build_class_table(std::span<const int> class_sizes,
                              const std::vector<std::vector<int>>& signatures,
                              std::size_t budget = SectorTable::kDefaultBudget);
/// The table of `model` on n sites, cut into consecutive blocks at `cuts`
/// (empty: one block). Disordered models contribute one class per distinct
/// signature inside each block.
SectorTable build_model_table(const ModelSpec& model, int n, std::span<const int> cuts = {},
                              std::size_t budget = SectorTable::kDefaultBudget);

/// Per-sector energies of the full system and the sum of block energies.
struct SectorEnergies {
  std::vector<double> full;
  std::vector<double> blocks;  // empty unless requested
};
SectorEnergies sector_energies(const ModelSpec& model, const SectorTable& table,
                               bool with_blocks);

struct GibbsSummary {
  double beta = 0.0;
  double log_z = 0.0;
  double alpha = 0.0;  // log_z / N
  std::map<std::string, double> expectations;
};

/// ln Z_N = log-sum-exp over sectors of [ln multiplicity - beta H_N(sector)].
/// Expectations: "energy" (omega(H_N)), "energy_density", "m<d>" (omega(m_d)),
/// "m_sq" (omega(sum_d m_d^2)).
GibbsSummary alpha(const ModelSpec& model, const SectorTable& table, double beta);

using SectorObservable = std::function<double(const SectorView&)>;

/// Gibbs expectation of an observable that is constant on sectors.
double gibbs_expect(const ModelSpec& model, const SectorTable& table, double beta,
                    const SectorObservable& observable);

/// Normalized Gibbs sector probabilities in index order.
std::vector<double> sector_probabilities(const ModelSpec& model, const SectorTable& table,
                                         double beta);

/// ln Z of the sub-system of sites [begin, end) with its own Hamiltonian
/// H_{end-begin} (disorder restricted to the range). Only block-size
/// admissibility is checked, so p-spin blocks with n <= p are allowed.
double block_log_partition(const ModelSpec& model, int begin, int end, double beta);

/// CSV dump: class counts, log_multiplicity, order-point coordinates.
void write_table_csv(const SectorTable& table, std::ostream& os);

// ---------------------------------------------------------------------------

template <class F>
void SectorTable::for_each(F&& f) const {
  const std::size_t nc = classes_.size();
  const std::size_t nb = block_sizes_.size();
  const std::size_t dim = static_cast<std::size_t>(dimension_);
  std::vector<int> counts(nc, 0);
  std::vector<long> block_sums(nb * dim, 0);
  std::vector<long> total(dim, 0);
  // All spins down: each class contributes -n_c * signature.
  for (const auto& c : classes_) {
    for (std::size_t d = 0; d < dim; ++d) {
      const long v = -static_cast<long>(c.size) * c.signature[d];
      block_sums[static_cast<std::size_t>(c.block) * dim + d] += v;
      total[d] += v;
    }
  }
  SectorView view;
  view.table = this;
  view.counts = counts;
  view.block_sums = block_sums;
  view.total_sums = total;
  for (std::size_t idx = 0; idx < log_mult_.size(); ++idx) {
    view.index = idx;
    view.log_multiplicity = log_mult_[idx];
    f(static_cast<const SectorView&>(view));
    // Odometer step.
    for (std::size_t c = nc; c-- > 0;) {
      const auto& cls = classes_[c];
      const std::size_t base = static_cast<std::size_t>(cls.block) * dim;
      if (counts[c] < cls.size) {
        ++counts[c];
        for (std::size_t d = 0; d < dim; ++d) {
          block_sums[base + d] += 2L * cls.signature[d];
          total[d] += 2L * cls.signature[d];
        }
        break;
      }
      for (std::size_t d = 0; d < dim; ++d) {
        const long back = 2L * cls.size * cls.signature[d];
        block_sums[base + d] -= back;
        total[d] -= back;
      }
      counts[c] = 0;
    }
  }
}

}  // namespace mfl
