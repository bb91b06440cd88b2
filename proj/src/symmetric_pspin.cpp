#include "mfl/symmetric_pspin.hpp"

#include <cmath>
#include <string>

#include "mfl/error.hpp"
#include "mfl/model.hpp"
#include "mfl/sector.hpp"

namespace mfl {

namespace {

void check_spin_sum(int n, long s) {
  if (n < 1) throw DomainError("system size must be >= 1");
  if (s > n || s < -n || ((s + n) % 2) != 0) {
    throw DomainError("spin sum " + std::to_string(s) + " is not achievable with " +
                      std::to_string(n) + " spins");
  }
}

}  // namespace

std::vector<long double> power_sums(int n, long spin_sum, int k) {
  check_spin_sum(n, spin_sum);
  std::vector<long double> p(static_cast<std::size_t>(std::max(k, 0)));
  for (int j = 1; j <= k; ++j) {
    p[static_cast<std::size_t>(j - 1)] = (j % 2 == 1) ? static_cast<long double>(spin_sum)
                                                      : static_cast<long double>(n);
  }
  return p;
}

DistinctTupleSum distinct_tuple_sum(int n, long spin_sum, int k) {
  if (k < 1) throw DomainError("distinct_tuple_sum: k must be >= 1");
  if (k > n) {
    throw DomainError("distinct_tuple_sum: k=" + std::to_string(k) + " exceeds N=" + std::to_string(n));
  }
  const auto p = power_sums(n, spin_sum, k);
  std::vector<long double> e(static_cast<std::size_t>(k) + 1, 0.0L);
  e[0] = 1.0L;
  for (int m = 1; m <= k; ++m) {
    long double acc = 0.0L;
    for (int j = 1; j <= m; ++j) {
      const long double term = e[static_cast<std::size_t>(m - j)] * p[static_cast<std::size_t>(j - 1)];
      acc += (j % 2 == 1) ? term : -term;
    }
    e[static_cast<std::size_t>(m)] = acc / m;
  }
  long double fact = 1.0L;
  for (int j = 2; j <= k; ++j) fact *= j;
  return {n, k, spin_sum, fact * e[static_cast<std::size_t>(k)]};
}

long double log_falling_factorial(int top, int count) {
  if (count < 0 || count > top) throw DomainError("log_falling_factorial: invalid arguments");
  long double s = 0.0L;
  for (int j = 0; j < count; ++j) s += std::log(static_cast<long double>(top - j));
  return s;
}

double tilde_hamiltonian(int n, long spin_sum, int k) {
  if (k < 1) throw DomainError("tilde_hamiltonian: k must be >= 1");
  if (k >= n) {
    throw DomainError("tilde_hamiltonian requires k < N (k=" + std::to_string(k) +
                      ", N=" + std::to_string(n) + ")");
  }
  const long double sum = distinct_tuple_sum(n, spin_sum, k).value;
  if (sum == 0.0L) return 0.0;
  // (n-1)(n-2)...(n-k+1); the direct product is exact and in range for every
  // supported (n, k), otherwise fall back to the log domain.
  const long double log_norm = log_falling_factorial(n - 1, k - 1);
  if (log_norm < 11000.0L) {
    long double norm = 1.0L;
    for (int j = 1; j < k; ++j) norm *= static_cast<long double>(n - j);
    return static_cast<double>(-sum / norm);
  }
  const long double mag = std::exp(std::log(std::fabs(sum)) - log_norm);
  return static_cast<double>(sum > 0 ? -mag : mag);
}

double correction_gap(int n, int k, std::span<const long> spin_sums) {
  if (k < 1) throw DomainError("correction_gap: k must be >= 1");
  std::vector<long> all;
  if (spin_sums.empty()) {
    for (long s = -n; s <= n; s += 2) all.push_back(s);
    spin_sums = all;
  }
  long double worst = 0.0L;
  for (long s : spin_sums) {
    // H_N = -S^k / N^(k-1)
    long double plain = -static_cast<long double>(s);
    for (int j = 1; j < k; ++j) plain *= static_cast<long double>(s) / n;
    const long double gap = std::fabs(plain - static_cast<long double>(tilde_hamiltonian(n, s, k)));
    worst = std::max(worst, gap);
  }
  return static_cast<double>(worst);
}

double tilde_split_defect(int n1, int n2, int k, double beta) {
  if (k >= std::min(n1, n2)) {
    throw DomainError("tilde_split_defect: blocks of " + std::to_string(n1) + " and " +
                      std::to_string(n2) + " sites are too small for k=" + std::to_string(k));
  }
  const auto model = ModelSpec::pspin_tilde(k);
  const auto table = build_two_block_table(n1, n2);
  const int n = n1 + n2;
  return gibbs_expect(model, table, beta, [&](const SectorView& v) {
    return tilde_hamiltonian(n, v.total_sums[0], k) - tilde_hamiltonian(n1, v.block_sum(0, 0), k) -
           tilde_hamiltonian(n2, v.block_sum(1, 0), k);
  });
}

}  // namespace mfl
