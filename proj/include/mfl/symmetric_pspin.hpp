#pragma once

#include <span>
#include <vector>

namespace mfl {

/// Sum over ordered k-tuples of pairwise-distinct indices of
/// sigma_{i1} ... sigma_{ik}, for a configuration with spin sum S.
struct DistinctTupleSum {
  int n = 0;
  int k = 0;
  long spin_sum = 0;
  long double value = 0;  // k! e_k(sigma)
};

/// Power sums P_j = sum_i sigma_i^j for j = 1..k. With sigma_i = +-1 these
/// are S for odd j and n for even j.
std::vector<long double> power_sums(int n, long spin_sum, int k);

/// k! e_k via Newton's identities, e_k = (1/k) sum_j (-1)^(j-1) e_{k-j} P_j.
DistinctTupleSum distinct_tuple_sum(int n, long spin_sum, int k);

/// ln((n-1)(n-2)...(n-k+1)), the symmetrized model's normalization.
long double log_falling_factorial(int top, int count);

/// H~_n(S) = -distinct_tuple_sum / ((n-1)...(n-k+1)); requires k < n.
double tilde_hamiltonian(int n, long spin_sum, int k);

/// max over the given spin sums of |H_n - H~_n| with H_n = -n m^k. An empty
/// sample set means every achievable spin sum.
double correction_gap(int n, int k, std::span<const long> spin_sums = {});

/// omega_N(H~_N - H~_N1 - H~_N2) under the full symmetrized Gibbs state.
double tilde_split_defect(int n1, int n2, int k, double beta);

}  // namespace mfl
