#include "mfl/brute_oracle.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "mfl/error.hpp"
#include "mfl/numeric.hpp"

namespace mfl {

namespace {

// H~_n as a function of the number of up spins, from
// e_k = sum_j C(u, j) C(d, k - j) (-1)^(k - j).
std::vector<double> tilde_by_up_count(int n, int k) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  long double norm = 1.0L;
  for (int j = 1; j < k; ++j) norm *= static_cast<long double>(n - j);
  long double kfact = 1.0L;
  for (int j = 2; j <= k; ++j) kfact *= j;
  auto choose = [](int a, int b) -> long double {
    if (b < 0 || b > a) return 0.0L;
    long double r = 1.0L;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int u = 0; u <= n; ++u) {
    const int d = n - u;
    long double e = 0.0L;
    for (int j = 0; j <= k; ++j) {
      const long double term = choose(u, j) * choose(d, k - j);
      e += ((k - j) % 2 == 0) ? term : -term;
    }
    out[static_cast<std::size_t>(u)] = static_cast<double>(-kfact * e / norm);
  }
  return out;
}

// Incrementally maintained sums for one configuration.
class EnergyTracker {
 public:
  EnergyTracker(const ModelSpec& model, int n) : model_(model), n_(n) {
    const auto& rep = model.variant();
    if (const auto* t = std::get_if<ModelSpec::PSpinTilde>(&rep)) tilde_ = tilde_by_up_count(n, t->k);
    if (const auto* r = std::get_if<ModelSpec::RandomFieldCW>(&rep)) field_ = &r->h;
    if (const auto* h = std::get_if<ModelSpec::Hopfield>(&rep)) {
      patterns_ = &h->xi;
      overlaps_.assign(static_cast<std::size_t>(h->patterns), 0);
    }
  }

  void reset(std::span<const std::int8_t> spins) {
    spin_sum_ = 0;
    field_sum_ = 0;
    std::fill(overlaps_.begin(), overlaps_.end(), 0);
    for (int i = 0; i < n_; ++i) {
      const int s = spins[static_cast<std::size_t>(i)];
      spin_sum_ += s;
      if (field_) field_sum_ += (*field_)[static_cast<std::size_t>(i)] * s;
      for (std::size_t mu = 0; mu < overlaps_.size(); ++mu) {
        overlaps_[mu] += (*patterns_)[mu * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] * s;
      }
    }
  }

  // Spin i has just been set to new_value.
  void flipped(int i, int new_value) {
    spin_sum_ += 2 * new_value;
    if (field_) field_sum_ += 2 * (*field_)[static_cast<std::size_t>(i)] * new_value;
    for (std::size_t mu = 0; mu < overlaps_.size(); ++mu) {
      overlaps_[mu] += 2 * (*patterns_)[mu * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] * new_value;
    }
  }

  double energy() const {
    const double n = n_;
    const auto& rep = model_.variant();
    if (const auto* s = std::get_if<ModelSpec::ScalarMeanField>(&rep)) return -n * s->g(spin_sum_ / n);
    if (const auto* p = std::get_if<ModelSpec::PSpinPlain>(&rep)) {
      return -n * std::pow(spin_sum_ / n, p->p);
    }
    if (!tilde_.empty()) return tilde_[static_cast<std::size_t>((spin_sum_ + n_) / 2)];
    if (field_) {
      // -(1/N) sum_{i,j} sigma_i sigma_j + sum_i h_i sigma_i
      return -static_cast<double>(spin_sum_) * spin_sum_ / n + field_sum_;
    }
    // -(1/N) sum_mu sum_{i,j} xi_i xi_j sigma_i sigma_j
    double e = 0.0;
    for (long q : overlaps_) e -= static_cast<double>(q) * q / n;
    return e;
  }

 private:
  const ModelSpec& model_;
  int n_;
  long spin_sum_ = 0;
  long field_sum_ = 0;
  std::vector<double> tilde_;
  const std::vector<std::int8_t>* field_ = nullptr;
  const std::vector<std::int8_t>* patterns_ = nullptr;
  std::vector<long> overlaps_;
};

void check_oracle_size(const ModelSpec& model, int n) {
  if (n > kOracleMaxSize) {
    throw BudgetError("brute-force oracle is limited to N <= " + std::to_string(kOracleMaxSize));
  }
  model.check_system_size(n);
}

// Gray-code walk over all 2^N configurations starting from all spins down.
template <class F>
void enumerate(const ModelSpec& model, int n, F&& visit) {
  std::vector<std::int8_t> spins(static_cast<std::size_t>(n), -1);
  EnergyTracker tracker(model, n);
  tracker.reset(spins);
  visit(std::span<const std::int8_t>(spins), tracker.energy());
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int j = std::countr_zero(i);
    auto& s = spins[static_cast<std::size_t>(j)];
    s = static_cast<std::int8_t>(-s);
    tracker.flipped(j, s);
    visit(std::span<const std::int8_t>(spins), tracker.energy());
  }
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and >= 0");
}

}  // namespace

double configuration_energy(const ModelSpec& model, std::span<const std::int8_t> spins) {
  const int n = static_cast<int>(spins.size());
  model.check_system_size(n);
  EnergyTracker tracker(model, n);
  tracker.reset(spins);
  return tracker.energy();
}

double oracle_alpha(const ModelSpec& model, int n, double beta) {
  check_beta(beta);
  check_oracle_size(model, n);
  StreamingLogSumExp acc;
  enumerate(model, n, [&](std::span<const std::int8_t>, double energy) { acc.add(-beta * energy); });
  return acc.log_sum() / n;
}

double oracle_expect(const ModelSpec& model, int n, double beta, const SpinObservable& observable) {
  check_beta(beta);
  check_oracle_size(model, n);
  StreamingLogSumExp acc;
  enumerate(model, n, [&](std::span<const std::int8_t> spins, double energy) {
    acc.add(-beta * energy, observable(spins));
  });
  return acc.mean();
}

}  // namespace mfl
