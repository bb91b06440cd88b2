#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "mfl/model.hpp"

namespace mfl {

/// Largest N the configuration enumeration accepts.
constexpr int kOracleMaxSize = 22;

using SpinObservable = std::function<double(std::span<const std::int8_t>)>;

/// H_N(sigma) evaluated literally from a spin vector, disorder site by site.
/// The symmetrized p-spin energy uses the up/down count expansion of e_k,
/// not Newton's identities.
double configuration_energy(const ModelSpec& model, std::span<const std::int8_t> spins);

/// (1/N) ln sum over all 2^N configurations of exp(-beta H_N(sigma)).
double oracle_alpha(const ModelSpec& model, int n, double beta);

/// Exact Gibbs expectation of an arbitrary configuration observable.
double oracle_expect(const ModelSpec& model, int n, double beta, const SpinObservable& observable);

}  // namespace mfl
