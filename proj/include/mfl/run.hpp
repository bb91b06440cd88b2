#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfl/model.hpp"

namespace mfl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// One CLI invocation. Disordered models named by selector (rfcw, hopfield)
/// draw their disorder from `seed` for each N.
struct RunConfig {
  std::string command;  // alpha | condition | interpolate | converge | disorder | oracle-check
  std::string model = "cw";
  std::optional<std::string> model_file;
  int p = 2;  // p-spin order, also k for pspin-tilde
  std::string g = "square";
  std::vector<double> coeffs;
  std::optional<double> K;
  int patterns = 2;
  std::vector<double> betas{1.0};
  std::vector<int> sizes;
  std::string split;  // "" (halves), "all", or "N1,N2"
  std::uint64_t seed = 0;
  int samples = 100;
  int t_points = 21;
  std::optional<double> tolerance;
  std::string out;
  std::string format = "json";
  int workers = 0;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::ordered_json& j);

/// Throws DomainError on an invalid combination; nothing is computed.
void validate(const RunConfig& config);

/// The model for a system of n sites.
ModelSpec make_model(const RunConfig& config, int n);

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;
  std::vector<std::string> violations;
};

/// Validates and executes; throws on usage or resource errors.
RunResult execute(const RunConfig& config);

/// Report text in the configured format.
std::string render(const RunConfig& config, const RunResult& result);

/// Replaces `path` with `content` via a temporary file and rename.
void write_atomically(const std::string& path, const std::string& content);

/// execute + render + write (to stdout when `out` is empty). Errors go to
/// `err` and map to kExitUsage.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mfl
