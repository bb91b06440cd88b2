#pragma once

#include <string>

#include <json.hpp>

#include "mfl/gfunction.hpp"
#include "mfl/model.hpp"

namespace mfl {

// Model file schema (JSON):
//   {"model": "scalar", "g": <g>, "K": 1.0}
//   {"model": "pspin", "p": 3}
//   {"model": "pspin-tilde", "k": 3}
//   {"model": "rfcw", "h": [1, -1, ...]}
//   {"model": "hopfield", "M": 2, "xi": [[...], [...]]}
// with <g> one of
//   {"type": "polynomial", "coefficients": [a0, a1, ...]}
//   {"type": "builtin", "name": "square"}
//   {"type": "tabulated", "x": [...], "y": [...], "lipschitz": L}
// "K" is optional; when present it must bound |g| (scalar) or be at least
// the model's own bound.

nlohmann::json to_json(const GFunction& g);
GFunction gfunction_from_json(const nlohmann::json& j, std::optional<double> bound = {});

nlohmann::json to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);
ModelSpec load_model_file(const std::string& path);

}  // namespace mfl
