#include "mfl/model_io.hpp"

#include <fstream>

#include "mfl/error.hpp"

namespace mfl {

using nlohmann::json;

json to_json(const GFunction& g) {
  const auto& rep = g.representation();
  if (const auto* p = std::get_if<GFunction::Polynomial>(&rep)) {
    return {{"type", "polynomial"}, {"coefficients", p->coefficients}};
  }
  if (const auto* t = std::get_if<GFunction::Tabulated>(&rep)) {
    return {{"type", "tabulated"}, {"x", t->x}, {"y", t->y}, {"lipschitz", t->lipschitz}};
  }
  return {{"type", "builtin"}, {"name", GFunction::builtin_name(std::get<GFunction::Builtin>(rep))}};
}

GFunction gfunction_from_json(const json& j, std::optional<double> bound) {
  if (!j.is_object() || !j.contains("type")) throw DomainError("g: expected an object with \"type\"");
  const auto type = j.at("type").get<std::string>();
  if (type == "polynomial") {
    return GFunction::polynomial(j.at("coefficients").get<std::vector<double>>(), bound);
  }
  if (type == "builtin") {
    const auto name = j.at("name").get<std::string>();
    const auto b = GFunction::builtin_from_name(name);
    if (!b) throw DomainError("g: unknown builtin \"" + name + "\"");
    return GFunction::builtin(*b, bound);
  }
  if (type == "tabulated") {
    return GFunction::tabulated(j.at("x").get<std::vector<double>>(), j.at("y").get<std::vector<double>>(),
                                j.at("lipschitz").get<double>(), bound);
  }
  throw DomainError("g: unknown type \"" + type + "\"");
}

json to_json(const ModelSpec& model) {
  const auto& rep = model.variant();
  json j;
  if (const auto* s = std::get_if<ModelSpec::ScalarMeanField>(&rep)) {
    j = {{"model", "scalar"}, {"g", to_json(s->g)}};
  } else if (const auto* p = std::get_if<ModelSpec::PSpinPlain>(&rep)) {
    j = {{"model", "pspin"}, {"p", p->p}};
  } else if (const auto* t = std::get_if<ModelSpec::PSpinTilde>(&rep)) {
    j = {{"model", "pspin-tilde"}, {"k", t->k}};
  } else if (const auto* r = std::get_if<ModelSpec::RandomFieldCW>(&rep)) {
    std::vector<int> h(r->h.begin(), r->h.end());
    j = {{"model", "rfcw"}, {"h", h}};
  } else {
    const auto& h = std::get<ModelSpec::Hopfield>(rep);
    const std::size_t n = h.xi.size() / static_cast<std::size_t>(h.patterns);
    json rows = json::array();
    for (int mu = 0; mu < h.patterns; ++mu) {
      const auto row = h.xi.begin() + static_cast<std::ptrdiff_t>(mu * n);
      rows.push_back(std::vector<int>(row, row + static_cast<std::ptrdiff_t>(n)));
    }
    j = {{"model", "hopfield"}, {"M", h.patterns}, {"xi", rows}};
  }
  j["K"] = model.bound();
  return j;
}

namespace {

std::vector<std::int8_t> pm_one_vector(const json& j, const char* what) {
  std::vector<std::int8_t> out;
  for (const auto& v : j) {
    const int x = v.get<int>();
    if (x != 1 && x != -1) throw DomainError(std::string(what) + " entries must be +1 or -1");
    out.push_back(static_cast<std::int8_t>(x));
  }
  return out;
}

}  // namespace

ModelSpec model_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("model")) {
      throw DomainError("model file: expected an object with a \"model\" discriminator");
    }
    const auto kind = j.at("model").get<std::string>();
    std::optional<double> k_decl;
    if (j.contains("K")) k_decl = j.at("K").get<double>();
    auto finish = [&](ModelSpec m) {
      if (k_decl && *k_decl < m.bound()) {
        throw DomainError("model file: declared K is below the model's bound");
      }
      return m;
    };
    if (kind == "scalar") return ModelSpec::scalar(gfunction_from_json(j.at("g"), k_decl));
    if (kind == "pspin" || kind == "cw") return finish(ModelSpec::pspin(j.at("p").get<int>()));
    if (kind == "pspin-tilde") {
      return finish(ModelSpec::pspin_tilde(j.contains("k") ? j.at("k").get<int>() : j.at("p").get<int>()));
    }
    if (kind == "rfcw") return finish(ModelSpec::random_field(pm_one_vector(j.at("h"), "h")));
    if (kind == "hopfield") {
      const int m = j.at("M").get<int>();
      const auto& rows = j.at("xi");
      if (!rows.is_array() || static_cast<int>(rows.size()) != m) {
        throw DomainError("model file: xi must have M rows");
      }
      std::vector<std::int8_t> xi;
      std::size_t width = 0;
      for (const auto& row : rows) {
        auto r = pm_one_vector(row, "xi");
        if (width == 0) width = r.size();
        if (r.size() != width) throw DomainError("model file: xi rows differ in length");
        xi.insert(xi.end(), r.begin(), r.end());
      }
      return finish(ModelSpec::hopfield(m, std::move(xi)));
    }
    throw DomainError("model file: unknown model \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw DomainError(std::string("model file: ") + e.what());
  }
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("malformed model file " + path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace mfl
