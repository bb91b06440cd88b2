#include "mfl/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mfl/brute_oracle.hpp"
#include "mfl/disorder.hpp"
#include "mfl/error.hpp"
#include "mfl/interpolator.hpp"
#include "mfl/limit_scan.hpp"
#include "mfl/model_io.hpp"
#include "mfl/parallel.hpp"
#include "mfl/sector.hpp"

namespace mfl {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kCommands{"alpha",    "condition", "interpolate",
                                      "converge", "disorder",  "oracle-check"};
const std::set<std::string> kModels{"cw", "pspin", "pspin-tilde", "scalar", "rfcw", "hopfield"};

std::optional<SplitSpec> explicit_split(const std::string& s) {
  if (s.empty() || s == "all") return std::nullopt;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("--split must be \"all\" or \"N1,N2\"");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    SplitSpec sp{std::stoi(a, &used1), std::stoi(b, &used2)};
    if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing");
    if (sp.n1 < 1 || sp.n2 < 1) throw DomainError("--split blocks must both be nonempty");
    return sp;
  } catch (const std::logic_error&) {
    throw DomainError("--split must be \"all\" or \"N1,N2\", got \"" + s + "\"");
  }
}

std::vector<SplitSpec> splits_for(const RunConfig& c, const ModelSpec& model, int n) {
  if (c.split == "all") return admissible_splits(model, n);
  if (const auto sp = explicit_split(c.split)) return {*sp};
  return {{n / 2, n - n / 2}};
}

bool is_disordered_selector(const RunConfig& c) {
  return !c.model_file && (c.model == "rfcw" || c.model == "hopfield");
}

std::vector<int> ladder_sizes(const RunConfig& c) {
  return c.sizes.empty() ? doubling_ladder() : c.sizes;
}

ordered_json fit_json(const LimitFit& f) {
  return {{"valid", f.valid}, {"points", f.points}, {"alpha_inf", f.alpha_inf},
          {"a", f.a},         {"b", f.b},           {"residual", f.residual}};
}

// Runs task(i) for every i and returns the results in index order.
template <class F>
std::vector<ordered_json> collect(std::size_t count, int workers, F&& task) {
  std::vector<ordered_json> slots(count);
  parallel_for(count, workers, [&](std::size_t i) { slots[i] = task(i); });
  return slots;
}

struct Job {
  int n;
  double beta;
  SplitSpec split{};
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["model_file"] = c.model_file ? ordered_json(*c.model_file) : ordered_json(nullptr);
  j["p"] = c.p;
  j["g"] = c.g;
  j["coeffs"] = c.coeffs;
  j["K"] = c.K ? ordered_json(*c.K) : ordered_json(nullptr);
  j["M"] = c.patterns;
  j["beta"] = c.betas;
  j["N"] = c.sizes;
  j["split"] = c.split;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["t_points"] = c.t_points;
  j["tolerance"] = c.tolerance ? ordered_json(*c.tolerance) : ordered_json(nullptr);
  j["out"] = c.out;
  j["format"] = c.format;
  j["workers"] = c.workers;
  return j;
}

RunConfig config_from_json(const ordered_json& j) {
  static const std::set<std::string> known{"command", "model",   "model_file", "p",        "g",
                                           "coeffs",  "K",       "M",          "beta",     "N",
                                           "split",   "seed",    "samples",    "t_points", "tolerance",
                                           "out",     "format",  "workers"};
  if (!j.is_object()) throw DomainError("run config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw DomainError("unknown run config key \"" + key + "\"");
  }
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    if (j.contains("model")) c.model = j["model"].get<std::string>();
    if (j.contains("model_file") && !j["model_file"].is_null()) c.model_file = j["model_file"].get<std::string>();
    if (j.contains("p")) c.p = j["p"].get<int>();
    if (j.contains("g")) c.g = j["g"].get<std::string>();
    if (j.contains("coeffs")) c.coeffs = j["coeffs"].get<std::vector<double>>();
    if (j.contains("K") && !j["K"].is_null()) c.K = j["K"].get<double>();
    if (j.contains("M")) c.patterns = j["M"].get<int>();
    if (j.contains("beta")) c.betas = j["beta"].get<std::vector<double>>();
    if (j.contains("N")) c.sizes = j["N"].get<std::vector<int>>();
    if (j.contains("split")) c.split = j["split"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("t_points")) c.t_points = j["t_points"].get<int>();
    if (j.contains("tolerance") && !j["tolerance"].is_null()) c.tolerance = j["tolerance"].get<double>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("workers")) c.workers = j["workers"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("run config: ") + e.what());
  }
  return c;
}

void validate(const RunConfig& c) {
  if (!kCommands.contains(c.command)) throw DomainError("unknown command \"" + c.command + "\"");
  if (!c.model_file && !kModels.contains(c.model)) throw DomainError("unknown model \"" + c.model + "\"");
  if (c.format != "json" && c.format != "csv") throw DomainError("--format must be json or csv");
  if (c.betas.empty()) throw DomainError("at least one --beta is required");
  for (double b : c.betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("beta must be finite and >= 0");
  }
  if (c.sizes.empty() && c.command != "converge") throw DomainError("--N is required for " + c.command);
  for (int n : c.sizes) {
    if (n < 1) throw DomainError("N must be >= 1");
  }
  if (c.p < 1) throw DomainError("--p must be >= 1");
  if (c.patterns < 1) throw DomainError("--M must be >= 1");
  if (c.t_points < 2) throw DomainError("--t-points must be >= 2");
  if (c.workers < 0) throw DomainError("workers must be >= 0");
  if (c.tolerance && !(*c.tolerance >= 0.0)) throw DomainError("--tol must be >= 0");
  if (c.model == "scalar" && c.coeffs.empty() && !GFunction::builtin_from_name(c.g)) {
    throw DomainError("unknown builtin g \"" + c.g + "\"");
  }
  if (const auto sp = explicit_split(c.split)) {
    for (int n : c.sizes) {
      if (sp->total() != n) throw DomainError("--split does not partition N = " + std::to_string(n));
    }
  }
  if (c.command == "converge") {
    const auto sizes = ladder_sizes(c);
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      if (sizes[i] <= sizes[i - 1]) throw DomainError("converge: N values must be strictly increasing");
    }
  }
  if (c.command == "disorder") {
    if (!is_disordered_selector(c)) throw DomainError("disorder requires --model rfcw or hopfield");
    if (c.split == "all") throw DomainError("disorder takes a single split");
    if (c.samples < 2) throw DomainError("--samples must be >= 2");
    for (int n : c.sizes) {
      if (n < 2) throw DomainError("disorder needs N >= 2");
    }
  }
  if (c.command == "oracle-check") {
    for (int n : c.sizes) {
      if (n > kOracleMaxSize) {
        throw DomainError("oracle-check is limited to N <= " + std::to_string(kOracleMaxSize));
      }
    }
  }
}

ModelSpec make_model(const RunConfig& c, int n) {
  if (c.model_file) {
    auto m = load_model_file(*c.model_file);
    if (const auto f = m.fixed_size(); f && *f != n) {
      if (n > *f) throw DomainError("N exceeds the disorder length of the model file");
      m = m.restrict(0, n);
    }
    return m;
  }
  if (c.model == "cw" || c.model == "pspin") return ModelSpec::pspin(c.p);
  if (c.model == "pspin-tilde") return ModelSpec::pspin_tilde(c.p);
  if (c.model == "scalar") {
    if (!c.coeffs.empty()) return ModelSpec::scalar(GFunction::polynomial(c.coeffs, c.K));
    return ModelSpec::scalar(GFunction::builtin(*GFunction::builtin_from_name(c.g), c.K));
  }
  if (c.model == "rfcw") return sample_disorder(c.seed, DisorderKind::RandomField, n).model();
  if (c.model == "hopfield") return sample_disorder(c.seed, DisorderKind::Patterns, n, c.patterns).model();
  throw DomainError("unknown model \"" + c.model + "\"");
}

namespace {

void run_alpha(const RunConfig& c, RunResult& r) {
  std::vector<Job> jobs;
  for (int n : c.sizes) {
    for (double b : c.betas) jobs.push_back({n, b});
  }
  std::map<int, ModelSpec> models;
  for (int n : c.sizes) models.emplace(n, make_model(c, n));
  auto rows = collect(jobs.size(), c.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& model = models.at(job.n);
    const auto table = build_model_table(model, job.n);
    const auto s = alpha(model, table, job.beta);
    const double max_g = max_achievable_g(model, job.n);
    const double lower = job.beta * max_g;
    const double upper = std::log(2.0) + job.beta * model.bound();
    const double slack = 1e-12 * std::max(1.0, std::abs(lower) + std::abs(upper));
    ordered_json row{{"N", job.n},
                     {"beta", job.beta},
                     {"alpha", s.alpha},
                     {"log_z", s.log_z},
                     {"energy_density", s.expectations.at("energy_density")},
                     {"m_sq", s.expectations.at("m_sq")},
                     {"max_g", max_g},
                     {"sectors", table.size()},
                     {"bounds_ok", s.alpha >= lower - slack && s.alpha <= upper + slack}};
    return row;
  });
  for (const auto& row : rows) {
    if (!row["bounds_ok"].get<bool>()) {
      r.violations.push_back("alpha outside [beta max g, ln 2 + beta K] at N=" + row["N"].dump() +
                             " beta=" + row["beta"].dump());
    }
  }
  r.report["rows"] = rows;
}

void run_condition(const RunConfig& c, RunResult& r) {
  std::vector<Job> jobs;
  std::map<int, ModelSpec> models;
  for (int n : c.sizes) {
    const auto& model = models.emplace(n, make_model(c, n)).first->second;
    for (double b : c.betas) {
      for (const auto& sp : splits_for(c, model, n)) jobs.push_back({n, b, sp});
    }
  }
  auto rows = collect(jobs.size(), c.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& model = models.at(job.n);
    const auto cr = condition_check(model, job.split, job.beta, c.tolerance);
    const bool tilde = std::holds_alternative<ModelSpec::PSpinTilde>(model.variant());
    ordered_json row{{"N", job.n},
                     {"beta", job.beta},
                     {"n1", job.split.n1},
                     {"n2", job.split.n2},
                     {"gap", cr.gap},
                     {"tolerance", cr.tolerance},
                     {"satisfied", cr.satisfied},
                     {"guaranteed", model.condition_guaranteed()}};
    if (tilde) row["equality"] = std::abs(cr.gap) <= c.tolerance.value_or(1e-9);
    return row;
  });
  for (const auto& row : rows) {
    const bool guaranteed = row["guaranteed"].get<bool>();
    const bool ok = row["satisfied"].get<bool>() && row.value("equality", true);
    if (guaranteed && !ok) {
      r.violations.push_back("condition gap " + row["gap"].dump() + " at N=" + row["N"].dump() +
                             " split " + row["n1"].dump() + "," + row["n2"].dump() +
                             " beta=" + row["beta"].dump());
    }
  }
  r.report["rows"] = rows;
}

void run_interpolate(const RunConfig& c, RunResult& r) {
  std::vector<Job> jobs;
  std::map<int, ModelSpec> models;
  for (int n : c.sizes) {
    const auto& model = models.emplace(n, make_model(c, n)).first->second;
    for (double b : c.betas) {
      for (const auto& sp : splits_for(c, model, n)) jobs.push_back({n, b, sp});
    }
  }
  const auto grid = uniform_grid(c.t_points);
  auto results = collect(jobs.size(), c.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& model = models.at(job.n);
    const auto rep = interpolate(model, job.split, job.beta, grid);
    const auto checks = check_report(rep);
    const auto sign = sign_propagation_check(model, job.split, job.beta, grid);
    const double tol = c.tolerance.value_or(1e-10 * job.n);
    ordered_json s{{"N", job.n},
                   {"beta", job.beta},
                   {"n1", job.split.n1},
                   {"n2", job.split.n2},
                   {"condition_gap", rep.condition_gap},
                   {"condition_satisfied", rep.condition_gap >= -tol},
                   {"guaranteed", model.condition_guaranteed()},
                   {"alpha_one", rep.alpha_one},
                   {"alpha_zero", rep.alpha_zero},
                   {"alpha_full", rep.alpha_full},
                   {"alpha_n1", rep.alpha_n1},
                   {"alpha_n2", rep.alpha_n2},
                   {"block_average", rep.block_average},
                   {"boundary_one", checks.boundary_one},
                   {"boundary_zero", checks.boundary_zero},
                   {"convex", checks.convex},
                   {"monotone", checks.monotone},
                   {"sign_propagation_applicable", sign.applicable},
                   {"sign_propagation_holds", sign.holds}};
    ordered_json points = ordered_json::array();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      points.push_back({{"N", job.n},
                        {"beta", job.beta},
                        {"n1", job.split.n1},
                        {"n2", job.split.n2},
                        {"t", grid[k]},
                        {"alpha", rep.alpha_t[k]},
                        {"dalpha", rep.dalpha[k]},
                        {"d2alpha", rep.d2alpha[k]}});
    }
    return ordered_json{{"summary", s}, {"points", points}};
  });
  ordered_json summaries = ordered_json::array(), rows = ordered_json::array();
  for (const auto& res : results) {
    const auto& s = res["summary"];
    const std::string where = " at N=" + s["N"].dump() + " split " + s["n1"].dump() + "," +
                              s["n2"].dump() + " beta=" + s["beta"].dump();
    for (const char* key : {"boundary_one", "boundary_zero", "convex", "monotone"}) {
      if (!s[key].get<bool>()) r.violations.push_back(std::string(key) + " check failed" + where);
    }
    if (s["guaranteed"].get<bool>() && !s["condition_satisfied"].get<bool>()) {
      r.violations.push_back("condition gap " + s["condition_gap"].dump() + where);
    }
    summaries.push_back(s);
    for (const auto& p : res["points"]) rows.push_back(p);
  }
  r.report["summaries"] = summaries;
  r.report["rows"] = rows;
}

void run_converge(const RunConfig& c, RunResult& r) {
  const auto sizes = ladder_sizes(c);
  const auto model = make_model(c, sizes.back());
  auto series = collect(c.betas.size(), c.workers, [&](std::size_t i) {
    const double beta = c.betas[i];
    const auto s = ladder(model, sizes, beta);
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < s.sizes.size(); ++k) {
      rows.push_back({{"N", s.sizes[k]},
                      {"beta", beta},
                      {"alpha", s.alpha[k]},
                      {"running_inf", s.running_inf[k]},
                      {"max_g", s.max_sector_g[k]}});
    }
    ordered_json summary{{"beta", beta},
                         {"limit_estimate", s.limit_estimate},
                         {"fit", fit_json(s.fit)},
                         {"oracle_value", s.oracle_value ? ordered_json(*s.oracle_value) : ordered_json(nullptr)}};
    return ordered_json{{"summary", summary}, {"rows", rows}};
  });
  const bool monotone_expected = model.condition_guaranteed() && !model.disordered();
  ordered_json summaries = ordered_json::array(), rows = ordered_json::array();
  for (const auto& s : series) {
    const auto& pts = s["rows"];
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double beta = pts[k]["beta"].get<double>();
      const double a = pts[k]["alpha"].get<double>();
      const double lower = beta * pts[k]["max_g"].get<double>();
      if (a < lower - 1e-12 * std::max(1.0, std::abs(lower))) {
        r.violations.push_back("alpha below beta max g at N=" + pts[k]["N"].dump());
      }
      if (monotone_expected && k > 0 && pts[k]["N"].get<int>() == 2 * pts[k - 1]["N"].get<int>() &&
          a > pts[k - 1]["alpha"].get<double>() + 1e-11) {
        r.violations.push_back("alpha increased under doubling at N=" + pts[k]["N"].dump() +
                               " beta=" + pts[k]["beta"].dump());
      }
      rows.push_back(pts[k]);
    }
    summaries.push_back(s["summary"]);
  }
  r.report["summaries"] = summaries;
  r.report["rows"] = rows;
}

void run_disorder(const RunConfig& c, RunResult& r) {
  const auto kind = c.model == "rfcw" ? DisorderKind::RandomField : DisorderKind::Patterns;
  ordered_json summaries = ordered_json::array(), rows = ordered_json::array();
  for (int n : c.sizes) {
    for (double beta : c.betas) {
      QuenchedOptions opt;
      opt.patterns = c.patterns;
      opt.split = explicit_split(c.split);
      opt.workers = c.workers;
      const auto q = quenched_average(kind, n, beta, c.samples, c.seed, opt);
      summaries.push_back({{"N", n},
                           {"beta", beta},
                           {"kind", to_string(kind)},
                           {"samples", q.sample_count},
                           {"mean_alpha", q.mean_alpha},
                           {"std_error", q.std_error},
                           {"subadditivity_failures", q.per_sample_subadditivity_failures}});
      for (std::size_t i = 0; i < q.samples.size(); ++i) {
        const auto& s = q.samples[i];
        rows.push_back({{"N", n},
                        {"beta", beta},
                        {"sample", i},
                        {"seed", s.seed},
                        {"n1", s.split.n1},
                        {"n2", s.split.n2},
                        {"alpha_n", s.alpha_n},
                        {"alpha_n1", s.alpha_n1},
                        {"alpha_n2", s.alpha_n2},
                        {"slack", s.slack},
                        {"failed", s.failed}});
      }
      if (q.per_sample_subadditivity_failures > 0) {
        r.violations.push_back(std::to_string(q.per_sample_subadditivity_failures) +
                               " pointwise subadditivity failures at N=" + std::to_string(n) +
                               " beta=" + fmt(beta));
      }
    }
  }
  r.report["summaries"] = summaries;
  r.report["rows"] = rows;
}

void run_oracle_check(const RunConfig& c, RunResult& r) {
  std::vector<Job> jobs;
  std::map<int, ModelSpec> models;
  for (int n : c.sizes) {
    models.emplace(n, make_model(c, n));
    for (double b : c.betas) jobs.push_back({n, b});
  }
  const double tol = c.tolerance.value_or(1e-12);
  auto rows = collect(jobs.size(), c.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& model = models.at(job.n);
    const double sector = alpha(model, build_model_table(model, job.n), job.beta).alpha;
    const double brute = oracle_alpha(model, job.n, job.beta);
    return ordered_json{{"N", job.n},
                        {"beta", job.beta},
                        {"alpha_sector", sector},
                        {"alpha_brute", brute},
                        {"difference", std::abs(sector - brute)},
                        {"agree", std::abs(sector - brute) <= tol}};
  });
  for (const auto& row : rows) {
    if (!row["agree"].get<bool>()) {
      r.violations.push_back("sector and brute-force alpha differ by " + row["difference"].dump() +
                             " at N=" + row["N"].dump() + " beta=" + row["beta"].dump());
    }
  }
  r.report["rows"] = rows;
}

}  // namespace

RunResult execute(const RunConfig& c) {
  validate(c);
  RunResult r;
  r.report["command"] = c.command;
  r.report["config"] = to_json(c);
  {
    const int n = c.sizes.empty() ? ladder_sizes(c).back() : c.sizes.front();
    r.report["model"] = to_json(make_model(c, n));
  }
  if (c.command == "alpha") run_alpha(c, r);
  else if (c.command == "condition") run_condition(c, r);
  else if (c.command == "interpolate") run_interpolate(c, r);
  else if (c.command == "converge") run_converge(c, r);
  else if (c.command == "disorder") run_disorder(c, r);
  else run_oracle_check(c, r);
  r.exit_code = r.violations.empty() ? kExitOk : kExitViolation;
  r.report["violations"] = r.violations;
  r.report["status"] = r.violations.empty() ? "ok" : "violation";
  return r;
}

std::string render(const RunConfig& c, const RunResult& result) {
  if (c.format == "json") return result.report.dump(2) + "\n";
  std::ostringstream os;
  const auto& rows = result.report["rows"];
  if (rows.empty()) return "";
  bool first = true;
  for (const auto& [key, value] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << "\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      os << (first ? "" : ",");
      first = false;
      if (value.is_number_float()) os << fmt(value.get<double>());
      else if (value.is_string()) os << value.get<std::string>();
      else os << value.dump();
    }
    os << "\n";
  }
  return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw DomainError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DomainError("cannot replace " + path);
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto result = execute(config);
    const auto text = render(config, result);
    if (config.out.empty()) {
      out << text;
    } else {
      write_atomically(config.out, text);
    }
    for (const auto& v : result.violations) err << "violation: " << v << "\n";
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace mfl
