// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mfl/brute_oracle.hpp"
#include "mfl/disorder.hpp"
#include "mfl/interpolator.hpp"
#include "mfl/limit_scan.hpp"
#include "mfl/sector.hpp"
#include "mfl/symmetric_pspin.hpp"
#include "oracles.hpp"

using mfl::DisorderKind;
using mfl::GFunction;
using mfl::ModelSpec;
using mfl::SplitSpec;

namespace {

using Clock = std::chrono::steady_clock;
using RealG = std::function<long double(long double)>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<double> kBetas{0.0, 0.5, 1.0, 2.0, 5.0};

std::vector<double> random_coefficients(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = u(rng);
  return c;
}

long double horner(const std::vector<double>& c, long double x) {
  long double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

ModelSpec random_field(std::uint64_t seed, int n) {
  return mfl::sample_disorder(seed, DisorderKind::RandomField, n).model();
}

ModelSpec patterns(std::uint64_t seed, int n, int m) {
  return mfl::sample_disorder(seed, DisorderKind::Patterns, n, m).model();
}

double sector_alpha(const ModelSpec& m, int n, double beta) {
  return mfl::alpha(m, mfl::build_model_table(m, n), beta).alpha;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// 1. Sector engine against configuration enumeration.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::vector<ModelSpec> fixed;
  for (int degree = 1; degree <= 6; ++degree) {
    fixed.push_back(ModelSpec::scalar(GFunction::polynomial(random_coefficients(rng, degree))));
  }
  fixed.push_back(ModelSpec::scalar(GFunction::monomial(6)));
  for (int p : {2, 3, 4}) fixed.push_back(ModelSpec::pspin(p));

  double worst = 0.0;
  long cases = 0;
  auto compare = [&](const ModelSpec& m, int n) {
    for (double beta : kBetas) {
      worst = std::max(worst, std::abs(sector_alpha(m, n, beta) - mfl::oracle_alpha(m, n, beta)));
      ++cases;
    }
  };
  for (int n = 1; n <= 14; ++n) {
    for (const auto& m : fixed) compare(m, n);
    for (int k : {2, 3, 4}) {
      if (k < n) compare(ModelSpec::pspin_tilde(k), n);
    }
    for (std::uint64_t s = 0; s < 3; ++s) {
      compare(random_field(mfl::derive_seed(11, 100 * n + s), n), n);
      compare(patterns(mfl::derive_seed(12, 100 * n + s), n, 1), n);
      compare(patterns(mfl::derive_seed(13, 100 * n + s), n, 2), n);
    }
  }
  return {worst <= 1e-12, fmt("%.0f cases, max |diff| %.2e", double(cases), worst)};
}

// Convex models of the split grid, for one N.
std::vector<ModelSpec> convex_models(int n) {
  std::vector<ModelSpec> out{ModelSpec::pspin(2), ModelSpec::scalar(GFunction::monomial(4)),
                             ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::SquareMinusX))};
  for (std::uint64_t s = 0; s < 4; ++s) {
    out.push_back(random_field(mfl::derive_seed(21, 100 * n + s), n));
    out.push_back(patterns(mfl::derive_seed(22, 100 * n + s), n, 2));
    out.push_back(patterns(mfl::derive_seed(23, 100 * n + s), n, 3));
  }
  return out;
}

// 2. Condition gap on every split.
Outcome condition_grid() {
  double worst_scaled = INFINITY;
  double worst_tilde = 0.0;
  long cases = 0;
  bool ok = true;
  for (int n = 2; n <= 16; ++n) {
    for (const auto& m : convex_models(n)) {
      for (const auto& s : mfl::admissible_splits(m, n)) {
        const mfl::Interpolation interp(m, s);
        for (double beta : kBetas) {
          const double gap = interp.condition_gap(beta);
          ok = ok && gap >= -1e-10 * n;
          worst_scaled = std::min(worst_scaled, gap / n);
          ++cases;
        }
      }
    }
    for (int k : {2, 3, 4}) {
      if (k >= n) continue;
      const auto m = ModelSpec::pspin_tilde(k);
      for (const auto& s : mfl::admissible_splits(m, n)) {
        for (double beta : kBetas) {
          const double gap = mfl::condition_check(m, s, beta).gap;
          ok = ok && std::abs(gap) <= 1e-9;
          worst_tilde = std::max(worst_tilde, std::abs(gap));
          ++cases;
        }
      }
    }
  }
  return {ok, fmt("%.0f cases, min gap/N %.2e, max tilde |gap| %.2e", double(cases), worst_scaled, worst_tilde)};
}

// 3. Interpolation: convexity in t, analytic slope, boundary identities.
Outcome interpolation_chain() {
  struct Scalar {
    ModelSpec model;
    RealG g;
  };
  const std::vector<Scalar> scalars{
      {ModelSpec::pspin(2), [](long double x) { return x * x; }},
      {ModelSpec::scalar(GFunction::monomial(4)), [](long double x) { return x * x * x * x; }},
      {ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::SquareMinusX)),
       [](long double x) { return x * x - x; }}};
  const auto grid = mfl::uniform_grid(21);
  const double h = 1e-5;
  double min_d2 = INFINITY, slope_err = 0.0, boundary_err = 0.0;
  bool ok = true;

  auto run = [&](const ModelSpec& m, SplitSpec s, double beta, const RealG* g) {
    const auto rep = mfl::interpolate(m, s, beta, grid);
    const mfl::Interpolation interp(m, s);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      min_d2 = std::min(min_d2, rep.d2alpha[i]);
      ok = ok && rep.d2alpha[i] >= -1e-10;
      const double t = std::clamp(grid[i], h, 1.0 - h);
      const double fd =
          g ? static_cast<double>((oracle::split_alpha(*g, s.n1, s.n2, beta, t + h) -
                                   oracle::split_alpha(*g, s.n1, s.n2, beta, t - h)) /
                                  (2 * h))
            : (interp.alpha(beta, t + h) - interp.alpha(beta, t - h)) / (2 * h);
      const double err = std::abs(interp.evaluate(beta, t).dalpha - fd);
      slope_err = std::max(slope_err, err);
      ok = ok && err <= 1e-6;
    }
    const int n = s.total();
    const double full = sector_alpha(m, n, beta);
    const double blocks =
        (mfl::block_log_partition(m, 0, s.n1, beta) + mfl::block_log_partition(m, s.n1, n, beta)) / n;
    const double b = std::max(std::abs(rep.alpha_t.back() - full), std::abs(rep.alpha_t.front() - blocks));
    boundary_err = std::max(boundary_err, b);
    ok = ok && b <= 1e-11;
  };

  for (int n = 2; n <= 16; ++n) {
    for (const auto& c : scalars) {
      for (const auto& s : mfl::admissible_splits(c.model, n)) {
        for (double beta : kBetas) run(c.model, s, beta, &c.g);
      }
    }
    const auto models = convex_models(n);
    for (std::size_t j = 3; j < models.size(); ++j) {
      for (const auto& s : mfl::admissible_splits(models[j], n)) {
        for (double beta : kBetas) run(models[j], s, beta, nullptr);
      }
    }
    for (int k : {2, 3, 4}) {
      if (k >= n) continue;
      const auto m = ModelSpec::pspin_tilde(k);
      for (const auto& s : mfl::admissible_splits(m, n)) {
        for (double beta : kBetas) run(m, s, beta, nullptr);
      }
    }
  }
  return {ok, fmt("min alpha'' %.2e, max slope error %.2e, max boundary error %.2e", min_d2, slope_err,
                  boundary_err)};
}

// Maximizes beta m^2 + s(m) over [0, 1] in long double: coarse scan, then ternary search.
long double square_limit(long double beta) {
  auto f = [&](long double m) {
    auto xlogx = [](long double x) { return x > 0 ? x * std::log(x) : 0.0L; };
    return beta * m * m - xlogx((1 + m) / 2) - xlogx((1 - m) / 2);
  };
  const int grid = 100000;
  int best = 0;
  for (int i = 1; i <= grid; ++i) {
    if (f(static_cast<long double>(i) / grid) > f(static_cast<long double>(best) / grid)) best = i;
  }
  long double lo = std::max(0, best - 1) / static_cast<long double>(grid);
  long double hi = std::min(grid, best + 1) / static_cast<long double>(grid);
  for (int it = 0; it < 200; ++it) {
    const long double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    (f(a) < f(b) ? lo : hi) = f(a) < f(b) ? a : b;
  }
  return f((lo + hi) / 2);
}

// 4. Monotone doubling ladder and the limit of x^2.
Outcome convergence() {
  const auto sizes = mfl::doubling_ladder(25, 12800);
  const std::vector<ModelSpec> models{ModelSpec::pspin(2), ModelSpec::scalar(GFunction::monomial(4)),
                                      ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::SquareMinusX)),
                                      ModelSpec::pspin_tilde(2), ModelSpec::pspin_tilde(3),
                                      ModelSpec::pspin_tilde(4)};
  double worst_rise = -INFINITY;
  for (const auto& m : models) {
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      const auto s = mfl::ladder(m, sizes, beta);
      for (std::size_t i = 1; i < s.alpha.size(); ++i) worst_rise = std::max(worst_rise, s.alpha[i] - s.alpha[i - 1]);
    }
  }
  double limit_err = 0.0;
  for (double beta : {0.5, 2.0}) {
    const double a = sector_alpha(ModelSpec::pspin(2), 10000, beta);
    limit_err = std::max(limit_err, std::abs(a - static_cast<double>(square_limit(beta))));
  }
  return {worst_rise <= 1e-11 && limit_err <= 1e-3,
          fmt("max rise under doubling %.2e, |alpha(1e4) - limit| %.2e", worst_rise, limit_err)};
}

// 5. Lipschitz dependence of alpha on g.
Outcome bounded_perturbation() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> deg(0, 6);
  double worst_ratio = 0.0;
  bool ok = true;
  for (int pair = 0; pair < 20; ++pair) {
    const auto c1 = random_coefficients(rng, deg(rng));
    const auto c2 = random_coefficients(rng, deg(rng));
    long double sup = 0;
    for (int i = 0; i <= 200000; ++i) {
      const long double x = -1 + i / 100000.0L;
      sup = std::max(sup, std::abs(horner(c1, x) - horner(c2, x)));
    }
    const auto a = ModelSpec::scalar(GFunction::polynomial(c1));
    const auto b = ModelSpec::scalar(GFunction::polynomial(c2));
    for (int n : {10, 100, 1000}) {
      const auto table = mfl::build_scalar_table(n);
      for (double beta : {0.5, 1.0, 2.0, 5.0}) {
        const double diff = std::abs(mfl::alpha(a, table, beta).alpha - mfl::alpha(b, table, beta).alpha);
        const double bound = beta * static_cast<double>(sup);
        ok = ok && diff <= bound + 1e-12;
        if (bound > 0) worst_ratio = std::max(worst_ratio, diff / bound);
      }
    }
  }
  return {ok, fmt("max |dalpha| / (beta sup|dg|) = %.4f", worst_ratio)};
}

// 6. Symmetrized p-spin arithmetic.
Outcome symmetrization() {
  long mismatches = 0, checked = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= std::min(4, n); ++k) {
      oracle::for_each_configuration(n, [&](const std::vector<int>& s) {
        long sum = 0;
        for (int x : s) sum += x;
        mismatches += mfl::distinct_tuple_sum(n, sum, k).value != oracle::distinct_tuples(s, k);
        ++checked;
      });
    }
  }
  double worst_growth = 0.0;
  for (int k : {2, 3, 4}) {
    const double base = mfl::correction_gap(50, k);
    for (int n = 50; n <= 800; n += 10) worst_growth = std::max(worst_growth, mfl::correction_gap(n, k) / base);
  }
  return {mismatches == 0 && worst_growth <= 2.0,
          fmt("%.0f tuple sums, %.0f mismatches, max gap ratio %.4f", double(checked), double(mismatches),
              worst_growth)};
}

// 7. Disordered models.
Outcome disorder() {
  long failures = 0, checks = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    for (int n : {6, 12, 18, 24}) {
      const auto rf = random_field(mfl::derive_seed(71, i), n);
      const auto hop = patterns(mfl::derive_seed(72, i), n, 2);
      for (int n1 = 1; n1 < n; ++n1) {
        for (double beta : {0.5, 1.0, 2.0}) {
          failures += mfl::pointwise_subadditivity(rf, {n1, n - n1}, beta).failed;
          failures += mfl::pointwise_subadditivity(hop, {n1, n - n1}, beta).failed;
          checks += 2;
        }
      }
    }
  }
  double spread = 0.0;
  for (int n : {8, 16, 24}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::uint64_t i = 0; i < 100; ++i) {
        const double a = sector_alpha(patterns(mfl::derive_seed(73, i), n, 1), n, beta);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      spread = std::max(spread, hi - lo);
    }
  }
  bool identical = true;
  for (auto [kind, m] : {std::pair{DisorderKind::RandomField, 1}, std::pair{DisorderKind::Patterns, 2}}) {
    mfl::QuenchedOptions base;
    base.patterns = m;
    base.workers = 1;
    const auto ref = mfl::quenched_average(kind, 20, 1.0, 100, 4242, base);
    for (int w : {2, 4, 8}) {
      auto opt = base;
      opt.workers = w;
      const auto q = mfl::quenched_average(kind, 20, 1.0, 100, 4242, opt);
      identical = identical && same_bits(q.mean_alpha, ref.mean_alpha) && same_bits(q.std_error, ref.std_error) &&
                  q.samples.size() == ref.samples.size();
      for (std::size_t i = 0; identical && i < q.samples.size(); ++i) {
        identical = q.samples[i].seed == ref.samples[i].seed && same_bits(q.samples[i].alpha_n, ref.samples[i].alpha_n) &&
                    same_bits(q.samples[i].slack, ref.samples[i].slack);
      }
    }
  }
  return {failures == 0 && spread <= 1e-12 && identical,
          fmt("%.0f pointwise checks, %.0f failures, M=1 spread %.2e", double(checks), double(failures), spread) +
              (identical ? ", bit-identical across workers" : ", worker-count dependence")};
}

template <class F>
double seconds(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 8. Runtime at scale.
Outcome performance() {
  double a = 0.0;
  const double scalar_s = seconds([&] { a = sector_alpha(ModelSpec::pspin(2), 100000, 1.0); });
  mfl::InterpolationReport rep;
  const double interp_s = seconds([&] { rep = mfl::interpolate(ModelSpec::pspin(2), {1000, 1000}, 1.0); });
  const bool sane = std::isfinite(a) && rep.alpha_t.size() == 21 && mfl::check_report(rep).all();
  return {sane && scalar_s <= 1.0 && interp_s <= 30.0,
          fmt("alpha at N=1e5 %.3f s, interpolation N=2000 x 21 points %.3f s", scalar_s, interp_s)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double budget;  // seconds; 0 means none
  };
  const Criterion criteria[] = {
      {"oracle equivalence", oracle_equivalence, 60.0},
      {"condition gap", condition_grid, 120.0},
      {"interpolation chain", interpolation_chain, 0.0},
      {"convergence", convergence, 0.0},
      {"bounded perturbation", bounded_perturbation, 0.0},
      {"symmetrization", symmetrization, 0.0},
      {"disorder", disorder, 0.0},
      {"performance", performance, 0.0},
  };
  int failed = 0;
  int id = 0;
  for (const auto& c : criteria) {
    ++id;
    Outcome out;
    const double elapsed = seconds([&] {
      try {
        out = c.run();
      } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
      }
    });
    const bool pass = out.pass && (c.budget == 0.0 || elapsed <= c.budget);
    failed += !pass;
    std::printf("criterion %d (%s): %s  [%s; %.2f s]\n", id, c.name, pass ? "PASS" : "FAIL", out.detail.c_str(),
                elapsed);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
