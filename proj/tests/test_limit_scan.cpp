#include <doctest.h>

#include <cmath>

#include "mfl/disorder.hpp"
#include "mfl/error.hpp"
#include "mfl/limit_scan.hpp"
#include "mfl/sector.hpp"

using mfl::GFunction;
using mfl::ModelSpec;

TEST_SUITE("variational oracle") {
  TEST_CASE("entropy") {
    CHECK(mfl::binary_entropy(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(mfl::binary_entropy(1.0) == 0.0);
    CHECK(mfl::binary_entropy(-1.0) == 0.0);
    CHECK(mfl::binary_entropy(0.5) == doctest::Approx(-0.75 * std::log(0.75) - 0.25 * std::log(0.25)));
  }

  TEST_CASE("infinite temperature and continuity") {
    const auto sq = GFunction::monomial(2);
    CHECK(mfl::variational_oracle(sq, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    double prev = mfl::variational_oracle(sq, 1e-2);
    for (double beta : {1e-3, 1e-4, 1e-6}) {
      const double v = mfl::variational_oracle(sq, beta);
      CHECK(v <= prev);
      CHECK(v - std::log(2.0) <= 2 * beta);
      prev = v;
    }
  }

  TEST_CASE("x^2 against 40-digit root finding") {
    // max of beta m^2 + s(m) through 2 beta m = atanh(m).
    const auto sq = GFunction::monomial(2);
    CHECK(mfl::variational_oracle(sq, 0.5) == doctest::Approx(0.69314718055994530942).epsilon(1e-14));
    CHECK(mfl::variational_oracle(sq, 2.0) == doctest::Approx(2.0003363109110704836).epsilon(1e-14));
    CHECK(mfl::variational_oracle(sq, 3.0) == doctest::Approx(3.0000061446465551251).epsilon(1e-14));
    CHECK(mfl::variational_oracle(sq, 2.0) > std::log(2.0) + 1.0);
  }

  TEST_CASE("negative beta is rejected") {
    CHECK_THROWS_AS(mfl::variational_oracle(GFunction::monomial(2), -0.1), mfl::DomainError);
  }
}

TEST_SUITE("ladder") {
  TEST_CASE("infinite temperature is constant") {
    const auto sizes = mfl::doubling_ladder(25, 800);
    const auto s = mfl::ladder(ModelSpec::pspin(2), sizes, 0.0);
    for (double a : s.alpha) CHECK(a == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }

  TEST_CASE("default doubling ladder") {
    const auto d = mfl::doubling_ladder();
    CHECK(d.front() == 25);
    CHECK(d.back() == 12800);
    CHECK(d.size() == 10);
    CHECK_THROWS_AS(mfl::doubling_ladder(0, 10), mfl::DomainError);
  }

  TEST_CASE("nonincreasing under doubling for convex and symmetrized models") {
    const auto sizes = mfl::doubling_ladder();
    const std::vector<ModelSpec> models{ModelSpec::pspin(2), ModelSpec::pspin(4),
                                        ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::SquareMinusX)),
                                        ModelSpec::pspin_tilde(3)};
    for (const auto& m : models) {
      for (double beta : {0.3, 1.0, 2.5}) {
        const auto s = mfl::ladder(m, sizes, beta);
        for (std::size_t i = 1; i < s.alpha.size(); ++i) CHECK(s.alpha[i] <= s.alpha[i - 1] + 1e-11);
      }
    }
  }

  TEST_CASE("running infimum and the lower bound") {
    const std::vector<int> sizes{3, 4, 7, 20, 41};
    const auto m = ModelSpec::pspin(3);
    const auto s = mfl::ladder(m, sizes, 1.5);
    double inf = INFINITY;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      inf = std::min(inf, s.alpha[i]);
      CHECK(s.running_inf[i] == inf);
      CHECK(s.alpha[i] >= 1.5 * s.max_sector_g[i]);
      CHECK(s.max_sector_g[i] == doctest::Approx(1.0));
    }
    CHECK(s.oracle_value.has_value());
  }

  TEST_CASE("high temperature Curie-Weiss approaches the oracle") {
    auto sizes = mfl::doubling_ladder(25, 6400);
    sizes.push_back(10000);
    const auto s = mfl::ladder(ModelSpec::pspin(2), sizes, 0.5);
    REQUIRE(s.oracle_value.has_value());
    REQUIRE(s.fit.valid);
    CHECK(std::abs(s.limit_estimate - *s.oracle_value) <= 1e-3);
    CHECK(std::abs(s.fit.alpha_inf - *s.oracle_value) <= 1e-4);
  }

  TEST_CASE("limit within 1e-3 at N = 10^4 for scalar models, beta <= 3") {
    const std::vector<int> sizes{1250, 2500, 5000, 10000};
    const std::vector<ModelSpec> models{ModelSpec::pspin(2), ModelSpec::scalar(GFunction::monomial(4)),
                                        ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::SquareMinusX)),
                                        ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::NegSquare))};
    for (const auto& m : models) {
      for (double beta : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        CAPTURE(m.describe());
        CAPTURE(beta);
        const auto s = mfl::ladder(m, sizes, beta);
        CHECK(std::abs(s.limit_estimate - *s.oracle_value) <= 1e-3);
      }
    }
  }

  TEST_CASE("disordered models use the disorder prefix") {
    const auto sample = mfl::sample_disorder(4, mfl::DisorderKind::RandomField, 40);
    const auto m = sample.model();
    const std::vector<int> sizes{10, 20, 40};
    const auto s = mfl::ladder(m, sizes, 1.0);
    CHECK(s.alpha[0] == mfl::alpha(m.restrict(0, 10), mfl::build_model_table(m.restrict(0, 10), 10), 1.0).alpha);
    CHECK_FALSE(s.oracle_value.has_value());
    const std::vector<int> too_long{10, 50};
    CHECK_THROWS_AS(mfl::ladder(m, too_long, 1.0), mfl::DomainError);
  }

  TEST_CASE("sizes must increase") {
    const std::vector<int> bad{10, 10};
    CHECK_THROWS_AS(mfl::ladder(ModelSpec::pspin(2), bad, 1.0), mfl::DomainError);
  }
}

TEST_SUITE("subadditivity scan") {
  TEST_CASE("infinite temperature") {
    const auto r = mfl::subadditivity_scan(ModelSpec::pspin(2), 30, 0.0);
    CHECK(r.slack.size() == 29);
    for (double s : r.slack) CHECK(std::abs(s) <= 1e-14);
  }

  TEST_CASE("Curie-Weiss, N = 64, beta = 1") {
    const auto r = mfl::subadditivity_scan(ModelSpec::pspin(2), 64, 1.0);
    CHECK(r.worst_slack >= -1e-10);
    CHECK(r.n1.size() == 63);
  }

  TEST_CASE("symmetrized p = 3, N = 24, beta = 1") {
    const auto r = mfl::subadditivity_scan(ModelSpec::pspin_tilde(3), 24, 1.0);
    CHECK(r.worst_slack >= -1e-9);
    CHECK(r.n1.front() == 4);
    CHECK(r.n1.back() == 20);
  }

  TEST_CASE("convex grid scales with beta") {
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
      for (int n : {10, 33, 100}) {
        CHECK(mfl::subadditivity_scan(ModelSpec::scalar(GFunction::monomial(4)), n, beta).worst_slack >=
              -1e-9 * beta);
        CHECK(mfl::subadditivity_scan(ModelSpec::pspin_tilde(2), n, beta).worst_slack >= -1e-9 * beta);
      }
    }
  }
}

TEST_CASE("best achievable g") {
  CHECK(mfl::max_achievable_g(ModelSpec::pspin(2), 7) == doctest::Approx(1.0));
  const auto sqx = ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::SquareMinusX));
  CHECK(mfl::max_achievable_g(sqx, 4) == doctest::Approx(2.0));
  const auto neg = ModelSpec::scalar(GFunction::builtin(GFunction::Builtin::NegSquare));
  CHECK(mfl::max_achievable_g(neg, 4) == doctest::Approx(0.0));
  CHECK(mfl::max_achievable_g(neg, 5) == doctest::Approx(-0.04));
}
