#include <doctest.h>

#include <cmath>
#include <cstring>
#include <set>

#include "mfl/brute_oracle.hpp"
#include "mfl/disorder.hpp"
#include "mfl/error.hpp"
#include "mfl/sector.hpp"

using mfl::DisorderKind;
using mfl::ModelSpec;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("a fixed seed reproduces the sample") {
    const auto a = mfl::sample_disorder(42, DisorderKind::RandomField, 300);
    const auto b = mfl::sample_disorder(42, DisorderKind::RandomField, 300);
    CHECK(a.values == b.values);
    CHECK(a.values != mfl::sample_disorder(43, DisorderKind::RandomField, 300).values);
  }

  TEST_CASE("fields are balanced at N = 10^4") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
      const auto s = mfl::sample_disorder(seed, DisorderKind::RandomField, 10000);
      double sum = 0.0;
      for (auto v : s.values) sum += v;
      CHECK(std::abs(sum / 10000) <= 0.05);
    }
  }

  TEST_CASE("pattern matrices hold +-1 entries") {
    const auto s = mfl::sample_disorder(5, DisorderKind::Patterns, 10, 2);
    CHECK(s.values.size() == 20);
    for (auto v : s.values) CHECK((v == 1 || v == -1));
    CHECK(s.model().dimension() == 2);
    CHECK(s.model().fixed_size() == 10);
  }

  TEST_CASE("uniform field") {
    const auto s = mfl::sample_disorder(9, DisorderKind::UniformField, 7);
    CHECK(s.values == std::vector<std::int8_t>(7, 1));
  }

  TEST_CASE("derived seeds are distinct and order-free") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mfl::derive_seed(17, i));
    CHECK(seen.size() == 1000);
    CHECK(mfl::derive_seed(17, 3) == mfl::derive_seed(17, 3));
    CHECK(mfl::derive_seed(17, 3) != mfl::derive_seed(18, 3));
  }

  TEST_CASE("kind names") {
    for (auto k : {DisorderKind::RandomField, DisorderKind::Patterns, DisorderKind::UniformField}) {
      CHECK(mfl::disorder_kind_from_string(mfl::to_string(k)) == k);
    }
    CHECK(mfl::disorder_kind_from_string("hopfield") == DisorderKind::Patterns);
    CHECK_FALSE(mfl::disorder_kind_from_string("gaussian").has_value());
  }

  TEST_CASE("invalid sizes") {
    CHECK_THROWS_AS(mfl::sample_disorder(1, DisorderKind::RandomField, 0), mfl::DomainError);
    CHECK_THROWS_AS(mfl::sample_disorder(1, DisorderKind::Patterns, 4, 0), mfl::DomainError);
  }
}

TEST_SUITE("pointwise subadditivity") {
  TEST_CASE("random field, N = 12, split (6, 6), beta = 1, 50 seeds") {
    int failures = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto s = mfl::sample_disorder(mfl::derive_seed(1, i), DisorderKind::RandomField, 12);
      const auto r = mfl::pointwise_subadditivity(s.model(), {6, 6}, 1.0, s.seed);
      failures += r.failed;
      CHECK(r.seed == s.seed);
    }
    CHECK(failures == 0);
  }

  TEST_CASE("two patterns, N = 12, split (6, 6), beta = 1, 50 seeds") {
    int failures = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto s = mfl::sample_disorder(mfl::derive_seed(2, i), DisorderKind::Patterns, 12, 2);
      failures += mfl::pointwise_subadditivity(s.model(), {6, 6}, 1.0).failed;
    }
    CHECK(failures == 0);
  }

  TEST_CASE("infinite temperature is an equality") {
    const auto s = mfl::sample_disorder(3, DisorderKind::Patterns, 10, 3);
    const auto r = mfl::pointwise_subadditivity(s.model(), {4, 6}, 0.0);
    CHECK(std::abs(r.slack) <= 1e-12);
    CHECK(std::abs(r.alpha_n - std::log(2.0)) <= 1e-12);
  }

  TEST_CASE("block values against configuration enumeration") {
    const auto s = mfl::sample_disorder(11, DisorderKind::RandomField, 12);
    const auto m = s.model();
    const auto r = mfl::pointwise_subadditivity(m, {5, 7}, 1.5);
    CHECK(std::abs(r.alpha_n - mfl::oracle_alpha(m, 12, 1.5)) <= 1e-12);
    CHECK(std::abs(r.alpha_n1 - mfl::oracle_alpha(m.restrict(0, 5), 5, 1.5)) <= 1e-12);
    CHECK(std::abs(r.alpha_n2 - mfl::oracle_alpha(m.restrict(5, 12), 7, 1.5)) <= 1e-12);
  }

  TEST_CASE("grid slice: N <= 16, beta in {0.5, 1, 2}") {
    int failures = 0;
    for (int n : {4, 9, 16}) {
      for (std::uint64_t i = 0; i < 20; ++i) {
        const auto rf = mfl::sample_disorder(mfl::derive_seed(5, i), DisorderKind::RandomField, n);
        const auto hop = mfl::sample_disorder(mfl::derive_seed(6, i), DisorderKind::Patterns, n, 2);
        for (double beta : {0.5, 1.0, 2.0}) {
          for (int n1 = 1; n1 < n; ++n1) {
            failures += mfl::pointwise_subadditivity(rf.model(), {n1, n - n1}, beta).failed;
            failures += mfl::pointwise_subadditivity(hop.model(), {n1, n - n1}, beta).failed;
          }
        }
      }
    }
    CHECK(failures == 0);
  }
}

TEST_SUITE("quenched averages") {
  TEST_CASE("infinite temperature") {
    const auto q = mfl::quenched_average(DisorderKind::RandomField, 10, 0.0, 30, 8);
    CHECK(std::abs(q.mean_alpha - std::log(2.0)) <= 1e-13);
    CHECK(q.std_error <= 1e-13);
  }

  TEST_CASE("uniform field reduces to g = x^2 - x") {
    const auto q = mfl::quenched_average(DisorderKind::UniformField, 14, 1.2, 5, 3);
    const auto scalar = ModelSpec::scalar(mfl::GFunction::builtin(mfl::GFunction::Builtin::SquareMinusX));
    const double a = mfl::alpha(scalar, mfl::build_scalar_table(14), 1.2).alpha;
    CHECK(q.mean_alpha == doctest::Approx(a).epsilon(1e-14));
    CHECK(q.std_error <= 1e-14);
  }

  TEST_CASE("averaged sequence along doubling N") {
    std::vector<mfl::QuenchedEstimate> q;
    for (int n : {8, 16, 32}) q.push_back(mfl::quenched_average(DisorderKind::RandomField, n, 1.0, 200, 77));
    for (std::size_t i = 1; i < q.size(); ++i) {
      CHECK(q[i].mean_alpha <= q[i - 1].mean_alpha + 2.0 * (q[i].std_error + q[i - 1].std_error));
    }
  }

  TEST_CASE("bit-identical across worker counts") {
    mfl::QuenchedOptions one, many;
    one.workers = 1;
    many.workers = 4;
    one.patterns = many.patterns = 2;
    const auto a = mfl::quenched_average(DisorderKind::Patterns, 12, 1.0, 40, 123, one);
    const auto b = mfl::quenched_average(DisorderKind::Patterns, 12, 1.0, 40, 123, many);
    CHECK(same_bits(a.mean_alpha, b.mean_alpha));
    CHECK(same_bits(a.std_error, b.std_error));
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].seed == b.samples[i].seed);
      CHECK(same_bits(a.samples[i].slack, b.samples[i].slack));
    }
  }

  TEST_CASE("one pattern: gauge invariance") {
    mfl::QuenchedOptions opt;
    opt.patterns = 1;
    const auto q = mfl::quenched_average(DisorderKind::Patterns, 15, 1.4, 30, 5, opt);
    for (const auto& s : q.samples) CHECK(std::abs(s.alpha_n - q.samples.front().alpha_n) <= 1e-12);
    const double cw = mfl::alpha(ModelSpec::pspin(2), mfl::build_scalar_table(15), 1.4).alpha;
    CHECK(std::abs(q.mean_alpha - cw) <= 1e-12);
  }

  TEST_CASE("custom split and argument checks") {
    mfl::QuenchedOptions opt;
    opt.split = mfl::SplitSpec{3, 7};
    const auto q = mfl::quenched_average(DisorderKind::RandomField, 10, 1.0, 4, 1, opt);
    CHECK(q.samples.front().split.n1 == 3);
    opt.split = mfl::SplitSpec{3, 3};
    CHECK_THROWS_AS(mfl::quenched_average(DisorderKind::RandomField, 10, 1.0, 4, 1, opt), mfl::DomainError);
    CHECK_THROWS_AS(mfl::quenched_average(DisorderKind::RandomField, 10, 1.0, 1, 1), mfl::DomainError);
  }
}
