#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "inexact/adversary.hpp"
#include "inexact/error.hpp"
#include "oracles.hpp"

using namespace inexact;

TEST_CASE("permutation helpers") {
  Permutation a{1, 2, 0};
  Permutation b{0, 2, 1};
  CHECK(is_permutation(a));
  CHECK_FALSE(is_permutation(std::vector<std::uint32_t>{0, 0, 1}));
  CHECK(compose(a, inverse(a)) == identity_permutation(3));
  // (a o b)[j] = a[b[j]]
  CHECK(compose(a, b) == Permutation{1, 0, 2});
}

TEST_CASE("generated group closures") {
  auto cyc = PermutationGroup::generated(3, {{1, 2, 0}});
  REQUIRE(cyc.order().has_value());
  CHECK(*cyc.order() == 3);
  auto elems = enumerate_group(cyc);
  std::set<Permutation> s(elems.begin(), elems.end());
  CHECK(s == std::set<Permutation>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});

  auto t = PermutationGroup::generated(2, {{1, 0}});
  CHECK(*t.order() == 2);

  // A transposition and a 4-cycle generate all of S_4.
  auto s4 = PermutationGroup::generated(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(*s4.order() == 24);
  CHECK(*PermutationGroup::full_symmetric(5).order() == 120);
  CHECK(*PermutationGroup::identity(7).order() == 1);

  CHECK_THROWS_AS(PermutationGroup::generated(3, {{0, 1}}), invalid_input_error);
  CHECK_THROWS_AS(PermutationGroup::generated(3, {{0, 0, 1}}), invalid_input_error);
  CHECK_THROWS_AS(enumerate_group(PermutationGroup::full_symmetric(10)), resource_limit_error);
}

TEST_CASE("uniform sampling over a cyclic group") {
  auto cyc = PermutationGroup::generated(3, {{1, 2, 0}});
  Rng rng(99);
  std::map<Permutation, int> counts;
  const int draws = 300'000;
  for (int i = 0; i < draws; ++i) ++counts[sample_permutation(cyc, rng)];
  CHECK(counts.size() == 3);
  for (const auto& [p, c] : counts) CHECK(static_cast<double>(c) / draws == doctest::Approx(1.0 / 3).epsilon(0.01));
  CHECK(sample_permutation(cyc, 5) == sample_permutation(cyc, 5));
}

TEST_CASE("uniform sampling over S_3") {
  auto s3 = PermutationGroup::full_symmetric(3);
  Rng rng(3);
  std::map<Permutation, int> counts;
  const int draws = 600'000;
  for (int i = 0; i < draws; ++i) ++counts[sample_permutation(s3, rng)];
  CHECK(counts.size() == 6);
  for (const auto& [p, c] : counts) CHECK(static_cast<double>(c) / draws == doctest::Approx(1.0 / 6).epsilon(0.01));
}

TEST_CASE("marginal flip probability") {
  EnergyVector e({1.0, 3.0});
  auto s2 = PermutationGroup::full_symmetric(2);
  CHECK(marginal_flip_probability(e, s2, 0).value == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(marginal_flip_probability(e, s2, 1).value == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(marginal_flip_probability(e, PermutationGroup::identity(2), 1).value == 0.125);
  CHECK(marginal_flip_probability(e, s2, 0).exact());
  CHECK(amgm_bound(15.0, 5) == doctest::Approx(0.125));
  auto u = EnergyVector(std::vector<double>(5, 3.0));
  CHECK(marginal_flip_probability(u, PermutationGroup::full_symmetric(5), 2).value == doctest::Approx(0.125));
  CHECK_THROWS_AS(marginal_flip_probability(e, s2, 2), invalid_input_error);
}

TEST_CASE("blindfolding floor on random vectors") {
  Rng rng(2024);
  for (int n = 2; n <= 8; ++n) {
    auto group = PermutationGroup::full_symmetric(n);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> v(static_cast<std::size_t>(n));
      double total = 0.0;
      for (auto& x : v) total += x = 6.0 * uniform01(rng);
      EnergyVector e(v);
      double m = marginal_flip_probability(e, group, 0).value;
      CHECK(m >= amgm_bound(total, n) - 1e-12);
    }
  }
}

TEST_CASE("mask law matches brute-force averaging over the group") {
  const std::vector<double> energy{0.5, 1.0, 2.0, 3.5};
  std::vector<double> probs;
  for (double e : energy) probs.push_back(std::pow(2.0, -e));
  auto perms = oracle::all_permutations(4);
  std::vector<double> expected(16, 0.0);
  for (const auto& s : perms) {
    for (int d = 0; d < 16; ++d) {
      double pr = 1.0;
      for (int j = 0; j < 4; ++j) {
        double p = probs[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
        pr *= ((d >> j) & 1) ? p : 1.0 - p;
      }
      expected[static_cast<std::size_t>(d)] += pr / static_cast<double>(perms.size());
    }
  }
  auto closed = mask_distribution(probs, PermutationGroup::full_symmetric(4));
  auto generated = mask_distribution(probs, PermutationGroup::generated(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
  for (int d = 0; d < 16; ++d) {
    CHECK(closed[static_cast<std::size_t>(d)] == doctest::Approx(expected[static_cast<std::size_t>(d)]).epsilon(1e-12));
    CHECK(generated[static_cast<std::size_t>(d)] == doctest::Approx(expected[static_cast<std::size_t>(d)]).epsilon(1e-12));
  }
}

TEST_CASE("poisson binomial pmf") {
  const std::vector<double> p{0.5, 0.25};
  auto pmf = poisson_binomial_pmf(p);
  REQUIRE(pmf.size() == 3);
  CHECK(pmf[0] == doctest::Approx(0.375));
  CHECK(pmf[1] == doctest::Approx(0.5));
  CHECK(pmf[2] == doctest::Approx(0.125));
}
