#include <doctest.h>

#include <random>

#include "qbsep/errors.hpp"
#include "qbsep/lemma_split.hpp"
#include "support.hpp"

using namespace qbsep;
using namespace qbsep::testing;

namespace {

SplitParams<Rational> params(Rational eta, Rational gamma) { return {std::move(eta), std::move(gamma)}; }

}  // namespace

TEST_CASE("check_split_params on the 4-path") {
  const auto t = path({1, 1, 1, 1});
  const auto ok = check_split_params(t, params(R(1), R(1)));
  CHECK(ok.ok());
  CHECK(ok.eta_lower.margin == R(1));
  CHECK(ok.eta_upper.margin == R(1));

  const auto high = check_split_params(t, params(R(3), R(1)));
  CHECK_FALSE(high.ok());
  CHECK_FALSE(high.eta_upper.holds);
  CHECK(high.eta_lower.holds);
  CHECK(high.violations().size() == 1);
}

TEST_CASE("check_split_params at the boundary") {
  const auto t = rational_tree({5, 5}, {{0, 1}});
  const auto r = check_split_params(t, params(R(5), R(0)));
  CHECK(r.ok());
  CHECK(r.eta_upper.margin == R(0));
  CHECK(eta_lower_limit(degree_profile(t), R(0)) == R(5, 2));
}

TEST_CASE("check_split_params flags gamma below omega3") {
  const auto t = complete_binary_7();
  const auto r = check_split_params(t, params(R(2), R(1, 2)));
  CHECK_FALSE(r.gamma_vs_omega3.holds);
  CHECK_FALSE(r.ok());
}

TEST_CASE("find_split_edge: 4-path picks a single end vertex") {
  const auto s = find_split_edge(path({1, 1, 1, 1}), params(R(1), R(1)));
  CHECK(s.edge == 0);
  CHECK(s.certified_endpoint == 0);
  CHECK(s.certified_weight == R(1));
  CHECK(s.certified_size == 1);
  CHECK(s.other_weight == R(3));
}

TEST_CASE("find_split_edge: two vertices") {
  const auto s = find_split_edge(rational_tree({3, 5}, {{0, 1}}), params(R(4), R(0)));
  CHECK(s.edge == 0);
  CHECK(s.certified_endpoint == 1);
  CHECK(s.certified_weight == R(5));
}

TEST_CASE("find_split_edge: complete binary tree cuts below the root") {
  const auto t = complete_binary_7();
  const auto s = find_split_edge(t, params(R(2), R(1)));
  CHECK(t.edge(s.edge) == Edge{0, 1});
  CHECK(s.certified_endpoint == 1);
  CHECK(s.certified_weight == R(3));
  CHECK(s.certified_size == 3);
  // Independent scan: no side weighing >= 2 has fewer than 3 vertices.
  CHECK(min_qualifying_side(t, R(2)) == std::size_t{3});
}

TEST_CASE("find_split_edge refuses parameters outside the hypothesis") {
  CHECK_THROWS_AS(find_split_edge(path({1, 1, 1, 1}), params(R(3), R(1))), ParameterError);
  CHECK_THROWS_AS(find_split_edge(rational_tree({1, 1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}),
                                  params(R(1), R(1))),
                  TreeError);
}

TEST_CASE("find_split_edge works in floating point") {
  const auto t = convert_weights<double>(complete_binary_7());
  const auto s = find_split_edge(t, SplitParams<double>{2.0, 1.0});
  CHECK(s.certified_weight == 3.0);
}

TEST_CASE("property: certificate and minimality on random instances") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto t = random_tree(2 + uniform_below(rng, 120), seed, 0, 9);
    if (!validate(t).valid()) continue;
    const auto prof = degree_profile(t);
    const Rational omega3 = prof.omega3.value_or(R(0));
    const Rational gamma = omega3 + R(static_cast<std::int64_t>(uniform_below(rng, 4)), 2);
    const Rational lo = eta_lower_limit(prof, gamma).value_or(R(0));
    const Rational hi = t.total_weight() / R(2);
    if (lo > hi) continue;
    const Rational u(static_cast<std::int64_t>(uniform_below(rng, 1001)), 1000);
    const auto p = params(lo + (hi - lo) * u, gamma);
    REQUIRE(check_split_params(t, p).ok());
    const auto s = find_split_edge(t, p);
    CHECK(s.certified_weight >= p.eta);
    CHECK(s.certified_weight <= R(2) * p.eta + gamma);
    CHECK(s.certified_weight + s.other_weight == t.total_weight());
    const auto side = reach_without(t, s.certified_endpoint, s.edge);
    CHECK(weight_of(t, side) == s.certified_weight);
    CHECK(side.size() == s.certified_size);
    CHECK(min_qualifying_side(t, p.eta) == s.certified_size);
    ++checked;
  }
  CHECK(checked > 300);
}
