#include <doctest.h>

#include <bit>
#include <limits>
#include <numeric>
#include <random>

#include "qbsep/errors.hpp"
#include "qbsep/generators.hpp"
#include "qbsep/oracle.hpp"
#include "support.hpp"

using namespace qbsep;
using namespace qbsep::testing;

namespace {

// Reference optimum by recursion over edge subsets, scoring via reach_without
// style flood fill on the remaining edges.
Rational brute(const WeightedTree<Rational>& t, std::size_t k, Objective obj) {
  const std::size_t m = t.edge_count();
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k - 1) continue;
    std::vector<int> comp(t.vertex_count(), -1);
    std::vector<Rational> w;
    for (VertexId s = 0; s < t.vertex_count(); ++s) {
      if (comp[s] >= 0) continue;
      const int id = static_cast<int>(w.size());
      w.emplace_back(0);
      std::vector<VertexId> stack{s};
      comp[s] = id;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        w[id] += t.weight(v);
        for (EdgeId e = 0; e < m; ++e) {
          if ((mask >> e) & 1 || !t.edge(e).has(v)) continue;
          const VertexId x = t.edge(e).other(v);
          if (comp[x] < 0) {
            comp[x] = id;
            stack.push_back(x);
          }
        }
      }
    }
    const Rational score = obj == Objective::MaxMin ? *std::min_element(w.begin(), w.end())
                                                    : *std::max_element(w.begin(), w.end());
    if (!best || (obj == Objective::MaxMin ? score > *best : score < *best)) best = score;
  }
  return *best;
}

WeightedTree<Rational> relabel(const WeightedTree<Rational>& t, const std::vector<VertexId>& perm) {
  std::vector<Rational> w(t.vertex_count());
  for (VertexId v = 0; v < t.vertex_count(); ++v) w[perm[v]] = t.weight(v);
  std::vector<Edge> edges;
  for (const auto& e : t.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return WeightedTree<Rational>(std::move(w), std::move(edges));
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(19, 3) == 969);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(200, 100) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("evaluate_separator") {
  const auto t = path({1, 1, 1});
  const std::vector<EdgeId> first{0};
  const auto comps = evaluate_separator(t, std::span<const EdgeId>(first));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].weight == R(1));
  CHECK(comps[1].weight == R(2));
  const auto whole = evaluate_separator(t, std::span<const EdgeId>());
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].weight == R(3));
  const std::vector<EdgeId> twice{1, 1};
  CHECK_THROWS_AS(evaluate_separator(t, std::span<const EdgeId>(twice)), TreeError);
  const std::vector<EdgeId> unknown{5};
  CHECK_THROWS_AS(evaluate_separator(t, std::span<const EdgeId>(unknown)), TreeError);
}

TEST_CASE("pendant cut on the tightness instance isolates a leaf") {
  const auto inst = gen_tightness_family(3, R(1), R(2));
  const VertexId leaf = inst.pendants.front();
  const std::vector<EdgeId> cut{inst.tree.incident(leaf)[0].edge};
  const auto comps = evaluate_separator(inst.tree, std::span<const EdgeId>(cut));
  REQUIRE(comps.size() == 2);
  bool isolated = false;
  for (const auto& c : comps) isolated |= (c.vertices == std::vector<VertexId>{leaf} && c.weight == R(2));
  CHECK(isolated);
}

TEST_CASE("small exact optima") {
  const auto p3 = path({1, 1, 1});
  const auto b = exact_beta_k(p3, 2);
  CHECK(b.optimum == R(1));
  CHECK(b.witness == std::vector<EdgeId>{0});
  CHECK(b.subsets_examined == 2);
  CHECK(exact_alpha_k(p3, 2).optimum == R(2));
  CHECK(exact_beta_k(rational_tree({3, 5}, {{0, 1}}), 2).optimum == R(3));
}

TEST_CASE("k = n isolates every vertex") {
  const auto t = rational_tree({4, 9, 2, 7, 1}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  CHECK(exact_alpha_k(t, 5).optimum == R(9));
  CHECK(exact_beta_k(t, 5).optimum == R(1));
}

TEST_CASE("tightness instance k=3") {
  const auto inst = gen_tightness_family(3, R(1), R(2));
  CHECK(exact_beta_k(inst.tree, 3).optimum == R(2));
  CHECK(exact_alpha_k(inst.tree, 3).optimum >= R(4));
}

TEST_CASE("budget and range errors") {
  const auto t = random_tree(30, 1);
  CHECK_THROWS_AS(exact_beta_k(t, 5, 1000), BudgetExceeded);
  CHECK_THROWS_AS(exact_beta_k(t, 1), std::invalid_argument);
  CHECK_THROWS_AS(exact_beta_k(t, 31), std::invalid_argument);
}

TEST_CASE("property: agrees with brute force, witnesses reproduce, averaging holds") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto t = random_tree(2 + seed % 11, seed, 0, 6);
    if (!validate(t).valid()) continue;
    for (std::size_t k = 2; k <= std::min<std::size_t>(t.vertex_count(), 5); ++k) {
      for (Objective obj : {Objective::MaxMin, Objective::MinMax}) {
        const auto r = exact_optimum(t, k, obj);
        REQUIRE(r.optimum == brute(t, k, obj));
        REQUIRE(std::is_sorted(r.witness.begin(), r.witness.end()));
        const auto comps = evaluate_separator(t, std::span<const EdgeId>(r.witness));
        Rational lo = comps[0].weight, hi = comps[0].weight;
        for (const auto& c : comps) {
          lo = std::min(lo, c.weight);
          hi = std::max(hi, c.weight);
        }
        CHECK((obj == Objective::MaxMin ? lo : hi) == r.optimum);
        CHECK(r.subsets_examined == binomial(t.edge_count(), k - 1));
      }
      const Rational avg = t.total_weight() / Rational(static_cast<std::int64_t>(k));
      CHECK(exact_beta_k(t, k).optimum <= avg);
      CHECK(exact_alpha_k(t, k).optimum >= avg);
    }
  }
}

TEST_CASE("property: optima are invariant under vertex relabelling") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = random_tree(5 + seed % 10, seed);
    std::vector<VertexId> perm(t.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto u = relabel(t, perm);
    for (std::size_t k = 2; k <= 4; ++k) {
      CHECK(exact_beta_k(t, k).optimum == exact_beta_k(u, k).optimum);
      CHECK(exact_alpha_k(t, k).optimum == exact_alpha_k(u, k).optimum);
    }
  }
}

TEST_CASE("floating oracle matches the exact one on integer weights") {
  const auto t = random_tree(14, 9);
  const auto d = convert_weights<double>(t);
  for (std::size_t k = 2; k <= 5; ++k) {
    CHECK(exact_beta_k(d, k).optimum == exact_beta_k(t, k).optimum.to_double());
    CHECK(exact_alpha_k(d, k).witness == exact_alpha_k(t, k).witness);
  }
}

TEST_CASE("fractional weights use the exact path") {
  const WeightedTree<Rational> t({R(1, 3), R(1, 7), R(2, 5), R(1, 2)}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(exact_beta_k(t, 2).optimum == brute(t, 2, Objective::MaxMin));
  CHECK(exact_alpha_k(t, 3).optimum == brute(t, 3, Objective::MinMax));
}
