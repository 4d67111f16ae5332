#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qbsep/errors.hpp"
#include "qbsep/tree.hpp"
#include "support.hpp"

using namespace qbsep;
using namespace qbsep::testing;

TEST_CASE("construction canonicalises and sorts edges") {
  const auto t = rational_tree({1, 2, 3}, {{2, 1}, {1, 0}});
  REQUIRE(t.edge_count() == 2);
  CHECK(t.edge(0) == Edge{0, 1});
  CHECK(t.edge(1) == Edge{1, 2});
  CHECK(t.find_edge(2, 1) == EdgeId{1});
  CHECK_FALSE(t.find_edge(0, 2).has_value());
  CHECK(t.total_weight() == R(6));
  CHECK(t.degree(1) == 2);
}

TEST_CASE("construction rejects malformed edge lists") {
  auto kind_of = [](auto&& make) -> TreeError::Kind {
    try {
      make();
    } catch (const TreeError& e) {
      return e.kind();
    }
    FAIL("no TreeError");
    return TreeError::Kind::NotATree;
  };
  CHECK(kind_of([] { rational_tree({1, 1}, {{0, 2}}); }) == TreeError::Kind::OutOfRangeId);
  CHECK(kind_of([] { rational_tree({1, 1}, {{1, 1}}); }) == TreeError::Kind::SelfLoop);
  CHECK(kind_of([] { rational_tree({1, 1}, {{0, 1}, {1, 0}}); }) == TreeError::Kind::DuplicateEdge);
}

TEST_CASE("validate: smallest legal tree") {
  CHECK(validate(rational_tree({1, 1}, {{0, 1}})).valid());
}

TEST_CASE("validate: a degree-4 star is not quasi-binary") {
  const auto star = rational_tree({1, 1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto report = validate(star);
  CHECK_FALSE(report.valid());
  CHECK(report.has(Violation::Kind::DegreeTooHigh));
  CHECK_THROWS_AS(require_valid(star), TreeError);
}

TEST_CASE("validate: total weight must be positive") {
  const WeightedTree<Rational> t({R(1), R(-2), R(1, 2)}, {{0, 1}, {1, 2}});
  const auto report = validate(t);
  CHECK(report.has(Violation::Kind::NonPositiveTotal));
  CHECK(report.violations.size() == 1);
}

TEST_CASE("validate: cycles, disconnection, size and finiteness") {
  CHECK(validate(rational_tree({1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}})).has(Violation::Kind::Cycle));
  CHECK(validate(rational_tree({1, 1, 1, 1}, {{0, 1}, {2, 3}})).has(Violation::Kind::Disconnected));
  CHECK(validate(rational_tree({1}, {})).has(Violation::Kind::TooFewVertices));
  const WeightedTree<double> nan_tree({1.0, std::nan("")}, {{0, 1}});
  CHECK(validate(nan_tree).has(Violation::Kind::NonFiniteWeight));
}

TEST_CASE("degree profile of the 4-path") {
  const auto p = degree_profile(path({1, 1, 1, 1}));
  CHECK(p.n1 == 2);
  CHECK(p.n2 == 2);
  CHECK(p.n3 == 0);
  CHECK(p.omega1 == R(1));
  CHECK(p.omega2 == R(1));
  CHECK_FALSE(p.omega3.has_value());
}

TEST_CASE("degree profile of the 7-vertex complete binary tree") {
  const auto p = degree_profile(complete_binary_7());
  CHECK(p.n1 == 4);
  CHECK(p.n2 == 1);
  CHECK(p.n3 == 2);
  CHECK(p.n1 == p.n3 + 2);
}

TEST_CASE("degree profile maxima are over degree >= i") {
  // Heavy leaf, light internal vertices.
  const auto t = rational_tree({9, 2, 5, 1, 1}, {{0, 1}, {1, 2}, {1, 3}, {2, 4}});
  const auto p = degree_profile(t);
  CHECK(p.omega1 == R(9));
  CHECK(p.omega2 == R(5));
  CHECK(p.omega3 == R(2));
  CHECK_FALSE(degree_profile(rational_tree({4, 7}, {{0, 1}})).omega2.has_value());
}

TEST_CASE("edge side table on a weighted path") {
  const auto t = path({1, 2, 4});
  const EdgeSideTable<Rational> table(t, 0);
  CHECK(table.distal_endpoint(0) == 1);
  CHECK(table.subtree_weight(0) == R(6));
  CHECK(table.subtree_size(0) == 2);
  CHECK(table.subtree_weight(1) == R(4));
  CHECK(table.subtree_size(1) == 1);
  CHECK(table.complement_weight(0) == R(1));
  CHECK(table.complement_size(1) == 2);
  CHECK(table.side_weight(0, 0) == R(1));
  CHECK(table.side_weight(0, 1) == R(6));
  CHECK(table.side_size(1, 1) == 2);
  CHECK_THROWS_AS(EdgeSideTable<Rational>(t, 3), TreeError);
}

TEST_CASE("edge side table on a two-vertex tree") {
  const auto table = edge_side_table(rational_tree({3, 5}, {{0, 1}}), 0);
  CHECK(table.subtree_weight(0) == R(5));
  CHECK(table.subtree_size(0) == 1);
}

TEST_CASE("property: side table matches independent per-edge walks from every root") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto t = random_tree(2 + seed % 25, seed);
    for (VertexId root = 0; root < t.vertex_count(); ++root) {
      const EdgeSideTable<Rational> table(t, root);
      for (EdgeId e = 0; e < t.edge_count(); ++e) {
        for (VertexId end : {t.edge(e).u, t.edge(e).v}) {
          const auto side = reach_without(t, end, e);
          REQUIRE(table.side_weight(e, end) == weight_of(t, side));
          REQUIRE(table.side_size(e, end) == side.size());
          REQUIRE(side_vertices(t, e, end) == side);
        }
      }
    }
  }
}

TEST_CASE("property: leaf edges carry the leaf weights") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto t = random_tree(3 + seed % 30, seed);
    // Root at a non-leaf so every leaf edge points away from the root.
    VertexId root = 0;
    while (t.degree(root) == 1) ++root;
    const EdgeSideTable<Rational> table(t, root);
    Rational via_edges, leaves;
    for (VertexId v = 0; v < t.vertex_count(); ++v) {
      if (t.degree(v) != 1) continue;
      leaves += t.weight(v);
      via_edges += table.subtree_weight(t.incident(v)[0].edge);
    }
    CHECK(via_edges == leaves);
  }
}

TEST_CASE("property: structural identities on random trees") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto t = random_tree(2 + seed % 200, seed, -3, 12);
    if (!validate(t).valid()) continue;
    const auto p = degree_profile(t);
    REQUIRE(p.n1 == p.n3 + 2);
    REQUIRE(p.n1 + p.n2 + p.n3 == t.vertex_count());
    if (p.omega3) {
      CHECK(*p.omega1 >= *p.omega2);
      CHECK(*p.omega2 >= *p.omega3);
      CHECK(*p.omega1 * Rational(p.n1) + *p.omega2 * Rational(p.n2) + *p.omega3 * Rational(p.n3) >= t.total_weight());
    }
  }
}

TEST_CASE("induced subtree relabels in vertex order") {
  const auto t = complete_binary_7();
  const std::vector<VertexId> keep{6, 2, 0, 5};
  const auto sub = induced_subtree(t, keep);
  CHECK(sub.tree.vertex_count() == 4);
  CHECK(sub.parent_vertex == std::vector<VertexId>{0, 2, 5, 6});
  CHECK(sub.tree.edge_count() == 3);
  for (EdgeId e = 0; e < sub.tree.edge_count(); ++e) {
    const Edge& local = sub.tree.edge(e);
    const Edge& orig = t.edge(sub.parent_edge[e]);
    CHECK(orig == Edge{sub.parent_vertex[local.u], sub.parent_vertex[local.v]});
  }
}

TEST_CASE("convert_weights keeps structure") {
  const auto t = path({1, 2, 3});
  const auto d = convert_weights<double>(t);
  CHECK(d.total_weight() == 6.0);
  CHECK(std::ranges::equal(d.edges(), t.edges()));
}
