#pragma once

// Fixtures and brute-force reference computations shared by the test binaries.
// The references here never call into the library's traversal code.

#include <algorithm>
#include <optional>
#include <vector>

#include "qbsep/generators.hpp"
#include "qbsep/rational.hpp"
#include "qbsep/tree.hpp"

namespace qbsep::testing {

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

inline WeightedTree<Rational> rational_tree(std::vector<std::int64_t> ws, std::vector<Edge> edges) {
  std::vector<Rational> weights;
  for (auto w : ws) weights.emplace_back(w);
  return WeightedTree<Rational>(std::move(weights), std::move(edges));
}

inline WeightedTree<Rational> path(std::vector<std::int64_t> ws) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < ws.size(); ++i) edges.push_back({i, i + 1});
  return rational_tree(std::move(ws), std::move(edges));
}

inline WeightedTree<Rational> complete_binary_7() {
  return rational_tree({1, 1, 1, 1, 1, 1, 1}, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
}

// Vertices reachable from `start` without crossing edge `cut`, by an explicit
// stack walk over the adjacency lists.
template <Scalar S>
std::vector<VertexId> reach_without(const WeightedTree<S>& tree, VertexId start, EdgeId cut) {
  std::vector<char> seen(tree.vertex_count(), 0);
  std::vector<VertexId> out;
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const auto& inc : tree.incident(v)) {
      if (inc.edge == cut || seen[inc.neighbor]) continue;
      seen[inc.neighbor] = 1;
      stack.push_back(inc.neighbor);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <Scalar S>
S weight_of(const WeightedTree<S>& tree, const std::vector<VertexId>& vs) {
  S sum{};
  for (auto v : vs) sum = sum + tree.weight(v);
  return sum;
}

// Smallest vertex count among sides that weigh at least eta.
template <Scalar S>
std::optional<std::size_t> min_qualifying_side(const WeightedTree<S>& tree, const S& eta) {
  std::optional<std::size_t> best;
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    for (VertexId end : {tree.edge(e).u, tree.edge(e).v}) {
      const auto side = reach_without(tree, end, e);
      if (weight_of(tree, side) >= eta && (!best || side.size() < *best)) best = side.size();
    }
  }
  return best;
}

// Random quasi-binary tree with integer weights in [lo, hi], via the public generator.
inline WeightedTree<Rational> random_tree(std::size_t n, std::uint64_t seed, std::int64_t lo = 1,
                                          std::int64_t hi = 10) {
  return gen_random_quasi_binary(n, seed, WeightLaw{WeightLaw::Uniform{lo, hi}});
}

}  // namespace qbsep::testing
