#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbsep/errors.hpp"
#include "qbsep/scalar.hpp"

namespace qbsep {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Unordered edge stored canonically with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool has(VertexId x) const { return x == u || x == v; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Vertex-weighted graph on vertices 0..n-1 intended to be a quasi-binary
/// tree. Construction only rejects inputs that are not simple graphs; use
/// validate() for the tree conditions. Edge ids index the sorted edge list.
template <Scalar S>
class WeightedTree {
 public:
  using scalar_type = S;

  WeightedTree(std::vector<S> weights, std::vector<Edge> edges);

  std::size_t vertex_count() const { return weights_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const S& weight(VertexId v) const { return weights_.at(v); }
  std::span<const S> weights() const { return weights_; }
  const S& total_weight() const { return total_; }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  std::span<const Incidence> incident(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }

  friend bool operator==(const WeightedTree& a, const WeightedTree& b) {
    return a.weights_ == b.weights_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<S> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  S total_{};
};

/// Same topology, weights converted exactly (double to Rational) or by
/// rounding (Rational to double).
template <Scalar To, Scalar From>
WeightedTree<To> convert_weights(const WeightedTree<From>& tree);

struct Violation {
  enum class Kind { TooFewVertices, DegreeTooHigh, Cycle, Disconnected, NonFiniteWeight, NonPositiveTotal };
  Kind kind;
  std::string detail;
};

std::string to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(Violation::Kind kind) const;
};

template <Scalar S>
ValidationReport validate(const WeightedTree<S>& tree);

/// Throws TreeError(NotATree) listing the violations when the tree is invalid.
template <Scalar S>
void require_valid(const WeightedTree<S>& tree);

/// Vertex counts per degree class and, for i = 1, 2, 3, the largest weight
/// over vertices of degree at least i (absent when no such vertex exists).
template <Scalar S>
struct DegreeProfile {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;
  std::optional<S> omega1;
  std::optional<S> omega2;
  std::optional<S> omega3;
};

template <Scalar S>
DegreeProfile<S> degree_profile(const WeightedTree<S>& tree);

/// Per-edge weight and size of the side away from `root`, filled by one
/// traversal. The near side follows by subtraction from the totals.
template <Scalar S>
class EdgeSideTable {
 public:
  EdgeSideTable(const WeightedTree<S>& tree, VertexId root);

  VertexId root() const { return root_; }
  /// Endpoint of `e` on the root-distal side.
  VertexId distal_endpoint(EdgeId e) const { return distal_.at(e); }
  const S& subtree_weight(EdgeId e) const { return subtree_weight_.at(e); }
  std::size_t subtree_size(EdgeId e) const { return subtree_size_.at(e); }
  S complement_weight(EdgeId e) const { return total_ - subtree_weight_.at(e); }
  std::size_t complement_size(EdgeId e) const { return n_ - subtree_size_.at(e); }

  /// Weight/size of the component of T - e that contains `endpoint`.
  S side_weight(EdgeId e, VertexId endpoint) const;
  std::size_t side_size(EdgeId e, VertexId endpoint) const;

 private:
  VertexId root_;
  S total_;
  std::size_t n_;
  std::vector<VertexId> distal_;
  std::vector<S> subtree_weight_;
  std::vector<std::size_t> subtree_size_;
};

template <Scalar S>
EdgeSideTable<S> edge_side_table(const WeightedTree<S>& tree, VertexId root) {
  return EdgeSideTable<S>(tree, root);
}

/// Vertices of the component of T - e containing `endpoint`, ascending.
template <Scalar S>
std::vector<VertexId> side_vertices(const WeightedTree<S>& tree, EdgeId e, VertexId endpoint);

/// Connected vertex subset of a larger tree, relabelled densely in ascending
/// order of parent ids, with the maps back to the parent's ids.
template <Scalar S>
struct Subtree {
  WeightedTree<S> tree;
  std::vector<VertexId> parent_vertex;
  std::vector<EdgeId> parent_edge;
};

/// Induced subgraph on `vertices` (any order, no duplicates).
template <Scalar S>
Subtree<S> induced_subtree(const WeightedTree<S>& tree, std::span<const VertexId> vertices);

}  // namespace qbsep
