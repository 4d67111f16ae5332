#include "qbsep/tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qbsep {

namespace {

// Minimal union-find; validation must not depend on the traversal code it guards.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

template <Scalar S>
WeightedTree<S>::WeightedTree(std::vector<S> weights, std::vector<Edge> edges)
    : weights_(std::move(weights)), edges_(std::move(edges)), adjacency_(weights_.size()) {
  const std::size_t n = weights_.size();
  for (auto& e : edges_) {
    if (e.u >= n || e.v >= n) {
      throw TreeError(TreeError::Kind::OutOfRangeId, "edge (" + std::to_string(e.u) + ", " +
                                                         std::to_string(e.v) + ") references a vertex >= " +
                                                         std::to_string(n));
    }
    if (e.u == e.v) {
      throw TreeError(TreeError::Kind::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw TreeError(TreeError::Kind::DuplicateEdge,
                    "duplicate edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) + ")");
  }
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    adjacency_[edges_[id].u].push_back({edges_[id].v, id});
    adjacency_[edges_[id].v].push_back({edges_[id].u, id});
  }
  for (const auto& w : weights_) total_ += w;
}

template <Scalar S>
std::optional<EdgeId> WeightedTree<S>::find_edge(VertexId a, VertexId b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

template <Scalar To, Scalar From>
WeightedTree<To> convert_weights(const WeightedTree<From>& tree) {
  std::vector<To> weights;
  weights.reserve(tree.vertex_count());
  for (const auto& w : tree.weights()) {
    if constexpr (std::is_same_v<To, From>) {
      weights.push_back(w);
    } else if constexpr (ScalarTraits<To>::exact) {
      weights.push_back(Rational::from_double(w));
    } else {
      weights.push_back(w.to_double());
    }
  }
  return WeightedTree<To>(std::move(weights), {tree.edges().begin(), tree.edges().end()});
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::TooFewVertices: return "too-few-vertices";
    case Violation::Kind::DegreeTooHigh: return "degree-too-high";
    case Violation::Kind::Cycle: return "cycle";
    case Violation::Kind::Disconnected: return "disconnected";
    case Violation::Kind::NonFiniteWeight: return "non-finite-weight";
    case Violation::Kind::NonPositiveTotal: return "non-positive-total";
  }
  return "unknown";
}

bool ValidationReport::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

template <Scalar S>
ValidationReport validate(const WeightedTree<S>& tree) {
  ValidationReport report;
  const std::size_t n = tree.vertex_count();
  if (n <= 1) {
    report.violations.push_back({Violation::Kind::TooFewVertices, "n = " + std::to_string(n) + ", need n > 1"});
  }
  for (VertexId v = 0; v < n; ++v) {
    if (tree.degree(v) > 3) {
      report.violations.push_back({Violation::Kind::DegreeTooHigh,
                                   "vertex " + std::to_string(v) + " has degree " + std::to_string(tree.degree(v))});
    }
  }
  DisjointSets sets(n);
  std::size_t components = n;
  bool cycle_reported = false;
  for (const auto& e : tree.edges()) {
    if (sets.unite(e.u, e.v)) {
      --components;
    } else if (!cycle_reported) {
      report.violations.push_back({Violation::Kind::Cycle, "edge (" + std::to_string(e.u) + ", " +
                                                               std::to_string(e.v) + ") closes a cycle"});
      cycle_reported = true;
    }
  }
  if (n > 0 && components > 1) {
    report.violations.push_back({Violation::Kind::Disconnected, std::to_string(components) + " components"});
  }
  bool finite = true;
  for (VertexId v = 0; v < n; ++v) {
    if (!ScalarTraits<S>::is_finite(tree.weight(v))) {
      report.violations.push_back({Violation::Kind::NonFiniteWeight, "vertex " + std::to_string(v)});
      finite = false;
    }
  }
  if (finite && !(tree.total_weight() > S{0})) {
    std::ostringstream os;
    os << "total weight " << tree.total_weight() << " <= 0";
    report.violations.push_back({Violation::Kind::NonPositiveTotal, os.str()});
  }
  return report;
}

template <Scalar S>
void require_valid(const WeightedTree<S>& tree) {
  const auto report = validate(tree);
  if (report.valid()) return;
  std::string what = "not a valid quasi-binary tree:";
  for (const auto& v : report.violations) what += " [" + to_string(v.kind) + ": " + v.detail + "]";
  throw TreeError(TreeError::Kind::NotATree, what);
}

template <Scalar S>
DegreeProfile<S> degree_profile(const WeightedTree<S>& tree) {
  DegreeProfile<S> p;
  auto raise = [](std::optional<S>& slot, const S& w) {
    if (!slot || *slot < w) slot = w;
  };
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    const auto d = tree.degree(v);
    const S& w = tree.weight(v);
    if (d == 1) ++p.n1;
    if (d == 2) ++p.n2;
    if (d == 3) ++p.n3;
    if (d >= 1) raise(p.omega1, w);
    if (d >= 2) raise(p.omega2, w);
    if (d >= 3) raise(p.omega3, w);
  }
  return p;
}

template <Scalar S>
EdgeSideTable<S>::EdgeSideTable(const WeightedTree<S>& tree, VertexId root)
    : root_(root),
      total_(tree.total_weight()),
      n_(tree.vertex_count()),
      distal_(tree.edge_count()),
      subtree_weight_(tree.edge_count()),
      subtree_size_(tree.edge_count()) {
  if (root >= n_) throw TreeError(TreeError::Kind::UnknownVertex, "root " + std::to_string(root) + " not in tree");
  // Iterative DFS: record preorder with parent edges, then accumulate in reverse.
  std::vector<VertexId> order;
  order.reserve(n_);
  std::vector<EdgeId> parent_edge(n_, tree.edge_count());
  std::vector<bool> seen(n_, false);
  std::vector<VertexId> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& inc : tree.incident(v)) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      parent_edge[inc.neighbor] = inc.edge;
      distal_[inc.edge] = inc.neighbor;
      stack.push_back(inc.neighbor);
    }
  }
  if (order.size() != n_) throw TreeError(TreeError::Kind::NotATree, "edge side table needs a connected tree");
  std::vector<S> weight(tree.weights().begin(), tree.weights().end());
  std::vector<std::size_t> size(n_, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const EdgeId pe = parent_edge[v];
    if (pe == tree.edge_count()) continue;
    subtree_weight_[pe] = weight[v];
    subtree_size_[pe] = size[v];
    const VertexId parent = tree.edge(pe).other(v);
    weight[parent] += weight[v];
    size[parent] += size[v];
  }
}

template <Scalar S>
S EdgeSideTable<S>::side_weight(EdgeId e, VertexId endpoint) const {
  return endpoint == distal_.at(e) ? subtree_weight_[e] : complement_weight(e);
}

template <Scalar S>
std::size_t EdgeSideTable<S>::side_size(EdgeId e, VertexId endpoint) const {
  return endpoint == distal_.at(e) ? subtree_size_[e] : complement_size(e);
}

template <Scalar S>
std::vector<VertexId> side_vertices(const WeightedTree<S>& tree, EdgeId e, VertexId endpoint) {
  if (e >= tree.edge_count()) throw TreeError(TreeError::Kind::UnknownEdge, "edge " + std::to_string(e));
  if (!tree.edge(e).has(endpoint)) {
    throw TreeError(TreeError::Kind::UnknownVertex, "vertex " + std::to_string(endpoint) + " is not on edge " +
                                                        std::to_string(e));
  }
  std::vector<bool> seen(tree.vertex_count(), false);
  std::vector<VertexId> out;
  std::vector<VertexId> stack{endpoint};
  seen[endpoint] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const auto& inc : tree.incident(v)) {
      if (inc.edge == e || seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      stack.push_back(inc.neighbor);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <Scalar S>
Subtree<S> induced_subtree(const WeightedTree<S>& tree, std::span<const VertexId> vertices) {
  std::vector<VertexId> members(vertices.begin(), vertices.end());
  std::sort(members.begin(), members.end());
  constexpr auto kAbsent = static_cast<VertexId>(-1);
  std::vector<VertexId> local(tree.vertex_count(), kAbsent);
  std::vector<S> weights;
  weights.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= tree.vertex_count()) {
      throw TreeError(TreeError::Kind::UnknownVertex, "vertex " + std::to_string(members[i]));
    }
    if (local[members[i]] != kAbsent) {
      throw TreeError(TreeError::Kind::DuplicateEdge, "vertex " + std::to_string(members[i]) + " listed twice");
    }
    local[members[i]] = i;
    weights.push_back(tree.weight(members[i]));
  }
  std::vector<Edge> edges;
  std::vector<EdgeId> parent_edges;
  for (EdgeId id = 0; id < tree.edge_count(); ++id) {
    const Edge& e = tree.edge(id);
    if (local[e.u] != kAbsent && local[e.v] != kAbsent) {
      edges.push_back({local[e.u], local[e.v]});
      parent_edges.push_back(id);
    }
  }
  // Local ids are order-preserving, so the local edge list is already sorted
  // and parent_edges lines up with local edge ids.
  return Subtree<S>{WeightedTree<S>(std::move(weights), std::move(edges)), std::move(members),
                    std::move(parent_edges)};
}

#define QBSEP_INSTANTIATE_TREE(S)                                                            \
  template class WeightedTree<S>;                                                            \
  template ValidationReport validate(const WeightedTree<S>&);                                \
  template void require_valid(const WeightedTree<S>&);                                       \
  template DegreeProfile<S> degree_profile(const WeightedTree<S>&);                          \
  template class EdgeSideTable<S>;                                                           \
  template std::vector<VertexId> side_vertices(const WeightedTree<S>&, EdgeId, VertexId);    \
  template Subtree<S> induced_subtree(const WeightedTree<S>&, std::span<const VertexId>);

QBSEP_INSTANTIATE_TREE(double)
QBSEP_INSTANTIATE_TREE(Rational)
#undef QBSEP_INSTANTIATE_TREE

template WeightedTree<double> convert_weights<double, double>(const WeightedTree<double>&);
template WeightedTree<double> convert_weights<double, Rational>(const WeightedTree<Rational>&);
template WeightedTree<Rational> convert_weights<Rational, double>(const WeightedTree<double>&);
template WeightedTree<Rational> convert_weights<Rational, Rational>(const WeightedTree<Rational>&);

}  // namespace qbsep
