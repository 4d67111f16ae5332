#include "qbsep/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qbsep {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // C(m, i) = C(m-1, i-1) * m / i; dividing out gcd keeps every step exact.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (n - r + i) / (i / g);
    if (__builtin_mul_overflow(result / g, factor, &result)) return std::numeric_limits<std::uint64_t>::max();
  }
  return result;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { reset(); }
  void reset() { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

template <class A>
struct Optimum {
  A value{};
  std::vector<EdgeId> witness;
  std::uint64_t examined = 0;
};

// Enumerates combinations of r edge ids out of m in lexicographic order and
// keeps the first strictly better objective value.
template <class A>
Optimum<A> enumerate(std::size_t n, std::span<const Edge> edges, const std::vector<A>& weights, std::size_t r,
                     Objective objective) {
  const std::size_t m = edges.size();
  std::vector<EdgeId> combo(r);
  std::iota(combo.begin(), combo.end(), EdgeId{0});
  std::vector<bool> removed(m, false);
  std::vector<A> sums(n);
  std::vector<bool> is_root(n);
  UnionFind uf(n);
  Optimum<A> best;
  bool have_best = false;
  while (true) {
    std::fill(removed.begin(), removed.end(), false);
    for (EdgeId e : combo) removed[e] = true;
    uf.reset();
    for (EdgeId e = 0; e < m; ++e) {
      if (!removed[e]) uf.unite(edges[e].u, edges[e].v);
    }
    std::fill(sums.begin(), sums.end(), A{});
    std::fill(is_root.begin(), is_root.end(), false);
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t root = uf.find(v);
      sums[root] += weights[v];
      is_root[root] = true;
    }
    bool first = true;
    A value{};
    for (std::size_t v = 0; v < n; ++v) {
      if (!is_root[v]) continue;
      if (first || (objective == Objective::MaxMin ? sums[v] < value : value < sums[v])) value = sums[v];
      first = false;
    }
    ++best.examined;
    const bool better = !have_best || (objective == Objective::MaxMin ? best.value < value : value < best.value);
    if (better) {
      best.value = value;
      best.witness = combo;
      have_best = true;
    }

    // Advance to the next combination.
    std::size_t i = r;
    while (i > 0 && combo[i - 1] == m - r + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t t = i; t < r; ++t) combo[t] = combo[t - 1] + 1;
  }
  return best;
}

// Exact weights scaled to a common denominator, when everything fits in 62 bits.
struct ScaledWeights {
  std::vector<std::int64_t> values;
  mpz_class denominator;
};

std::optional<ScaledWeights> scale_to_integers(std::span<const Rational> weights) {
  mpz_class lcm = 1;
  for (const auto& w : weights) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.denominator().get_mpz_t());
  ScaledWeights out{{}, lcm};
  mpz_class magnitude = 0;
  const mpz_class limit = mpz_class(1) << 62;
  for (const auto& w : weights) {
    mpz_class scaled = w.numerator() * (lcm / w.denominator());
    magnitude += abs(scaled);
    if (magnitude >= limit) return std::nullopt;
    out.values.push_back(scaled.get_si());
  }
  return out;
}

}  // namespace

template <Scalar S>
std::vector<ComponentSummary<S>> evaluate_separator(const WeightedTree<S>& tree, std::span<const EdgeId> edges) {
  const std::size_t n = tree.vertex_count();
  std::vector<bool> removed(tree.edge_count(), false);
  for (EdgeId e : edges) {
    if (e >= tree.edge_count()) throw TreeError(TreeError::Kind::UnknownEdge, "unknown edge id " + std::to_string(e));
    if (removed[e]) throw TreeError(TreeError::Kind::DuplicateEdge, "edge id " + std::to_string(e) + " listed twice");
    removed[e] = true;
  }
  UnionFind uf(n);
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    if (!removed[e]) uf.unite(tree.edge(e).u, tree.edge(e).v);
  }
  std::vector<ComponentSummary<S>> out;
  std::vector<std::size_t> slot(n, n);
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t root = uf.find(v);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.push_back(ComponentSummary<S>{v, S{}, 0, {}});
    }
    auto& c = out[slot[root]];
    c.weight += tree.weight(v);
    ++c.size;
    c.vertices.push_back(v);
  }
  return out;
}

template <Scalar S>
OracleResult<S> exact_optimum(const WeightedTree<S>& tree, std::size_t k, Objective objective, std::uint64_t budget) {
  require_valid(tree);
  const std::size_t n = tree.vertex_count();
  if (k < 2 || k > n) {
    throw std::invalid_argument("oracle needs 2 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  }
  const std::uint64_t subsets = binomial(n - 1, k - 1);
  if (subsets > budget) {
    throw BudgetExceeded("C(" + std::to_string(n - 1) + ", " + std::to_string(k - 1) + ") = " +
                         (subsets == std::numeric_limits<std::uint64_t>::max() ? std::string("overflow")
                                                                               : std::to_string(subsets)) +
                         " subsets exceeds the budget of " + std::to_string(budget));
  }
  OracleResult<S> result{objective, k, S{}, {}, 0};
  if constexpr (ScalarTraits<S>::exact) {
    if (auto scaled = scale_to_integers(tree.weights())) {
      auto best = enumerate<std::int64_t>(n, tree.edges(), scaled->values, k - 1, objective);
      result.optimum = Rational(mpq_class(mpz_class(static_cast<long>(best.value)), scaled->denominator));
      result.witness = std::move(best.witness);
      result.subsets_examined = best.examined;
      return result;
    }
  }
  std::vector<S> weights(tree.weights().begin(), tree.weights().end());
  auto best = enumerate<S>(n, tree.edges(), weights, k - 1, objective);
  result.optimum = std::move(best.value);
  result.witness = std::move(best.witness);
  result.subsets_examined = best.examined;
  return result;
}

template std::vector<ComponentSummary<double>> evaluate_separator(const WeightedTree<double>&, std::span<const EdgeId>);
template std::vector<ComponentSummary<Rational>> evaluate_separator(const WeightedTree<Rational>&,
                                                                    std::span<const EdgeId>);
template OracleResult<double> exact_optimum(const WeightedTree<double>&, std::size_t, Objective, std::uint64_t);
template OracleResult<Rational> exact_optimum(const WeightedTree<Rational>&, std::size_t, Objective, std::uint64_t);

}  // namespace qbsep
