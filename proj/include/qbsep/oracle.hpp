#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qbsep/separator.hpp"
#include "qbsep/tree.hpp"

namespace qbsep {

inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

template <Scalar S>
struct OracleResult {
  Objective objective;
  std::size_t k;
  S optimum;
  std::vector<EdgeId> witness;  // lexicographically smallest optimal edge set
  std::uint64_t subsets_examined = 0;
};

/// C(n, r), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// Components of T minus `edges`, ordered by smallest vertex id. Throws
/// TreeError on an unknown or repeated edge id.
template <Scalar S>
std::vector<ComponentSummary<S>> evaluate_separator(const WeightedTree<S>& tree, std::span<const EdgeId> edges);

/// Exhaustive search over all (k-1)-edge subsets. Refuses with
/// BudgetExceeded when C(n-1, k-1) > budget.
template <Scalar S>
OracleResult<S> exact_optimum(const WeightedTree<S>& tree, std::size_t k, Objective objective,
                              std::uint64_t budget = kDefaultOracleBudget);

/// Largest achievable minimum component weight.
template <Scalar S>
OracleResult<S> exact_beta_k(const WeightedTree<S>& tree, std::size_t k, std::uint64_t budget = kDefaultOracleBudget) {
  return exact_optimum(tree, k, Objective::MaxMin, budget);
}

/// Smallest achievable maximum component weight.
template <Scalar S>
OracleResult<S> exact_alpha_k(const WeightedTree<S>& tree, std::size_t k, std::uint64_t budget = kDefaultOracleBudget) {
  return exact_optimum(tree, k, Objective::MinMax, budget);
}

}  // namespace qbsep
