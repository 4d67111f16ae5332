#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbsep/tree.hpp"

namespace qbsep {

template <Scalar S>
struct SplitParams {
  S eta;
  S gamma;
};

/// One hypothesis inequality. `margin` is the slack (>= 0 when it holds);
/// absent when the inequality is vacuous because its defining vertex set is empty.
template <Scalar S>
struct InequalityCheck {
  std::string name;
  bool holds = true;
  std::optional<S> margin;
};

template <Scalar S>
struct ParamReport {
  InequalityCheck<S> gamma_vs_omega3;
  InequalityCheck<S> eta_lower;
  InequalityCheck<S> eta_upper;

  bool ok() const { return gamma_vs_omega3.holds && eta_lower.holds && eta_upper.holds; }
  std::vector<std::string> violations() const;
};

/// Edge whose certified side weighs within [eta, 2 eta + gamma].
template <Scalar S>
struct SplitResult {
  EdgeId edge;
  VertexId certified_endpoint;
  S certified_weight;
  S other_weight;
  std::size_t certified_size;
  std::size_t other_size;
};

/// max{(omega1 - gamma)/2, omega2 - gamma} with absent terms dropped;
/// absent only when both maxima are.
template <Scalar S>
std::optional<S> eta_lower_limit(const DegreeProfile<S>& profile, const S& gamma);

template <Scalar S>
ParamReport<S> check_split_params(const WeightedTree<S>& tree, const SplitParams<S>& params);

template <Scalar S>
ParamReport<S> check_split_params(const WeightedTree<S>& tree, const DegreeProfile<S>& profile,
                                  const SplitParams<S>& params);

/// Among all (edge, side) pairs whose side weighs at least eta, picks one of
/// minimum vertex count; ties go to the smallest edge id, then within an
/// edge to the lighter side, then to the side holding the edge's lower
/// endpoint. Minimality forces the upper bound, which is checked anyway.
///
/// Throws ParameterError when check_split_params fails and
/// InternalContradiction if the upper bound check ever fails.
template <Scalar S>
SplitResult<S> find_split_edge(const WeightedTree<S>& tree, const SplitParams<S>& params);

}  // namespace qbsep
