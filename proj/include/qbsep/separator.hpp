#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbsep/lemma_split.hpp"
#include "qbsep/tree.hpp"

namespace qbsep {

enum class Objective { MaxMin, MinMax };

/// Which construction produced a separator, and therefore which bound it carries.
enum class Guarantee {
  Bisection,      // k = 2: both (W - g)/3 <= min and max <= (2W + g)/3
  MaxMinPeeling,  // fixed eta; min >= (W - (k-1)g)/(2k-1)
  MinMaxPeeling,  // per-step eta schedule; max <= (2W + kg)/(k+1)
};

std::string to_string(Objective objective);
std::string to_string(Guarantee guarantee);
Objective parse_objective(const std::string& text);

template <Scalar S>
struct ComponentSummary {
  VertexId representative;  // smallest vertex id in the component
  S weight;
  std::size_t size;
  std::vector<VertexId> vertices;  // ascending
};

template <Scalar S>
struct Separator {
  Objective objective;
  std::size_t k;
  std::vector<EdgeId> removed_edges;  // ascending
  std::vector<ComponentSummary<S>> components;  // ordered by representative

  S min_component_weight() const;
  S max_component_weight() const;
};

template <Scalar S>
struct PreconditionReport {
  std::vector<InequalityCheck<S>> checks;
  bool ok() const;
  std::vector<std::string> violations() const;
};

template <Scalar S>
struct ClampEvent {
  std::size_t j;
  S scheduled;
  S used;
  std::optional<S> lower;
  S upper;
};

/// One peeling step at index j: the residual T_j is cut into the fixed
/// component R_{j-1} and the next residual T_{j-1}.
template <Scalar S>
struct PeelStep {
  std::size_t j;
  S eta_scheduled;
  S eta;
  bool clamped = false;
  S residual_weight;
  std::size_t residual_size;
  EdgeId edge;  // id in the input tree
  S peeled_weight;
  std::size_t peeled_size;
  S remaining_weight;
  std::size_t remaining_size;
  // Min-max schedule only: the interval the next residual must fall in.
  std::optional<std::pair<S, S>> suitable;
  std::optional<bool> remaining_suitable;
};

template <Scalar S>
std::string describe(const std::vector<PeelStep<S>>& trace);

template <Scalar S>
struct BoundCertificate {
  Guarantee guarantee;
  Objective objective;
  std::size_t k;
  S gamma;
  PreconditionReport<S> precondition;
  std::optional<S> lower_bound;
  std::optional<S> upper_bound;
  S achieved_min;
  S achieved_max;
  bool holds = false;
  // False for the k = 3 min-max fallback, whose bound is only checked after the fact.
  bool proven = true;
  // Min-max only: the sharper (2W + (k-1)g)/(k+1) bound, reported but not certified.
  std::optional<S> sharper_upper_bound;
  std::optional<bool> sharper_upper_holds;
  std::vector<ClampEvent<S>> clamps;
};

template <Scalar S>
struct SeparatorRun {
  Separator<S> separator;
  BoundCertificate<S> certificate;
  std::vector<PeelStep<S>> trace;
};

/// omega3, or 0 when no vertex has degree 3: the smallest admissible gamma.
template <Scalar S>
S default_gamma(const DegreeProfile<S>& profile);

template <Scalar S>
S max_min_bound(const S& total, std::size_t k, const S& gamma);
template <Scalar S>
S min_max_bound(const S& total, std::size_t k, const S& gamma);
template <Scalar S>
S min_max_sharper_bound(const S& total, std::size_t k, const S& gamma);

/// Hypotheses of each construction, including n >= k and gamma >= omega3.
/// At k = 2 both peeling hypotheses are the bisection hypothesis.
template <Scalar S>
PreconditionReport<S> bisect_precondition(const WeightedTree<S>& tree, const S& gamma);
template <Scalar S>
PreconditionReport<S> max_min_precondition(const WeightedTree<S>& tree, std::size_t k, const S& gamma);
template <Scalar S>
PreconditionReport<S> min_max_precondition(const WeightedTree<S>& tree, std::size_t k, const S& gamma);

/// Per-step eta for the min-max schedule:
///   (k-3) Tj / (2(2k-j-3)) - (j-3)(k-1) W / (2(2k-j-3)(k+1))
///     - ((k+3)(k-2) - j(k-1)) g / (2(2k-j-3)(k+1)).
/// Throws DegenerateSchedule when 2k-j-3 = 0 or k < 3, std::invalid_argument
/// when j is outside [2, k].
template <Scalar S>
S eta_schedule(std::size_t j, std::size_t k, const S& total, const S& current, const S& gamma);

/// [lower, upper] that the residual T_j's weight must occupy under the
/// min-max schedule. Throws DegenerateSchedule for k < 3.
template <Scalar S>
std::pair<S, S> suitable_interval(std::size_t j, std::size_t k, const S& total, const S& gamma);

/// Single cut with eta = (W - gamma)/3. Throws ParameterError when the
/// hypothesis fails.
template <Scalar S>
SeparatorRun<S> bisect(const WeightedTree<S>& tree, std::optional<S> gamma = std::nullopt,
                       Objective objective = Objective::MaxMin);

/// Peels k-1 components with the fixed eta = (W - (k-1)gamma)/(2k-1).
template <Scalar S>
SeparatorRun<S> max_min_separator(const WeightedTree<S>& tree, std::size_t k, std::optional<S> gamma = std::nullopt);

/// Peels k-1 components with eta_schedule. At k = 3 the degenerate first
/// entry is replaced by (W - gamma)/4; that run is checked but marked unproven.
template <Scalar S>
SeparatorRun<S> min_max_separator(const WeightedTree<S>& tree, std::size_t k, std::optional<S> gamma = std::nullopt);

}  // namespace qbsep
