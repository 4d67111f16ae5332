#include "qbsep/lemma_split.hpp"

#include <sstream>

namespace qbsep {

namespace {

template <Scalar S>
std::string describe(const InequalityCheck<S>& c) {
  std::ostringstream os;
  os << c.name << (c.holds ? " holds" : " violated");
  if (c.margin) os << " (margin " << *c.margin << ")";
  return os.str();
}

}  // namespace

template <Scalar S>
std::vector<std::string> ParamReport<S>::violations() const {
  std::vector<std::string> out;
  for (const auto* c : {&gamma_vs_omega3, &eta_lower, &eta_upper}) {
    if (!c->holds) out.push_back(describe(*c));
  }
  return out;
}

template <Scalar S>
std::optional<S> eta_lower_limit(const DegreeProfile<S>& profile, const S& gamma) {
  std::optional<S> limit;
  if (profile.omega1) limit = (*profile.omega1 - gamma) / S{2};
  if (profile.omega2) {
    S term = *profile.omega2 - gamma;
    if (!limit || *limit < term) limit = term;
  }
  return limit;
}

template <Scalar S>
ParamReport<S> check_split_params(const WeightedTree<S>& tree, const DegreeProfile<S>& profile,
                                  const SplitParams<S>& params) {
  const S& scale = tree.total_weight();
  ParamReport<S> r;
  r.gamma_vs_omega3.name = "gamma >= omega3";
  if (profile.omega3) {
    r.gamma_vs_omega3.margin = params.gamma - *profile.omega3;
    r.gamma_vs_omega3.holds = approx_ge(params.gamma, *profile.omega3, scale);
  }
  r.eta_lower.name = "eta >= max{(omega1 - gamma)/2, omega2 - gamma}";
  if (auto lo = eta_lower_limit(profile, params.gamma)) {
    r.eta_lower.margin = params.eta - *lo;
    r.eta_lower.holds = approx_ge(params.eta, *lo, scale);
  }
  r.eta_upper.name = "eta <= total/2";
  const S half = tree.total_weight() / S{2};
  r.eta_upper.margin = half - params.eta;
  r.eta_upper.holds = approx_le(params.eta, half, scale);
  return r;
}

template <Scalar S>
ParamReport<S> check_split_params(const WeightedTree<S>& tree, const SplitParams<S>& params) {
  return check_split_params(tree, degree_profile(tree), params);
}

template <Scalar S>
SplitResult<S> find_split_edge(const WeightedTree<S>& tree, const SplitParams<S>& params) {
  require_valid(tree);
  const auto report = check_split_params(tree, params);
  if (!report.ok()) throw ParameterError("split parameters fail the edge-search hypothesis:", report.violations());

  const S& scale = tree.total_weight();
  const EdgeSideTable<S> table(tree, 0);
  std::optional<SplitResult<S>> best;
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    const Edge& edge = tree.edge(e);
    std::optional<SplitResult<S>> candidate;
    for (VertexId endpoint : {edge.u, edge.v}) {
      S w = table.side_weight(e, endpoint);
      if (!approx_ge(w, params.eta, scale)) continue;
      SplitResult<S> side{e, endpoint, w, scale - w, table.side_size(e, endpoint), 0};
      side.other_size = tree.vertex_count() - side.certified_size;
      const bool better = !candidate || side.certified_size < candidate->certified_size ||
                          (side.certified_size == candidate->certified_size &&
                           side.certified_weight < candidate->certified_weight);
      if (better) candidate = std::move(side);
    }
    if (candidate && (!best || candidate->certified_size < best->certified_size)) best = std::move(candidate);
  }

  const S upper = S{2} * params.eta + params.gamma;
  if (!best) {
    throw InternalContradiction("no edge side reaches eta although eta <= total/2", "");
  }
  if (!approx_le(best->certified_weight, upper, scale)) {
    std::ostringstream os;
    os << "edge " << best->edge << " side at vertex " << best->certified_endpoint << ": weight "
       << best->certified_weight << " > 2*eta+gamma = " << upper << " (size " << best->certified_size << ")";
    throw InternalContradiction("minimal qualifying side exceeds 2*eta + gamma", os.str());
  }
  return *best;
}

#define QBSEP_INSTANTIATE_SPLIT(S)                                                                       \
  template struct ParamReport<S>;                                                                        \
  template std::optional<S> eta_lower_limit(const DegreeProfile<S>&, const S&);                          \
  template ParamReport<S> check_split_params(const WeightedTree<S>&, const SplitParams<S>&);             \
  template ParamReport<S> check_split_params(const WeightedTree<S>&, const DegreeProfile<S>&,            \
                                             const SplitParams<S>&);                                     \
  template SplitResult<S> find_split_edge(const WeightedTree<S>&, const SplitParams<S>&);

QBSEP_INSTANTIATE_SPLIT(double)
QBSEP_INSTANTIATE_SPLIT(Rational)
#undef QBSEP_INSTANTIATE_SPLIT

}  // namespace qbsep
