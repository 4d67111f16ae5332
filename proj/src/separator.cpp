#include "qbsep/separator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qbsep {

std::string to_string(Objective objective) {
  return objective == Objective::MaxMin ? "max-min" : "min-max";
}

std::string to_string(Guarantee guarantee) {
  switch (guarantee) {
    case Guarantee::Bisection: return "bisection";
    case Guarantee::MaxMinPeeling: return "max-min-peeling";
    case Guarantee::MinMaxPeeling: return "min-max-peeling";
  }
  return "unknown";
}

Objective parse_objective(const std::string& text) {
  if (text == "max-min") return Objective::MaxMin;
  if (text == "min-max") return Objective::MinMax;
  throw std::invalid_argument("objective must be max-min or min-max, got '" + text + "'");
}

template <Scalar S>
S Separator<S>::min_component_weight() const {
  auto it = std::min_element(components.begin(), components.end(),
                             [](const auto& a, const auto& b) { return a.weight < b.weight; });
  return it->weight;
}

template <Scalar S>
S Separator<S>::max_component_weight() const {
  auto it = std::max_element(components.begin(), components.end(),
                             [](const auto& a, const auto& b) { return a.weight < b.weight; });
  return it->weight;
}

template <Scalar S>
bool PreconditionReport<S>::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

template <Scalar S>
std::vector<std::string> PreconditionReport<S>::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.holds) continue;
    std::ostringstream os;
    os << c.name << " violated";
    if (c.margin) os << " (margin " << *c.margin << ")";
    out.push_back(os.str());
  }
  return out;
}

template <Scalar S>
std::string describe(const std::vector<PeelStep<S>>& trace) {
  std::ostringstream os;
  for (const auto& s : trace) {
    os << "step j=" << s.j << ": residual weight " << s.residual_weight << " size " << s.residual_size
       << ", eta scheduled " << s.eta_scheduled << " used " << s.eta << (s.clamped ? " (clamped)" : "")
       << ", cut edge " << s.edge << ", peeled weight " << s.peeled_weight << " size " << s.peeled_size
       << ", remaining weight " << s.remaining_weight << " size " << s.remaining_size;
    if (s.suitable) os << ", suitable [" << s.suitable->first << ", " << s.suitable->second << "]";
    os << '\n';
  }
  return os.str();
}

template <Scalar S>
S default_gamma(const DegreeProfile<S>& profile) {
  return profile.omega3 ? *profile.omega3 : S{0};
}

template <Scalar S>
S max_min_bound(const S& total, std::size_t k, const S& gamma) {
  const auto kk = static_cast<std::int64_t>(k);
  return (total - S(kk - 1) * gamma) / S(2 * kk - 1);
}

template <Scalar S>
S min_max_bound(const S& total, std::size_t k, const S& gamma) {
  const auto kk = static_cast<std::int64_t>(k);
  return (S{2} * total + S(kk) * gamma) / S(kk + 1);
}

template <Scalar S>
S min_max_sharper_bound(const S& total, std::size_t k, const S& gamma) {
  const auto kk = static_cast<std::int64_t>(k);
  return (S{2} * total + S(kk - 1) * gamma) / S(kk + 1);
}

namespace {

template <Scalar S>
InequalityCheck<S> at_least(std::string name, const S& lhs, const std::optional<S>& rhs, const S& scale) {
  InequalityCheck<S> c;
  c.name = std::move(name);
  if (rhs) {
    c.margin = lhs - *rhs;
    c.holds = approx_ge(lhs, *rhs, scale);
  }
  return c;
}

template <Scalar S>
std::optional<S> affine(const std::optional<S>& omega, const S& coeff, const S& gamma_coeff, const S& gamma) {
  if (!omega) return std::nullopt;
  return coeff * *omega + gamma_coeff * gamma;
}

template <Scalar S>
PreconditionReport<S> common_checks(const WeightedTree<S>& tree, const DegreeProfile<S>& profile, std::size_t k,
                                    const S& gamma) {
  PreconditionReport<S> r;
  InequalityCheck<S> size_check;
  size_check.name = "vertex count >= k";
  size_check.holds = tree.vertex_count() >= k;
  size_check.margin = S(static_cast<std::int64_t>(tree.vertex_count()) - static_cast<std::int64_t>(k));
  r.checks.push_back(std::move(size_check));
  r.checks.push_back(at_least<S>("gamma >= omega3", gamma, profile.omega3, tree.total_weight()));
  return r;
}

void require_k(std::size_t k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2, got " + std::to_string(k));
}

}  // namespace

template <Scalar S>
PreconditionReport<S> bisect_precondition(const WeightedTree<S>& tree, const S& gamma) {
  const auto profile = degree_profile(tree);
  const S& total = tree.total_weight();
  auto r = common_checks(tree, profile, 2, gamma);
  r.checks.push_back(at_least<S>("total >= (3 omega1 - gamma)/2", total,
                                 affine<S>(profile.omega1, ratio<S>(3, 2), ratio<S>(-1, 2), gamma), total));
  r.checks.push_back(
      at_least<S>("total >= 3 omega2 - 2 gamma", total, affine<S>(profile.omega2, S{3}, S{-2}, gamma), total));
  return r;
}

template <Scalar S>
PreconditionReport<S> max_min_precondition(const WeightedTree<S>& tree, std::size_t k, const S& gamma) {
  require_k(k);
  if (k == 2) return bisect_precondition(tree, gamma);
  const auto profile = degree_profile(tree);
  const S& total = tree.total_weight();
  const auto kk = static_cast<std::int64_t>(k);
  auto r = common_checks(tree, profile, k, gamma);
  r.checks.push_back(at_least<S>("total >= (2k-1)/2 omega1 - gamma/2", total,
                                 affine<S>(profile.omega1, ratio<S>(2 * kk - 1, 2), ratio<S>(-1, 2), gamma), total));
  r.checks.push_back(at_least<S>("total >= (2k-1) omega2 - k gamma", total,
                                 affine<S>(profile.omega2, S(2 * kk - 1), S(-kk), gamma), total));
  return r;
}

template <Scalar S>
PreconditionReport<S> min_max_precondition(const WeightedTree<S>& tree, std::size_t k, const S& gamma) {
  require_k(k);
  if (k == 2) return bisect_precondition(tree, gamma);
  const auto profile = degree_profile(tree);
  const S& total = tree.total_weight();
  const auto kk = static_cast<std::int64_t>(k);
  auto r = common_checks(tree, profile, k, gamma);
  r.checks.push_back(at_least<S>(
      "total >= (k+1)(k-2)/(k-1) omega1 - 2/(k-1) gamma", total,
      affine<S>(profile.omega1, ratio<S>((kk + 1) * (kk - 2), kk - 1), ratio<S>(-2, kk - 1), gamma), total));
  r.checks.push_back(at_least<S>(
      "total >= 2(k+1)(k-2)/(k-1) omega2 - k gamma", total,
      affine<S>(profile.omega2, ratio<S>(2 * (kk + 1) * (kk - 2), kk - 1), S(-kk), gamma), total));
  return r;
}

template <Scalar S>
S eta_schedule(std::size_t j, std::size_t k, const S& total, const S& current, const S& gamma) {
  const auto jj = static_cast<std::int64_t>(j);
  const auto kk = static_cast<std::int64_t>(k);
  const std::int64_t d = 2 * kk - jj - 3;
  if (d == 0) {
    throw DegenerateSchedule("eta schedule denominator 2k-j-3 vanishes at j=" + std::to_string(j) +
                             ", k=" + std::to_string(k));
  }
  if (j < 2 || j > k) {
    throw std::invalid_argument("eta schedule index j=" + std::to_string(j) + " outside [2, " + std::to_string(k) +
                                "]");
  }
  if (k < 3) throw DegenerateSchedule("eta schedule is defined for k >= 3, got k=" + std::to_string(k));
  return ratio<S>(kk - 3, 2 * d) * current - ratio<S>((jj - 3) * (kk - 1), 2 * d * (kk + 1)) * total -
         ratio<S>((kk + 3) * (kk - 2) - jj * (kk - 1), 2 * d * (kk + 1)) * gamma;
}

template <Scalar S>
std::pair<S, S> suitable_interval(std::size_t j, std::size_t k, const S& total, const S& gamma) {
  if (k < 3) throw DegenerateSchedule("suitable interval needs k >= 3, got k=" + std::to_string(k));
  if (j < 1 || j > k) {
    throw std::invalid_argument("suitable interval index j=" + std::to_string(j) + " outside [1, " +
                                std::to_string(k) + "]");
  }
  const auto jj = static_cast<std::int64_t>(j);
  const auto kk = static_cast<std::int64_t>(k);
  const std::int64_t d = (kk + 1) * (kk - 2);
  S lower = ratio<S>((jj - 1) * (kk - 1), d) * total + (ratio<S>(2 * (jj - 1), d) - S{1}) * gamma;
  S upper = ratio<S>(jj + 1, kk + 1) * total + ratio<S>(kk - jj, kk + 1) * gamma;
  return {std::move(lower), std::move(upper)};
}

namespace {

template <Scalar S>
ComponentSummary<S> summarize(const WeightedTree<S>& tree, std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  S weight{};
  for (VertexId v : vertices) weight += tree.weight(v);
  return ComponentSummary<S>{vertices.front(), std::move(weight), vertices.size(), std::move(vertices)};
}

template <Scalar S>
Separator<S> assemble(Objective objective, std::size_t k, std::vector<EdgeId> edges,
                      std::vector<ComponentSummary<S>> components) {
  std::sort(edges.begin(), edges.end());
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.representative < b.representative; });
  return Separator<S>{objective, k, std::move(edges), std::move(components)};
}

template <Scalar S>
void finish_certificate(BoundCertificate<S>& cert, const Separator<S>& sep, const S& scale) {
  cert.achieved_min = sep.min_component_weight();
  cert.achieved_max = sep.max_component_weight();
  cert.holds = true;
  if (cert.lower_bound) cert.holds = cert.holds && approx_ge(cert.achieved_min, *cert.lower_bound, scale);
  if (cert.upper_bound) cert.holds = cert.holds && approx_le(cert.achieved_max, *cert.upper_bound, scale);
  if (cert.sharper_upper_bound) cert.sharper_upper_holds = approx_le(cert.achieved_max, *cert.sharper_upper_bound, scale);
}

template <Scalar S>
void require_positivity(const S& total, std::size_t k, const S& gamma, bool strict) {
  const S value = total + S(static_cast<std::int64_t>(k)) * gamma;
  const bool ok = strict ? value > S{0} : value >= S{0};
  if (!ok) {
    std::ostringstream os;
    os << "total + k*gamma = " << value << (strict ? " <= 0" : " < 0");
    throw InternalContradiction("hypothesis holds but total + k*gamma is not positive", os.str());
  }
}

// What a peeling policy decides at step j.
template <Scalar S>
struct EtaChoice {
  S scheduled;
  S used;
  bool clamped = false;
};

template <Scalar S, class Policy>
SeparatorRun<S> peel(const WeightedTree<S>& tree, std::size_t k, const S& gamma, BoundCertificate<S> cert,
                     Policy&& choose_eta, bool track_suitable) {
  const S& total = tree.total_weight();
  std::vector<VertexId> all(tree.vertex_count());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  Subtree<S> residual = induced_subtree(tree, std::span<const VertexId>(all));

  std::vector<PeelStep<S>> trace;
  std::vector<EdgeId> removed;
  std::vector<ComponentSummary<S>> components;
  for (std::size_t j = k; j >= 2; --j) {
    const WeightedTree<S>& current = residual.tree;
    if (current.vertex_count() < 2) {
      throw InternalContradiction("residual tree has a single vertex with " + std::to_string(j - 1) +
                                      " cuts still to make",
                                  describe(trace));
    }
    const auto profile = degree_profile(current);
    EtaChoice<S> eta = choose_eta(j, current, profile, trace);
    if (eta.clamped) {
      cert.clamps.push_back(
          {j, eta.scheduled, eta.used, eta_lower_limit(profile, gamma), current.total_weight() / S{2}});
    }
    const SplitParams<S> params{eta.used, gamma};
    const auto check = check_split_params(current, profile, params);
    if (!check.ok()) {
      std::string dump = describe(trace);
      for (const auto& line : check.violations()) dump += "step j=" + std::to_string(j) + ": " + line + "\n";
      throw InternalContradiction("edge-search hypothesis fails mid-peel", dump);
    }
    SplitResult<S> split;
    try {
      split = find_split_edge(current, params);
    } catch (const InternalContradiction& e) {
      throw InternalContradiction(e.what(), describe(trace));
    }
    const Edge& cut = current.edge(split.edge);
    const VertexId kept_endpoint = cut.other(split.certified_endpoint);
    std::vector<VertexId> peeled = side_vertices(current, split.edge, split.certified_endpoint);
    std::vector<VertexId> kept = side_vertices(current, split.edge, kept_endpoint);
    for (auto& v : peeled) v = residual.parent_vertex[v];
    for (auto& v : kept) v = residual.parent_vertex[v];

    PeelStep<S> step{j,
                     eta.scheduled,
                     eta.used,
                     eta.clamped,
                     current.total_weight(),
                     current.vertex_count(),
                     residual.parent_edge[split.edge],
                     split.certified_weight,
                     split.certified_size,
                     split.other_weight,
                     split.other_size,
                     std::nullopt,
                     std::nullopt};
    if (track_suitable) {
      step.suitable = suitable_interval(j - 1, k, total, gamma);
      step.remaining_suitable = approx_ge(split.other_weight, step.suitable->first, total) &&
                                approx_le(split.other_weight, step.suitable->second, total);
      if (!*step.remaining_suitable && cert.proven) {
        trace.push_back(step);
        throw InternalContradiction("residual weight left the suitable interval", describe(trace));
      }
    }
    removed.push_back(step.edge);
    components.push_back(summarize(tree, std::move(peeled)));
    trace.push_back(std::move(step));
    residual = induced_subtree(tree, std::span<const VertexId>(kept));
  }
  components.push_back(summarize(tree, std::vector<VertexId>(residual.parent_vertex)));

  SeparatorRun<S> run{assemble(cert.objective, k, std::move(removed), std::move(components)), std::move(cert),
                      std::move(trace)};
  finish_certificate(run.certificate, run.separator, total);
  return run;
}

template <Scalar S>
BoundCertificate<S> blank_certificate(Guarantee guarantee, Objective objective, std::size_t k, const S& gamma,
                                      PreconditionReport<S> pre) {
  BoundCertificate<S> cert;
  cert.guarantee = guarantee;
  cert.objective = objective;
  cert.k = k;
  cert.gamma = gamma;
  cert.precondition = std::move(pre);
  return cert;
}

}  // namespace

template <Scalar S>
SeparatorRun<S> bisect(const WeightedTree<S>& tree, std::optional<S> gamma, Objective objective) {
  require_valid(tree);
  const S g = gamma ? *gamma : default_gamma(degree_profile(tree));
  auto pre = bisect_precondition(tree, g);
  if (!pre.ok()) throw ParameterError("bisection hypothesis fails:", pre.violations());
  const S& total = tree.total_weight();
  require_positivity(total, 2, g, false);

  auto cert = blank_certificate(Guarantee::Bisection, objective, 2, g, std::move(pre));
  cert.lower_bound = (total - g) / S{3};
  cert.upper_bound = (S{2} * total + g) / S{3};
  const S eta = (total - g) / S{3};
  return peel(tree, 2, g, std::move(cert),
              [&](std::size_t, const WeightedTree<S>&, const DegreeProfile<S>&, const std::vector<PeelStep<S>>&) {
                return EtaChoice<S>{eta, eta, false};
              },
              false);
}

template <Scalar S>
SeparatorRun<S> max_min_separator(const WeightedTree<S>& tree, std::size_t k, std::optional<S> gamma) {
  require_k(k);
  if (k == 2) return bisect(tree, gamma, Objective::MaxMin);
  require_valid(tree);
  const S g = gamma ? *gamma : default_gamma(degree_profile(tree));
  auto pre = max_min_precondition(tree, k, g);
  if (!pre.ok()) throw ParameterError("max-min peeling hypothesis fails:", pre.violations());
  const S& total = tree.total_weight();
  require_positivity(total, k, g, true);

  auto cert = blank_certificate(Guarantee::MaxMinPeeling, Objective::MaxMin, k, g, std::move(pre));
  const S eta = max_min_bound(total, k, g);
  cert.lower_bound = eta;
  auto run = peel(tree, k, g, std::move(cert),
                  [&](std::size_t, const WeightedTree<S>&, const DegreeProfile<S>&, const std::vector<PeelStep<S>>&) {
                    return EtaChoice<S>{eta, eta, false};
                  },
                  false);
  const auto& last = run.trace.back();
  if (!approx_ge(last.remaining_weight, eta, total)) {
    std::ostringstream os;
    os << "final residual weight " << last.remaining_weight << " < eta " << eta;
    throw InternalContradiction("max-min peeling left a residual below eta", describe(run.trace) + os.str());
  }
  return run;
}

template <Scalar S>
SeparatorRun<S> min_max_separator(const WeightedTree<S>& tree, std::size_t k, std::optional<S> gamma) {
  require_k(k);
  if (k == 2) return bisect(tree, gamma, Objective::MinMax);
  require_valid(tree);
  const S g = gamma ? *gamma : default_gamma(degree_profile(tree));
  auto pre = min_max_precondition(tree, k, g);
  if (!pre.ok()) throw ParameterError("min-max peeling hypothesis fails:", pre.violations());
  const S& total = tree.total_weight();
  require_positivity(total, k, g, true);

  auto cert = blank_certificate(Guarantee::MinMaxPeeling, Objective::MinMax, k, g, std::move(pre));
  cert.upper_bound = min_max_bound(total, k, g);
  cert.sharper_upper_bound = min_max_sharper_bound(total, k, g);
  cert.proven = k >= 4;

  auto choose = [&](std::size_t j, const WeightedTree<S>& current, const DegreeProfile<S>& profile,
                    const std::vector<PeelStep<S>>& trace) {
    const S& w = current.total_weight();
    // The schedule's value at j = k is (W - g)/(k+1) for every k >= 4; at
    // k = 3 that entry is 0/0, so the closed form stands in for it.
    S scheduled = (k == 3 && j == 3) ? (total - g) / S{4} : eta_schedule(j, k, total, w, g);
    const std::optional<S> lo = eta_lower_limit(profile, g);
    const S hi = w / S{2};
    if (lo && !approx_le(*lo, hi, total)) {
      std::ostringstream os;
      os << "step j=" << j << ": admissible eta interval [" << *lo << ", " << hi << "] is empty";
      throw InternalContradiction("no admissible eta for the edge search", describe(trace) + os.str());
    }
    S used = scheduled;
    if (lo && used < *lo) used = *lo;
    if (used > hi) used = hi;
    const bool clamped = used != scheduled;
    return EtaChoice<S>{std::move(scheduled), std::move(used), clamped};
  };
  return peel(tree, k, g, std::move(cert), choose, true);
}

#define QBSEP_INSTANTIATE_SEPARATOR(S)                                                                 \
  template struct Separator<S>;                                                                        \
  template struct PreconditionReport<S>;                                                               \
  template std::string describe(const std::vector<PeelStep<S>>&);                                      \
  template S default_gamma(const DegreeProfile<S>&);                                                   \
  template S max_min_bound(const S&, std::size_t, const S&);                                           \
  template S min_max_bound(const S&, std::size_t, const S&);                                           \
  template S min_max_sharper_bound(const S&, std::size_t, const S&);                                   \
  template PreconditionReport<S> bisect_precondition(const WeightedTree<S>&, const S&);                \
  template PreconditionReport<S> max_min_precondition(const WeightedTree<S>&, std::size_t, const S&);  \
  template PreconditionReport<S> min_max_precondition(const WeightedTree<S>&, std::size_t, const S&);  \
  template S eta_schedule(std::size_t, std::size_t, const S&, const S&, const S&);                     \
  template std::pair<S, S> suitable_interval(std::size_t, std::size_t, const S&, const S&);            \
  template SeparatorRun<S> bisect(const WeightedTree<S>&, std::optional<S>, Objective);                \
  template SeparatorRun<S> max_min_separator(const WeightedTree<S>&, std::size_t, std::optional<S>);   \
  template SeparatorRun<S> min_max_separator(const WeightedTree<S>&, std::size_t, std::optional<S>);

QBSEP_INSTANTIATE_SEPARATOR(double)
QBSEP_INSTANTIATE_SEPARATOR(Rational)
#undef QBSEP_INSTANTIATE_SEPARATOR

}  // namespace qbsep
