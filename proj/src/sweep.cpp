#include "qbsep/sweep.hpp"

#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include "qbsep/generators.hpp"

namespace qbsep {

Arithmetic parse_arithmetic(const std::string& text) {
  if (text == "exact") return Arithmetic::Exact;
  if (text == "float") return Arithmetic::Float;
  throw std::invalid_argument("arithmetic must be exact or float, got '" + text + "'");
}

namespace {

void require_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("unknown field '" + key + "' in " + where);
  }
}

std::vector<std::size_t> ks_from_json(const json& value) {
  if (!value.is_array()) throw std::invalid_argument("'ks' must be an array of integers >= 2");
  std::vector<std::size_t> out;
  for (const auto& v : value) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() < 2) {
      throw std::invalid_argument("'ks' must be an array of integers >= 2");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace

SweepConfig SweepConfig::from_json(const json& config) {
  if (!config.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
  require_keys(config, {"instances", "ks", "gamma", "oracle_budget", "arithmetic", "objectives", "jobs"},
               "sweep config");
  SweepConfig out;
  if (config.contains("ks")) out.ks = ks_from_json(config["ks"]);
  if (config.contains("gamma")) {
    const auto& g = config["gamma"];
    if (!(g.is_string() && g.get<std::string>() == "auto")) out.gamma = rational_from_json(g);
  }
  if (config.contains("oracle_budget")) {
    if (!config["oracle_budget"].is_number_unsigned()) throw std::invalid_argument("'oracle_budget' must be >= 0");
    out.oracle_budget = config["oracle_budget"].get<std::uint64_t>();
  }
  if (config.contains("arithmetic")) out.arithmetic = parse_arithmetic(config["arithmetic"].get<std::string>());
  if (config.contains("objectives")) {
    out.objectives.clear();
    for (const auto& o : config["objectives"]) out.objectives.push_back(parse_objective(o.get<std::string>()));
  }
  if (config.contains("jobs")) {
    if (!config["jobs"].is_number_unsigned() || config["jobs"].get<std::size_t>() == 0) {
      throw std::invalid_argument("'jobs' must be a positive integer");
    }
    out.jobs = config["jobs"].get<std::size_t>();
  }
  if (config.contains("instances")) {
    if (!config["instances"].is_array()) throw std::invalid_argument("'instances' must be an array");
    for (const auto& entry : config["instances"]) {
      if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string()) {
        throw std::invalid_argument("each instance needs a string 'kind'");
      }
      const auto kind = entry["kind"].get<std::string>();
      static const std::set<std::string> kinds{"random", "tightness", "named", "file"};
      if (!kinds.count(kind)) throw std::invalid_argument("unknown instance kind '" + kind + "'");
      if (entry.contains("ks")) ks_from_json(entry["ks"]);
      if (kind == "random" && entry.contains("seeds")) {
        const auto& range = entry["seeds"];
        if (!range.is_array() || range.size() != 2 || !range[0].is_number_unsigned() ||
            !range[1].is_number_unsigned() || range[0].get<std::uint64_t>() > range[1].get<std::uint64_t>()) {
          throw std::invalid_argument("'seeds' must be [first, last] with first <= last");
        }
        for (auto s = range[0].get<std::uint64_t>(); s <= range[1].get<std::uint64_t>(); ++s) {
          json one = entry;
          one.erase("seeds");
          one["seed"] = s;
          out.instances.push_back({std::move(one)});
        }
        continue;
      }
      out.instances.push_back({entry});
    }
  }
  return out;
}

bool RunReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

json RunReport::to_json() const {
  json j{{"instance", instance}, {"results", results}, {"passed", passed()}, {"elapsed_ms", elapsed_ms}};
  j["verdicts"] = json::array();
  for (const auto& v : verdicts) j["verdicts"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  j["sharper_upper_bound"] = {{"checked", sharper_checked}, {"held", sharper_held}};
  return j;
}

json SweepSummary::to_json() const {
  return json{{"summary",
               {{"instances", instances},
                {"failed_instances", failed_instances},
                {"verdicts", verdicts},
                {"failed_verdicts", failed_verdicts},
                {"sharper_upper_bound", {{"checked", sharper_checked}, {"held", sharper_held}}},
                {"passed", passed()}}}};
}

WeightedTree<Rational> materialize(const InstanceSpec& spec) {
  const json& d = spec.descriptor;
  const auto kind = d.at("kind").get<std::string>();
  if (kind == "random") {
    const auto law = WeightLaw::parse(d.value("law", std::string("uniform:1:10")));
    return gen_random_quasi_binary(d.at("n").get<std::size_t>(), d.at("seed").get<std::uint64_t>(), law);
  }
  if (kind == "tightness") {
    return gen_tightness_family(d.at("k").get<std::size_t>(), rational_from_json(d.at("omega")),
                                rational_from_json(d.at("omega_prime")), d.value("path_len", std::size_t{1}))
        .tree;
  }
  if (kind == "named") {
    return gen_named(parse_named_kind(d.at("shape").get<std::string>()), d.at("size").get<std::size_t>(),
                     d.contains("weight") ? rational_from_json(d["weight"]) : Rational(1));
  }
  if (kind == "file") return read_tree_file(d.at("path").get<std::string>());
  throw std::invalid_argument("unknown instance kind '" + kind + "'");
}

namespace {

template <Scalar S>
std::string show(const S& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

template <Scalar S>
S from_exact(const Rational& r) {
  return ScalarTraits<S>::from_rational(r);
}

template <Scalar S>
bool components_match(const WeightedTree<S>& tree, const Separator<S>& sep) {
  const auto recomputed = evaluate_separator(tree, sep.removed_edges);
  if (recomputed.size() != sep.k || sep.components.size() != sep.k) return false;
  S sum{};
  for (std::size_t i = 0; i < recomputed.size(); ++i) {
    if (recomputed[i].vertices != sep.components[i].vertices) return false;
    sum += sep.components[i].weight;
  }
  return approx_le(sum, tree.total_weight(), tree.total_weight()) &&
         approx_ge(sum, tree.total_weight(), tree.total_weight());
}

template <Scalar S>
void verify_k(const WeightedTree<Rational>& exact, const WeightedTree<S>& tree, std::size_t k,
              const SweepConfig& config, const json& descriptor, RunReport& report) {
  const std::string tag = "k=" + std::to_string(k) + " ";
  const auto profile = degree_profile(tree);
  const S gamma = config.gamma ? from_exact<S>(*config.gamma) : default_gamma(profile);
  const S& total = tree.total_weight();
  json entry{{"k", k}, {"gamma", gamma}, {"arithmetic", ScalarTraits<S>::name}};
  std::optional<S> built_min;
  std::optional<S> built_max;

  for (Objective objective : config.objectives) {
    const std::string name = to_string(objective);
    const auto pre = objective == Objective::MaxMin ? max_min_precondition(tree, k, gamma)
                                                    : min_max_precondition(tree, k, gamma);
    if (!pre.ok()) {
      entry[name] = json{{"ran", false}, {"precondition", pre}};
      continue;
    }
    try {
      const auto run = objective == Objective::MaxMin ? max_min_separator(tree, k, std::optional<S>(gamma))
                                                      : min_max_separator(tree, k, std::optional<S>(gamma));
      entry[name] = run_to_json(run, false);
      entry[name]["ran"] = true;
      const auto& cert = run.certificate;
      const S& bound = objective == Objective::MaxMin ? *cert.lower_bound : *cert.upper_bound;
      const S& achieved = objective == Objective::MaxMin ? cert.achieved_min : cert.achieved_max;
      report.verdicts.push_back({tag + name + " certificate", cert.holds,
                                 "achieved " + show(achieved) + " vs bound " + show(bound) +
                                     (cert.proven ? "" : " (checked, unproven)")});
      report.verdicts.push_back(
          {tag + name + " separator", components_match(tree, run.separator), "k components summing to total"});
      if (cert.sharper_upper_holds) {
        ++report.sharper_checked;
        if (*cert.sharper_upper_holds) ++report.sharper_held;
      }
      if (objective == Objective::MaxMin) built_min = cert.achieved_min;
      if (objective == Objective::MinMax) built_max = cert.achieved_max;
    } catch (const Error& e) {
      report.verdicts.push_back({tag + name + " construction", false, e.what()});
    }
  }

  const auto subsets = binomial(exact.vertex_count() - 1, k - 1);
  std::optional<Rational> beta;
  if (subsets <= config.oracle_budget) {
    const auto b = exact_beta_k(exact, k, config.oracle_budget);
    const auto a = exact_alpha_k(exact, k, config.oracle_budget);
    entry["oracle"] = json{{"beta", b}, {"alpha", a}};
    beta = b.optimum;
    const Rational average = exact.total_weight() / Rational(static_cast<std::int64_t>(k));
    report.verdicts.push_back({tag + "averaging", b.optimum <= average && average <= a.optimum,
                               "beta " + show(b.optimum) + " <= W/k " + show(average) + " <= alpha " +
                                   show(a.optimum)});
    const auto bw = evaluate_separator(exact, b.witness);
    const auto aw = evaluate_separator(exact, a.witness);
    auto min_of = [](const auto& cs) {
      return std::min_element(cs.begin(), cs.end(), [](auto& x, auto& y) { return x.weight < y.weight; })->weight;
    };
    auto max_of = [](const auto& cs) {
      return std::max_element(cs.begin(), cs.end(), [](auto& x, auto& y) { return x.weight < y.weight; })->weight;
    };
    report.verdicts.push_back(
        {tag + "oracle witnesses", min_of(bw) == b.optimum && max_of(aw) == a.optimum, "re-evaluated witnesses"});
    if (built_min) {
      report.verdicts.push_back({tag + "beta dominance", approx_ge(from_exact<S>(b.optimum), *built_min, total),
                                 "beta " + show(b.optimum) + " >= constructed min " + show(*built_min)});
    }
    if (built_max) {
      report.verdicts.push_back({tag + "alpha dominance", approx_le(from_exact<S>(a.optimum), *built_max, total),
                                 "alpha " + show(a.optimum) + " <= constructed max " + show(*built_max)});
    }
  } else {
    entry["oracle"] = json{{"ran", false}, {"subsets", subsets}};
  }

  if (descriptor.at("kind") == "tightness" && descriptor.at("k").get<std::size_t>() == k) {
    const Rational omega_prime = rational_from_json(descriptor.at("omega_prime"));
    const auto exact_profile = degree_profile(exact);
    const Rational bound = max_min_bound(exact.total_weight(), k, default_gamma(exact_profile));
    const bool pass = beta && *beta == omega_prime && bound == omega_prime;
    report.verdicts.push_back({tag + "tightness", pass,
                               "beta " + (beta ? show(*beta) : std::string("not computed")) + ", omega' " +
                                   show(omega_prime) + ", bound " + show(bound)});
  }
  report.results.push_back(std::move(entry));
}

}  // namespace

RunReport verify_instance(const InstanceSpec& spec, const SweepConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.instance = spec.descriptor;
  auto finish = [&]() {
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return std::move(report);
  };

  std::optional<WeightedTree<Rational>> tree;
  try {
    tree = materialize(spec);
  } catch (const std::exception& e) {
    report.verdicts.push_back({"materialize", false, e.what()});
    return finish();
  }
  const auto validation = validate(*tree);
  report.verdicts.push_back({"valid tree", validation.valid(), json(validation).dump()});
  if (!validation.valid()) return finish();

  const auto p = degree_profile(*tree);
  report.verdicts.push_back({"n1 = n3 + 2", p.n1 == p.n3 + 2,
                             std::to_string(p.n1) + " vs " + std::to_string(p.n3) + " + 2"});
  bool ordered = true;
  if (p.omega2) ordered = ordered && *p.omega1 >= *p.omega2;
  if (p.omega3) ordered = ordered && *p.omega2 >= *p.omega3;
  report.verdicts.push_back({"omega1 >= omega2 >= omega3", ordered, ""});
  Rational cover = *p.omega1 * Rational(static_cast<std::int64_t>(p.n1));
  if (p.omega2) cover += *p.omega2 * Rational(static_cast<std::int64_t>(p.n2));
  if (p.omega3) cover += *p.omega3 * Rational(static_cast<std::int64_t>(p.n3));
  report.verdicts.push_back({"degree-class maxima cover total", cover >= tree->total_weight(),
                             show(cover) + " >= " + show(tree->total_weight())});

  std::vector<std::size_t> ks = config.ks;
  if (spec.descriptor.contains("ks")) {
    ks = ks_from_json(spec.descriptor["ks"]);
  } else if (spec.descriptor.at("kind") == "tightness") {
    ks = {spec.descriptor.at("k").get<std::size_t>()};
  }
  const WeightedTree<double> as_float = convert_weights<double>(*tree);
  for (std::size_t k : ks) {
    if (k > tree->vertex_count()) {
      report.results.push_back(json{{"k", k}, {"skipped", "k exceeds vertex count"}});
      continue;
    }
    try {
      if (config.arithmetic == Arithmetic::Exact) {
        verify_k<Rational>(*tree, *tree, k, config, spec.descriptor, report);
      } else {
        verify_k<double>(*tree, as_float, k, config, spec.descriptor, report);
      }
    } catch (const std::exception& e) {
      report.verdicts.push_back({"k=" + std::to_string(k) + " run", false, e.what()});
    }
  }
  return finish();
}

std::vector<RunReport> verify_sweep(const SweepConfig& config) {
  std::vector<RunReport> reports(config.instances.size());
  const std::size_t workers = std::min(config.jobs, std::max<std::size_t>(1, config.instances.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < reports.size(); ++i) reports[i] = verify_instance(config.instances[i], config);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < reports.size(); i = next++) {
        reports[i] = verify_instance(config.instances[i], config);
      }
    });
  }
  for (auto& t : pool) t.join();
  return reports;
}

SweepSummary summarize(const std::vector<RunReport>& reports) {
  SweepSummary s;
  s.instances = reports.size();
  for (const auto& r : reports) {
    if (!r.passed()) ++s.failed_instances;
    s.verdicts += r.verdicts.size();
    s.failed_verdicts += static_cast<std::size_t>(
        std::count_if(r.verdicts.begin(), r.verdicts.end(), [](const Verdict& v) { return !v.pass; }));
    s.sharper_checked += r.sharper_checked;
    s.sharper_held += r.sharper_held;
  }
  return s;
}

}  // namespace qbsep
