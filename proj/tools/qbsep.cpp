// qbsep: balanced edge separators for vertex-weighted quasi-binary trees.
//
//   qbsep check    FILE
//   qbsep split    FILE --eta R --gamma R
//   qbsep separate FILE --k K --objective max-min|min-max [--gamma R|auto] [--trace]
//   qbsep oracle   FILE --k K --objective max-min|min-max [--budget N]
//   qbsep gen      tightness|random|named ...
//   qbsep sweep    CONFIG.json [--jobs N]
//
// FILE may be "-" for stdin. Exit codes: 0 success, 1 verdict failure,
// 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qbsep/generators.hpp"
#include "qbsep/io.hpp"
#include "qbsep/oracle.hpp"
#include "qbsep/separator.hpp"
#include "qbsep/sweep.hpp"

namespace {

using namespace qbsep;

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

// Usage-level failures the CLI reports with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WeightedTree<Rational> load(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return parse_tree(buf.str());
  }
  return read_tree_file(path);
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("QBSEP_ORACLE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("QBSEP_ORACLE_BUDGET is not an integer: ") + env);
    }
  }
  return kDefaultOracleBudget;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

struct Common {
  std::string file;
  std::string arithmetic = "float";
  bool tsv = false;
};

template <Scalar S>
std::optional<S> gamma_option(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  return ScalarTraits<S>::from_rational(Rational::parse(text));
}

int cmd_check(const Common& c) {
  const auto tree = load(c.file);
  const auto report = validate(tree);
  json out{{"n", tree.vertex_count()}, {"total_weight", tree.total_weight()}, {"validation", report}};
  if (report.valid()) out["profile"] = degree_profile(tree);
  std::cout << out.dump(2) << "\n";
  return report.valid() ? 0 : kExitVerdict;
}

template <Scalar S>
int cmd_split(const WeightedTree<S>& tree, const std::string& eta, const std::string& gamma) {
  const SplitParams<S> params{ScalarTraits<S>::from_rational(Rational::parse(eta)),
                              ScalarTraits<S>::from_rational(Rational::parse(gamma))};
  require_valid(tree);
  json out{{"params", check_split_params(tree, params)}};
  int code = 0;
  try {
    out["split"] = find_split_edge(tree, params);
  } catch (const ParameterError& e) {
    out["error"] = e.what();
    code = kExitVerdict;
  }
  std::cout << out.dump(2) << "\n";
  return code;
}

template <Scalar S>
int cmd_separate(const WeightedTree<S>& tree, std::size_t k, Objective objective, const std::string& gamma,
                 bool trace, bool tsv) {
  const auto g = gamma_option<S>(gamma);
  const auto run = objective == Objective::MaxMin ? max_min_separator(tree, k, g) : min_max_separator(tree, k, g);
  if (tsv) {
    std::cout << "representative\tweight\tsize\n";
    for (const auto& comp : run.separator.components) {
      std::cout << comp.representative << '\t' << format_scalar(comp.weight) << '\t' << comp.size << '\n';
    }
  } else {
    std::cout << run_to_json(run, trace).dump(2) << "\n";
  }
  return run.certificate.holds ? 0 : kExitVerdict;
}

template <Scalar S>
int cmd_oracle(const WeightedTree<S>& tree, std::size_t k, Objective objective, std::uint64_t budget, bool tsv) {
  const auto result = exact_optimum(tree, k, objective, budget);
  if (tsv) {
    std::cout << "objective\tk\toptimum\tsubsets\n"
              << to_string(objective) << '\t' << k << '\t' << format_scalar(result.optimum) << '\t'
              << result.subsets_examined << '\n';
  } else {
    std::cout << json(result).dump(2) << "\n";
  }
  return 0;
}

template <class F>
int dispatch(const std::string& arithmetic, const WeightedTree<Rational>& tree, F&& run) {
  const Arithmetic mode = parse_arithmetic(arithmetic);
  if (mode == Arithmetic::Exact) return run(tree);
  return run(convert_weights<double>(tree));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced edge separators for vertex-weighted quasi-binary trees"};
  app.require_subcommand(1);

  Common c;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", c.file, "Tree file (text or JSON), '-' for stdin")->required(); };
  auto add_arith = [&](CLI::App* sub, const std::string& def) {
    c.arithmetic = def;
    sub->add_option("--arith", c.arithmetic, "Arithmetic: float or exact")->check(CLI::IsMember({"float", "exact"}));
  };

  auto* check = app.add_subcommand("check", "Validate a tree and print its degree profile");
  add_file(check);

  std::string eta;
  std::string gamma;
  auto* split = app.add_subcommand("split", "Find an edge whose certified side weighs in [eta, 2 eta + gamma]");
  add_file(split);
  split->add_option("--eta", eta, "eta")->required();
  split->add_option("--gamma", gamma, "gamma")->required();
  std::string split_arith = "float";
  split->add_option("--arith", split_arith, "Arithmetic: float or exact")->check(CLI::IsMember({"float", "exact"}));

  std::size_t k = 2;
  std::string objective = "max-min";
  bool trace = false;
  std::string sep_arith = "float";
  bool tsv = false;
  auto* separate = app.add_subcommand("separate", "Build a k-separator with its bound certificate");
  add_file(separate);
  separate->add_option("--k", k, "Number of components")->required()->check(CLI::Range(2, 1 << 30));
  separate->add_option("--objective", objective, "max-min or min-max")->required()->check(CLI::IsMember({"max-min", "min-max"}));
  separate->add_option("--gamma", gamma, "gamma, or 'auto' for omega3 (0 without degree-3 vertices)");
  separate->add_flag("--trace", trace, "Include per-step peel states");
  separate->add_option("--arith", sep_arith, "Arithmetic: float or exact")->check(CLI::IsMember({"float", "exact"}));
  separate->add_flag("--tsv", tsv, "Emit the component table as TSV");

  std::string oracle_arith = "exact";
  std::optional<std::uint64_t> budget;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive enumeration");
  add_file(oracle);
  oracle->add_option("--k", k, "Number of components")->required()->check(CLI::Range(2, 1 << 30));
  oracle->add_option("--objective", objective, "max-min or min-max")->required()->check(CLI::IsMember({"max-min", "min-max"}));
  oracle->add_option("--budget", budget, "Maximum number of edge subsets (default $QBSEP_ORACLE_BUDGET or 1e8)");
  oracle->add_option("--arith", oracle_arith, "Arithmetic: float or exact")->check(CLI::IsMember({"float", "exact"}));
  oracle->add_flag("--tsv", tsv, "Emit a TSV row");

  std::string format = "json";
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Generate a tree");
  gen->require_subcommand(1);
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o,--output", out_path, "Output file (default stdout)");
  };
  std::string omega = "1";
  std::string omega_prime = "1";
  std::size_t path_len = 1;
  auto* gen_tight = gen->add_subcommand("tightness", "Extremal family for the max-min bound");
  gen_tight->add_option("--k", k, "k >= 3")->required();
  gen_tight->add_option("--omega", omega, "Hub weight > 0")->required();
  gen_tight->add_option("--omega-prime", omega_prime, "Root and leaf weight >= omega")->required();
  gen_tight->add_option("--path-len", path_len, "Edges on each path to a hub");
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::string law = "uniform:1:10";
  auto* gen_random = gen->add_subcommand("random", "Random quasi-binary tree");
  gen_random->add_option("--n", n, "Vertex count")->required();
  gen_random->add_option("--seed", seed, "Seed")->required();
  gen_random->add_option("--law", law, "uniform:LO:HI, const:W or twopoint:A:B[:P]");
  std::string shape = "path";
  std::size_t size = 2;
  std::string weight = "1";
  auto* gen_named_cmd = gen->add_subcommand("named", "Path or complete binary tree");
  gen_named_cmd->add_option("--kind", shape, "path or complete-binary")->required()->check(CLI::IsMember({"path", "complete-binary"}));
  gen_named_cmd->add_option("--size", size, "Vertex count (path) or depth (complete-binary)")->required();
  gen_named_cmd->add_option("--weight", weight, "Weight of every vertex");
  for (auto* sub : {gen_tight, gen_random, gen_named_cmd}) add_output(sub);

  std::string config_path;
  std::size_t jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Run constructions and oracle over a configured corpus");
  sweep->add_option("config", config_path, "Sweep configuration (JSON)")->required();
  sweep->add_option("--jobs", jobs, "Worker threads (overrides the config)");
  sweep->add_flag("--tsv", tsv, "One TSV row per verdict instead of JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(c);
    if (*split) {
      return dispatch(split_arith, load(c.file), [&](const auto& t) { return cmd_split(t, eta, gamma); });
    }
    if (*separate) {
      return dispatch(sep_arith, load(c.file), [&](const auto& t) {
        return cmd_separate(t, k, parse_objective(objective), gamma, trace, tsv);
      });
    }
    if (*oracle) {
      const std::uint64_t b = budget ? *budget : default_budget();
      return dispatch(oracle_arith, load(c.file),
                      [&](const auto& t) { return cmd_oracle(t, k, parse_objective(objective), b, tsv); });
    }
    if (*gen) {
      WeightedTree<Rational> tree({}, {});
      json meta;
      if (*gen_tight) {
        auto inst = gen_tightness_family(k, Rational::parse(omega), Rational::parse(omega_prime), path_len);
        meta = {{"generator", "tightness"},
                {"k", k},
                {"omega", Rational::parse(omega)},
                {"omega_prime", Rational::parse(omega_prime)},
                {"path_len", path_len},
                {"root", inst.root},
                {"hubs", inst.hubs},
                {"realization",
                 "root of degree <= 2 reaching the k-1 hubs through zero-weight binary forks; "
                 "each hub carries two pendant leaves"}};
        tree = std::move(inst.tree);
      } else if (*gen_random) {
        const auto parsed = WeightLaw::parse(law);
        meta = {{"generator", "random"}, {"n", n}, {"seed", seed}, {"law", parsed.to_string()}};
        tree = gen_random_quasi_binary(n, seed, parsed);
      } else {
        meta = {{"generator", "named"}, {"kind", shape}, {"size", size}, {"weight", Rational::parse(weight)}};
        tree = gen_named(parse_named_kind(shape), size, Rational::parse(weight));
      }
      emit(out_path, format == "text" ? write_tree_text(tree) : write_tree_json(tree, meta));
      return 0;
    }
    if (*sweep) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open " + config_path);
      json raw;
      try {
        raw = json::parse(in);
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("sweep config: ") + e.what());
      }
      SweepConfig config;
      try {
        config = SweepConfig::from_json(raw);
      } catch (const std::exception& e) {
        throw UsageError(std::string("sweep config: ") + e.what());
      }
      if (jobs > 0) config.jobs = jobs;
      const auto reports = verify_sweep(config);
      if (tsv) std::cout << "instance\tverdict\tpass\tdetail\n";
      for (const auto& r : reports) {
        if (tsv) {
          for (const auto& v : r.verdicts) {
            std::cout << r.instance.dump() << '\t' << v.name << '\t' << (v.pass ? "pass" : "FAIL") << '\t' << v.detail
                      << '\n';
          }
        } else {
          std::cout << r.to_json().dump() << "\n";
        }
      }
      const auto summary = summarize(reports);
      std::cerr << summary.to_json().dump() << "\n";
      return summary.passed() ? 0 : kExitVerdict;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerdict;
  }
  return kExitUsage;
}
