#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbsep/io.hpp"

namespace qbsep {

enum class Arithmetic { Float, Exact };
Arithmetic parse_arithmetic(const std::string& text);

/// One concrete instance: a generator spec or a file path, as JSON so the
/// report can quote it verbatim.
///   {"kind": "random", "n": 16, "seed": 3, "law": "uniform:1:10"}
///   {"kind": "tightness", "k": 3, "omega": 1, "omega_prime": 2, "path_len": 1}
///   {"kind": "named", "shape": "path"|"complete-binary", "size": 4, "weight": 1}
///   {"kind": "file", "path": "tree.json"}
/// Random entries may give "seeds": [first, last] instead of "seed".
/// Any entry may give "ks" to override the sweep-wide k list.
struct InstanceSpec {
  json descriptor;
};

struct SweepConfig {
  std::vector<InstanceSpec> instances;
  std::vector<std::size_t> ks{2, 3, 4};
  std::optional<Rational> gamma;  // nullopt means omega3 (or 0)
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  Arithmetic arithmetic = Arithmetic::Exact;
  std::vector<Objective> objectives{Objective::MaxMin, Objective::MinMax};
  std::size_t jobs = 1;

  /// Throws std::invalid_argument on unknown fields or bad values.
  static SweepConfig from_json(const json& config);
};

struct Verdict {
  std::string name;
  bool pass;
  std::string detail;
};

/// Everything computed for one instance. Re-running from `instance`
/// reproduces all fields except elapsed_ms.
struct RunReport {
  json instance;
  json results = json::array();
  std::vector<Verdict> verdicts;
  // Min-max runs whose sharper (k-1)gamma bound was evaluated / held.
  std::size_t sharper_checked = 0;
  std::size_t sharper_held = 0;
  double elapsed_ms = 0.0;

  bool passed() const;
  json to_json() const;
};

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t failed_instances = 0;
  std::size_t verdicts = 0;
  std::size_t failed_verdicts = 0;
  std::size_t sharper_checked = 0;
  std::size_t sharper_held = 0;
  bool passed() const { return failed_verdicts == 0; }
  json to_json() const;
};

WeightedTree<Rational> materialize(const InstanceSpec& spec);

/// Verifies one instance for every configured k and objective.
RunReport verify_instance(const InstanceSpec& spec, const SweepConfig& config);

/// Reports in config order, whatever the completion order of the workers.
std::vector<RunReport> verify_sweep(const SweepConfig& config);

SweepSummary summarize(const std::vector<RunReport>& reports);

}  // namespace qbsep
