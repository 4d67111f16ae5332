#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qbsep/errors.hpp"
#include "qbsep/lemma_split.hpp"
#include "qbsep/oracle.hpp"
#include "qbsep/separator.hpp"
#include "qbsep/tree.hpp"

namespace qbsep {

using json = nlohmann::json;

class ParseError : public Error {
 public:
  enum class Kind {
    MalformedCount,
    NonNumericWeight,
    WrongWeightCount,
    MalformedEdge,
    DuplicateEdge,
    OutOfRangeId,
    SelfLoop,
    InvalidJson,
    Io,
  };
  ParseError(Kind kind, std::size_t line, const std::string& message);
  Kind kind() const { return kind_; }
  /// 1-based line of the offending input, 0 when not line-specific.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

std::string to_string(ParseError::Kind kind);

/// Text format:
///   n
///   w_0 w_1 ... w_{n-1}
///   u v            (one line per edge)
/// Blank lines and lines starting with '#' are ignored. Weights are parsed
/// exactly (decimal, exponent or p/q).
WeightedTree<Rational> parse_tree_text(std::string_view text);

/// {"weights": [...], "edges": [[u, v], ...]}; weights may be numbers or
/// strings holding exact values such as "7/3".
WeightedTree<Rational> parse_tree_json(std::string_view text);

/// Dispatches on the first non-blank character ('{' means JSON).
WeightedTree<Rational> parse_tree(std::string_view text);

WeightedTree<Rational> read_tree_file(const std::filesystem::path& path);

template <Scalar S>
std::string write_tree_text(const WeightedTree<S>& tree);

/// Canonical JSON; `meta`, when not null, is stored under "meta".
template <Scalar S>
std::string write_tree_json(const WeightedTree<S>& tree, const json& meta = nullptr);

/// Exact text for a weight: decimal when terminating, else "p/q".
std::string format_scalar(const Rational& value);
std::string format_scalar(double value);

// JSON views of library results. Rational values become JSON numbers when
// a double reproduces them exactly, strings otherwise.
void to_json(json& j, const Rational& value);
void to_json(json& j, const ValidationReport& report);
template <Scalar S>
void to_json(json& j, const WeightedTree<S>& tree);
template <Scalar S>
void to_json(json& j, const DegreeProfile<S>& profile);
template <Scalar S>
void to_json(json& j, const InequalityCheck<S>& check);
template <Scalar S>
void to_json(json& j, const ParamReport<S>& report);
template <Scalar S>
void to_json(json& j, const SplitResult<S>& result);
template <Scalar S>
void to_json(json& j, const ComponentSummary<S>& component);
template <Scalar S>
void to_json(json& j, const Separator<S>& separator);
template <Scalar S>
void to_json(json& j, const PreconditionReport<S>& report);
template <Scalar S>
void to_json(json& j, const BoundCertificate<S>& certificate);
template <Scalar S>
void to_json(json& j, const PeelStep<S>& step);
template <Scalar S>
void to_json(json& j, const OracleResult<S>& result);

/// Separator, certificate and, when `with_trace`, the per-step peel states.
template <Scalar S>
json run_to_json(const SeparatorRun<S>& run, bool with_trace);

/// Parses a weight from a JSON number or string without rounding.
Rational rational_from_json(const json& value);

}  // namespace qbsep
