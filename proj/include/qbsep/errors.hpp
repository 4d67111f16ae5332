#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qbsep {

/// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally unusable input: ids out of range, self-loops, duplicate edges.
class TreeError : public Error {
 public:
  enum class Kind { OutOfRangeId, SelfLoop, DuplicateEdge, UnknownEdge, UnknownVertex, NotATree };
  TreeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// A caller-supplied parameter fails a hypothesis. `violations` lists one
/// human-readable line per failed inequality, margins included.
class ParameterError : public Error {
 public:
  ParameterError(const std::string& what, std::vector<std::string> violations)
      : Error(what + format(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string format(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& line : v) out += "\n  " + line;
    return out;
  }
  std::vector<std::string> violations_;
};

/// A guarantee that the construction proves cannot fail did fail. Carries a
/// dump of the peeling state for diagnosis.
class InternalContradiction : public Error {
 public:
  InternalContradiction(const std::string& what, std::string state_dump)
      : Error(what + (state_dump.empty() ? "" : "\n" + state_dump)), dump_(std::move(state_dump)) {}
  const std::string& state_dump() const { return dump_; }

 private:
  std::string dump_;
};

/// The per-step eta schedule or the suitable interval has a vanishing or
/// sign-flipped denominator for the requested indices.
class DegenerateSchedule : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace qbsep
