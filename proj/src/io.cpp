#include "qbsep/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qbsep {

ParseError::ParseError(Kind kind, std::size_t line, const std::string& message)
    : Error((line ? "line " + std::to_string(line) + ": " : std::string()) + to_string(kind) + ": " + message),
      kind_(kind),
      line_(line) {}

std::string to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::MalformedCount: return "malformed-count";
    case ParseError::Kind::NonNumericWeight: return "non-numeric-weight";
    case ParseError::Kind::WrongWeightCount: return "wrong-weight-count";
    case ParseError::Kind::MalformedEdge: return "malformed-edge";
    case ParseError::Kind::DuplicateEdge: return "duplicate-edge";
    case ParseError::Kind::OutOfRangeId: return "out-of-range-id";
    case ParseError::Kind::SelfLoop: return "self-loop";
    case ParseError::Kind::InvalidJson: return "invalid-json";
    case ParseError::Kind::Io: return "io";
  }
  return "unknown";
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

bool parse_index(const std::string& token, std::size_t& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Edge checks shared by both formats; `line` is 0 for JSON.
void check_edge(std::size_t u, std::size_t v, std::size_t n, std::set<std::pair<std::size_t, std::size_t>>& seen,
                std::size_t line) {
  const std::string text = "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
  if (u >= n || v >= n) {
    throw ParseError(ParseError::Kind::OutOfRangeId, line, "edge " + text + " with n = " + std::to_string(n));
  }
  if (u == v) throw ParseError(ParseError::Kind::SelfLoop, line, "edge " + text);
  if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
    throw ParseError(ParseError::Kind::DuplicateEdge, line, "edge " + text + " appears twice");
  }
}

std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

WeightedTree<Rational> parse_tree_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    lines.emplace_back(number, line);
  }
  if (lines.empty()) throw ParseError(ParseError::Kind::MalformedCount, 0, "empty input");

  const auto count_tokens = tokens(lines[0].second);
  std::size_t n = 0;
  if (count_tokens.size() != 1 || !parse_index(count_tokens[0], n) || n == 0) {
    throw ParseError(ParseError::Kind::MalformedCount, lines[0].first,
                     "expected a single positive vertex count, got '" + lines[0].second + "'");
  }
  if (lines.size() < 2) throw ParseError(ParseError::Kind::WrongWeightCount, 0, "missing weight line");
  const auto weight_tokens = tokens(lines[1].second);
  if (weight_tokens.size() != n) {
    throw ParseError(ParseError::Kind::WrongWeightCount, lines[1].first,
                     "expected " + std::to_string(n) + " weights, got " + std::to_string(weight_tokens.size()));
  }
  std::vector<Rational> weights;
  weights.reserve(n);
  for (const auto& t : weight_tokens) {
    try {
      weights.push_back(Rational::parse(t));
    } catch (const std::invalid_argument&) {
      throw ParseError(ParseError::Kind::NonNumericWeight, lines[1].first, "'" + t + "'");
    }
  }
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto parts = tokens(lines[i].second);
    std::size_t u = 0;
    std::size_t v = 0;
    if (parts.size() != 2 || !parse_index(parts[0], u) || !parse_index(parts[1], v)) {
      throw ParseError(ParseError::Kind::MalformedEdge, lines[i].first,
                       "expected 'u v', got '" + lines[i].second + "'");
    }
    check_edge(u, v, n, seen, lines[i].first);
    edges.push_back({u, v});
  }
  return WeightedTree<Rational>(std::move(weights), std::move(edges));
}

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) {
      const auto u = value.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return Rational::parse(std::to_string(u));
      return Rational(static_cast<std::int64_t>(u));
    }
    return Rational(value.get<std::int64_t>());
  }
  // Shortest round-trip digits recover the literal as written for any
  // decimal with at most 15 significant digits.
  if (value.is_number_float()) return Rational::parse(shortest(value.get<double>()));
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  throw std::invalid_argument("expected a number or numeric string, got " + value.dump());
}

WeightedTree<Rational> parse_tree_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Kind::InvalidJson, 0, e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("edges") || !doc["weights"].is_array() ||
      !doc["edges"].is_array()) {
    throw ParseError(ParseError::Kind::InvalidJson, 0, "expected an object with array fields 'weights' and 'edges'");
  }
  const auto& jw = doc["weights"];
  const std::size_t n = jw.size();
  if (n == 0) throw ParseError(ParseError::Kind::MalformedCount, 0, "'weights' is empty");
  std::vector<Rational> weights;
  weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      weights.push_back(rational_from_json(jw[i]));
    } catch (const std::invalid_argument&) {
      throw ParseError(ParseError::Kind::NonNumericWeight, 0, "weights[" + std::to_string(i) + "] = " + jw[i].dump());
    }
  }
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& je : doc["edges"]) {
    if (!je.is_array() || je.size() != 2 || !je[0].is_number_unsigned() || !je[1].is_number_unsigned()) {
      throw ParseError(ParseError::Kind::MalformedEdge, 0, "expected [u, v] with non-negative ids, got " + je.dump());
    }
    const auto u = je[0].get<std::size_t>();
    const auto v = je[1].get<std::size_t>();
    check_edge(u, v, n, seen, 0);
    edges.push_back({u, v});
  }
  return WeightedTree<Rational>(std::move(weights), std::move(edges));
}

WeightedTree<Rational> parse_tree(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') return parse_tree_json(text);
  return parse_tree_text(text);
}

WeightedTree<Rational> read_tree_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseError::Kind::Io, 0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tree(buf.str());
}

std::string format_scalar(const Rational& value) {
  auto dec = value.to_decimal_string();
  return dec.empty() ? value.to_string() : dec;
}

std::string format_scalar(double value) { return shortest(value); }

template <Scalar S>
std::string write_tree_text(const WeightedTree<S>& tree) {
  std::string out = std::to_string(tree.vertex_count()) + "\n";
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    if (v) out += ' ';
    out += format_scalar(tree.weight(v));
  }
  out += '\n';
  for (const auto& e : tree.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

template <Scalar S>
std::string write_tree_json(const WeightedTree<S>& tree, const json& meta) {
  json j = tree;
  if (!meta.is_null()) j["meta"] = meta;
  return j.dump() + "\n";
}

void to_json(json& j, const Rational& value) {
  if (value.is_integer()) {
    const mpz_class num = value.numerator();
    if (num.fits_slong_p()) {
      j = static_cast<std::int64_t>(num.get_si());
      return;
    }
  }
  const auto dec = value.to_decimal_string();
  if (!dec.empty()) {
    const double d = value.to_double();
    if (Rational::parse(shortest(d)) == value) {
      j = d;
      return;
    }
  }
  j = value.to_string();
}

void to_json(json& j, const ValidationReport& report) {
  j = json{{"valid", report.valid()}, {"violations", json::array()}};
  for (const auto& v : report.violations) j["violations"].push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
}

template <Scalar S>
void to_json(json& j, const WeightedTree<S>& tree) {
  j = json{{"weights", json::array()}, {"edges", json::array()}};
  for (const auto& w : tree.weights()) j["weights"].push_back(w);
  for (const auto& e : tree.edges()) j["edges"].push_back({e.u, e.v});
}

template <Scalar S>
void to_json(json& j, const DegreeProfile<S>& p) {
  j = json{{"n1", p.n1}, {"n2", p.n2}, {"n3", p.n3}};
  j["omega1"] = p.omega1 ? json(*p.omega1) : json(nullptr);
  j["omega2"] = p.omega2 ? json(*p.omega2) : json(nullptr);
  j["omega3"] = p.omega3 ? json(*p.omega3) : json(nullptr);
}

template <Scalar S>
void to_json(json& j, const InequalityCheck<S>& c) {
  j = json{{"name", c.name}, {"holds", c.holds}};
  j["margin"] = c.margin ? json(*c.margin) : json(nullptr);
}

template <Scalar S>
void to_json(json& j, const ParamReport<S>& r) {
  j = json{{"ok", r.ok()}, {"checks", {r.gamma_vs_omega3, r.eta_lower, r.eta_upper}}};
}

template <Scalar S>
void to_json(json& j, const SplitResult<S>& r) {
  j = json{{"edge", r.edge},
           {"certified_endpoint", r.certified_endpoint},
           {"certified_weight", r.certified_weight},
           {"other_weight", r.other_weight},
           {"certified_size", r.certified_size},
           {"other_size", r.other_size}};
}

template <Scalar S>
void to_json(json& j, const ComponentSummary<S>& c) {
  j = json{{"representative", c.representative}, {"weight", c.weight}, {"size", c.size}, {"vertices", c.vertices}};
}

template <Scalar S>
void to_json(json& j, const Separator<S>& s) {
  j = json{{"objective", to_string(s.objective)},
           {"k", s.k},
           {"removed_edges", s.removed_edges},
           {"components", s.components}};
}

template <Scalar S>
void to_json(json& j, const PreconditionReport<S>& r) {
  j = json{{"ok", r.ok()}, {"checks", r.checks}};
}

template <Scalar S>
void to_json(json& j, const BoundCertificate<S>& c) {
  j = json{{"guarantee", to_string(c.guarantee)},
           {"objective", to_string(c.objective)},
           {"k", c.k},
           {"gamma", c.gamma},
           {"precondition", c.precondition},
           {"achieved_min", c.achieved_min},
           {"achieved_max", c.achieved_max},
           {"holds", c.holds},
           {"proven", c.proven}};
  j["lower_bound"] = c.lower_bound ? json(*c.lower_bound) : json(nullptr);
  j["upper_bound"] = c.upper_bound ? json(*c.upper_bound) : json(nullptr);
  if (c.sharper_upper_bound) {
    j["sharper_upper_bound"] = *c.sharper_upper_bound;
    j["sharper_upper_holds"] = c.sharper_upper_holds.value_or(false);
  }
  j["clamps"] = json::array();
  for (const auto& e : c.clamps) {
    json ev{{"j", e.j}, {"scheduled", e.scheduled}, {"used", e.used}, {"upper", e.upper}};
    ev["lower"] = e.lower ? json(*e.lower) : json(nullptr);
    j["clamps"].push_back(std::move(ev));
  }
}

template <Scalar S>
void to_json(json& j, const PeelStep<S>& s) {
  j = json{{"j", s.j},
           {"eta_scheduled", s.eta_scheduled},
           {"eta", s.eta},
           {"clamped", s.clamped},
           {"residual_weight", s.residual_weight},
           {"residual_size", s.residual_size},
           {"edge", s.edge},
           {"peeled_weight", s.peeled_weight},
           {"peeled_size", s.peeled_size},
           {"remaining_weight", s.remaining_weight},
           {"remaining_size", s.remaining_size}};
  if (s.suitable) {
    j["suitable_interval"] = {s.suitable->first, s.suitable->second};
    j["remaining_suitable"] = s.remaining_suitable.value_or(false);
  }
}

template <Scalar S>
void to_json(json& j, const OracleResult<S>& r) {
  j = json{{"objective", to_string(r.objective)},
           {"k", r.k},
           {"optimum", r.optimum},
           {"witness", r.witness},
           {"subsets_examined", r.subsets_examined}};
}

template <Scalar S>
json run_to_json(const SeparatorRun<S>& run, bool with_trace) {
  json j{{"separator", run.separator}, {"certificate", run.certificate}};
  if (with_trace) j["trace"] = run.trace;
  return j;
}

#define QBSEP_INSTANTIATE_IO(S)                                           \
  template std::string write_tree_text(const WeightedTree<S>&);           \
  template std::string write_tree_json(const WeightedTree<S>&, const json&); \
  template void to_json(json&, const WeightedTree<S>&);                   \
  template void to_json(json&, const DegreeProfile<S>&);                  \
  template void to_json(json&, const InequalityCheck<S>&);                \
  template void to_json(json&, const ParamReport<S>&);                    \
  template void to_json(json&, const SplitResult<S>&);                    \
  template void to_json(json&, const ComponentSummary<S>&);               \
  template void to_json(json&, const Separator<S>&);                      \
  template void to_json(json&, const PreconditionReport<S>&);             \
  template void to_json(json&, const BoundCertificate<S>&);               \
  template void to_json(json&, const PeelStep<S>&);                       \
  template void to_json(json&, const OracleResult<S>&);                   \
  template json run_to_json(const SeparatorRun<S>&, bool);

QBSEP_INSTANTIATE_IO(double)
QBSEP_INSTANTIATE_IO(Rational)
#undef QBSEP_INSTANTIATE_IO

}  // namespace qbsep
