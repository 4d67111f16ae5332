#include "qbsep/generators.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace qbsep {

namespace {

std::vector<std::string> split_fields(const std::string& spec) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(spec);
  while (std::getline(in, field, ':')) out.push_back(field);
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw std::invalid_argument("bad integer '" + text + "' in law '" + spec + "'");
  return value;
}

}  // namespace

WeightLaw WeightLaw::parse(const std::string& spec) {
  const auto f = split_fields(spec);
  if (f.empty()) throw std::invalid_argument("empty weight law");
  try {
    if (f[0] == "uniform" && f.size() == 3) {
      const auto lo = parse_int(f[1], spec);
      const auto hi = parse_int(f[2], spec);
      if (lo > hi) throw std::invalid_argument("uniform law needs LO <= HI: '" + spec + "'");
      return WeightLaw{Uniform{lo, hi}};
    }
    if (f[0] == "const" && f.size() == 2) return WeightLaw{Constant{Rational::parse(f[1])}};
    if (f[0] == "twopoint" && (f.size() == 3 || f.size() == 4)) {
      TwoPoint tp{Rational::parse(f[1]), Rational::parse(f[2])};
      if (f.size() == 4) {
        tp.p_a = Rational::parse(f[3]).to_double();
        if (tp.p_a < 0.0 || tp.p_a > 1.0) throw std::invalid_argument("twopoint probability outside [0, 1]");
      }
      return WeightLaw{tp};
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("weight law '") + spec + "': " + e.what());
  }
  throw std::invalid_argument("unknown weight law '" + spec + "' (expected uniform:LO:HI, const:W or twopoint:A:B[:P])");
}

std::string WeightLaw::to_string() const {
  struct Visitor {
    std::string operator()(const Uniform& u) const {
      return "uniform:" + std::to_string(u.lo) + ":" + std::to_string(u.hi);
    }
    std::string operator()(const Constant& c) const { return "const:" + c.value.to_string(); }
    std::string operator()(const TwoPoint& t) const {
      std::ostringstream os;
      os << "twopoint:" << t.a << ":" << t.b << ":" << t.p_a;
      return os.str();
    }
  };
  return std::visit(Visitor{}, law);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

TightnessInstance gen_tightness_family(std::size_t k, const Rational& omega, const Rational& omega_prime,
                                       std::size_t path_len) {
  if (k < 3) throw std::invalid_argument("tightness family needs k >= 3");
  if (!(omega > Rational(0))) throw std::invalid_argument("tightness family needs omega > 0");
  if (omega_prime < omega) throw std::invalid_argument("tightness family needs omega' >= omega");
  if (path_len < 1) throw std::invalid_argument("path length must be at least 1");

  std::vector<Rational> weights;
  std::vector<Edge> edges;
  auto add = [&](const Rational& w) {
    weights.push_back(w);
    return weights.size() - 1;
  };
  TightnessInstance inst{WeightedTree<Rational>({}, {}), add(omega_prime), {}, {}};

  auto attach_hub = [&](VertexId parent) {
    VertexId tail = parent;
    for (std::size_t i = 1; i < path_len; ++i) {
      const VertexId mid = add(Rational(0));
      edges.push_back({tail, mid});
      tail = mid;
    }
    const VertexId hub = add(omega);
    edges.push_back({tail, hub});
    inst.hubs.push_back(hub);
    for (int leaf = 0; leaf < 2; ++leaf) {
      const VertexId p = add(omega_prime);
      edges.push_back({hub, p});
      inst.pendants.push_back(p);
    }
  };
  // Distributes `count` hubs below `parent`; a branching vertex is inserted
  // whenever more than one hub must share a single edge slot.
  auto branch = [&](auto&& self, VertexId parent, std::size_t count) -> void {
    if (count == 1) {
      attach_hub(parent);
      return;
    }
    const VertexId fork = add(Rational(0));
    edges.push_back({parent, fork});
    self(self, fork, (count + 1) / 2);
    self(self, fork, count / 2);
  };
  const std::size_t hubs = k - 1;
  branch(branch, inst.root, (hubs + 1) / 2);
  branch(branch, inst.root, hubs / 2);

  inst.tree = WeightedTree<Rational>(std::move(weights), std::move(edges));
  return inst;
}

WeightedTree<Rational> gen_random_quasi_binary(std::size_t n, std::uint64_t seed, const WeightLaw& law) {
  if (n < 2) throw std::invalid_argument("random tree needs n >= 2");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  std::vector<std::size_t> degree(n, 0);
  // Vertices that can still take a neighbour; swap-remove keeps this O(1).
  std::vector<VertexId> open{0};
  std::vector<std::size_t> slot(n, 0);
  for (VertexId v = 1; v < n; ++v) {
    const VertexId parent = open[uniform_below(rng, open.size())];
    edges.push_back({parent, v});
    ++degree[v];
    if (++degree[parent] == 3) {
      const std::size_t i = slot[parent];
      open[i] = open.back();
      slot[open[i]] = i;
      open.pop_back();
    }
    slot[v] = open.size();
    open.push_back(v);
  }

  struct Draw {
    std::mt19937_64& rng;
    Rational operator()(const WeightLaw::Uniform& u) const {
      const auto span = static_cast<std::uint64_t>(u.hi - u.lo) + 1;
      return Rational(u.lo + static_cast<std::int64_t>(uniform_below(rng, span)));
    }
    Rational operator()(const WeightLaw::Constant& c) const { return c.value; }
    Rational operator()(const WeightLaw::TwoPoint& t) const {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      return u < t.p_a ? t.a : t.b;
    }
  };
  std::vector<Rational> weights;
  weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) weights.push_back(std::visit(Draw{rng}, law.law));
  return WeightedTree<Rational>(std::move(weights), std::move(edges));
}

NamedKind parse_named_kind(const std::string& text) {
  if (text == "path") return NamedKind::Path;
  if (text == "complete-binary") return NamedKind::CompleteBinary;
  throw std::invalid_argument("named kind must be path or complete-binary, got '" + text + "'");
}

WeightedTree<Rational> gen_named(NamedKind kind, std::size_t size, const Rational& weight) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  if (kind == NamedKind::Path) {
    if (size < 2) throw std::invalid_argument("path needs at least 2 vertices");
    n = size;
    for (VertexId v = 1; v < n; ++v) edges.push_back({v - 1, v});
  } else {
    if (size < 1 || size > 20) throw std::invalid_argument("complete binary depth must be in [1, 20]");
    n = (std::size_t{1} << (size + 1)) - 1;
    for (VertexId v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v});
  }
  return WeightedTree<Rational>(std::vector<Rational>(n, weight), std::move(edges));
}

}  // namespace qbsep
