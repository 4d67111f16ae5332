#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qbsep/rational.hpp"
#include "qbsep/tree.hpp"

namespace qbsep {

/// Weight distribution for random instances.
///   "uniform:LO:HI"   integers uniform in [LO, HI]
///   "const:W"         every vertex weighs W
///   "twopoint:A:B[:P]"  A with probability P (default 1/2), else B
struct WeightLaw {
  struct Uniform {
    std::int64_t lo;
    std::int64_t hi;
  };
  struct Constant {
    Rational value;
  };
  struct TwoPoint {
    Rational a;
    Rational b;
    double p_a = 0.5;
  };
  std::variant<Uniform, Constant, TwoPoint> law;

  static WeightLaw parse(const std::string& spec);
  std::string to_string() const;
};

/// The lower-bound extremal instance for max-min peeling, realised with
/// degree at most 3.
///
/// A root r (weight omega') reaches k-1 hubs x_i (weight omega) through a
/// balanced binary branching of zero-weight vertices, so r keeps degree 2
/// and omega3 stays omega. Each hub hangs at the end of a path of
/// `path_len` edges and carries two pendant leaves of weight omega'. Total
/// weight is (k-1) omega + (2k-1) omega'.
struct TightnessInstance {
  WeightedTree<Rational> tree;
  VertexId root;
  std::vector<VertexId> hubs;
  std::vector<VertexId> pendants;
};

TightnessInstance gen_tightness_family(std::size_t k, const Rational& omega, const Rational& omega_prime,
                                       std::size_t path_len = 1);

/// Attaches vertex i to a uniformly chosen earlier vertex of degree <= 2.
/// Fully determined by (n, seed, law).
WeightedTree<Rational> gen_random_quasi_binary(std::size_t n, std::uint64_t seed, const WeightLaw& law);

enum class NamedKind { Path, CompleteBinary };
NamedKind parse_named_kind(const std::string& text);

/// Path on `size` vertices, or the complete binary tree of depth `size`
/// (2^(size+1) - 1 vertices, heap-numbered), every vertex weighing `weight`.
WeightedTree<Rational> gen_named(NamedKind kind, std::size_t size, const Rational& weight);

/// Uniform integer in [0, bound) from a 64-bit engine by rejection, so the
/// stream is identical on every standard library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace qbsep
