#pragma once

// Seeded random instances for property and acceptance tests.

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "simctx/dist.hpp"
#include "simctx/simpdist.hpp"
#include "simctx/sset.hpp"

namespace simtest {

using simctx::Rational;
using simctx::SimpDist;
using Box = std::array<Rational, 4>;  // weights of outcomes 00, 01, 10, 11

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform_int(0, 1) == 1; }
  /// k/den with den uniform in [1, max_den] and k uniform in [0, den].
  Rational unit_rational(int max_den = 12);
  /// A grid point of [lo, hi].
  Rational between(const Rational& lo, const Rational& hi, int max_den = 12);
  /// n nonnegative rationals summing to one; `zeros` allows exact zeros.
  std::vector<Rational> simplex_point(std::size_t n, bool zeros = true, int max_weight = 9);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform_int(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

std::shared_ptr<const simctx::SSet2> shared_standard(simctx::StandardSpace name);

/// Z_2 nerve model given by one box per triangle, in storage order. Every edge
/// of the space must be a face of some triangle.
SimpDist from_boxes(std::shared_ptr<const simctx::SSet2> space, const std::vector<Box>& boxes,
                    simctx::SemiringKind semiring = simctx::SemiringKind::NonnegRational);

/// Boxes over the CHSH cone in the order (x0,y0), (x0,y1), (x1,y0), (x1,y1).
SimpDist chsh_from_boxes(const std::vector<Box>& boxes);
/// Uniform over a + b = c_ij in context (x_i, y_j); pattern[2i+j] = c_ij.
SimpDist pr_box(const std::array<int, 4>& pattern);
SimpDist uniform_chsh();

/// Vertices listed by hand: the deterministic boxes and, for the CHSH cone,
/// the eight PR boxes; for the glued triangle the three boxes with all
/// weight on 00, on 10, or split over 01 and 11.
std::vector<SimpDist> known_vertices(simctx::StandardSpace name);

/// No-signalling CHSH model from random marginals and a free joint entry per
/// context, each box a grid point of the no-signalling fiber.
SimpDist random_chsh_marginals(Rng& rng);

/// Convex combination of `k` random vertices (repetition allowed).
SimpDist random_vertex_mixture(Rng& rng, const std::vector<SimpDist>& vertices, int k);

/// Weight 1 on every nonzero outcome, over the Boolean semiring.
SimpDist boolean_support(const SimpDist& p);

/// Mixed bag of models: single vertices, sparse and dense vertex mixtures,
/// and (for the CHSH cone) no-signalling boxes from random marginals.
std::vector<SimpDist> rational_corpus(Rng& rng, simctx::StandardSpace space, std::size_t count);

simctx::Dist<std::string> random_string_dist(Rng& rng, const std::vector<std::string>& keys, bool zeros = true);

}  // namespace simtest
