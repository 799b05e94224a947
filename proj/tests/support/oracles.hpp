#pragma once

// Test-side reference computations, written without the library's solvers.

#include <array>
#include <vector>

#include "generators.hpp"
#include "simctx/simpdist.hpp"
#include "simctx/sset.hpp"

namespace simtest {

/// Product of two Z_2 boxes, entry by entry in closed form.
Box triangle_product(const Box& p, const Box& q);

/// Z_2 box of triangle t.
Box box_of(const SimpDist& p, int t);

/// Edge labelings in Z_2 that close every triangle and hit nonzero weight on
/// every generator, found by trying all 2^|edges| labelings.
std::vector<simctx::DetMap> brute_support(const SimpDist& p);

/// CHSH correlators E_ij = p(00) + p(11) - p(01) - p(10), context order as chsh_from_boxes.
std::array<Rational, 4> correlators(const SimpDist& p);
/// max over odd sign patterns of sum s_ij E_ij.
Rational chsh_max(const SimpDist& p);
/// Upper bound on the noncontextual weight: a local part contributes at most
/// 2 to the CHSH value and any box at most 4.
Rational bell_noncontextual_bound(const SimpDist& p);

/// Every labeling of the prism edges that restricts to phi0 and phi1.
std::vector<simctx::DetMap> brute_force_homotopies(const simctx::Prism& pr, const simctx::DetMap& phi0,
                                                   const simctx::DetMap& phi1);

/// Whether each triangle of a homotopy over a two-edge loop carries a
/// half-half perfectly correlated or anticorrelated box on its two
/// nondeterministic edges, with an odd number of anticorrelated ones.
struct PrPattern {
  bool matches = false;
  int correlated = 0;
  int anticorrelated = 0;
};
PrPattern pr_pattern(const SimpDist& f, const simctx::Prism& pr);

}  // namespace simtest
