#pragma once

// Noncontextuality as LP feasibility over deterministic maps, the contextual
// fraction, CHSH correlators, and the geometry of the polytope of simplicial
// distributions: vertex enumeration, extremality, homotopy constructions.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "simctx/execution.hpp"
#include "simctx/lp.hpp"
#include "simctx/simpdist.hpp"
#include "simctx/sset.hpp"

namespace simctx {

struct Noncontextuality {
  bool noncontextual = false;
  /// Over RealField the weights may be negative.
  std::optional<Dist<DetMap>> witness;
};

/// NonnegRational: LP feasibility. Boolean: support coverage.
/// RealField: exact linear solvability without positivity.
Noncontextuality is_noncontextual(const SimpDist& p);

struct ContextualFraction {
  Rational value;
  /// Normalized noncontextual part, when its weight is positive.
  std::optional<Dist<DetMap>> noncontextual_part;
  /// (p - Theta(b)) / value, when value > 0.
  std::optional<SimpDist> remainder;
};

ContextualFraction contextual_fraction(const SimpDist& p);

struct ChshReport {
  std::array<Rational, 4> correlators;
  /// Sign patterns with an odd number of minus signs, in a fixed order.
  std::array<std::array<int, 4>, 8> signs;
  std::array<Rational, 8> values;
  std::array<bool, 8> satisfied;
  bool all_satisfied = false;
};

/// Correlators are taken per triangle in storage order. The space must have
/// the CHSH cone shape: four triangles over two d2 edges and two d0 edges.
ChshReport chsh_check(const SimpDist& p);

/// Affine coordinates of all simplicial distributions X -> D(Y): one variable
/// per outcome of each maximal generator, linear forms for every other entry,
/// equality rows for normalization and face compatibility.
class DistributionPolytope {
 public:
  struct Variable {
    int dim;
    int idx;
    std::size_t outcome;
  };
  struct LinearForm {
    std::map<std::size_t, Rational> coeffs;
    Rational constant = 0;
  };

  DistributionPolytope(std::shared_ptr<const SSet2> space, Target target);

  const SSet2& space() const { return *space_; }
  const std::shared_ptr<const SSet2>& shared_space() const { return space_; }
  Target target() const { return target_; }
  std::size_t num_vars() const { return vars_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<SparseRow>& equalities() const { return equalities_; }
  const LinearForm& entry(int dim, int idx, std::size_t outcome) const;

  /// Rows fixing every entry of the generators in the image of f to those of q.
  std::vector<SparseRow> restriction_rows(const SSetMap& f, const SimpDist& q) const;

  SimpDist point(const std::vector<Rational>& x, SemiringKind semiring = SemiringKind::NonnegRational) const;
  std::vector<Rational> coordinates(const SimpDist& p) const;

 private:
  std::shared_ptr<const SSet2> space_;
  Target target_;
  std::vector<Variable> vars_;
  std::array<std::vector<std::vector<LinearForm>>, 3> entries_;
  std::vector<SparseRow> equalities_;
};

struct VertexReport {
  SimpDist coordinates;
  bool is_deterministic;
  bool is_strongly_contextual;
  Rational contextual_fraction;
};

struct VertexOptions {
  std::size_t cap = 32;
  Exec exec = Exec::Parallel;
  /// Compute the flags and fraction of each vertex.
  bool analyze = true;
  /// Extra equalities cutting out a face or fiber.
  std::vector<SparseRow> extra_equalities;
};

/// Extreme points as basic feasible solutions: every column subset of the
/// rank size is tried, the square system solved exactly, and nonnegative
/// solutions kept. Throws Unsupported when the variable count exceeds the cap.
std::vector<VertexReport> enumerate_vertices(const DistributionPolytope& poly, const VertexOptions& options = {});
std::vector<VertexReport> enumerate_vertices(std::shared_ptr<const SSet2> space, Target target,
                                             SemiringKind semiring = SemiringKind::NonnegRational,
                                             const VertexOptions& options = {});

/// Raw coordinate vectors of the basic feasible solutions, sorted.
std::vector<std::vector<Rational>> basic_feasible_solutions(const Matrix& a, const std::vector<Rational>& b, Exec exec);

/// Vertices of f^{-1}(q) for f^* the restriction along f : Z -> X.
std::vector<VertexReport> enumerate_fiber_vertices(const DistributionPolytope& poly, const SSetMap& f, const SimpDist& q,
                                                   VertexOptions options = {});

/// Extreme point test: the columns of the equality system on supp(p) are independent.
bool is_vertex(const SimpDist& p);

struct HomotopyResult {
  enum class Kind { None, Unique, NonUnique };
  Kind kind = Kind::None;
  std::shared_ptr<const SSet2> prism_space;
  std::optional<SimpDist> solution;
  /// A second, different solution when not unique.
  std::optional<SimpDist> other;
};

/// Distributions F on prism(X) with F = delta^{phi0} on X x {0} and
/// F = delta^{phi1} on X x {1}. Nerve targets, NonnegRational.
HomotopyResult distribution_homotopy(const DetMap& phi0, const DetMap& phi1, const SSet2& x);

}  // namespace simctx
