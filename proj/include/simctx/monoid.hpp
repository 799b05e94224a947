#pragma once

// The convex monoid of simplicial distributions into a simplicial group
// (N(Z_d) or Delta_{Z_d}): simplexwise convolution, inverses, and the
// weak-invertibility / invertible-fraction analyses over the unit group.

#include <memory>
#include <optional>
#include <vector>

#include "simctx/dist.hpp"
#include "simctx/semiring.hpp"
#include "simctx/simpdist.hpp"
#include "simctx/sset.hpp"

namespace simctx {

class MonoidContext {
 public:
  MonoidContext(std::shared_ptr<const SSet2> space, Target target, SemiringKind semiring);
  /// Context of the monoid that p lives in.
  static MonoidContext of(const SimpDist& p);

  const SSet2& space() const { return *space_; }
  const std::shared_ptr<const SSet2>& shared_space() const { return space_; }
  Target target() const { return target_; }
  SemiringKind semiring() const { return semiring_; }

  /// Deterministic maps; their embeddings are the units when the semiring is
  /// zero-sum-free and integral.
  const std::vector<DetMap>& units() const { return units_; }
  SimpDist unit(std::size_t i) const;
  SimpDist identity() const;

  /// Throws UsageError when p is not an element of this monoid.
  void require_member(const SimpDist& p) const;

 private:
  std::shared_ptr<const SSet2> space_;
  Target target_;
  SemiringKind semiring_;
  std::vector<DetMap> units_;
};

/// (p . q)_x = p_x * q_x, convolution over the group of target n-simplices.
SimpDist mult(const SimpDist& p, const SimpDist& q);
SimpDist identity(std::shared_ptr<const SSet2> space, Target target, SemiringKind semiring);

/// Two-sided inverse, or nothing. Each simplex is solved as an exact square
/// convolution system; over NonnegRational a solution with a negative entry
/// means p has no inverse in the monoid.
std::optional<SimpDist> inverse(const SimpDist& p);

struct WeakInvertibility {
  bool invertible = false;
  std::optional<Dist<DetMap>> witness;
};

/// Membership of p in the image of D_R(units). NonnegRational and Boolean only.
WeakInvertibility is_weakly_invertible(const MonoidContext& ctx, const SimpDist& p);
WeakInvertibility is_weakly_invertible(const SimpDist& p);

/// Whether some decomposition of p puts positive weight on the unit delta^m.
bool isupp_member(const MonoidContext& ctx, const SimpDist& p, const DetMap& m);
std::vector<DetMap> isupp(const MonoidContext& ctx, const SimpDist& p);

/// Largest total unit weight over decompositions of p.
Rational invertible_fraction(const MonoidContext& ctx, const SimpDist& p);
Rational invertible_fraction(const SimpDist& p);

bool is_strongly_noninvertible(const MonoidContext& ctx, const SimpDist& p);

}  // namespace simctx
