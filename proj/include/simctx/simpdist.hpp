#pragma once

// Simplicial distributions p : X -> D_R(Y) for Y = N(Z_d) or Delta_{Z_d},
// stored as one distribution per nondegenerate generator of X.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simctx/dist.hpp"
#include "simctx/semiring.hpp"
#include "simctx/sset.hpp"

namespace simctx {

using OutcomeDist = Dist<Outcome>;

class SimpDist {
 public:
  using Table = std::array<std::vector<OutcomeDist>, 3>;

  SimpDist(std::shared_ptr<const SSet2> space, SemiringKind semiring, Target target, Table dists);

  const SSet2& space() const { return *space_; }
  const std::shared_ptr<const SSet2>& shared_space() const { return space_; }
  SemiringKind semiring() const { return semiring_; }
  Target target() const { return target_; }
  const OutcomeDist& at(int dim, int idx) const;
  const Table& table() const { return dists_; }
  Scalar weight(int dim, int idx, const Outcome& y) const { return at(dim, idx).weight(y); }

  friend bool operator==(const SimpDist& a, const SimpDist& b);

 private:
  std::shared_ptr<const SSet2> space_;
  SemiringKind semiring_;
  Target target_;
  Table dists_;
};

/// Fills every generator that has no distribution of its own from a coface,
/// by pushforward. `given[dim]` maps generator index to its distribution.
/// Throws PreconditionError when a generator cannot be reached.
SimpDist complete_from_faces(std::shared_ptr<const SSet2> space, SemiringKind semiring, Target target,
                             const std::array<std::map<int, OutcomeDist>, 3>& given);

/// Exact check of every face relation d_i p_x = p_{d_i x}, plus outcome shapes.
std::vector<std::string> validate(const SimpDist& p);

SimpDist deterministic_embed(std::shared_ptr<const SSet2> space, const DetMap& phi, SemiringKind semiring);

/// Theta(d)_x = sum_phi d(phi) delta^{phi(x)}.
SimpDist theta(std::shared_ptr<const SSet2> space, const Dist<DetMap>& d);

/// Simplexwise convex combination of simplicial distributions on the same space.
SimpDist mix(const std::vector<std::pair<Scalar, SimpDist>>& parts);

/// Simplicial maps whose value has nonzero weight on every generator.
std::vector<DetMap> support(const SimpDist& p);
bool is_strongly_contextual(const SimpDist& p);
bool is_deterministic(const SimpDist& p);

/// Pullback f^* p along f : Z -> X.
SimpDist restrict(const SimpDist& p, const SSetMap& f, std::shared_ptr<const SSet2> domain);

/// True when no element of supp(f^* p) extends to a map on X, which forces
/// supp(p) to be empty.
bool restriction_certifies_strong_contextuality(const SimpDist& p, const SSetMap& f, std::shared_ptr<const SSet2> domain);

/// Presheaf of distributions on contexts of at most two measurements.
struct EmpiricalModel {
  int d = 2;
  SemiringKind semiring = SemiringKind::NonnegRational;
  std::vector<std::string> measurements;
  /// Each context lists measurement indices; outcomes are tuples in that order.
  std::vector<std::vector<int>> contexts;
  std::vector<OutcomeDist> dists;

  /// Marginals on pairwise intersections of contexts must agree.
  std::vector<std::string> validate() const;
};

/// Nerve realization: one edge per measurement and one triangle per two-element
/// context (see measurement_cone), with p_{u,v}(a, b) = p_{uv}(u = a, v = b).
SimpDist realize(const EmpiricalModel& e);

/// Delta_{Z_d} realization on the ordered measurement complex: one vertex per
/// measurement and an edge u -> v (u listed first) per two-element context.
SimpDist realize_delta(const EmpiricalModel& e);

/// Transpose along the cone/decalage adjunction: a Delta_{Z_d} distribution on
/// X (dim <= 1) becomes a nerve distribution on Delta[0] * X with
/// q_{c*e}(a, b) = p_e(a, a + b).
struct Decalage {
  Join join;
  SimpDist dist;
};
Decalage decalage_to_nerve(const SimpDist& p);
SimpDist decalage_from_nerve(const Join& join, std::shared_ptr<const SSet2> base, const SimpDist& q);

}  // namespace simctx
