#pragma once

#include <string>

#include "simctx/dist.hpp"
#include "simctx/simpdist.hpp"

namespace simctx {

struct RenderOptions {
  /// Append a decimal approximation to every weight.
  bool show_float = false;
};

std::string format_scalar(const Scalar& s, const RenderOptions& options = {});

/// Boxes with rows indexed by the first outcome and columns by the second.
/// Models whose triangles form a product grid of d2 edges by d0 edges are
/// drawn as one grid of boxes; everything else falls back to one box per
/// generator with two-coordinate outcomes and a flat listing for the rest.
std::string render_box_table(const SimpDist& p, const RenderOptions& options = {});

/// "{00:1/2, 11:1/2}"
std::string render_flat(const OutcomeDist& p, int d, const RenderOptions& options = {});

}  // namespace simctx
