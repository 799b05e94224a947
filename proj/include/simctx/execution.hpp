#pragma once

namespace simctx {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// identical, identically ordered results.
enum class Exec { Serial, Parallel };

}  // namespace simctx
