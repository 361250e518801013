#pragma once

#include "szczarba/simplicial.hpp"

namespace sz::presets {

// Minimal S^1: one vertex pt, one edge e.
PresentationPtr circle();

// Minimal S^2: one vertex, one 2-generator with degenerate faces.
PresentationPtr sphere2();

// Minimal RP^2-style model: pt, edge a, 2-cell c with ∂c = (a, s_0 pt, a).
PresentationPtr rp2();

// Full standard n-simplex; generators named by their vertex words.
PresentationPtr delta_full(int n);

// Δ^n with its 1-skeleton collapsed to the basepoint (1-reduced for n >= 1).
PresentationPtr delta_collapsed(int n);

// Random 1-reduced presentation: n2 generators in dimension 2 and n3 in
// dimension 3 whose faces are chosen among the 2-generators and the sole
// degenerate 2-simplex over the basepoint.  Deterministic in the seed.
PresentationPtr random_one_reduced(unsigned seed, int n2, int n3);

} // namespace sz::presets
