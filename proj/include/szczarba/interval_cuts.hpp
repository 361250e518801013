// Interval cuts for the surjections e_k = (k+1, 1, k+1, 2, ..., k, k+1),
// their sign ε(p), the refinement partial order, and the resulting
// cooperations E^k on simplex level.
#pragma once

#include "szczarba/chain.hpp"
#include "szczarba/simplicial.hpp"

#include <vector>

namespace sz {

// A cut 0 = p_0 ≤ p_1 ≤ ... ≤ p_{2k+1} = n of [0..n] whose intervals are
// labelled per e_k: positions 1, 3, ..., 2k+1 carry the final label k+1,
// position 2s carries label s.  Non-final intervals [p_{2s-1}, p_{2s}]
// must have length ≥ 1; final intervals may be empty.
struct IntervalCut {
    int n = 0;
    int k = 0;
    std::vector<int> p;     // 2k+2 boundaries

    IntervalCut() = default;
    IntervalCut(int n_, std::vector<int> p_);    // infers k, validates

    int q(int s) const;             // length of non-final interval s, 1 ≤ s ≤ k
    int final_len(int m) const;     // length of final interval m, 0 ≤ m ≤ k
    int ell() const;                // ℓ(p): total length of final intervals
    int ell1() const;               // ℓ₁(p): number of length-1 non-final intervals

    // Vertex list of the last factor x^p_{k+1}: the final intervals
    // [p_0..p_1], [p_2..p_3], ... concatenated (strictly increasing).
    std::vector<int> final_vertices() const;

    std::string str() const;        // arrow notation, e.g. "0 -(2)- 0 -(1)- 1 -(2)- 3"

    bool operator==(const IntervalCut&) const = default;
    bool operator<(const IntervalCut& rhs) const;
};

// All cuts of [0..n] for e_k, each exactly once (empty when k > n).
std::vector<IntervalCut> enumerate_cuts(int n, int k);

// All cuts of [0..n] for every k = 0..n.
std::vector<IntervalCut> enumerate_all_cuts(int n);

// One refinement step (Lemma 3.3): split final interval m at q, where
// p_{2m} ≤ q < p_{2m+1}, into final [p_2m, q], non-final [q, q+1],
// final [q+1, p_{2m+1}].  Throws InvalidSplit on a bad (m, q).
IntervalCut refine(const IntervalCut& p, int m, int q);

// The unique maximal refinement: every final interval shredded into
// length-1 non-final intervals separated by empty final ones; ℓ = 0.
IntervalCut maximal_refinement(const IntervalCut& p);

// All one-step refinements of p (ℓ(p) of them).
std::vector<IntervalCut> refinement_steps(const IntervalCut& p);

// True if b can be reached from a by zero or more refinement steps.
bool refines(const IntervalCut& b, const IntervalCut& a);

// ε(p) mod 2, defined via the maximal refinement p̂ (which has ℓ = 0) and
// the closed formula Σ_s (s-1)(q̂_s - 1) of Lemma 3.2; Lemma 3.3 makes
// this independent of the refinement path.
int epsilon_exponent(const IntervalCut& p);
int epsilon_sign(const IntervalCut& p);            // (-1)^ε(p)

// The factors (x^p_1, ..., x^p_{k+1}): factor s ≤ k is the sub-simplex on
// [p_{2s-1}..p_{2s}], factor k+1 the sub-simplex on final_vertices().
std::vector<Simplex> cut_faces(const Presentation& P, const Simplex& x,
                               const IntervalCut& p);

// Σ_p (-1)^{ε(p)} x^p_1 ⊗ ... ⊗ x^p_{k+1} over all e_k cuts, with tuples
// containing a degenerate factor dropped (normalized chains); k ≥ 1.
LinComb<std::vector<Simplex>> suspended_cooperation(const Presentation& P,
                                                    const Simplex& x, int k);

} // namespace sz
