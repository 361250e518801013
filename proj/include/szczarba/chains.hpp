#pragma once

#include "szczarba/chain.hpp"
#include "szczarba/group.hpp"
#include "szczarba/simplicial.hpp"

namespace sz {

using ChainX = LinComb<Simplex>;                 // normalized chains of a presentation
using ChainG = LinComb<GroupWord>;               // normalized chains of a simplicial group
using ChainXX = LinComb<Ten<Simplex, Simplex>>;  // C(X) ⊗ C(X)
using ChainGG = LinComb<Ten<GroupWord, GroupWord>>;

// ∂ = Σ (-1)^i ∂_i with degenerate faces dropped.
ChainX boundary(const Presentation& P, const Simplex& x);
ChainX boundary(const Presentation& P, const ChainX& c);
ChainG boundary(const SimplicialGroup& G, const GroupWord& w);
ChainG boundary(const SimplicialGroup& G, const ChainG& c);

// x(0..k) — the front face of dimension k — and x(k..n).
Simplex front_face(const Presentation& P, const Simplex& x, int k);
Simplex back_face(const Presentation& P, const Simplex& x, int k);
GroupWord front_face(const SimplicialGroup& G, const GroupWord& w, int k);
GroupWord back_face(const SimplicialGroup& G, const GroupWord& w, int k);

// Alexander–Whitney diagonal Σ_k front_k ⊗ back_{n-k}, normalized.
ChainXX aw_diagonal(const Presentation& P, const Simplex& x);
ChainGG aw_diagonal(const SimplicialGroup& G, const GroupWord& w);

// Shuffle data: all partitions (α_1,...,α_r) of [0..q-1] with |α_s| = q - q_s
// complementary blocks, together with the signature of the block permutation.
struct Shuffle {
    std::vector<std::vector<int>> complements;  // ᾱ_s, each strictly increasing
    int sign = 1;                               // signature of (α_1,...,α_r)
};
std::vector<Shuffle> shuffles(const std::vector<int>& degrees);

// Eilenberg–Zilber shuffle map for two group-chain factors (values in G × G
// would need a product type; here we immediately multiply, giving Pontryagin).
// a · b = μ_* ∇ (a ⊗ b), the chain-level Pontryagin product of C(G).
ChainG pontryagin(const SimplicialGroup& G, const GroupWord& a, const GroupWord& b);
ChainG pontryagin(const SimplicialGroup& G, const ChainG& a, const ChainG& b);

// Augmentation ε: coefficient sum in level 0.
Int augment(const ChainX& c);
Int augment(const ChainG& c);

// Iterated degeneracy s_J for a strictly increasing index set J (applied as the
// decreasing composite s_{j_r} ... s_{j_1}, the EZ convention).
Simplex apply_sbar(const Simplex& x, const std::vector<int>& J);
GroupWord apply_sbar(const SimplicialGroup& G, const GroupWord& w, const std::vector<int>& J);

} // namespace sz
