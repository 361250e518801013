#pragma once

#include "szczarba/cobar.hpp"
#include "szczarba/fibre.hpp"

namespace sz {

using ChainF = LinComb<FibreElt>;
using PairXF = Ten<Simplex, FibreElt>;
using ChainXF = LinComb<PairXF>;
using TenXFXF = LinComb<Ten<PairXF, PairXF>>;

// μ_M: C(G) ⊗ C(F) → C(F), the shuffle map followed by the simplicial
// action, normalized.
ChainF module_action(const Fibre& F, const GroupWord& a, const FibreElt& y);
ChainF module_action(const Fibre& F, const ChainG& a, const ChainF& c);

// C(X) ⊗_t C(F) for t the Szczarba cochain of tau.  The fibre must be
// degreewise finite (InfiniteDegree otherwise); construction checks d_t² = 0
// on the basis up to total degree dim_bound.
class TwistedTensorComplex {
public:
    TwistedTensorComplex(TwistPtr tau, FibrePtr F, int dim_bound);

    const Presentation& base() const { return tau_->domain(); }
    const SimplicialGroup& group() const { return tau_->group(); }
    const Fibre& fibre() const { return *F_; }
    FibrePtr fibre_ptr() const { return F_; }
    TwistPtr twist_ptr() const { return tau_; }
    const Cochain<GroupWord>& cochain() const { return t_; }
    int dim_bound() const { return bound_; }

    int total_dim(const PairXF& z) const;
    // A basis pair is degenerate when either component is.
    bool degenerate(const PairXF& z) const;
    std::vector<PairXF> basis(int n) const;

    std::string str(const PairXF& z) const;
    std::string str(const ChainXF& c) const;

private:
    TwistPtr tau_;
    FibrePtr F_;
    Cochain<GroupWord> t_;
    int bound_;
};

// d_t = d_C⊗1 + 1⊗d_M − δ_t  with  δ_t = (1⊗μ_M)(1⊗t⊗1)(Δ_C⊗1).
ChainXF twisted_differential(const TwistedTensorComplex& T, const PairXF& z);
ChainXF twisted_differential(const TwistedTensorComplex& T, const ChainXF& c);

// The dgc diagonal, from the explicit double-sum formula over front faces of
// both factors and interval cuts of the middle part of x.
TenXFXF twisted_diagonal(const TwistedTensorComplex& T, const PairXF& z);
TenXFXF twisted_diagonal(const TwistedTensorComplex& T, const ChainXF& c);
// The same map as the composite (1⊗μ_A⊗1⊗1)(1⊗1⊗T⊗1)(1⊗𝔉⊗1)(Δ_C⊗Δ_M),
// computed independently as a cross-check.
TenXFXF twisted_diagonal_composite(const TwistedTensorComplex& T, const PairXF& z);

// ε_C ⊗ ε_M.
Int twisted_counit(const TwistedTensorComplex& T, const ChainXF& c);

// The dual dga of §9.2: differential −d_t^T, product Δ^T, both plain
// transposes (the cochain cup-product convention, ⟨φ⊗ψ, u⊗v⟩ = φ(u)ψ(v)).
// Cochains are finitely supported coefficient vectors on the basis, of pure
// degree.
struct DualDga {
    const TwistedTensorComplex* T = nullptr;

    ChainXF differential(const ChainXF& phi) const;
    ChainXF product(const ChainXF& phi, const ChainXF& psi) const;
    ChainXF unit() const;  // transpose of the counit
    Int pair(const ChainXF& phi, const ChainXF& c) const;
};
DualDga dualize(const TwistedTensorComplex& T);

} // namespace sz
