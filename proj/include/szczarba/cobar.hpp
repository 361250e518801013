// Reduced cobar construction ΩC(X) as a dg bialgebra: differential,
// concatenation product, the hgc diagonal built from interval cuts, Baues'
// diagonal for 1-reduced X, and the twisting-cochain calculus on Hom(C, A).
#pragma once

#include "szczarba/chains.hpp"
#include "szczarba/interval_cuts.hpp"

#include <functional>
#include <vector>

namespace sz {

// [c_1|...|c_m] with every letter nondegenerate of dimension ≥ 1;
// degree = Σ (dim c_i - 1).  The empty word is the unit 1.
struct CobarWord {
    std::vector<Simplex> letters;

    CobarWord() = default;
    explicit CobarWord(std::vector<Simplex> ls);    // validates the letters

    int degree() const;
    bool unit() const { return letters.empty(); }
    std::string str(const Presentation& P) const;   // "[a|b]", unit prints "1"

    bool operator==(const CobarWord&) const = default;
    bool operator<(const CobarWord& rhs) const;
};

using ChainOmega = LinComb<CobarWord>;
using TenOmegaOmega = LinComb<Ten<CobarWord, CobarWord>>;
using TenOmegaX = LinComb<Ten<CobarWord, Simplex>>;

ChainOmega cobar_one();

// Concatenation; associative and unital, no signs.
CobarWord cobar_product(const CobarWord& a, const CobarWord& b);
ChainOmega cobar_product(const ChainOmega& a, const ChainOmega& b);

// Multiplication on ΩC ⊗ ΩC with the Koszul sign (-1)^{deg b deg c}.
TenOmegaOmega ten_product(const TenOmegaOmega& a, const TenOmegaOmega& b);

// d[c] = -[∂c] + Σ_{0<j<n} (-1)^j [c(0..j)|c(j..n)], extended by Leibniz;
// requires a reduced presentation (so that no degree-0 letters survive).
ChainOmega cobar_differential(const Presentation& P, const CobarWord& w);
ChainOmega cobar_differential(const Presentation& P, const ChainOmega& c);

// Δ[x] = [x]⊗1 + Σ_{k≥0} Σ_p (-1)^{ε(p)} [x^p_1|...|x^p_k] ⊗ [x^p_{k+1}],
// extended multiplicatively; coassociative chain map (the hgc diagonal).
TenOmegaOmega cobar_diagonal(const Presentation& P, const CobarWord& w);
TenOmegaOmega cobar_diagonal(const Presentation& P, const ChainOmega& c);

// Counit of the bialgebra: coefficient of the empty word.
Int cobar_counit(const ChainOmega& c);

// Baues' diagonal for 1-reduced X: terms indexed by subsets b ⊆ {1..n-1},
// with the sign of the shuffle ({1..n-1}∖b, b); throws NotOneReduced.
TenOmegaOmega baues_diagonal(const Presentation& P, const CobarWord& w);
TenOmegaOmega baues_diagonal(const Presentation& P, const ChainOmega& c);

// 𝔈: C → ΩC ⊗ C,  x ↦ 1⊗x + Σ_{k≥1} Σ_p (-1)^{ε(p)+deg W_p} W_p ⊗ x^p_{k+1}
// with W_p = [x^p_1|...|x^p_k]  (the (1⊗p_C)-image of the k ≥ 1 terms).
TenOmegaX frak_E(const Presentation& P, const Simplex& x);

// ---------------------------------------------------------------------------
// Twisting-cochain calculus over an abstract target dga A.

template <class AE>
struct DgaOps {
    std::function<LinComb<AE>(const LinComb<AE>&, const LinComb<AE>&)> mul;
    std::function<LinComb<AE>(const LinComb<AE>&)> diff;
    std::function<Int(const LinComb<AE>&)> aug;
    LinComb<AE> one;
};

// An element of Hom(C(X), A) of pure degree; eval is defined on
// nondegenerate basis simplices (degenerate input must give 0).
template <class AE>
struct Cochain {
    int degree = -1;
    std::function<LinComb<AE>(const Simplex&)> eval;
};

template <class AE>
LinComb<AE> eval0(const Cochain<AE>& f, const Simplex& x) {
    if (x.degenerate()) return {};
    return f.eval(x);
}

// f ∪ g = μ_A (f⊗g) Δ_C with the Koszul sign (-1)^{deg g · deg front}.
template <class AE>
Cochain<AE> cup(const Presentation* P, const DgaOps<AE>* ops,
                Cochain<AE> f, Cochain<AE> g) {
    Cochain<AE> h;
    h.degree = f.degree + g.degree;
    h.eval = [P, ops, f, g](const Simplex& x) {
        LinComb<AE> out;
        int n = x.dim();
        for (int j = 0; j <= n; ++j) {
            auto a = eval0(f, front_face(*P, x, j));
            if (a.zero()) continue;
            auto b = eval0(g, back_face(*P, x, j));
            if (b.zero()) continue;
            out += ops->mul(a, b) * Int(g.degree % 2 != 0 && j % 2 != 0 ? -1 : 1);
        }
        return out;
    };
    return h;
}

// d(f) = d_A f - (-1)^{deg f} f ∂.
template <class AE>
Cochain<AE> hom_differential(const Presentation* P, const DgaOps<AE>* ops,
                             Cochain<AE> f) {
    Cochain<AE> h;
    h.degree = f.degree - 1;
    h.eval = [P, ops, f](const Simplex& x) {
        LinComb<AE> out = ops->diff(f.eval(x));
        int sgn = (f.degree % 2 == 0) ? -1 : 1;
        int n = x.dim();
        for (int i = 0; i <= n && n > 0; ++i) {
            Simplex face = P->face(i, x);
            if (face.degenerate()) continue;
            out += f.eval(face) * Int((i % 2 == 0 ? 1 : -1) * sgn);
        }
        return out;
    };
    return h;
}

// The dga morphism ΩC → A, [c_1|...|c_k] ↦ t(c_1)···t(c_k).
template <class AE>
LinComb<AE> induced_dga_map(const DgaOps<AE>& ops, const Cochain<AE>& t,
                            const CobarWord& w) {
    LinComb<AE> out = ops.one;
    for (const auto& c : w.letters) out = ops.mul(out, eval0(t, c));
    return out;
}

template <class AE>
LinComb<AE> induced_dga_map(const DgaOps<AE>& ops, const Cochain<AE>& t,
                            const ChainOmega& c) {
    LinComb<AE> out;
    for (const auto& [w, coeff] : c.terms) out += induced_dga_map(ops, t, w) * coeff;
    return out;
}

// 𝔉 = (f_t ⊗ 1) ∘ 𝔈 : C → A ⊗ C, where f_t is the induced dga map.
template <class AE>
LinComb<Ten<AE, Simplex>> frak_F(const Presentation& P, const DgaOps<AE>& ops,
                                 const Cochain<AE>& t, const Simplex& x) {
    LinComb<Ten<AE, Simplex>> out;
    for (const auto& [wc, coeff] : frak_E(P, x).terms) {
        auto img = induced_dga_map(ops, t, wc.a);
        for (const auto& [ae, c2] : img.terms)
            out.add(Ten<AE, Simplex>{ae, wc.b}, coeff * c2);
    }
    return out;
}

struct TwistingFailure {
    Simplex simplex;
    std::string detail;
};

struct TwistingReport {
    std::vector<TwistingFailure> failures;
    int checked = 0;
    bool ok() const { return failures.empty(); }
};

// Verifies t ι = 0, ε_A t = 0 and d(t) = t ∪ t on every nondegenerate
// basis simplex of dimension ≤ dim_bound.
template <class AE>
TwistingReport check_twisting(const Presentation& P, const DgaOps<AE>& ops,
                              const Cochain<AE>& t, int dim_bound) {
    TwistingReport rep;
    if (t.degree != -1) {
        rep.failures.push_back({Simplex{}, "twisting cochain must have degree -1"});
        return rep;
    }
    auto dt = hom_differential(&P, &ops, t);
    auto tt = cup(&P, &ops, t, t);
    for (int n = 0; n <= dim_bound && n <= P.max_dim(); ++n) {
        for (const auto& x : P.nondegenerate(n)) {
            ++rep.checked;
            if (n == 0) {
                if (!t.eval(x).zero())
                    rep.failures.push_back({x, "t does not vanish on a 0-simplex"});
                continue;
            }
            if (n == 1 && ops.aug(t.eval(x)) != 0)
                rep.failures.push_back({x, "ε_A t != 0"});
            if (dt.eval(x) != tt.eval(x))
                rep.failures.push_back({x, "d(t) != t ∪ t"});
        }
    }
    return rep;
}

// Ready-made dga structures for the two targets used in the paper.
DgaOps<CobarWord> cobar_ops(PresentationPtr P);
DgaOps<GroupWord> group_ops(GroupPtr G);

// The canonical twisting cochain t_C : C → ΩC, c ↦ [c].
Cochain<CobarWord> canonical_tc();

} // namespace sz
