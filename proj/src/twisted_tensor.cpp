#include "szczarba/twisted_tensor.hpp"

#include "szczarba/interval_cuts.hpp"
#include "szczarba/szczarba.hpp"

#include <sstream>

namespace sz {

ChainF module_action(const Fibre& F, const GroupWord& a, const FibreElt& y) {
    ChainF out;
    const SimplicialGroup& G = *F.group_ptr();
    if (G.degenerate(a) || F.degenerate(y)) return out;
    for (const auto& sh : shuffles({a.level, F.dim(y)})) {
        GroupWord u = apply_sbar(G, a, sh.complements[0]);
        FibreElt v = F.apply_sbar(y, sh.complements[1]);
        FibreElt uv = F.act(u, v);
        if (!F.degenerate(uv)) out.add(uv, sh.sign);
    }
    return out;
}

ChainF module_action(const Fibre& F, const ChainG& a, const ChainF& c) {
    ChainF out;
    for (const auto& [g, cg] : a.terms)
        for (const auto& [y, cy] : c.terms) out += module_action(F, g, y) * (cg * cy);
    return out;
}

TwistedTensorComplex::TwistedTensorComplex(TwistPtr tau, FibrePtr F, int dim_bound)
    : tau_(std::move(tau)), F_(std::move(F)), bound_(dim_bound) {
    if (F_->group_ptr() != tau_->group_ptr())
        throw ValidationError("fibre and twisting function use different groups");
    if (F_->kind() == Fibre::Kind::Group &&
        F_->group_ptr()->kind() != SimplicialGroup::Kind::Finite)
        throw InfiniteDegree("twisted tensor complex needs a degreewise-finite fibre");
    t_ = szczarba_cochain(tau_);
    // d_t² = 0 iff t is twisting; fail loudly rather than propagate garbage.
    for (int n = 0; n <= bound_; ++n)
        for (const auto& z : basis(n))
            if (!twisted_differential(*this, twisted_differential(*this, z)).zero())
                throw ValidationError("d_t^2 != 0 on " + str(z));
}

int TwistedTensorComplex::total_dim(const PairXF& z) const {
    return z.a.dim() + F_->dim(z.b);
}

bool TwistedTensorComplex::degenerate(const PairXF& z) const {
    return z.a.degenerate() || F_->degenerate(z.b);
}

std::vector<PairXF> TwistedTensorComplex::basis(int n) const {
    std::vector<PairXF> out;
    const Presentation& P = base();
    for (int d = 0; d <= std::min(n, P.max_dim()); ++d)
        for (const auto& x : P.nondegenerate(d))
            for (const auto& y : F_->all(n - d))
                if (!F_->degenerate(y)) out.push_back({x, y});
    return out;
}

std::string TwistedTensorComplex::str(const PairXF& z) const {
    std::ostringstream os;
    os << base().str(z.a) << " (x) " << F_->str(z.b);
    return os.str();
}

std::string TwistedTensorComplex::str(const ChainXF& c) const {
    return c.str([this](const PairXF& z) { return str(z); });
}

ChainXF twisted_differential(const TwistedTensorComplex& T, const PairXF& z) {
    ChainXF out;
    if (T.degenerate(z)) return out;
    const Presentation& P = T.base();
    const Fibre& F = T.fibre();
    int n = z.a.dim(), m = F.dim(z.b);
    for (int i = 0; i <= n && n > 0; ++i) {
        Simplex f = P.face(i, z.a);
        if (!f.degenerate()) out.add({f, z.b}, sign_pow(i));
    }
    for (int j = 0; j <= m && m > 0; ++j) {
        FibreElt f = F.face(j, z.b);
        if (!F.degenerate(f)) out.add({z.a, f}, sign_pow(n + j));
    }
    // -δ_t = +Σ_r (-1)^{r+1} x(0..r) ⊗ t(x(r..n))·y
    for (int r = 0; r < n; ++r) {
        Simplex c1 = front_face(P, z.a, r);
        if (c1.degenerate()) continue;
        ChainG tc = eval0(T.cochain(), back_face(P, z.a, r));
        if (tc.zero()) continue;
        for (const auto& [w, c] : module_action(F, tc, ChainF::single(z.b)).terms)
            out.add({c1, w}, sign_pow(r + 1) * c);
    }
    return out;
}

ChainXF twisted_differential(const TwistedTensorComplex& T, const ChainXF& c) {
    ChainXF out;
    for (const auto& [z, coeff] : c.terms) out += twisted_differential(T, z) * coeff;
    return out;
}

TenXFXF twisted_diagonal(const TwistedTensorComplex& T, const PairXF& zz) {
    TenXFXF out;
    if (T.degenerate(zz)) return out;
    const Presentation& P = T.base();
    const SimplicialGroup& G = T.group();
    const Fibre& F = T.fibre();
    int n = zz.a.dim(), m = F.dim(zz.b);

    std::vector<FibreElt> fy(m + 1), by(m + 1);  // ∂̃^j y and (∂_0)^r y
    fy[0] = by[0] = zz.b;
    for (int j = 1; j <= m; ++j) fy[j] = F.face(m - j + 1, fy[j - 1]);
    for (int r = 1; r <= m; ++r) by[r] = F.face(0, by[r - 1]);

    for (int i = 0; i <= n; ++i) {
        Simplex fx = front_face(P, zz.a, n - i);  // ∂̃^i x
        if (fx.degenerate()) continue;
        Simplex z = back_face(P, zz.a, n - i);  // (∂_0)^{n-i} x, dim i
        // Degenerate z kills every cut: each adjacent vertex pair of z sits
        // inside some factor of every cut, so all tuples drop.
        if (z.degenerate()) continue;
        for (int j = 0; j <= m; ++j) {
            const FibreElt& yf = fy[j];      // dim m-j
            const FibreElt& yb = by[m - j];  // dim j
            if (F.degenerate(yf) || F.degenerate(yb)) continue;
            // k = 0: the cut with a single (final) interval, ε = 0.
            out.add({{fx, yf}, {z, yb}},
                    sign_pow(i + static_cast<long>(m - j - 1) * z.dim()));
            for (int k = 1; k <= i; ++k)
                for (const auto& [tup, eps] : suspended_cooperation(P, z, k).terms) {
                    ChainG tp = ChainG::single(G.unit(0));
                    for (int s = 0; s < k && !tp.zero(); ++s)
                        tp = pontryagin(G, tp, eval0(T.cochain(), tup[s]));
                    if (tp.zero()) continue;
                    const Simplex& last = tup[k];
                    Int sgn = eps * sign_pow(i + static_cast<long>(m - j - 1) * last.dim());
                    for (const auto& [w, c] : module_action(F, tp, ChainF::single(yf)).terms)
                        out.add({{fx, w}, {last, yb}}, sgn * c);
                }
        }
    }
    return out;
}

TenXFXF twisted_diagonal(const TwistedTensorComplex& T, const ChainXF& c) {
    TenXFXF out;
    for (const auto& [z, coeff] : c.terms) out += twisted_diagonal(T, z) * coeff;
    return out;
}

TenXFXF twisted_diagonal_composite(const TwistedTensorComplex& T, const PairXF& zz) {
    TenXFXF out;
    if (T.degenerate(zz)) return out;
    const Presentation& P = T.base();
    const Fibre& F = T.fibre();
    auto ops = group_ops(T.twist_ptr()->group_ptr());
    int n = zz.a.dim(), m = F.dim(zz.b);

    std::vector<FibreElt> fy(m + 1), by(m + 1);
    fy[0] = by[0] = zz.b;
    for (int j = 1; j <= m; ++j) fy[j] = F.face(m - j + 1, fy[j - 1]);
    for (int r = 1; r <= m; ++r) by[r] = F.face(0, by[r - 1]);

    for (int r = 0; r <= n; ++r) {
        Simplex c1 = front_face(P, zz.a, r);
        if (c1.degenerate()) continue;
        auto ff = frak_F(P, ops, T.cochain(), back_face(P, zz.a, r));
        for (int s = 0; s <= m; ++s) {
            const FibreElt& m1 = fy[m - s];  // dim s
            const FibreElt& m2 = by[s];      // dim m-s
            if (F.degenerate(m1) || F.degenerate(m2)) continue;
            for (const auto& [ac, coeff] : ff.terms) {  // Σ a_i ⊗ c_i
                if (ac.b.degenerate()) continue;
                Int sgn = coeff * sign_pow(static_cast<long>(ac.b.dim()) * s);
                for (const auto& [w, c] :
                     module_action(F, ChainG::single(ac.a), ChainF::single(m1)).terms)
                    out.add({{c1, w}, {ac.b, m2}}, sgn * c);
            }
        }
    }
    return out;
}

Int twisted_counit(const TwistedTensorComplex& T, const ChainXF& c) {
    Int out = 0;
    for (const auto& [z, coeff] : c.terms)
        if (T.total_dim(z) == 0) out += coeff;
    return out;
}

namespace {

// Cochains must be homogeneous; returns -1 for the zero cochain.
int pure_degree(const TwistedTensorComplex& T, const ChainXF& phi) {
    int deg = -1;
    for (const auto& [z, c] : phi.terms) {
        int d = T.total_dim(z);
        if (deg != -1 && d != deg)
            throw DimensionMismatch("dual cochain must be homogeneous");
        deg = d;
    }
    return deg;
}

} // namespace

ChainXF DualDga::differential(const ChainXF& phi) const {
    ChainXF out;
    int p = pure_degree(*T, phi);
    if (p < 0) return out;
    for (const auto& z : T->basis(p + 1)) {
        Int coeff = 0;
        for (const auto& [u, c] : twisted_differential(*T, z).terms) {
            auto it = phi.terms.find(u);
            if (it != phi.terms.end()) coeff += c * it->second;
        }
        out.add(z, -coeff);
    }
    return out;
}

ChainXF DualDga::product(const ChainXF& phi, const ChainXF& psi) const {
    ChainXF out;
    int p = pure_degree(*T, phi), q = pure_degree(*T, psi);
    if (p < 0 || q < 0) return out;
    for (const auto& z : T->basis(p + q)) {
        Int coeff = 0;
        for (const auto& [uv, c] : twisted_diagonal(*T, z).terms) {
            auto iu = phi.terms.find(uv.a);
            if (iu == phi.terms.end()) continue;
            auto iv = psi.terms.find(uv.b);
            if (iv == psi.terms.end()) continue;
            coeff += c * iu->second * iv->second;
        }
        out.add(z, coeff);
    }
    return out;
}

ChainXF DualDga::unit() const {
    ChainXF out;
    for (const auto& z : T->basis(0)) out.add(z, 1);
    return out;
}

Int DualDga::pair(const ChainXF& phi, const ChainXF& c) const {
    Int out = 0;
    for (const auto& [z, coeff] : c.terms) {
        auto it = phi.terms.find(z);
        if (it != phi.terms.end()) out += coeff * it->second;
    }
    return out;
}

DualDga dualize(const TwistedTensorComplex& T) { return {&T}; }

} // namespace sz
