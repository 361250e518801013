#include "szczarba/fibre.hpp"

#include <sstream>

namespace sz {

FibrePtr Fibre::group_itself(GroupPtr G) {
    auto f = std::make_shared<Fibre>();
    f->kind_ = Kind::Group;
    f->G_ = std::move(G);
    return f;
}

FibrePtr Fibre::space(PresentationPtr F, GroupPtr G,
                      const std::map<std::pair<std::string, std::string>, std::string>& action) {
    if (G->kind() != SimplicialGroup::Kind::Finite)
        throw ValidationError("space fibre: the acting group must be finite");
    auto f = std::make_shared<Fibre>();
    f->kind_ = Kind::Space;
    f->F_ = std::move(F);
    f->G_ = std::move(G);
    f->action_ = action;

    const Presentation& P = *f->F_;
    const SimplicialGroup& grp = *f->G_;
    for (const auto& [key, img] : action) {
        grp.element_index(key.first);
        auto src = P.find_gen(key.second);
        auto dst = P.find_gen(img);
        if (!src || !dst || src->dim != dst->dim)
            throw ValidationError("space fibre: action table entry (" + key.first + ", " +
                                  key.second + ") is not a generator bijection");
    }
    for (int e = 0; e < grp.order(); ++e) {
        for (int d = 0; d <= P.max_dim(); ++d) {
            for (const auto& y : P.nondegenerate(d)) {
                Simplex img = f->act_space(e, y);
                if (e == grp.unit_index() && !(img == y))
                    throw ValidationError("space fibre: the unit must act trivially");
                for (int i = 0; i <= d && d >= 1; ++i)
                    if (!(f->act_space(e, P.face(i, y)) == P.face(i, img)))
                        throw ValidationError("space fibre: action of '" + grp.element_name(e) +
                                              "' is not simplicial at '" + P.str(y) + "'");
            }
        }
    }
    return f;
}

FibreElt Fibre::elt(const Simplex& x) const {
    if (kind_ != Kind::Space) throw ValidationError("fibre is not a space fibre");
    return {false, x, {}};
}

FibreElt Fibre::elt(const GroupWord& g) const {
    if (kind_ != Kind::Group) throw ValidationError("fibre is not a group fibre");
    return {true, {}, g};
}

FibreElt Fibre::unit(int dim) const {
    if (kind_ != Kind::Group) throw ValidationError("unit element: fibre is not a group");
    return {true, {}, G_->unit(dim)};
}

int Fibre::dim(const FibreElt& y) const { return y.is_group ? y.g.level : y.x.dim(); }

FibreElt Fibre::face(int i, const FibreElt& y) const {
    if (y.is_group) return {true, {}, G_->face(i, y.g)};
    return {false, F_->face(i, y.x), {}};
}

FibreElt Fibre::degeneracy(int i, const FibreElt& y) const {
    if (y.is_group) return {true, {}, G_->degeneracy(i, y.g)};
    return {false, sz::degeneracy(i, y.x), {}};
}

FibreElt Fibre::apply_sbar(const FibreElt& y, const std::vector<int>& J) const {
    if (y.is_group) return {true, {}, sz::apply_sbar(*G_, y.g, J)};
    return {false, sz::apply_sbar(y.x, J), {}};
}

bool Fibre::degenerate(const FibreElt& y) const {
    return y.is_group ? G_->degenerate(y.g) : y.x.degenerate();
}

bool Fibre::degenerate_at(const FibreElt& y, int i) const {
    return y.is_group ? G_->degenerate_at(y.g, i) : y.x.degenerate_at(i);
}

Simplex Fibre::act_space(int gelt, const Simplex& x) const {
    auto it = action_.find({G_->element_name(gelt), F_->gen_name(x.gen)});
    if (it == action_.end()) return x;
    return {x.degs, *F_->find_gen(it->second)};
}

FibreElt Fibre::act(const GroupWord& g, const FibreElt& y) const {
    if (dim(y) != g.level) throw LevelMismatch("fibre action: level mismatch");
    if (kind_ == Kind::Group) return {true, {}, G_->mul(g, y.g)};
    return {false, act_space(g.felt, y.x), {}};
}

std::vector<FibreElt> Fibre::all(int dim) const {
    std::vector<FibreElt> out;
    if (kind_ == Kind::Space) {
        for (const auto& x : F_->all_simplices(dim)) out.push_back({false, x, {}});
        return out;
    }
    if (G_->kind() != SimplicialGroup::Kind::Finite)
        throw Unbounded("cannot enumerate an infinite group fibre");
    for (int e = 0; e < G_->order(); ++e)
        out.push_back({true, {}, G_->felement(G_->element_name(e), dim)});
    return out;
}

std::string Fibre::str(const FibreElt& y) const {
    return y.is_group ? G_->str(y.g) : F_->str(y.x);
}

TwistedProduct::TwistedProduct(TwistPtr tau, FibrePtr F)
    : tau_(std::move(tau)), F_(std::move(F)) {
    if (F_->group_ptr() != tau_->group_ptr())
        throw ValidationError("twisted product: fibre and twist use different groups");
}

int TwistedProduct::dim(const TwistedSimplex& z) const {
    int d = z.x.dim();
    if (d != F_->dim(z.y)) throw DimensionMismatch("twisted simplex: mismatched components");
    return d;
}

TwistedSimplex TwistedProduct::face(int i, const TwistedSimplex& z) const {
    const Presentation& P = base();
    if (i == 0)
        return {P.face(0, z.x), F_->act(tau_->tau(z.x), F_->face(0, z.y))};
    return {P.face(i, z.x), F_->face(i, z.y)};
}

TwistedSimplex TwistedProduct::degeneracy(int i, const TwistedSimplex& z) const {
    return {sz::degeneracy(i, z.x), F_->degeneracy(i, z.y)};
}

bool TwistedProduct::degenerate(const TwistedSimplex& z) const {
    int n = dim(z);
    for (int i = 0; i < n; ++i)
        if (z.x.degenerate_at(i) && F_->degenerate_at(z.y, i)) return true;
    return false;
}

ChainT TwistedProduct::boundary(const TwistedSimplex& z) const {
    ChainT out;
    int n = dim(z);
    if (n == 0) return out;
    Int s = 1;
    for (int i = 0; i <= n; ++i) {
        TwistedSimplex f = face(i, z);
        if (!degenerate(f)) out.add(f, s);
        s = -s;
    }
    return out;
}

ChainT TwistedProduct::boundary(const ChainT& c) const {
    ChainT out;
    for (const auto& [z, k] : c.terms) {
        ChainT b = boundary(z);
        b *= k;
        out += b;
    }
    return out;
}

ChainTT TwistedProduct::aw_diagonal(const TwistedSimplex& z) const {
    ChainTT out;
    int n = dim(z);
    for (int k = 0; k <= n; ++k) {
        TwistedSimplex front = z;
        for (int j = n; j > k; --j) front = face(j, front);
        TwistedSimplex back = z;
        for (int j = 0; j < k; ++j) back = face(0, back);
        if (degenerate(front) || degenerate(back)) continue;
        out.add({front, back}, 1);
    }
    return out;
}

Int TwistedProduct::augment(const ChainT& c) const {
    Int s = 0;
    for (const auto& [z, k] : c.terms)
        if (dim(z) == 0) s += k;
    return s;
}

std::vector<TwistedSimplex> TwistedProduct::all(int dim) const {
    std::vector<TwistedSimplex> out;
    for (const auto& x : base().all_simplices(dim))
        for (const auto& y : F_->all(dim)) out.push_back({x, y});
    return out;
}

std::vector<TwistedSimplex> TwistedProduct::nondegenerate(int dim) const {
    std::vector<TwistedSimplex> out;
    for (const auto& z : all(dim))
        if (!degenerate(z)) out.push_back(z);
    return out;
}

ChainT TwistedProduct::right_action(const ChainT& c, const ChainG& h) const {
    if (F_->kind() != Fibre::Kind::Group)
        throw ValidationError("right action: fibre is not the group itself");
    const SimplicialGroup& G = *F_->group_ptr();
    ChainT out;
    for (const auto& [z, cz] : c.terms) {
        int n = dim(z);
        for (const auto& [w, cw] : h.terms) {
            for (const auto& sh : shuffles({n, w.level})) {
                TwistedSimplex zs{sz::apply_sbar(z.x, sh.complements[0]),
                                  F_->apply_sbar(z.y, sh.complements[0])};
                zs.y.g = G.mul(zs.y.g, sz::apply_sbar(G, w, sh.complements[1]));
                if (degenerate(zs)) continue;
                out.add(zs, cz * cw * sh.sign);
            }
        }
    }
    return out;
}

std::string TwistedProduct::str(const TwistedSimplex& z) const {
    std::ostringstream os;
    os << '(' << base().str(z.x) << ", " << F_->str(z.y) << ')';
    return os.str();
}

} // namespace sz
