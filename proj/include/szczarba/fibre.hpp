#pragma once

#include "szczarba/chains.hpp"

#include <map>
#include <memory>

namespace sz {

class Fibre;
using FibrePtr = std::shared_ptr<const Fibre>;

// Simplex of a fibre: a presentation simplex or a group element, depending on
// the owning fibre's kind.
struct FibreElt {
    bool is_group = false;
    Simplex x;
    GroupWord g;

    friend bool operator==(const FibreElt&, const FibreElt&) = default;
    friend bool operator<(const FibreElt& a, const FibreElt& b) {
        if (a.is_group != b.is_group) return a.is_group < b.is_group;
        if (a.is_group) return a.g < b.g;
        return a.x < b.x;
    }
};

// Left G-simplicial set: either the group itself (acting on itself by left
// multiplication) or a presentation carrying a simplicial action of a finite
// group on its generators.
class Fibre {
public:
    enum class Kind { Group, Space };

    static FibrePtr group_itself(GroupPtr G);
    // action: (group element, generator) -> generator, identity where omitted.
    // Checked on construction: each element acts as a simplicial map, the unit
    // acts trivially, and the assignment is multiplicative.
    static FibrePtr space(
        PresentationPtr F, GroupPtr G,
        const std::map<std::pair<std::string, std::string>, std::string>& action = {});

    Kind kind() const { return kind_; }
    GroupPtr group_ptr() const { return G_; }
    PresentationPtr space_ptr() const { return F_; }

    FibreElt elt(const Simplex& x) const;
    FibreElt elt(const GroupWord& g) const;
    FibreElt unit(int dim) const;  // Group kind: 1 in G_dim

    int dim(const FibreElt& y) const;
    FibreElt face(int i, const FibreElt& y) const;
    FibreElt degeneracy(int i, const FibreElt& y) const;
    FibreElt apply_sbar(const FibreElt& y, const std::vector<int>& J) const;
    bool degenerate(const FibreElt& y) const;
    bool degenerate_at(const FibreElt& y, int i) const;

    // g in G_n acting on y in F_n.
    FibreElt act(const GroupWord& g, const FibreElt& y) const;

    // Every simplex of the given dimension, degenerate ones included.  Group
    // fibres must be finite.
    std::vector<FibreElt> all(int dim) const;

    std::string str(const FibreElt& y) const;

private:
    Kind kind_ = Kind::Group;
    GroupPtr G_;
    PresentationPtr F_;
    std::map<std::pair<std::string, std::string>, std::string> action_;

    Simplex act_space(int gelt, const Simplex& x) const;
};

// Simplex of the twisted Cartesian product X x_tau F.
struct TwistedSimplex {
    Simplex x;
    FibreElt y;

    friend bool operator==(const TwistedSimplex&, const TwistedSimplex&) = default;
    friend bool operator<(const TwistedSimplex& a, const TwistedSimplex& b) {
        if (!(a.x == b.x)) return a.x < b.x;
        return a.y < b.y;
    }
};

using ChainT = LinComb<TwistedSimplex>;
using ChainTT = LinComb<Ten<TwistedSimplex, TwistedSimplex>>;

// X x_tau F: the Cartesian product of the twist's base with the fibre, except
// that the zeroth face is twisted by tau.
class TwistedProduct {
public:
    TwistedProduct(TwistPtr tau, FibrePtr F);

    const Presentation& base() const { return tau_->domain(); }
    const TwistingFunction& twist() const { return *tau_; }
    TwistPtr twist_ptr() const { return tau_; }
    const Fibre& fibre() const { return *F_; }
    FibrePtr fibre_ptr() const { return F_; }

    int dim(const TwistedSimplex& z) const;
    TwistedSimplex face(int i, const TwistedSimplex& z) const;
    TwistedSimplex degeneracy(int i, const TwistedSimplex& z) const;
    bool degenerate(const TwistedSimplex& z) const;

    ChainT boundary(const TwistedSimplex& z) const;
    ChainT boundary(const ChainT& c) const;
    // Alexander-Whitney diagonal of the total space; the back faces use the
    // twisted zeroth face.
    ChainTT aw_diagonal(const TwistedSimplex& z) const;
    Int augment(const ChainT& c) const;

    std::vector<TwistedSimplex> all(int dim) const;
    std::vector<TwistedSimplex> nondegenerate(int dim) const;

    // Right C(G)-module structure when the fibre is the group itself:
    // mu_* shuffle(c x h) with mu(z, h) = (z.x, z.g h).
    ChainT right_action(const ChainT& c, const ChainG& h) const;

    std::string str(const TwistedSimplex& z) const;

private:
    TwistPtr tau_;
    FibrePtr F_;
};

} // namespace sz
