#pragma once

#include "szczarba/basics.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sz {

// Reference to a generator of a presentation: its dimension and its index in
// that dimension's generator list.
struct GenRef {
    int dim = 0;
    int index = 0;
    friend auto operator<=>(const GenRef&, const GenRef&) = default;
};

// A simplex in Eilenberg–Zilber normal form: a strictly decreasing degeneracy
// word applied to a nondegenerate generator.  The word is stored outermost
// letter first, i.e. degs = (j1 > j2 > ... > jr) means s_{j1} s_{j2} ... s_{jr} g.
struct Simplex {
    std::vector<int> degs;
    GenRef gen;

    Simplex() = default;
    explicit Simplex(GenRef g) : gen(g) {}
    Simplex(std::vector<int> w, GenRef g) : degs(std::move(w)), gen(g) {}

    int dim() const { return gen.dim + static_cast<int>(degs.size()); }
    bool degenerate() const { return !degs.empty(); }
    // x lies in the image of s_j  <=>  j occurs in the normal-form word.
    bool degenerate_at(int j) const {
        for (int d : degs)
            if (d == j) return true;
        return false;
    }

    friend bool operator==(const Simplex& a, const Simplex& b) {
        return a.gen == b.gen && a.degs == b.degs;
    }
    // Canonical order: dimension, then word length (nondegenerate first),
    // then generator, then word.
    friend bool operator<(const Simplex& a, const Simplex& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        if (a.degs.size() != b.degs.size()) return a.degs.size() < b.degs.size();
        if (a.gen != b.gen) return a.gen < b.gen;
        return a.degs < b.degs;
    }
};

// s_i x, valid for 0 <= i <= dim x.  Presentation-independent.
Simplex degeneracy(int i, const Simplex& x);

// One letter of a simplicial operator word.
struct OpLetter {
    enum Kind { Face, Degeneracy } kind;
    int index;
    friend bool operator==(const OpLetter&, const OpLetter&) = default;
};

// Composite simplicial operator; letters apply right to left, so
// word = (w0, w1, ..., wk) denotes w0 ∘ w1 ∘ ... ∘ wk.
struct OperatorWord {
    std::vector<OpLetter> letters;

    static OperatorWord identity() { return {}; }
    static OperatorWord face(int i) { return {{{OpLetter::Face, i}}}; }
    static OperatorWord deg(int i) { return {{{OpLetter::Degeneracy, i}}}; }

    // this ∘ rhs
    OperatorWord then_inner(const OperatorWord& rhs) const {
        OperatorWord w = *this;
        w.letters.insert(w.letters.end(), rhs.letters.begin(), rhs.letters.end());
        return w;
    }
    // The derived operator: every index shifted up by one.
    OperatorWord derived() const {
        OperatorWord w = *this;
        for (auto& l : w.letters) ++l.index;
        return w;
    }
    int degree_shift() const {
        int d = 0;
        for (auto& l : letters) d += (l.kind == OpLetter::Degeneracy) ? 1 : -1;
        return d;
    }
    std::string str() const;
    friend bool operator==(const OperatorWord&, const OperatorWord&) = default;
};

class Presentation {
public:
    struct Generator {
        std::string name;
        std::vector<Simplex> faces;  // dim+1 entries for dim >= 1
    };

    const std::string& name() const { return name_; }
    int max_dim() const { return static_cast<int>(gens_.size()) - 1; }
    int num_gens(int dim) const {
        return (dim >= 0 && dim <= max_dim()) ? static_cast<int>(gens_[dim].size()) : 0;
    }
    const std::string& gen_name(GenRef g) const { return gens_.at(g.dim).at(g.index).name; }
    const Simplex& gen_face(GenRef g, int i) const { return gens_.at(g.dim).at(g.index).faces.at(i); }
    std::optional<GenRef> find_gen(const std::string& name) const;
    std::optional<GenRef> basepoint() const { return basepoint_; }

    bool reduced() const { return reduced_; }
    bool one_reduced() const { return one_reduced_; }
    // True when every generator name is a strictly increasing string of digits
    // matching its dimension (standard-simplex style); enables vertex notation.
    bool vertex_notation() const { return vertex_notation_; }

    // ∂_i x, valid for 1 <= dim x and 0 <= i <= dim x.
    Simplex face(int i, const Simplex& x) const;
    Simplex apply(const OperatorWord& w, const Simplex& x) const;
    // x(v0,...,vm) for a weakly increasing vertex list drawn from [0..dim x].
    Simplex sub_simplex(const Simplex& x, const std::vector<int>& verts) const;

    // All simplices of the given dimension, degenerate ones included.
    std::vector<Simplex> all_simplices(int dim) const;
    // The nondegenerate ones, i.e. the generators.
    std::vector<Simplex> nondegenerate(int dim) const;

    std::string str(const Simplex& x) const;
    // Vertex word of x when vertex_notation() holds, e.g. "0113".
    std::string vertex_word(const Simplex& x) const;
    Simplex parse_simplex(const std::string& expr) const;

private:
    friend class PresentationBuilder;
    std::string name_;
    std::vector<std::vector<Generator>> gens_;
    std::optional<GenRef> basepoint_;
    bool reduced_ = false;
    bool one_reduced_ = false;
    bool vertex_notation_ = false;
};

class PresentationBuilder {
public:
    explicit PresentationBuilder(std::string name) { p_.name_ = std::move(name); }

    GenRef add_gen(int dim, const std::string& name);
    void set_face(const std::string& gen, int i, const Simplex& value);
    void set_face(const std::string& gen, int i, const std::string& expr);
    void set_basepoint(const std::string& name);

    // Validates: all faces present and of the right dimension, normal forms
    // well-formed, ∂i∂j = ∂{j-1}∂i on every generator, basepoint sanity.
    std::shared_ptr<const Presentation> build();

private:
    Presentation p_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

} // namespace sz
