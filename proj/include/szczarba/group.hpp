#pragma once

#include "szczarba/simplicial.hpp"

#include <map>
#include <memory>

namespace sz {

// Element of a simplicial group at a fixed level.  For a finite discrete group
// the payload is the element index; for a loop group it is a reduced word in
// the loop generators x̄ (x a simplex of the base, never s_0-degenerate).
struct GroupWord {
    int level = 0;
    int felt = -1;                                  // finite case
    std::vector<std::pair<Simplex, int>> letters;   // loop case, exponents ±1

    friend bool operator==(const GroupWord&, const GroupWord&) = default;
    friend bool operator<(const GroupWord& a, const GroupWord& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.felt != b.felt) return a.felt < b.felt;
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        for (size_t i = 0; i < a.letters.size(); ++i) {
            if (a.letters[i].first < b.letters[i].first) return true;
            if (b.letters[i].first < a.letters[i].first) return false;
            if (a.letters[i].second != b.letters[i].second)
                return a.letters[i].second < b.letters[i].second;
        }
        return false;
    }
};

class SimplicialGroup {
public:
    enum class Kind { Finite, Loop };

    static std::shared_ptr<const SimplicialGroup> finite(
        std::vector<std::string> elements,
        const std::map<std::pair<std::string, std::string>, std::string>& table,
        const std::string& unit);
    static std::shared_ptr<const SimplicialGroup> trivial();
    // Kan loop group construction over an arbitrary base presentation.
    // `truncation` bounds enumeration only; evaluation is exact at any level.
    static std::shared_ptr<const SimplicialGroup> loop_group(PresentationPtr base,
                                                             int truncation = 5);

    Kind kind() const { return kind_; }
    const Presentation& base() const { return *base_; }
    PresentationPtr base_ptr() const { return base_; }
    int truncation() const { return truncation_; }
    int order() const { return static_cast<int>(elems_.size()); }  // finite only
    const std::string& element_name(int i) const { return elems_.at(static_cast<size_t>(i)); }
    int element_index(const std::string& name) const;
    int unit_index() const { return unit_; }

    GroupWord unit(int level) const;
    GroupWord felement(const std::string& name, int level = 0) const;
    // Loop generator x̄ for a base simplex x of dimension >= 1 (so level = dim-1);
    // equals the unit when x is s_0-degenerate.
    GroupWord loop_gen(const Simplex& x) const;

    GroupWord mul(const GroupWord& a, const GroupWord& b) const;
    GroupWord inv(const GroupWord& a) const;
    bool is_unit(const GroupWord& a) const;

    GroupWord face(int i, const GroupWord& a) const;
    GroupWord degeneracy(int i, const GroupWord& a) const;
    GroupWord apply(const OperatorWord& w, const GroupWord& a) const;

    // a lies in the image of s_i.
    bool degenerate_at(const GroupWord& a, int i) const;
    bool degenerate(const GroupWord& a) const;

    // Nondegenerate elements of the given level.  Finite groups: level 0 only.
    // Loop groups: reduced words up to the given letter count; levels beyond
    // the truncation are refused.
    std::vector<GroupWord> nondegenerate(int level, int max_letters = 2) const;

    std::string str(const GroupWord& a) const;
    // Loop letters rendered as sigma(vertex word) when the base supports it.
    std::string str_sigma(const GroupWord& a) const;
    GroupWord parse(const std::string& expr, int level = 0) const;

private:
    Kind kind_ = Kind::Finite;
    // finite data
    std::vector<std::string> elems_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    int unit_ = 0;
    // loop data
    PresentationPtr base_;
    int truncation_ = 5;

    GroupWord reduce(int level, std::vector<std::pair<Simplex, int>> letters) const;
};

using GroupPtr = std::shared_ptr<const SimplicialGroup>;

// Twisting function τ: X_n -> G_{n-1}.  Values on nondegenerate generators come
// from a table (or the canonical loop-group formula); degenerate simplices are
// handled by τ(s_0 x) = 1 and τ(s_{k+1} x) = s_k τ(x).
class TwistingFunction {
public:
    enum class Kind { Trivial, Table, CanonicalLoop };

    static std::shared_ptr<const TwistingFunction> trivial(PresentationPtr X, GroupPtr G);
    static std::shared_ptr<const TwistingFunction> table(
        PresentationPtr X, GroupPtr G, std::map<std::string, GroupWord> values);
    // τ(x) = x̄^{-1} on the loop group of X.
    static std::shared_ptr<const TwistingFunction> canonical_loop(PresentationPtr X, GroupPtr G);

    const Presentation& domain() const { return *X_; }
    PresentationPtr domain_ptr() const { return X_; }
    const SimplicialGroup& group() const { return *G_; }
    GroupPtr group_ptr() const { return G_; }
    Kind kind() const { return kind_; }

    GroupWord tau(const Simplex& x) const;
    GroupWord sigma(const Simplex& x) const { return G_->inv(tau(x)); }

    // Checks the twisting identities on every simplex (degenerate included) of
    // dimension <= dim_bound; throws ValidationError with a witness otherwise.
    void validate(int dim_bound) const;

private:
    Kind kind_ = Kind::Trivial;
    PresentationPtr X_;
    GroupPtr G_;
    std::map<std::string, GroupWord> values_;
};

using TwistPtr = std::shared_ptr<const TwistingFunction>;

} // namespace sz
