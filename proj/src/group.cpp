#include "szczarba/group.hpp"

#include <algorithm>
#include <sstream>

namespace sz {

std::shared_ptr<const SimplicialGroup> SimplicialGroup::finite(
    std::vector<std::string> elements,
    const std::map<std::pair<std::string, std::string>, std::string>& table,
    const std::string& unit) {
    auto g = std::make_shared<SimplicialGroup>();
    g->kind_ = Kind::Finite;
    g->elems_ = std::move(elements);
    auto idx = [&](const std::string& n) {
        for (size_t i = 0; i < g->elems_.size(); ++i)
            if (g->elems_[i] == n) return static_cast<int>(i);
        throw ValidationError("unknown group element '" + n + "'");
    };
    g->unit_ = idx(unit);
    size_t m = g->elems_.size();
    g->table_.assign(m, std::vector<int>(m, -1));
    for (auto& [ab, c] : table) g->table_[static_cast<size_t>(idx(ab.first))][static_cast<size_t>(idx(ab.second))] = idx(c);
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            if (g->table_[a][b] < 0)
                throw ValidationError("incomplete multiplication table at " + g->elems_[a] + "." +
                                      g->elems_[b]);
    // group axioms: unit, associativity, inverses
    for (size_t a = 0; a < m; ++a) {
        if (g->table_[static_cast<size_t>(g->unit_)][a] != static_cast<int>(a) ||
            g->table_[a][static_cast<size_t>(g->unit_)] != static_cast<int>(a))
            throw ValidationError("unit axiom fails");
    }
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            for (size_t c = 0; c < m; ++c)
                if (g->table_[static_cast<size_t>(g->table_[a][b])][c] !=
                    g->table_[a][static_cast<size_t>(g->table_[b][c])])
                    throw ValidationError("multiplication table not associative");
    g->inv_.assign(m, -1);
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = 0; b < m; ++b)
            if (g->table_[a][b] == g->unit_ && g->table_[b][a] == g->unit_) g->inv_[a] = static_cast<int>(b);
        if (g->inv_[a] < 0) throw ValidationError("element without inverse: " + g->elems_[a]);
    }
    return g;
}

std::shared_ptr<const SimplicialGroup> SimplicialGroup::trivial() {
    return finite({"1"}, {{{"1", "1"}, "1"}}, "1");
}

std::shared_ptr<const SimplicialGroup> SimplicialGroup::loop_group(PresentationPtr base,
                                                                   int truncation) {
    auto g = std::make_shared<SimplicialGroup>();
    g->kind_ = Kind::Loop;
    g->base_ = std::move(base);
    g->truncation_ = truncation;
    return g;
}

int SimplicialGroup::element_index(const std::string& name) const {
    for (size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i] == name) return static_cast<int>(i);
    throw ParseError("unknown group element '" + name + "'");
}

GroupWord SimplicialGroup::unit(int level) const {
    GroupWord w;
    w.level = level;
    if (kind_ == Kind::Finite) w.felt = unit_;
    return w;
}

GroupWord SimplicialGroup::felement(const std::string& name, int level) const {
    if (kind_ != Kind::Finite) throw Error("felement on a loop group");
    GroupWord w;
    w.level = level;
    w.felt = element_index(name);
    return w;
}

GroupWord SimplicialGroup::reduce(int level, std::vector<std::pair<Simplex, int>> letters) const {
    std::vector<std::pair<Simplex, int>> out;
    for (auto& l : letters) {
        if (l.first.degenerate_at(0)) continue;  // x̄ = 1 for x = s_0 y
        if (!out.empty() && out.back().first == l.first && out.back().second == -l.second)
            out.pop_back();
        else
            out.push_back(l);
    }
    GroupWord w;
    w.level = level;
    w.letters = std::move(out);
    return w;
}

GroupWord SimplicialGroup::loop_gen(const Simplex& x) const {
    if (kind_ != Kind::Loop) throw Error("loop_gen on a finite group");
    if (x.dim() < 1) throw DimensionMismatch("loop generator needs dim >= 1");
    return reduce(x.dim() - 1, {{x, 1}});
}

GroupWord SimplicialGroup::mul(const GroupWord& a, const GroupWord& b) const {
    if (a.level != b.level)
        throw LevelMismatch("product of words at levels " + std::to_string(a.level) + " and " +
                            std::to_string(b.level));
    if (kind_ == Kind::Finite) {
        GroupWord w;
        w.level = a.level;
        w.felt = table_[static_cast<size_t>(a.felt)][static_cast<size_t>(b.felt)];
        return w;
    }
    std::vector<std::pair<Simplex, int>> letters = a.letters;
    letters.insert(letters.end(), b.letters.begin(), b.letters.end());
    return reduce(a.level, std::move(letters));
}

GroupWord SimplicialGroup::inv(const GroupWord& a) const {
    if (kind_ == Kind::Finite) {
        GroupWord w;
        w.level = a.level;
        w.felt = inv_[static_cast<size_t>(a.felt)];
        return w;
    }
    GroupWord w;
    w.level = a.level;
    for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
        w.letters.emplace_back(it->first, -it->second);
    return w;
}

bool SimplicialGroup::is_unit(const GroupWord& a) const {
    return kind_ == Kind::Finite ? a.felt == unit_ : a.letters.empty();
}

GroupWord SimplicialGroup::face(int i, const GroupWord& a) const {
    if (a.level < 1) throw IndexOutOfRange("face of a level-0 group element");
    if (i < 0 || i > a.level) throw IndexOutOfRange("group face index out of range");
    if (kind_ == Kind::Finite) {
        GroupWord w = a;
        w.level -= 1;
        return w;
    }
    GroupWord out = unit(a.level - 1);
    for (auto& [x, e] : a.letters) {
        GroupWord im;
        if (i == 0) {
            // ∂0 x̄ = (∂1 x)‾ · ((∂0 x)‾)^{-1}
            GroupWord p = loop_gen(base_->face(1, x));
            GroupWord q = inv(loop_gen(base_->face(0, x)));
            im = mul(p, q);
        } else {
            im = loop_gen(base_->face(i + 1, x));
        }
        if (e == -1) im = inv(im);
        out = mul(out, im);
    }
    return out;
}

GroupWord SimplicialGroup::degeneracy(int i, const GroupWord& a) const {
    if (i < 0 || i > a.level) throw IndexOutOfRange("group degeneracy index out of range");
    if (kind_ == Kind::Finite) {
        GroupWord w = a;
        w.level += 1;
        return w;
    }
    GroupWord out = unit(a.level + 1);
    for (auto& [x, e] : a.letters) {
        GroupWord im = loop_gen(sz::degeneracy(i + 1, x));
        if (e == -1) im = inv(im);
        out = mul(out, im);
    }
    return out;
}

GroupWord SimplicialGroup::apply(const OperatorWord& w, const GroupWord& a) const {
    GroupWord y = a;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        y = (it->kind == OpLetter::Face) ? face(it->index, y) : degeneracy(it->index, y);
    return y;
}

bool SimplicialGroup::degenerate_at(const GroupWord& a, int i) const {
    if (i < 0 || i >= a.level) return false;
    if (kind_ == Kind::Finite) return a.level >= 1;
    for (auto& [x, e] : a.letters)
        if (!x.degenerate_at(i + 1)) return false;  // s_i image <=> all letters s_{i+1}-degenerate
    return true;
}

bool SimplicialGroup::degenerate(const GroupWord& a) const {
    for (int i = 0; i < a.level; ++i)
        if (degenerate_at(a, i)) return true;
    return false;
}

std::vector<GroupWord> SimplicialGroup::nondegenerate(int level, int max_letters) const {
    std::vector<GroupWord> out;
    if (kind_ == Kind::Finite) {
        if (level == 0)
            for (size_t i = 0; i < elems_.size(); ++i) {
                GroupWord w;
                w.felt = static_cast<int>(i);
                out.push_back(w);
            }
        return out;
    }
    if (level > truncation_)
        throw Unbounded("loop group enumeration beyond truncation " + std::to_string(truncation_));
    // letters: ±x̄ for x of dimension level+1, not s_0-degenerate
    std::vector<std::pair<Simplex, int>> alphabet;
    for (auto& x : base_->all_simplices(level + 1))
        if (!x.degenerate_at(0)) {
            alphabet.emplace_back(x, 1);
            alphabet.emplace_back(x, -1);
        }
    std::vector<std::pair<Simplex, int>> cur;
    auto rec = [&](auto&& self) -> void {
        GroupWord w = reduce(level, cur);
        if (w.letters.size() == cur.size() && !degenerate(w)) out.push_back(w);
        if (static_cast<int>(cur.size()) >= max_letters) return;
        for (auto& l : alphabet) {
            cur.push_back(l);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // the unit at level 0 is the (nondegenerate) basepoint of the group
    if (level > 0)
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [&](const GroupWord& w) { return w.letters.empty(); }),
                  out.end());
    return out;
}

std::string SimplicialGroup::str(const GroupWord& a) const {
    if (kind_ == Kind::Finite) return elems_[static_cast<size_t>(a.felt)];
    if (a.letters.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [x, e] : a.letters) {
        if (!first) os << ' ';
        first = false;
        std::string b = base_->str(x);
        if (b.find(' ') != std::string::npos) b = "(" + b + ")";
        os << b << '~';
        if (e == -1) os << "^-1";
    }
    return os.str();
}

std::string SimplicialGroup::str_sigma(const GroupWord& a) const {
    if (kind_ == Kind::Finite) return elems_[static_cast<size_t>(a.felt)];
    if (a.letters.empty()) return "1";
    std::ostringstream os;
    for (auto& [x, e] : a.letters) {
        os << "\xCF\x83(" << base_->str(x) << ")";  // sigma(x) = x̄
        if (e == -1) os << "^-1";
    }
    return os.str();
}

GroupWord SimplicialGroup::parse(const std::string& expr, int level) const {
    std::string s = expr;
    // trim
    auto trim = [](std::string& t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    trim(s);
    if (kind_ == Kind::Finite) {
        if (s.empty()) throw ParseError("empty group word");
        return felement(s, level);
    }
    if (s == "1") return unit(level);
    // letters: NAME~ | NAME~^-1 | (expr)~ | (expr)~^-1, whitespace separated
    GroupWord out = unit(level);
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        std::string core;
        if (s[i] == '(') {
            size_t j = s.find(')', i);
            if (j == std::string::npos) throw ParseError("unbalanced '(' in '" + expr + "'");
            core = s.substr(i + 1, j - i - 1);
            i = j + 1;
        } else {
            size_t j = i;
            while (j < s.size() && s[j] != '~') ++j;
            core = s.substr(i, j - i);
            i = j;
        }
        if (i >= s.size() || s[i] != '~') throw ParseError("expected '~' in '" + expr + "'");
        ++i;
        int e = 1;
        if (s.compare(i, 3, "^-1") == 0) {
            e = -1;
            i += 3;
        }
        Simplex x = base_->parse_simplex(core);
        if (x.dim() - 1 != level)
            throw LevelMismatch("letter '" + core + "' has level " + std::to_string(x.dim() - 1) +
                                ", expected " + std::to_string(level));
        GroupWord l = loop_gen(x);
        if (e == -1) l = inv(l);
        out = mul(out, l);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const TwistingFunction> TwistingFunction::trivial(PresentationPtr X, GroupPtr G) {
    auto t = std::make_shared<TwistingFunction>();
    t->kind_ = Kind::Trivial;
    t->X_ = std::move(X);
    t->G_ = std::move(G);
    return t;
}

std::shared_ptr<const TwistingFunction> TwistingFunction::table(
    PresentationPtr X, GroupPtr G, std::map<std::string, GroupWord> values) {
    auto t = std::make_shared<TwistingFunction>();
    t->kind_ = Kind::Table;
    t->X_ = std::move(X);
    t->G_ = std::move(G);
    t->values_ = std::move(values);
    for (int d = 1; d <= t->X_->max_dim(); ++d)
        for (int i = 0; i < t->X_->num_gens(d); ++i) {
            auto it = t->values_.find(t->X_->gen_name(GenRef{d, i}));
            if (it == t->values_.end())
                throw ValidationError("twist table misses generator " +
                                      t->X_->gen_name(GenRef{d, i}));
            if (it->second.level != d - 1)
                throw LevelMismatch("twist value for " + it->first + " has wrong level");
        }
    return t;
}

std::shared_ptr<const TwistingFunction> TwistingFunction::canonical_loop(PresentationPtr X,
                                                                         GroupPtr G) {
    if (G->kind() != SimplicialGroup::Kind::Loop || G->base_ptr().get() != X.get())
        throw ValidationError("canonical twist requires the loop group of the same base");
    auto t = std::make_shared<TwistingFunction>();
    t->kind_ = Kind::CanonicalLoop;
    t->X_ = std::move(X);
    t->G_ = std::move(G);
    return t;
}

GroupWord TwistingFunction::tau(const Simplex& x) const {
    if (x.dim() < 1) throw DimensionMismatch("twisting function needs dim >= 1");
    switch (kind_) {
        case Kind::Trivial:
            return G_->unit(x.dim() - 1);
        case Kind::CanonicalLoop:
            return G_->inv(G_->loop_gen(x));  // τ(x) = x̄^{-1}
        case Kind::Table: {
            if (!x.degenerate()) {
                return values_.at(X_->gen_name(x.gen));
            }
            int j = x.degs.front();  // outermost letter
            if (j == 0) return G_->unit(x.dim() - 1);  // whole word is (0): x = s_0 y
            Simplex y = x;
            y.degs.erase(y.degs.begin());
            return G_->degeneracy(j - 1, tau(y));  // τ(s_j y) = s_{j-1} τ(y)
        }
    }
    throw Error("unreachable");
}

void TwistingFunction::validate(int dim_bound) const {
    for (int n = 1; n <= dim_bound; ++n) {
        for (auto& x : X_->all_simplices(n)) {
            GroupWord tx = tau(x);
            if (tx.level != n - 1) throw ValidationError("twist level mismatch");
            if (n >= 2) {
                GroupWord lhs = G_->face(0, tx);
                GroupWord rhs = G_->mul(G_->inv(tau(X_->face(0, x))), tau(X_->face(1, x)));
                if (!(lhs == rhs))
                    throw ValidationError("twisting identity d0 fails on " + X_->str(x));
                for (int k = 1; k < n; ++k)
                    if (!(G_->face(k, tx) == tau(X_->face(k + 1, x))))
                        throw ValidationError("twisting identity d" + std::to_string(k) +
                                              " fails on " + X_->str(x));
            }
            for (int k = 0; k < n; ++k)
                if (!(G_->degeneracy(k, tx) == tau(sz::degeneracy(k + 1, x))))
                    throw ValidationError("twisting identity s" + std::to_string(k) + " fails on " +
                                          X_->str(x));
            if (!G_->is_unit(tau(sz::degeneracy(0, x))))
                throw ValidationError("τ(s_0 x) != 1 on " + X_->str(x));
        }
    }
}

} // namespace sz
