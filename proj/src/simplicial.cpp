#include "szczarba/simplicial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace sz {

Simplex degeneracy(int i, const Simplex& x) {
    if (i < 0 || i > x.dim())
        throw IndexOutOfRange("degeneracy index " + std::to_string(i) +
                              " out of range for dimension " + std::to_string(x.dim()));
    // Insert s_i into the strictly decreasing word: letters >= i shift up as
    // s_i passes them (s_i s_j = s_{j+1} s_i for i <= j).
    Simplex y = x;
    size_t k = 0;
    while (k < y.degs.size() && i <= y.degs[k]) {
        ++y.degs[k];
        ++k;
    }
    y.degs.insert(y.degs.begin() + static_cast<long>(k), i);
    return y;
}

std::string OperatorWord::str() const {
    if (letters.empty()) return "id";
    std::ostringstream os;
    bool first = true;
    for (auto& l : letters) {
        if (!first) os << ' ';
        first = false;
        os << (l.kind == OpLetter::Face ? "d_" : "s_") << l.index;
    }
    return os.str();
}

std::optional<GenRef> Presentation::find_gen(const std::string& name) const {
    for (int d = 0; d <= max_dim(); ++d)
        for (int i = 0; i < num_gens(d); ++i)
            if (gens_[d][i].name == name) return GenRef{d, i};
    return std::nullopt;
}

Simplex Presentation::face(int i, const Simplex& x) const {
    int n = x.dim();
    if (n < 1) throw IndexOutOfRange("face of a 0-simplex");
    if (i < 0 || i > n)
        throw IndexOutOfRange("face index " + std::to_string(i) +
                              " out of range for dimension " + std::to_string(n));
    // Push ∂_i through the degeneracy word.
    std::vector<int> out;
    size_t k = 0;
    for (; k < x.degs.size(); ++k) {
        int j = x.degs[k];
        if (i < j) {
            out.push_back(j - 1);  // ∂_i s_j = s_{j-1} ∂_i
        } else if (i == j || i == j + 1) {
            // ∂_i s_j = id; the remaining word passes through unchanged.
            out.insert(out.end(), x.degs.begin() + static_cast<long>(k) + 1, x.degs.end());
            return Simplex{std::move(out), x.gen};
        } else {
            out.push_back(j);  // ∂_i s_j = s_j ∂_{i-1}
            --i;
        }
    }
    // The face operator reached the generator.
    const Simplex& f = gen_face(x.gen, i);
    Simplex res = f;
    for (auto it = out.rbegin(); it != out.rend(); ++it) res = degeneracy(*it, res);
    return res;
}

Simplex Presentation::apply(const OperatorWord& w, const Simplex& x) const {
    Simplex y = x;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        y = (it->kind == OpLetter::Face) ? face(it->index, y) : degeneracy(it->index, y);
    return y;
}

Simplex Presentation::sub_simplex(const Simplex& x, const std::vector<int>& verts) const {
    int n = x.dim();
    if (verts.empty()) throw DimensionMismatch("empty vertex list");
    for (size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] > n) throw IndexOutOfRange("vertex out of range");
        if (i > 0 && verts[i] < verts[i - 1]) throw DimensionMismatch("vertex list not monotone");
    }
    // Strictly increasing support first (outer faces, removed top-down so lower
    // indices stay put), then degeneracies for the repeats.
    std::vector<int> support;
    for (int v : verts)
        if (support.empty() || support.back() != v) support.push_back(v);
    Simplex y = x;
    for (int v = n; v >= 0; --v)
        if (!std::binary_search(support.begin(), support.end(), v)) y = face(v, y);
    // Repeats: v_i == v_{i+1} contributes an outer s_i; build from the inside out.
    std::vector<int> dup_positions;
    {
        size_t si = 0;
        for (size_t i = 0; i + 1 < verts.size(); ++i) {
            if (verts[i] == verts[i + 1]) {
                dup_positions.push_back(static_cast<int>(si));
            } else {
                ++si;
            }
        }
    }
    // dup position recorded against the support-index of the left element; an
    // s_p there duplicates that vertex.  Apply from the last to the first so
    // indices refer to the already-expanded list.
    // Recompute by scanning verts directly: whenever verts[i] == verts[i+1],
    // the final result equals s_i (list with position i+1 removed).  Recursing
    // from the left, the operators to apply outermost-first are the positions i
    // in increasing order.
    std::vector<int> ops;
    {
        std::vector<int> v = verts;
        for (size_t i = 0; i + 1 < v.size();) {
            if (v[i] == v[i + 1]) {
                ops.push_back(static_cast<int>(i));
                v.erase(v.begin() + static_cast<long>(i) + 1);
            } else {
                ++i;
            }
        }
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) y = degeneracy(*it, y);
    return y;
}

std::vector<Simplex> Presentation::nondegenerate(int dim) const {
    std::vector<Simplex> out;
    for (int i = 0; i < num_gens(dim); ++i) out.emplace_back(GenRef{dim, i});
    return out;
}

namespace {
void decreasing_words(int top, int len, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (len == 0) {
        out.push_back(cur);
        return;
    }
    // next letter strictly below the previous one, leaving room for len-1 more
    for (int j = top; j >= len - 1; --j) {
        cur.push_back(j);
        decreasing_words(j - 1, len - 1, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Simplex> Presentation::all_simplices(int dim) const {
    std::vector<Simplex> out;
    for (int gd = 0; gd <= std::min(dim, max_dim()); ++gd) {
        int r = dim - gd;
        std::vector<std::vector<int>> words;
        std::vector<int> cur;
        decreasing_words(dim - 1, r, cur, words);
        for (int i = 0; i < num_gens(gd); ++i)
            for (auto& w : words) out.push_back(Simplex{w, GenRef{gd, i}});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Presentation::str(const Simplex& x) const {
    if (vertex_notation_) return vertex_word(x);
    std::ostringstream os;
    for (int j : x.degs) os << "s_" << j << ' ';
    os << gen_name(x.gen);
    return os.str();
}

std::string Presentation::vertex_word(const Simplex& x) const {
    if (!vertex_notation_) throw Error("presentation has no vertex notation");
    const std::string& nm = gen_name(x.gen);
    std::vector<char> verts(nm.begin(), nm.end());
    for (auto it = x.degs.rbegin(); it != x.degs.rend(); ++it)
        verts.insert(verts.begin() + *it, verts[static_cast<size_t>(*it)]);
    return std::string(verts.begin(), verts.end());
}

Simplex Presentation::parse_simplex(const std::string& expr) const {
    std::istringstream is(expr);
    std::vector<int> degs;
    std::string tok;
    std::vector<std::string> toks;
    while (is >> tok) toks.push_back(tok);
    if (toks.empty()) throw ParseError("empty simplex expression");
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t.rfind("s_", 0) != 0) throw ParseError("bad operator '" + t + "' in '" + expr + "'");
        try {
            degs.push_back(std::stoi(t.substr(2)));
        } catch (...) {
            throw ParseError("bad degeneracy index in '" + expr + "'");
        }
    }
    auto g = find_gen(toks.back());
    if (!g) throw ParseError("unknown generator '" + toks.back() + "' in presentation " + name_);
    Simplex x{GenRef{*g}};
    for (auto it = degs.rbegin(); it != degs.rend(); ++it) x = degeneracy(*it, x);
    return x;
}

GenRef PresentationBuilder::add_gen(int dim, const std::string& name) {
    if (dim < 0) throw DimensionMismatch("negative dimension");
    if (p_.find_gen(name)) throw ValidationError("duplicate generator name '" + name + "'");
    if (static_cast<int>(p_.gens_.size()) <= dim) p_.gens_.resize(static_cast<size_t>(dim) + 1);
    p_.gens_[dim].push_back({name, std::vector<Simplex>(static_cast<size_t>(dim) + 1)});
    if (dim >= 1)
        for (auto& f : p_.gens_[dim].back().faces) f.gen = GenRef{-1, -1};  // unset marker
    return GenRef{dim, static_cast<int>(p_.gens_[dim].size()) - 1};
}

void PresentationBuilder::set_face(const std::string& gen, int i, const Simplex& value) {
    auto g = p_.find_gen(gen);
    if (!g) throw ValidationError("unknown generator '" + gen + "'");
    if (g->dim < 1) throw DimensionMismatch("0-simplices have no faces");
    if (i < 0 || i > g->dim) throw IndexOutOfRange("face index out of range");
    p_.gens_[g->dim][static_cast<size_t>(g->index)].faces[static_cast<size_t>(i)] = value;
}

void PresentationBuilder::set_face(const std::string& gen, int i, const std::string& expr) {
    set_face(gen, i, p_.parse_simplex(expr));
}

void PresentationBuilder::set_basepoint(const std::string& name) {
    auto g = p_.find_gen(name);
    if (!g || g->dim != 0) throw ValidationError("basepoint must be an existing 0-generator");
    p_.basepoint_ = *g;
}

std::shared_ptr<const Presentation> PresentationBuilder::build() {
    // face table completeness and welformedness
    for (int d = 1; d <= p_.max_dim(); ++d) {
        for (int i = 0; i < p_.num_gens(d); ++i) {
            const auto& g = p_.gens_[d][static_cast<size_t>(i)];
            for (int k = 0; k <= d; ++k) {
                const Simplex& f = g.faces[static_cast<size_t>(k)];
                if (f.gen.dim < 0)
                    throw ValidationError("missing face " + g.name + "." + std::to_string(k));
                if (f.dim() != d - 1)
                    throw ValidationError("face " + g.name + "." + std::to_string(k) +
                                          " has wrong dimension");
                for (size_t a = 0; a + 1 < f.degs.size(); ++a)
                    if (f.degs[a] <= f.degs[a + 1])
                        throw ValidationError("face value not in normal form");
                if (f.gen.dim > p_.max_dim() || f.gen.index >= p_.num_gens(f.gen.dim))
                    throw ValidationError("face references unknown generator");
            }
        }
    }
    if (!p_.basepoint_ && p_.num_gens(0) == 1) p_.basepoint_ = GenRef{0, 0};
    p_.reduced_ = (p_.num_gens(0) == 1);
    p_.one_reduced_ = p_.reduced_ && (p_.num_gens(1) == 0);
    // vertex notation: every name a strictly increasing digit word of the right length
    p_.vertex_notation_ = p_.num_gens(0) > 0;
    for (int d = 0; d <= p_.max_dim() && p_.vertex_notation_; ++d)
        for (int i = 0; i < p_.num_gens(d); ++i) {
            const std::string& nm = p_.gens_[d][static_cast<size_t>(i)].name;
            bool ok = static_cast<int>(nm.size()) == d + 1;
            for (size_t a = 0; ok && a < nm.size(); ++a) {
                ok = std::isdigit(static_cast<unsigned char>(nm[a])) != 0;
                if (ok && a + 1 < nm.size()) ok = nm[a] < nm[a + 1];
            }
            if (!ok) p_.vertex_notation_ = false;
        }

    auto out = std::make_shared<Presentation>(p_);
    // ∂i ∂j = ∂{j-1} ∂i for i < j, on every generator of dimension >= 2
    for (int d = 2; d <= out->max_dim(); ++d)
        for (int g = 0; g < out->num_gens(d); ++g) {
            Simplex x{GenRef{d, g}};
            for (int j = 1; j <= d; ++j)
                for (int i = 0; i < j; ++i) {
                    Simplex a = out->face(i, out->face(j, x));
                    Simplex b = out->face(j - 1, out->face(i, x));
                    if (!(a == b))
                        throw ValidationError("simplicial identity fails on " +
                                              out->gen_name(x.gen) + " (i=" + std::to_string(i) +
                                              ", j=" + std::to_string(j) + ")");
                }
        }
    return out;
}

} // namespace sz
