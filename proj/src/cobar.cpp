#include "szczarba/cobar.hpp"

#include <algorithm>
#include <sstream>

namespace sz {

CobarWord::CobarWord(std::vector<Simplex> ls) : letters(std::move(ls)) {
    for (const auto& c : letters) {
        if (c.dim() < 1)
            throw ValidationError("cobar letter of dimension 0");
        if (c.degenerate())
            throw ValidationError("degenerate cobar letter");
    }
}

int CobarWord::degree() const {
    int d = 0;
    for (const auto& c : letters) d += c.dim() - 1;
    return d;
}

std::string CobarWord::str(const Presentation& P) const {
    if (letters.empty()) return "1";
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << '|';
        os << P.str(letters[i]);
    }
    os << ']';
    return os.str();
}

bool CobarWord::operator<(const CobarWord& rhs) const {
    return std::lexicographical_compare(letters.begin(), letters.end(),
                                        rhs.letters.begin(), rhs.letters.end());
}

ChainOmega cobar_one() { return ChainOmega::single(CobarWord{}); }

CobarWord cobar_product(const CobarWord& a, const CobarWord& b) {
    CobarWord out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

ChainOmega cobar_product(const ChainOmega& a, const ChainOmega& b) {
    ChainOmega out;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms)
            out.add(cobar_product(wa, wb), ca * cb);
    return out;
}

TenOmegaOmega ten_product(const TenOmegaOmega& a, const TenOmegaOmega& b) {
    TenOmegaOmega out;
    for (const auto& [ta, ca] : a.terms)
        for (const auto& [tb, cb] : b.terms) {
            Int sign = (ta.b.degree() % 2 != 0 && tb.a.degree() % 2 != 0) ? -1 : 1;
            out.add({cobar_product(ta.a, tb.a), cobar_product(ta.b, tb.b)},
                    ca * cb * sign);
        }
    return out;
}

namespace {

// d on a single letter: -[∂c] + Σ_{0<j<n} (-1)^j [c(0..j)|c(j..n)]
ChainOmega letter_differential(const Presentation& P, const Simplex& c) {
    ChainOmega out;
    int n = c.dim();
    for (const auto& [f, coeff] : boundary(P, c).terms)
        out.add(CobarWord{{f}}, -coeff);
    for (int j = 1; j < n; ++j) {
        Simplex a = front_face(P, c, j);
        if (a.degenerate()) continue;
        Simplex b = back_face(P, c, j);
        if (b.degenerate()) continue;
        out.add(CobarWord{{a, b}}, j % 2 == 0 ? 1 : -1);
    }
    return out;
}

} // namespace

ChainOmega cobar_differential(const Presentation& P, const CobarWord& w) {
    if (!P.reduced())
        throw NotReduced("the cobar differential needs a reduced presentation");
    ChainOmega out;
    int prefix = 0;     // degree of [c_1|...|c_{i-1}]
    for (size_t i = 0; i < w.letters.size(); ++i) {
        CobarWord pre{{w.letters.begin(), w.letters.begin() + i}};
        CobarWord post{{w.letters.begin() + i + 1, w.letters.end()}};
        ChainOmega mid = letter_differential(P, w.letters[i]);
        Int sign = prefix % 2 == 0 ? 1 : -1;
        for (const auto& [m, coeff] : mid.terms)
            out.add(cobar_product(cobar_product(pre, m), post), coeff * sign);
        prefix += w.letters[i].dim() - 1;
    }
    return out;
}

ChainOmega cobar_differential(const Presentation& P, const ChainOmega& c) {
    ChainOmega out;
    for (const auto& [w, coeff] : c.terms) out += cobar_differential(P, w) * coeff;
    return out;
}

namespace {

// Δ [x] for a single letter
TenOmegaOmega letter_diagonal(const Presentation& P, const Simplex& x) {
    TenOmegaOmega out;
    out.add({CobarWord{{x}}, CobarWord{}}, 1);              // [x] ⊗ 1
    out.add({CobarWord{}, CobarWord{{x}}}, 1);              // k = 0 cut
    int n = x.dim();
    for (int k = 1; k <= n; ++k) {
        for (const auto& c : enumerate_cuts(n, k)) {
            auto faces = cut_faces(P, x, c);
            bool degen = false;
            for (const auto& f : faces)
                if (f.degenerate()) {
                    degen = true;
                    break;
                }
            if (degen) continue;
            CobarWord left{{faces.begin(), faces.end() - 1}};
            CobarWord right{{faces.back()}};
            out.add({std::move(left), std::move(right)}, epsilon_sign(c));
        }
    }
    return out;
}

} // namespace

TenOmegaOmega cobar_diagonal(const Presentation& P, const CobarWord& w) {
    TenOmegaOmega out;
    out.add({CobarWord{}, CobarWord{}}, 1);
    for (const auto& x : w.letters) out = ten_product(out, letter_diagonal(P, x));
    return out;
}

TenOmegaOmega cobar_diagonal(const Presentation& P, const ChainOmega& c) {
    TenOmegaOmega out;
    for (const auto& [w, coeff] : c.terms) out += cobar_diagonal(P, w) * coeff;
    return out;
}

Int cobar_counit(const ChainOmega& c) {
    auto it = c.terms.find(CobarWord{});
    return it == c.terms.end() ? Int(0) : it->second;
}

namespace {

// signature of the "shuffle" ({1..n-1}∖b, b): pairs (a, c) with a in the
// complement, c in b and a > c
int baues_sign(int n, const std::vector<int>& b) {
    long inv = 0;
    for (int v = 1; v <= n - 1; ++v) {
        if (std::binary_search(b.begin(), b.end(), v)) continue;
        inv += std::count_if(b.begin(), b.end(), [v](int c) { return c < v; });
    }
    return inv % 2 == 0 ? 1 : -1;
}

TenOmegaOmega baues_letter(const Presentation& P, const Simplex& x) {
    TenOmegaOmega out;
    out.add({CobarWord{{x}}, CobarWord{}}, 1);
    int n = x.dim();
    // subsets b of {1..n-1}
    int m = n - 1;
    for (long mask = 0; mask < (1L << std::max(m, 0)); ++mask) {
        std::vector<int> b;
        for (int i = 0; i < m; ++i)
            if (mask & (1L << i)) b.push_back(i + 1);
        std::vector<int> V{0};
        V.insert(V.end(), b.begin(), b.end());
        V.push_back(n);
        // gap letters: consecutive V entries at distance >= 2
        std::vector<Simplex> letters;
        bool degen = false;
        for (size_t i = 0; i + 1 < V.size(); ++i) {
            if (V[i + 1] - V[i] < 2) continue;
            std::vector<int> verts;
            for (int v = V[i]; v <= V[i + 1]; ++v) verts.push_back(v);
            Simplex g = P.sub_simplex(x, verts);
            if (g.degenerate()) {
                degen = true;
                break;
            }
            letters.push_back(std::move(g));
        }
        if (degen) continue;
        Simplex rest = P.sub_simplex(x, V);
        if (rest.degenerate()) continue;
        out.add({CobarWord{std::move(letters)}, CobarWord{{std::move(rest)}}},
                baues_sign(n, b));
    }
    return out;
}

} // namespace

TenOmegaOmega baues_diagonal(const Presentation& P, const CobarWord& w) {
    if (!P.one_reduced())
        throw NotOneReduced("Baues' diagonal needs a 1-reduced presentation");
    TenOmegaOmega out;
    out.add({CobarWord{}, CobarWord{}}, 1);
    for (const auto& x : w.letters) out = ten_product(out, baues_letter(P, x));
    return out;
}

TenOmegaOmega baues_diagonal(const Presentation& P, const ChainOmega& c) {
    TenOmegaOmega out;
    for (const auto& [w, coeff] : c.terms) out += baues_diagonal(P, w) * coeff;
    return out;
}

TenOmegaX frak_E(const Presentation& P, const Simplex& x) {
    TenOmegaX out;
    if (x.degenerate()) return out;
    out.add({CobarWord{}, x}, 1);
    int n = x.dim();
    for (int k = 1; k <= n; ++k) {
        for (const auto& [tuple, coeff] : suspended_cooperation(P, x, k).terms) {
            CobarWord left{{tuple.begin(), tuple.end() - 1}};
            Int sign = left.degree() % 2 == 0 ? coeff : -coeff;
            out.add({std::move(left), tuple.back()}, sign);
        }
    }
    return out;
}

DgaOps<CobarWord> cobar_ops(PresentationPtr P) {
    DgaOps<CobarWord> ops;
    ops.mul = [](const ChainOmega& a, const ChainOmega& b) {
        return cobar_product(a, b);
    };
    ops.diff = [P](const ChainOmega& c) { return cobar_differential(*P, c); };
    ops.aug = [](const ChainOmega& c) { return cobar_counit(c); };
    ops.one = cobar_one();
    return ops;
}

DgaOps<GroupWord> group_ops(GroupPtr G) {
    DgaOps<GroupWord> ops;
    ops.mul = [G](const ChainG& a, const ChainG& b) { return pontryagin(*G, a, b); };
    ops.diff = [G](const ChainG& c) { return boundary(*G, c); };
    ops.aug = [](const ChainG& c) { return augment(c); };
    ops.one = ChainG::single(G->unit(0));
    return ops;
}

Cochain<CobarWord> canonical_tc() {
    Cochain<CobarWord> t;
    t.degree = -1;
    t.eval = [](const Simplex& x) -> ChainOmega {
        if (x.dim() < 1 || x.degenerate()) return {};
        return ChainOmega::single(CobarWord{{x}});
    };
    return t;
}

} // namespace sz
