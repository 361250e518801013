#include "szczarba/chains.hpp"

namespace sz {

ChainX boundary(const Presentation& P, const Simplex& x) {
    ChainX out;
    int n = x.dim();
    if (n == 0) return out;
    Int s = 1;
    for (int i = 0; i <= n; ++i) {
        Simplex f = P.face(i, x);
        if (!f.degenerate()) out.add(f, s);
        s = -s;
    }
    return out;
}

ChainX boundary(const Presentation& P, const ChainX& c) {
    ChainX out;
    for (auto& [x, k] : c.terms) {
        ChainX b = boundary(P, x);
        b *= k;
        out += b;
    }
    return out;
}

ChainG boundary(const SimplicialGroup& G, const GroupWord& w) {
    ChainG out;
    if (w.level == 0) return out;
    Int s = 1;
    for (int i = 0; i <= w.level; ++i) {
        GroupWord f = G.face(i, w);
        if (!G.degenerate(f)) out.add(f, s);
        s = -s;
    }
    return out;
}

ChainG boundary(const SimplicialGroup& G, const ChainG& c) {
    ChainG out;
    for (auto& [w, k] : c.terms) {
        ChainG b = boundary(G, w);
        b *= k;
        out += b;
    }
    return out;
}

Simplex front_face(const Presentation& P, const Simplex& x, int k) {
    Simplex y = x;
    for (int i = x.dim(); i > k; --i) y = P.face(i, y);
    return y;
}

Simplex back_face(const Presentation& P, const Simplex& x, int k) {
    Simplex y = x;
    for (int i = 0; i < k; ++i) y = P.face(0, y);
    return y;
}

GroupWord front_face(const SimplicialGroup& G, const GroupWord& w, int k) {
    GroupWord y = w;
    for (int i = w.level; i > k; --i) y = G.face(i, y);
    return y;
}

GroupWord back_face(const SimplicialGroup& G, const GroupWord& w, int k) {
    GroupWord y = w;
    for (int i = 0; i < k; ++i) y = G.face(0, y);
    return y;
}

ChainXX aw_diagonal(const Presentation& P, const Simplex& x) {
    ChainXX out;
    int n = x.dim();
    for (int k = 0; k <= n; ++k) {
        Simplex f = front_face(P, x, k);
        Simplex b = back_face(P, x, k);
        if (!f.degenerate() && !b.degenerate()) out.add({f, b}, 1);
    }
    return out;
}

ChainGG aw_diagonal(const SimplicialGroup& G, const GroupWord& w) {
    ChainGG out;
    for (int k = 0; k <= w.level; ++k) {
        GroupWord f = front_face(G, w, k);
        GroupWord b = back_face(G, w, k);
        if (!G.degenerate(f) && !G.degenerate(b)) out.add({f, b}, 1);
    }
    return out;
}

namespace {
// inversions between two increasing integer sequences
long cross_inversions(const std::vector<int>& a, const std::vector<int>& b) {
    long inv = 0;
    for (int u : a)
        for (int v : b)
            if (u > v) ++inv;
    return inv;
}

void pick_blocks(int q, std::vector<int> remaining, const std::vector<int>& sizes, size_t s,
                 std::vector<std::vector<int>>& blocks, std::vector<Shuffle>& out) {
    if (s == sizes.size()) {
        Shuffle sh;
        long inv = 0;
        for (size_t i = 0; i < blocks.size(); ++i)
            for (size_t j = i + 1; j < blocks.size(); ++j) inv += cross_inversions(blocks[i], blocks[j]);
        sh.sign = (inv % 2 == 0) ? 1 : -1;
        // complements
        for (size_t i = 0; i < blocks.size(); ++i) {
            std::vector<int> comp;
            for (int v = 0; v < q; ++v) {
                bool inblock = std::binary_search(blocks[i].begin(), blocks[i].end(), v);
                if (!inblock) comp.push_back(v);
            }
            sh.complements.push_back(std::move(comp));
        }
        out.push_back(std::move(sh));
        return;
    }
    int need = sizes[s];
    // choose `need` elements of remaining, increasing
    std::vector<int> chosen;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (static_cast<int>(chosen.size()) == need) {
            std::vector<int> rest;
            for (int v : remaining)
                if (!std::binary_search(chosen.begin(), chosen.end(), v)) rest.push_back(v);
            blocks.push_back(chosen);
            pick_blocks(q, rest, sizes, s + 1, blocks, out);
            blocks.pop_back();
            return;
        }
        for (size_t i = start; i < remaining.size(); ++i) {
            chosen.push_back(remaining[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
}
} // namespace

std::vector<Shuffle> shuffles(const std::vector<int>& degrees) {
    int q = 0;
    for (int d : degrees) {
        if (d < 0) throw DimensionMismatch("negative degree in shuffle");
        q += d;
    }
    std::vector<int> all(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) all[static_cast<size_t>(i)] = i;
    std::vector<Shuffle> out;
    std::vector<std::vector<int>> blocks;
    pick_blocks(q, all, degrees, 0, blocks, out);
    return out;
}

Simplex apply_sbar(const Simplex& x, const std::vector<int>& J) {
    Simplex y = x;
    for (int j : J) y = degeneracy(j, y);  // ascending: s_{j1} innermost
    return y;
}

GroupWord apply_sbar(const SimplicialGroup& G, const GroupWord& w, const std::vector<int>& J) {
    GroupWord y = w;
    for (int j : J) y = G.degeneracy(j, y);
    return y;
}

ChainG pontryagin(const SimplicialGroup& G, const GroupWord& a, const GroupWord& b) {
    ChainG out;
    for (auto& sh : shuffles({a.level, b.level})) {
        GroupWord u = apply_sbar(G, a, sh.complements[0]);
        GroupWord v = apply_sbar(G, b, sh.complements[1]);
        GroupWord prod = G.mul(u, v);
        if (!G.degenerate(prod)) out.add(prod, sh.sign);
    }
    return out;
}

ChainG pontryagin(const SimplicialGroup& G, const ChainG& a, const ChainG& b) {
    ChainG out;
    for (auto& [x, cx] : a.terms)
        for (auto& [y, cy] : b.terms) {
            ChainG p = pontryagin(G, x, y);
            p *= cx * cy;
            out += p;
        }
    return out;
}

Int augment(const ChainX& c) {
    Int s = 0;
    for (auto& [x, k] : c.terms)
        if (x.dim() == 0) s += k;
    return s;
}

Int augment(const ChainG& c) {
    Int s = 0;
    for (auto& [w, k] : c.terms)
        if (w.level == 0) s += k;
    return s;
}

} // namespace sz
