#include "szczarba/szczarba.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sz {

IndexSequence::IndexSequence(int n_, std::vector<int> entries_)
    : n(n_), entries(std::move(entries_)) {
    if (n < 0) throw ValidationError("IndexSequence: negative ambient bound");
    if (length() > n) throw ValidationError("IndexSequence: length exceeds ambient bound");
    for (int s = 1; s <= length(); ++s) {
        int e = entries[static_cast<size_t>(s - 1)];
        if (e < 0 || e > n - s)
            throw ValidationError("IndexSequence: entry i_" + std::to_string(s) +
                                  " = " + std::to_string(e) + " out of range in S_{" +
                                  std::to_string(n) + "," + std::to_string(length()) + "}");
    }
}

int IndexSequence::degree() const {
    return std::accumulate(entries.begin(), entries.end(), 0);
}

IndexSequence IndexSequence::tail() const {
    if (entries.empty()) throw ValidationError("tail of the empty index sequence");
    return {n - 1, {entries.begin() + 1, entries.end()}};
}

std::string IndexSequence::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t s = 0; s < entries.size(); ++s) {
        if (s) os << ',';
        os << entries[s];
    }
    os << ')';
    return os.str();
}

std::vector<IndexSequence> S_nl(int n, int l) {
    if (n < 0 || l < 0 || l > n) throw ValidationError("S_nl: need 0 <= l <= n");
    std::vector<IndexSequence> out;
    std::vector<int> cur(static_cast<size_t>(l), 0);
    for (;;) {
        out.push_back(IndexSequence(n, cur));
        int s = l - 1;
        while (s >= 0 && cur[static_cast<size_t>(s)] == n - s - 1) cur[static_cast<size_t>(s--)] = 0;
        if (s < 0) break;
        ++cur[static_cast<size_t>(s)];
    }
    return out;
}

std::vector<IndexSequence> S_n(int n) { return S_nl(n, n); }

OperatorWord d_operator(int k, const IndexSequence& i) {
    if (!i.full()) throw ValidationError("d_operator: index sequence must lie in S_n");
    int n = i.n;
    if (k < 0 || k > n) throw InvalidCase("d_operator: need 0 <= k <= n");
    if (n == 0) return OperatorWord::identity();
    int i1 = i.entries.front();
    IndexSequence rest = i.tail();
    if (k < i1)
        return d_operator(k, rest)
            .derived()
            .then_inner(OperatorWord::deg(0))
            .then_inner(OperatorWord::face(i1 - k));
    if (k == i1) return d_operator(k, rest).derived();
    return d_operator(k - 1, rest).derived().then_inner(OperatorWord::deg(0));
}

GroupWord szczarba_Sz(const TwistingFunction& tf, const IndexSequence& i, const Simplex& x) {
    int n = x.dim();
    if (n < 1) throw DimensionMismatch("Sz: the simplex must have dimension >= 1");
    if (i.n != n - 1 || !i.full())
        throw DimensionMismatch("Sz: index sequence must lie in S_{n-1}");
    const SimplicialGroup& G = tf.group();
    const Presentation& P = tf.domain();
    GroupWord out = G.unit(n - 1);
    Simplex cur = x;
    for (int k = 0; k < n; ++k) {
        out = G.mul(out, G.apply(d_operator(k, i), tf.sigma(cur)));
        if (k < n - 1) cur = P.face(0, cur);
    }
    return out;
}

ChainG szczarba_t(const TwistingFunction& tf, const Simplex& x) {
    int n = x.dim();
    ChainG out;
    if (n == 0) return out;
    const SimplicialGroup& G = tf.group();
    if (n == 1) {
        out.add(tf.sigma(x), 1);
        out.add(G.unit(0), -1);
        return out;
    }
    for (const auto& i : S_n(n - 1)) {
        GroupWord w = szczarba_Sz(tf, i, x);
        if (G.degenerate(w)) continue;
        out.add(w, sign_pow(i.degree()));
    }
    return out;
}

ChainG szczarba_t(const TwistingFunction& tf, const ChainX& c) {
    ChainG out;
    for (const auto& [x, k] : c.terms) {
        ChainG t = szczarba_t(tf, x);
        t *= k;
        out += t;
    }
    return out;
}

Cochain<GroupWord> szczarba_cochain(TwistPtr tf) {
    Cochain<GroupWord> t;
    t.degree = -1;
    t.eval = [tf](const Simplex& x) { return szczarba_t(*tf, x); };
    return t;
}

std::pair<Simplex, GroupWord> szczarba_hatSz(const TwistingFunction& tf,
                                             const IndexSequence& i, const Simplex& x) {
    int n = x.dim();
    if (i.n != n || !i.full())
        throw DimensionMismatch("hatSz: index sequence must lie in S_n");
    const SimplicialGroup& G = tf.group();
    const Presentation& P = tf.domain();
    Simplex bx = P.apply(d_operator(0, i), x);
    GroupWord g = G.unit(n);
    Simplex cur = x;
    for (int k = 1; k <= n; ++k) {
        g = G.mul(g, G.apply(d_operator(k, i), tf.sigma(cur)));
        if (k < n) cur = P.face(0, cur);
    }
    return {bx, g};
}

ChainT psi(const TwistedProduct& T, const Simplex& x, const FibreElt& y) {
    const TwistingFunction& tf = T.twist();
    const Fibre& F = T.fibre();
    const SimplicialGroup& G = tf.group();
    int n = x.dim();
    int m = F.dim(y);
    ChainT out;
    for (const auto& i : S_n(n)) {
        auto [hx, hg] = szczarba_hatSz(tf, i, x);
        Int sgn = sign_pow(i.degree());
        for (const auto& sh : shuffles({n, m})) {
            TwistedSimplex z{apply_sbar(hx, sh.complements[0]),
                             F.act(apply_sbar(G, hg, sh.complements[0]),
                                   F.apply_sbar(y, sh.complements[1]))};
            if (T.degenerate(z)) continue;
            out.add(z, sgn * sh.sign);
        }
    }
    return out;
}

ChainT psi(const TwistedProduct& T, const LinComb<Ten<Simplex, FibreElt>>& c) {
    ChainT out;
    for (const auto& [xy, k] : c.terms) {
        ChainT p = psi(T, xy.a, xy.b);
        p *= k;
        out += p;
    }
    return out;
}

namespace {

// Applies the face word of eq. def-Snl to the vertex list [0..N], recording the
// vertex removed at each step; returns the surviving list.
std::vector<int> run_removals(int N, const IndexSequence& i, std::vector<int>* removed) {
    std::vector<int> cur(static_cast<size_t>(N + 1));
    std::iota(cur.begin(), cur.end(), 0);
    for (int q = 1; q <= i.length(); ++q) {
        int pos = i.entries[static_cast<size_t>(q - 1)] + 1;
        if (removed) removed->push_back(cur[static_cast<size_t>(pos)]);
        cur.erase(cur.begin() + pos);
    }
    return cur;
}

void validate_p(const std::vector<int>& p) {
    if (p.size() < 2 || p.front() != 0)
        throw ValidationError("Psi_p: p must start at 0 and have at least two entries");
    for (size_t s = 1; s < p.size(); ++s)
        if (p[s] <= p[s - 1]) throw ValidationError("Psi_p: p must be strictly increasing");
}

} // namespace

int ShuffleDecomposition::alpha_sign_exponent() const {
    int inv = 0;
    for (size_t s = 0; s < alpha.size(); ++s)
        for (size_t t = s + 1; t < alpha.size(); ++t)
            for (int a : alpha[s])
                for (int b : alpha[t])
                    if (a > b) ++inv;
    return inv;
}

ShuffleDecomposition Psi_p(const std::vector<int>& p, const IndexSequence& i) {
    validate_p(p);
    int N = p.back();
    int k = static_cast<int>(p.size()) - 1;
    int l = N - k;
    if (i.n != N - 1 || i.length() != l)
        throw NotInSnp("Psi_p: index sequence does not lie in S_{" + std::to_string(N - 1) +
                       "," + std::to_string(l) + "}");
    std::vector<int> removed;
    if (run_removals(N, i, &removed) != p)
        throw NotInSnp("Psi_p: face word of " + i.str() + " does not produce p");

    std::vector<std::vector<int>> sub(static_cast<size_t>(k));
    for (int s = 0; s < k; ++s)
        for (int v = p[static_cast<size_t>(s)]; v <= p[static_cast<size_t>(s + 1)]; ++v)
            sub[static_cast<size_t>(s)].push_back(v);

    ShuffleDecomposition d;
    d.alpha.assign(static_cast<size_t>(k), {});
    std::vector<std::vector<int>> jent(static_cast<size_t>(k));
    for (int q = 1; q <= l; ++q) {
        int e = removed[static_cast<size_t>(q - 1)];
        int s = 0;
        while (!(p[static_cast<size_t>(s)] < e && e < p[static_cast<size_t>(s + 1)])) ++s;
        d.alpha[static_cast<size_t>(s)].push_back(q - 1);
        auto& lst = sub[static_cast<size_t>(s)];
        auto pos = std::find(lst.begin(), lst.end(), e) - lst.begin();
        jent[static_cast<size_t>(s)].push_back(static_cast<int>(pos) - 1);
        lst.erase(lst.begin() + pos);
    }
    for (int s = 0; s < k; ++s)
        d.j.push_back(IndexSequence(p[static_cast<size_t>(s + 1)] - p[static_cast<size_t>(s)] - 1,
                                    jent[static_cast<size_t>(s)]));
    return d;
}

IndexSequence inverse_Psi_p(const std::vector<int>& p, const ShuffleDecomposition& d) {
    validate_p(p);
    int N = p.back();
    int k = static_cast<int>(p.size()) - 1;
    int l = N - k;
    if (static_cast<int>(d.alpha.size()) != k || static_cast<int>(d.j.size()) != k)
        throw ValidationError("inverse_Psi_p: decomposition has the wrong number of blocks");

    std::vector<int> owner(static_cast<size_t>(l), -1);
    for (int s = 0; s < k; ++s) {
        int qs = p[static_cast<size_t>(s + 1)] - p[static_cast<size_t>(s)];
        if (static_cast<int>(d.alpha[static_cast<size_t>(s)].size()) != qs - 1 ||
            d.j[static_cast<size_t>(s)].n != qs - 1 || !d.j[static_cast<size_t>(s)].full())
            throw ValidationError("inverse_Psi_p: block " + std::to_string(s + 1) +
                                  " does not match the interval lengths");
        for (int a : d.alpha[static_cast<size_t>(s)]) {
            if (a < 0 || a >= l || owner[static_cast<size_t>(a)] != -1)
                throw ValidationError("inverse_Psi_p: alpha is not a partition of [0..l-1]");
            owner[static_cast<size_t>(a)] = s;
        }
    }

    std::vector<int> cur(static_cast<size_t>(N + 1));
    std::iota(cur.begin(), cur.end(), 0);
    std::vector<std::vector<int>> sub(static_cast<size_t>(k));
    for (int s = 0; s < k; ++s)
        for (int v = p[static_cast<size_t>(s)]; v <= p[static_cast<size_t>(s + 1)]; ++v)
            sub[static_cast<size_t>(s)].push_back(v);

    std::vector<int> taken(static_cast<size_t>(k), 0);
    std::vector<int> entries;
    for (int q = 1; q <= l; ++q) {
        int s = owner[static_cast<size_t>(q - 1)];
        auto& lst = sub[static_cast<size_t>(s)];
        int pos = d.j[static_cast<size_t>(s)].entries[static_cast<size_t>(taken[static_cast<size_t>(s)]++)] + 1;
        int e = lst[static_cast<size_t>(pos)];
        auto gpos = std::find(cur.begin(), cur.end(), e) - cur.begin();
        entries.push_back(static_cast<int>(gpos) - 1);
        cur.erase(cur.begin() + gpos);
        lst.erase(lst.begin() + pos);
    }
    return IndexSequence(N - 1, std::move(entries));
}

std::vector<IndexSequence> S_of_p(const std::vector<int>& p) {
    validate_p(p);
    int N = p.back();
    int l = N - (static_cast<int>(p.size()) - 1);
    std::vector<IndexSequence> out;
    for (const auto& i : S_nl(N - 1, l))
        if (run_removals(N, i, nullptr) == p) out.push_back(i);
    return out;
}

std::pair<IndexSequence, int> Phi(const IndexSequence& i, int p) {
    if (!i.full() || i.n < 1) throw ValidationError("Phi: index sequence must lie in S_n, n >= 1");
    if (p < 0 || p > i.n) throw ValidationError("Phi: p out of range");
    int i1 = i.entries.front();
    IndexSequence rest = i.tail();
    if (p == i1 || p == i1 + 1) return {rest, 0};
    if (p < i1) {
        auto [j, q] = Phi(rest, p);
        std::vector<int> es{i1 - 1};
        es.insert(es.end(), j.entries.begin(), j.entries.end());
        return {IndexSequence(i.n - 1, std::move(es)), q + 1};
    }
    auto [j, q] = Phi(rest, p - 1);
    std::vector<int> es{i1};
    es.insert(es.end(), j.entries.begin(), j.entries.end());
    return {IndexSequence(i.n - 1, std::move(es)), q + 1};
}

} // namespace sz
