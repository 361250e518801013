#include "szczarba/interval_cuts.hpp"

#include <algorithm>
#include <sstream>

namespace sz {

namespace {

void validate(const IntervalCut& c) {
    if (c.p.size() != static_cast<size_t>(2 * c.k + 2))
        throw ValidationError("cut has " + std::to_string(c.p.size()) +
                              " boundaries, expected " + std::to_string(2 * c.k + 2));
    if (c.p.front() != 0 || c.p.back() != c.n)
        throw ValidationError("cut boundaries must start at 0 and end at n");
    for (size_t i = 0; i + 1 < c.p.size(); ++i)
        if (c.p[i] > c.p[i + 1])
            throw ValidationError("cut boundaries must be non-decreasing");
    for (int s = 1; s <= c.k; ++s)
        if (c.q(s) < 1)
            throw ValidationError("non-final interval " + std::to_string(s) +
                                  " has length 0");
}

} // namespace

IntervalCut::IntervalCut(int n_, std::vector<int> p_) : n(n_), p(std::move(p_)) {
    if (p.size() < 2 || p.size() % 2 != 0)
        throw ValidationError("cut needs an even number (>= 2) of boundaries");
    k = static_cast<int>(p.size()) / 2 - 1;
    validate(*this);
}

int IntervalCut::q(int s) const {
    if (s < 1 || s > k) throw IndexOutOfRange("non-final interval index");
    return p[2 * s] - p[2 * s - 1];
}

int IntervalCut::final_len(int m) const {
    if (m < 0 || m > k) throw IndexOutOfRange("final interval index");
    return p[2 * m + 1] - p[2 * m];
}

int IntervalCut::ell() const {
    int total = 0;
    for (int m = 0; m <= k; ++m) total += final_len(m);
    return total;
}

int IntervalCut::ell1() const {
    int count = 0;
    for (int s = 1; s <= k; ++s)
        if (q(s) == 1) ++count;
    return count;
}

std::vector<int> IntervalCut::final_vertices() const {
    std::vector<int> verts;
    for (int m = 0; m <= k; ++m)
        for (int v = p[2 * m]; v <= p[2 * m + 1]; ++v)
            verts.push_back(v);
    return verts;    // strictly increasing: p_{2m+1} < p_{2m+2}
}

std::string IntervalCut::str() const {
    std::ostringstream os;
    os << p[0];
    for (int i = 1; i < 2 * k + 2; ++i) {
        int label = (i % 2 == 1) ? k + 1 : i / 2;
        os << " -(" << label << ")-> " << p[i];
    }
    return os.str();
}

bool IntervalCut::operator<(const IntervalCut& rhs) const {
    if (n != rhs.n) return n < rhs.n;
    if (k != rhs.k) return k < rhs.k;
    return p < rhs.p;
}

std::vector<IntervalCut> enumerate_cuts(int n, int k) {
    if (n < 0 || k < 0) throw IndexOutOfRange("enumerate_cuts");
    std::vector<IntervalCut> out;
    std::vector<int> p(2 * k + 2, 0);
    p.back() = n;
    // choose p_1 .. p_2k; p_{2s} >= p_{2s-1} + 1, p_{2s+1} >= p_{2s}
    auto rec = [&](auto&& self, int i) -> void {
        if (i == 2 * k + 1) {
            out.emplace_back(n, p);
            return;
        }
        int lo = (i % 2 == 0) ? p[i - 1] + 1 : p[i - 1];  // even index ends a non-final interval
        for (int v = lo; v <= n; ++v) {
            p[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<IntervalCut> enumerate_all_cuts(int n) {
    std::vector<IntervalCut> out;
    for (int k = 0; k <= n; ++k) {
        auto cs = enumerate_cuts(n, k);
        out.insert(out.end(), cs.begin(), cs.end());
    }
    return out;
}

IntervalCut refine(const IntervalCut& c, int m, int q) {
    if (m < 0 || m > c.k) throw InvalidSplit("final interval index out of range");
    if (c.final_len(m) < 1) throw InvalidSplit("final interval has length 0");
    if (q < c.p[2 * m] || q >= c.p[2 * m + 1])
        throw InvalidSplit("split position outside the final interval");
    std::vector<int> p2 = c.p;
    p2.insert(p2.begin() + 2 * m + 1, {q, q + 1});
    return IntervalCut(c.n, std::move(p2));
}

IntervalCut maximal_refinement(const IntervalCut& c) {
    std::vector<int> p2;
    p2.push_back(0);
    for (int m = 0; m <= c.k; ++m) {
        // final interval [a, b], shredded into (a a+1)(a+1 a+2)...(b-1 b)
        for (int v = c.p[2 * m]; v < c.p[2 * m + 1]; ++v) {
            p2.push_back(v);
            p2.push_back(v + 1);
        }
        p2.push_back(c.p[2 * m + 1]);
        if (m < c.k) p2.push_back(c.p[2 * m + 2]);
    }
    return IntervalCut(c.n, std::move(p2));
}

std::vector<IntervalCut> refinement_steps(const IntervalCut& c) {
    std::vector<IntervalCut> out;
    for (int m = 0; m <= c.k; ++m)
        for (int q = c.p[2 * m]; q < c.p[2 * m + 1]; ++q)
            out.push_back(refine(c, m, q));
    return out;
}

bool refines(const IntervalCut& b, const IntervalCut& a) {
    if (b.n != a.n || b.k < a.k) return false;
    // non-final intervals as (start, end) pairs, in order
    auto nonfinal = [](const IntervalCut& c) {
        std::vector<std::pair<int, int>> iv;
        for (int s = 1; s <= c.k; ++s)
            iv.emplace_back(c.p[2 * s - 1], c.p[2 * s]);
        return iv;
    };
    auto ia = nonfinal(a), ib = nonfinal(b);
    // every interval of a must appear in b; extras must be length-1 splits
    // of a final interval of a
    size_t j = 0;
    for (auto& iv : ib) {
        if (j < ia.size() && iv == ia[j]) {
            ++j;
            continue;
        }
        if (iv.second != iv.first + 1) return false;
        bool inside = false;
        for (int m = 0; m <= a.k; ++m)
            if (a.p[2 * m] <= iv.first && iv.second <= a.p[2 * m + 1]) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return j == ia.size();
}

int epsilon_exponent(const IntervalCut& c) {
    IntervalCut hat = maximal_refinement(c);
    int e = 0;
    for (int s = 1; s <= hat.k; ++s) e += (s - 1) * (hat.q(s) - 1);
    return e & 1;
}

int epsilon_sign(const IntervalCut& c) { return epsilon_exponent(c) ? -1 : 1; }

std::vector<Simplex> cut_faces(const Presentation& P, const Simplex& x,
                               const IntervalCut& c) {
    if (x.dim() != c.n)
        throw DimensionMismatch("cut_faces: simplex of dimension " +
                                std::to_string(x.dim()) + " vs cut of [0.." +
                                std::to_string(c.n) + "]");
    std::vector<Simplex> out;
    for (int s = 1; s <= c.k; ++s) {
        std::vector<int> verts;
        for (int v = c.p[2 * s - 1]; v <= c.p[2 * s]; ++v) verts.push_back(v);
        out.push_back(P.sub_simplex(x, verts));
    }
    out.push_back(P.sub_simplex(x, c.final_vertices()));
    return out;
}

LinComb<std::vector<Simplex>> suspended_cooperation(const Presentation& P,
                                                    const Simplex& x, int k) {
    if (k < 1) throw IndexOutOfRange("suspended_cooperation needs k >= 1");
    LinComb<std::vector<Simplex>> out;
    for (const auto& c : enumerate_cuts(x.dim(), k)) {
        auto faces = cut_faces(P, x, c);
        bool degen = false;
        for (const auto& f : faces)
            if (f.degenerate()) {
                degen = true;
                break;
            }
        if (degen) continue;
        out.add(std::move(faces), epsilon_sign(c));
    }
    return out;
}

} // namespace sz
