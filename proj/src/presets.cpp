#include "szczarba/presets.hpp"

#include <random>
#include <string>
#include <vector>

namespace sz::presets {

namespace {

std::string subset_name(const std::vector<int>& s) {
    std::string nm;
    for (int v : s) nm += static_cast<char>('0' + v);
    return nm;
}

// all (k+1)-subsets of [0..n] in lexicographic order
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, int need) -> void {
        if (need == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n - need + 1; ++v) {
            cur.push_back(v);
            self(self, v + 1, need - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, k + 1);
    return out;
}

} // namespace

PresentationPtr circle() {
    PresentationBuilder b("circle");
    b.add_gen(0, "pt");
    b.add_gen(1, "e");
    b.set_face("e", 0, "pt");
    b.set_face("e", 1, "pt");
    b.set_basepoint("pt");
    return b.build();
}

PresentationPtr sphere2() {
    PresentationBuilder b("sphere2");
    b.add_gen(0, "pt");
    b.add_gen(2, "sigma");
    for (int i = 0; i <= 2; ++i) b.set_face("sigma", i, "s_0 pt");
    b.set_basepoint("pt");
    return b.build();
}

PresentationPtr rp2() {
    PresentationBuilder b("rp2");
    b.add_gen(0, "pt");
    b.add_gen(1, "a");
    b.add_gen(2, "c");
    b.set_face("a", 0, "pt");
    b.set_face("a", 1, "pt");
    b.set_face("c", 0, "a");
    b.set_face("c", 1, "s_0 pt");
    b.set_face("c", 2, "a");
    b.set_basepoint("pt");
    return b.build();
}

PresentationPtr delta_full(int n) {
    if (n < 0) throw DimensionMismatch("delta_full needs n >= 0");
    PresentationBuilder b("delta" + std::to_string(n));
    for (int d = 0; d <= n; ++d)
        for (auto& s : subsets(n, d)) b.add_gen(d, subset_name(s));
    for (int d = 1; d <= n; ++d)
        for (auto& s : subsets(n, d))
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + i);
                b.set_face(subset_name(s), i, subset_name(f));
            }
    b.set_basepoint("0");
    return b.build();
}

PresentationPtr delta_collapsed(int n) {
    if (n < 2) throw DimensionMismatch("delta_collapsed needs n >= 2");
    PresentationBuilder b("cdelta" + std::to_string(n));
    b.add_gen(0, "pt");
    for (int d = 2; d <= n; ++d)
        for (auto& s : subsets(n, d)) b.add_gen(d, subset_name(s));
    for (int d = 2; d <= n; ++d)
        for (auto& s : subsets(n, d))
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + i);
                if (d == 2) {
                    b.set_face(subset_name(s), i, "s_0 pt");
                } else {
                    b.set_face(subset_name(s), i, subset_name(f));
                }
            }
    b.set_basepoint("pt");
    return b.build();
}

PresentationPtr random_one_reduced(unsigned seed, int n2, int n3) {
    std::mt19937 rng(seed);
    PresentationBuilder b("rand1red_" + std::to_string(seed));
    b.add_gen(0, "pt");
    for (int i = 0; i < n2; ++i) {
        std::string nm = "u" + std::to_string(i);
        b.add_gen(2, nm);
        for (int k = 0; k <= 2; ++k) b.set_face(nm, k, "s_0 pt");
    }
    // dimension-1 values are all s_0 pt, so any assignment of 2-dimensional
    // faces satisfies the simplicial identities
    std::uniform_int_distribution<int> pick(0, n2);  // n2 means the degenerate one
    for (int i = 0; i < n3; ++i) {
        std::string nm = "w" + std::to_string(i);
        b.add_gen(3, nm);
        for (int k = 0; k <= 3; ++k) {
            int c = pick(rng);
            if (c == n2)
                b.set_face(nm, k, "s_1 s_0 pt");
            else
                b.set_face(nm, k, "u" + std::to_string(c));
        }
    }
    b.set_basepoint("pt");
    return b.build();
}

} // namespace sz::presets
