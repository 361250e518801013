#include "doctest.h"

#include "szczarba/interval_cuts.hpp"
#include "szczarba/presets.hpp"

#include <algorithm>
#include <set>

using namespace sz;

namespace {

// Independent closed form: sum over the original non-final intervals of
// (q_s - 1) * (number of non-final intervals of the maximal refinement
// strictly before interval s).
int epsilon_closed_form(const IntervalCut& c) {
    int e = 0;
    int before = 0;    // non-final intervals of the refinement seen so far
    for (int s = 1; s <= c.k; ++s) {
        before += c.final_len(s - 1);    // each unit becomes a new interval
        e += (c.q(s) - 1) * before;
        ++before;
    }
    return e & 1;
}

} // namespace

TEST_CASE("cut construction validates boundaries") {
    CHECK_NOTHROW(IntervalCut(3, {0, 0, 1, 3}));
    CHECK_THROWS_AS(IntervalCut(3, {0, 1, 3}), ValidationError);       // odd count
    CHECK_THROWS_AS(IntervalCut(3, {0, 1, 1, 3}), ValidationError);    // empty non-final
    CHECK_THROWS_AS(IntervalCut(3, {0, 2, 1, 3}), ValidationError);    // not monotone
    CHECK_THROWS_AS(IntervalCut(3, {1, 1, 2, 3}), ValidationError);    // p_0 != 0
    CHECK_THROWS_AS(IntervalCut(3, {0, 0, 2, 2}), ValidationError);    // p_last != n

    IntervalCut c(3, {0, 0, 1, 3});
    CHECK(c.k == 1);
    CHECK(c.q(1) == 1);
    CHECK(c.final_len(0) == 0);
    CHECK(c.final_len(1) == 2);
    CHECK(c.ell() == 2);
    CHECK(c.ell1() == 1);
    CHECK(c.str() == "0 -(2)-> 0 -(1)-> 1 -(2)-> 3");
}

TEST_CASE("enumerate_cuts: trivial, small and counted cases") {
    for (int n = 0; n <= 5; ++n) {
        auto cs = enumerate_cuts(n, 0);
        REQUIRE(cs.size() == 1);
        CHECK(cs[0].p == std::vector<int>{0, n});
    }

    auto cs21 = enumerate_cuts(2, 1);
    REQUIRE(cs21.size() == 3);
    std::set<std::pair<int, int>> mids;
    for (auto& c : cs21) mids.insert({c.p[1], c.p[2]});
    CHECK(mids == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});

    // n=4, k=2: oracle is the direct loop over 0<=p1<p2<=p3<p4<=4, which
    // yields 15 (= multichoose(3,4), final intervals may be empty)
    int count = 0;
    for (int p1 = 0; p1 <= 4; ++p1)
        for (int p2 = p1 + 1; p2 <= 4; ++p2)
            for (int p3 = p2; p3 <= 4; ++p3)
                for (int p4 = p3 + 1; p4 <= 4; ++p4) ++count;
    CHECK(count == 15);
    CHECK(enumerate_cuts(4, 2).size() == 15);

    CHECK(enumerate_cuts(2, 3).empty());
    CHECK(enumerate_cuts(0, 1).empty());

    // each cut appears exactly once
    for (int n = 0; n <= 6; ++n) {
        auto all = enumerate_all_cuts(n);
        std::set<IntervalCut> uniq(all.begin(), all.end());
        CHECK(uniq.size() == all.size());
    }
}

TEST_CASE("refine: paper example, step counts, errors") {
    IntervalCut p(3, {0, 0, 1, 3});

    // one split of the length-2 final interval [1,3] admits 2 positions
    CHECK(refinement_steps(p).size() == 2);
    CHECK(refine(p, 1, 1).p == std::vector<int>{0, 0, 1, 1, 2, 3});
    CHECK(refine(p, 1, 2).p == std::vector<int>{0, 0, 1, 2, 3, 3});

    // maximal refinement from the paper: k' = 3, boundaries (0,0,1,1,2,2,3,3)
    IntervalCut hat = maximal_refinement(p);
    CHECK(hat.k == 3);
    CHECK(hat.p == std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3});
    CHECK(hat.ell() == 0);
    CHECK(hat.str() == "0 -(4)-> 0 -(1)-> 1 -(4)-> 1 -(2)-> 2 -(4)-> 2 -(3)-> 3 -(4)-> 3");

    // reached in exactly ell(p) steps of leftmost splitting
    IntervalCut cur = p;
    int steps = 0;
    while (cur.ell() > 0) {
        int m = 0;
        while (cur.final_len(m) == 0) ++m;
        cur = refine(cur, m, cur.p[2 * m]);
        ++steps;
    }
    CHECK(steps == p.ell());
    CHECK(cur == hat);

    // no refinements once ell = 0
    CHECK(refinement_steps(hat).empty());

    CHECK_THROWS_AS(refine(p, 0, 0), InvalidSplit);     // final interval [0,0]
    CHECK_THROWS_AS(refine(p, 1, 3), InvalidSplit);     // q = right endpoint
    CHECK_THROWS_AS(refine(p, 1, 0), InvalidSplit);     // q below the interval
    CHECK_THROWS_AS(refine(p, 2, 1), InvalidSplit);     // no such interval
}

TEST_CASE("epsilon_sign: closed-form cases") {
    // k = 1, both final intervals empty: exponent (1-1)(n-1) = 0
    for (int n = 1; n <= 6; ++n)
        CHECK(epsilon_sign(IntervalCut(n, {0, 0, n, n})) == 1);

    // paper example refines to q-hat = (1,1,1)
    CHECK(epsilon_sign(IntervalCut(3, {0, 0, 1, 3})) == 1);

    // k = 2 cut of [0..4] with q = (2,2): exponent (2-1)(2-1) = 1
    CHECK(epsilon_sign(IntervalCut(4, {0, 0, 2, 2, 4, 4})) == -1);
}

TEST_CASE("epsilon_sign: refinement invariance and closed forms, n <= 7") {
    for (int n = 1; n <= 7; ++n) {
        for (const auto& c : enumerate_all_cuts(n)) {
            int e = epsilon_exponent(c);

            // Lemma 3.3 regression guard
            for (const auto& r : refinement_steps(c))
                CHECK(epsilon_exponent(r) == e);

            // for ell = 0 the Lemma 3.2 formula applies with no refinement
            if (c.ell() == 0) {
                int direct = 0;
                for (int s = 1; s <= c.k; ++s) direct += (s - 1) * (c.q(s) - 1);
                CHECK((direct & 1) == e);
            }

            // equivalent closed form over the original intervals
            CHECK(epsilon_closed_form(c) == e);
        }
    }
}

TEST_CASE("refinement order: unique maximum, 2^ell above, 2^ell1 below") {
    for (int n = 1; n <= 6; ++n) {
        auto all = enumerate_all_cuts(n);
        for (const auto& c : all) {
            size_t above = 0, below = 0, maximal_above = 0;
            for (const auto& d : all) {
                if (refines(d, c)) {
                    ++above;
                    if (d.ell() == 0) {
                        ++maximal_above;
                        CHECK(d == maximal_refinement(c));
                    }
                }
                if (refines(c, d)) ++below;
            }
            CHECK(above == (size_t{1} << c.ell()));
            CHECK(below == (size_t{1} << c.ell1()));
            CHECK(maximal_above == 1);
        }
    }

    // the paper's minimal form below (0,0,1,3) is the trivial k = 0 cut
    IntervalCut p(3, {0, 0, 1, 3});
    CHECK(refines(p, IntervalCut(3, {0, 3})));
    CHECK_FALSE(refines(IntervalCut(3, {0, 3}), p));
}

TEST_CASE("cut_faces on the standard simplex") {
    auto P = presets::delta_full(2);
    Simplex x = P->parse_simplex("012");

    auto trivial = cut_faces(*P, x, IntervalCut(2, {0, 2}));
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0] == x);

    auto f1 = cut_faces(*P, x, IntervalCut(2, {0, 0, 2, 2}));
    REQUIRE(f1.size() == 2);
    CHECK(f1[0] == x);
    CHECK(f1[1] == P->parse_simplex("02"));

    auto f2 = cut_faces(*P, x, IntervalCut(2, {0, 1, 2, 2}));
    REQUIRE(f2.size() == 2);
    CHECK(f2[0] == P->parse_simplex("12"));
    CHECK(f2[1] == x);

    CHECK_THROWS_AS(cut_faces(*P, x, IntervalCut(3, {0, 0, 1, 3})), DimensionMismatch);
}

TEST_CASE("cut_faces: brute-force vertex-list oracle on delta presentations") {
    for (int n = 2; n <= 5; ++n) {
        auto P = presets::delta_full(n);
        std::string top(1, '0');
        for (int v = 1; v <= n; ++v) top += static_cast<char>('0' + v);
        Simplex x = P->parse_simplex(top);

        for (int k = 0; k <= n; ++k) {
            for (const auto& c : enumerate_cuts(n, k)) {
                auto faces = cut_faces(*P, x, c);
                REQUIRE(faces.size() == static_cast<size_t>(k + 1));
                // factor s: the digit string p_{2s-1}..p_{2s}
                for (int s = 1; s <= k; ++s) {
                    std::string want;
                    for (int v = c.p[2 * s - 1]; v <= c.p[2 * s]; ++v)
                        want += static_cast<char>('0' + v);
                    CHECK(P->vertex_word(faces[s - 1]) == want);
                }
                // factor k+1: the final intervals concatenated
                std::string last;
                for (int v : c.final_vertices()) last += static_cast<char>('0' + v);
                CHECK(P->vertex_word(faces[k]) == last);
                CHECK(faces[k].dim() == c.ell() + k);
            }
        }
    }

    // degenerate inputs: the vertex-word oracle still matches letter by letter
    auto P = presets::delta_full(3);
    for (int dim = 2; dim <= 4; ++dim) {
        for (const auto& x : P->all_simplices(dim)) {
            std::string word = P->vertex_word(x);
            for (const auto& c : enumerate_cuts(dim, 1)) {
                auto faces = cut_faces(*P, x, c);
                std::string want;
                for (int v : c.final_vertices()) want += word[static_cast<size_t>(v)];
                CHECK(P->vertex_word(faces[1]) == want);
            }
        }
    }
}

TEST_CASE("suspended_cooperation: vanishing and frozen values") {
    // k = 1 on a 2-simplex of a 1-reduced set: all terms have a degenerate
    // degree-1 factor
    auto S = presets::sphere2();
    Simplex sigma = S->parse_simplex("sigma");
    CHECK(suspended_cooperation(*S, sigma, 1).zero());

    // k > deg x
    auto P3 = presets::delta_full(3);
    Simplex x = P3->parse_simplex("0123");
    CHECK(suspended_cooperation(*P3, x, 4).zero());

    // k = 1 on the top 3-simplex: 6 signed terms (hand-applied Lemma 3.2)
    auto e1 = suspended_cooperation(*P3, x, 1);
    LinComb<std::vector<Simplex>> want;
    auto t = [&](const char* a, const char* b, int sgn) {
        want.add({P3->parse_simplex(a), P3->parse_simplex(b)}, sgn);
    };
    t("01", "0123", 1);
    t("012", "023", 1);
    t("0123", "03", 1);
    t("12", "0123", 1);
    t("123", "013", -1);
    t("23", "0123", 1);
    CHECK(e1 == want);

    // k = 2 on the top 4-simplex: one term per cut (p1<p2<=p3<p4), 15 of them
    auto P4 = presets::delta_full(4);
    Simplex y = P4->parse_simplex("01234");
    auto e2 = suspended_cooperation(*P4, y, 2);
    CHECK(e2.terms.size() == 15);
    auto it = e2.terms.find({P4->parse_simplex("012"), P4->parse_simplex("234"),
                             P4->parse_simplex("024")});
    REQUIRE(it != e2.terms.end());
    CHECK(it->second == -1);
}

TEST_CASE("suspended_cooperation: shape properties") {
    auto P4 = presets::delta_full(4);
    Simplex y = P4->parse_simplex("01234");
    for (int k = 1; k <= 4; ++k) {
        auto ek = suspended_cooperation(*P4, y, k);
        for (const auto& [tuple, coeff] : ek.terms) {
            REQUIRE(tuple.size() == static_cast<size_t>(k + 1));
            int total = 0;
            for (const auto& f : tuple) {
                CHECK_FALSE(f.degenerate());
                CHECK(f.dim() >= 1);
                total += f.dim();
            }
            CHECK(total == 4 + k);      // the cooperation has degree k
            CHECK((coeff == 1 || coeff == -1));
        }
    }

    // no degenerate factor survives on a presentation with collapsed cells
    auto R = presets::rp2();
    for (int dim = 2; dim <= 4; ++dim)
        for (const auto& x : R->all_simplices(dim))
            for (int k = 1; k <= dim; ++k)
                for (const auto& [tuple, coeff] :
                     suspended_cooperation(*R, x, k).terms)
                    for (const auto& f : tuple) CHECK_FALSE(f.degenerate());
}
