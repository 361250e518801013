#include "doctest.h"

#include "szczarba/homology_ss.hpp"
#include "szczarba/presets.hpp"

#include <string>
#include <vector>

using namespace sz;

namespace {

GroupPtr z2() {
    return SimplicialGroup::finite(
        {"1", "g"},
        {{{"1", "1"}, "1"}, {{"1", "g"}, "g"}, {{"g", "1"}, "g"}, {{"g", "g"}, "1"}},
        "1");
}

TwistPtr double_cover(PresentationPtr X, GroupPtr G) {
    return TwistingFunction::table(X, G, {{"e", G->felement("g")}});
}

TwistPtr rp2_cover(PresentationPtr X, GroupPtr G) {
    return TwistingFunction::table(X, G,
                                   {{"a", G->felement("g")}, {"c", G->felement("g", 1)}});
}

FibrePtr swap_fibre(GroupPtr G) {
    PresentationBuilder b("twopts");
    b.add_gen(0, "p0");
    b.add_gen(0, "p1");
    b.set_basepoint("p0");
    return Fibre::space(b.build(), G, {{{"g", "p0"}, "p1"}, {{"g", "p1"}, "p0"}});
}

HomologyGroup HG(int betti, std::vector<Int> torsion = {}) {
    return {betti, std::move(torsion)};
}

Rat qdet(QMat A) {
    int n = static_cast<int>(A.size());
    Rat det(1);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (A[i][c] != 0) { pr = i; break; }
        if (pr < 0) return Rat(0);
        if (pr != c) {
            std::swap(A[pr], A[c]);
            det = -det;
        }
        det *= A[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (A[i][c] == 0) continue;
            Rat q = A[i][c] / A[c][c];
            for (int j = c; j < n; ++j) A[i][j] -= q * A[c][j];
        }
    }
    return det;
}

void check_snf(const IMat& A) {
    SnfResult s = smith_normal_form(A);
    int m = static_cast<int>(A.size());
    int n = A.empty() ? 0 : static_cast<int>(A[0].size());
    REQUIRE(static_cast<int>(s.D.size()) == m);

    IMat UA(s.U.size(), std::vector<Int>(n, Int(0)));
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l)
            for (int j = 0; j < n; ++j) UA[i][j] += s.U[i][l] * A[l][j];
    IMat UAV(m, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j) UAV[i][j] += UA[i][l] * s.V[l][j];
    CHECK(UAV == s.D);

    Rat du = qdet(to_rat(s.U)), dv = qdet(to_rat(s.V));
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) CHECK(s.D[i][j] == 0);
            if (i == j) CHECK(s.D[i][j] >= 0);
        }
    for (int t = 0; t + 1 < std::min(m, n); ++t) {
        const Int& a = s.D[t][t];
        const Int& b = s.D[t + 1][t + 1];
        if (a == 0)
            CHECK(b == 0);
        else
            CHECK(b % a == 0);
    }
}

}  // namespace

TEST_CASE("smith normal form") {
    IMat A{{Int(2), Int(0)}, {Int(0), Int(3)}};
    SnfResult s = smith_normal_form(A);
    CHECK(s.D == IMat{{Int(1), Int(0)}, {Int(0), Int(6)}});
    check_snf(A);

    IMat B{{Int(4), Int(6)}, {Int(6), Int(9)}};
    CHECK(smith_normal_form(B).D == IMat{{Int(1), Int(0)}, {Int(0), Int(0)}});
    check_snf(B);

    IMat C{{Int(2), Int(4)}, {Int(6), Int(8)}};
    CHECK(smith_normal_form(C).D == IMat{{Int(2), Int(0)}, {Int(0), Int(4)}});
    check_snf(C);

    check_snf(IMat{{Int(0), Int(0)}, {Int(0), Int(0)}});
    check_snf(IMat{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}});
    check_snf(IMat{{Int(2), Int(0)}, {Int(0), Int(3)}, {Int(0), Int(0)}});
    check_snf(IMat{{Int(6), Int(10), Int(15)},
                   {Int(10), Int(15), Int(6)},
                   {Int(15), Int(6), Int(10)}});
    check_snf(IMat{{Int(-3), Int(7)}, {Int(5), Int(-11)}});
}

TEST_CASE("integer homology of the presets") {
    FiniteComplex s2 = complex_of_presentation(*presets::sphere2(), 3);
    CHECK(homology(s2, 0) == HG(1));
    CHECK(homology(s2, 1) == HG(0));
    CHECK(homology(s2, 2) == HG(1));
    CHECK(homology(s2, 3) == HG(0));

    FiniteComplex s1 = complex_of_presentation(*presets::circle(), 2);
    CHECK(homology(s1, 0) == HG(1));
    CHECK(homology(s1, 1) == HG(1));
    CHECK(homology(s1, 2) == HG(0));

    FiniteComplex rp2 = complex_of_presentation(*presets::rp2(), 3);
    CHECK(homology(rp2, 0) == HG(1));
    CHECK(homology(rp2, 1) == HG(0, {Int(2)}));
    CHECK(homology(rp2, 2) == HG(0));

    FiniteComplex d2 = complex_of_presentation(*presets::delta_full(2), 3);
    CHECK(homology(d2, 0) == HG(1));
    CHECK(homology(d2, 1) == HG(0));
    CHECK(homology(d2, 2) == HG(0));

    CHECK(HG(1).str() == "Z");
    CHECK(HG(2).str() == "Z^2");
    CHECK(HG(0).str() == "0");
    CHECK(HG(1, {Int(2)}).str() == "Z + Z/2");
    CHECK(HG(0, {Int(2), Int(4)}).str() == "Z/2 + Z/4");
}

TEST_CASE("field arithmetic and ranks") {
    CHECK_THROWS_AS(Field::prime(4), NonField);
    CHECK_THROWS_AS(Field::prime(1), NonField);
    CHECK_THROWS_AS(Field::prime(-7), NonField);

    Field f2 = Field::prime(2), f3 = Field::prime(3), q = Field::rationals();
    CHECK(f2.str() == "F_2");
    CHECK(q.str() == "Q");
    CHECK(f2.reduce(Rat(7, 3)) == Rat(1));
    CHECK(f3.reduce(Rat(7, 2)) == Rat(2));  // 7 * inv(2) = 1 * 2 mod 3
    CHECK(f3.inv(Rat(2)) == Rat(2));
    CHECK(q.reduce(Rat(7, 3)) == Rat(7, 3));

    QMat two{{Rat(2)}};
    CHECK(rank_over(q, two) == 1);
    CHECK(rank_over(f2, two) == 0);

    QMat row{{Rat(1), Rat(1)}};
    QMat K = nullspace_over(f2, row);
    REQUIRE(!K.empty());
    REQUIRE(K[0].size() == 1);
    CHECK(K[0][0] == Rat(1));
    CHECK(K[1][0] == Rat(1));

    auto sol = solve_over(q, QMat{{Rat(2), Rat(0)}, {Rat(0), Rat(4)}},
                          {Rat(1), Rat(2)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rat(1, 2));
    CHECK((*sol)[1] == Rat(1, 2));
    CHECK(!solve_over(q, QMat{{Rat(1)}, {Rat(1)}}, {Rat(1), Rat(2)}).has_value());

    FiniteComplex rp2 = complex_of_presentation(*presets::rp2(), 3);
    CHECK(field_betti(q, rp2, 0) == 1);
    CHECK(field_betti(q, rp2, 1) == 0);
    CHECK(field_betti(q, rp2, 2) == 0);
    CHECK(field_betti(f2, rp2, 0) == 1);
    CHECK(field_betti(f2, rp2, 1) == 1);
    CHECK(field_betti(f2, rp2, 2) == 1);
    CHECK(field_betti(f3, rp2, 1) == 0);
}

TEST_CASE("mapping cone and quasi-isomorphisms") {
    FiniteComplex s2 = complex_of_presentation(*presets::sphere2(), 3);

    std::vector<IMat> id(4);
    id[0] = IMat{{Int(1)}};
    id[2] = IMat{{Int(1)}};
    // degrees 1 and 3 are empty; zero matrices are filled in automatically
    FiniteComplex cone = mapping_cone(s2, s2, id);
    for (int n = 0; n <= 3; ++n) CHECK(homology(cone, n) == HG(0));
    CHECK(is_quasi_iso(s2, s2, id, 3));

    std::vector<IMat> zero;
    CHECK(!is_quasi_iso(s2, s2, zero, 3));
    FiniteComplex zcone = mapping_cone(s2, s2, zero);
    CHECK(homology(zcone, 0) == HG(1));  // H_0 of the target survives
    CHECK(homology(zcone, 3) == HG(1));  // H_2 of the source, shifted

    FiniteComplex rp2 = complex_of_presentation(*presets::rp2(), 2);
    std::vector<IMat> bad(3);
    bad[0] = IMat{{Int(1)}};
    bad[1] = IMat{{Int(1)}};
    bad[2] = IMat{{Int(0)}};  // f d(c) = 2a but d f(c) = 0
    CHECK_THROWS_AS(mapping_cone(rp2, rp2, bad), NotChainMap);

    std::vector<IMat> ragged(1);
    ragged[0] = IMat{{Int(1), Int(1)}};
    CHECK_THROWS_AS(mapping_cone(rp2, rp2, ragged), NotChainMap);
}

TEST_CASE("psi is an integral quasi-isomorphism onto the twisted product") {
    struct Case {
        std::string name;
        TwistPtr tau;
        FibrePtr F;
        std::vector<HomologyGroup> H;  // degrees 0..3
    };
    std::vector<Case> cases;
    {
        auto G = z2();
        cases.push_back({"cover", double_cover(presets::circle(), G),
                         Fibre::group_itself(G),
                         {HG(1), HG(1), HG(0), HG(0)}});
    }
    {
        auto G = z2();
        cases.push_back({"rp2 cover", rp2_cover(presets::rp2(), G),
                         Fibre::group_itself(G),
                         {HG(1), HG(0), HG(1), HG(0)}});
    }
    {
        auto G = z2();
        cases.push_back({"swap cover", double_cover(presets::circle(), G),
                         swap_fibre(G),
                         {HG(1), HG(1), HG(0), HG(0)}});
    }
    for (const auto& c : cases) {
        CAPTURE(c.name);
        TwistedTensorComplex T(c.tau, c.F, 4);
        TwistedProduct Tp(c.tau, c.F);
        FiniteComplex CT = complex_of_twisted_tensor(T, 4);
        FiniteComplex CP = complex_of_twisted_product(Tp, 4);
        std::vector<IMat> f = psi_matrices(T, Tp, 4);
        CHECK(is_quasi_iso(CT, CP, f, 3));
        for (int n = 0; n <= 3; ++n) {
            CHECK(homology(CT, n) == c.H[n]);
            CHECK(homology(CP, n) == c.H[n]);
        }
    }
}

TEST_CASE("loop space homology of the 2-sphere via the cobar complex") {
    CHECK_THROWS_AS(complex_of_cobar(*presets::circle(), 3), NotOneReduced);

    FiniteComplex om = complex_of_cobar(*presets::sphere2(), 5);
    for (int n = 0; n <= 5; ++n) CHECK(om.dim(n) == 1);  // [sigma|...|sigma]
    for (int n = 0; n <= 4; ++n) CHECK(homology(om, n) == HG(1));

    // a fatter 1-reduced complex still gives a valid chain complex
    FiniteComplex om2 = complex_of_cobar(*presets::delta_collapsed(3), 4);
    CHECK(homology(om2, 0) == HG(1));
}

TEST_CASE("augmentation filtration of the fibre") {
    Field f2 = Field::prime(2), q = Field::rationals();
    auto G = z2();

    AugmentationFiltration af = augmentation_filtration(f2, *Fibre::group_itself(G));
    CHECK(af.nilpotency == 2);
    CHECK(af.nilpotent());
    CHECK(af.level == std::vector<int>{0, -1});
    CHECK(af.basis == QMat{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    CHECK(af.basis_inv == QMat{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    Filtration fil = af.filtration();
    CHECK(fil.complex.labels[0] == std::vector<std::string>{"1", "1 + g"});
    CHECK(fil.level[0] == std::vector<int>{0, -1});

    AugmentationFiltration aq = augmentation_filtration(q, *Fibre::group_itself(G));
    CHECK(aq.nilpotency == -1);  // a^2 = a in characteristic 0
    CHECK(!aq.nilpotent());
    CHECK(aq.level == std::vector<int>{0, -1});
    CHECK(aq.filtration().complex.labels[0] ==
          std::vector<std::string>{"1", "- 1 + g"});

    AugmentationFiltration at =
        augmentation_filtration(f2, *Fibre::group_itself(SimplicialGroup::trivial()));
    CHECK(at.nilpotency == 1);  // the ideal itself vanishes
    CHECK(at.level == std::vector<int>{0});

    AugmentationFiltration as = augmentation_filtration(f2, *swap_fibre(G));
    CHECK(as.nilpotency == 2);
    CHECK(as.level == std::vector<int>{0, -1});
    CHECK(as.filtration().complex.labels[0] ==
          std::vector<std::string>{"p0", "p0 + p1"});

    auto L = SimplicialGroup::loop_group(presets::circle(), 3);
    CHECK_THROWS_AS(
        augmentation_filtration(f2, *Fibre::group_itself(L)), InfiniteDegree);
}

TEST_CASE("graded twisting cochain") {
    Field f2 = Field::prime(2);
    auto G = z2();
    AugmentationFiltration af = augmentation_filtration(f2, *Fibre::group_itself(G));

    auto tau = double_cover(presets::circle(), G);
    GradedTwist gt = graded_twisting_cochain(f2, *tau, af);
    CHECK(gt.well_defined);
    CHECK(gt.cycles == QMat{{Rat(1)}});
    CHECK(gt.matrix == QMat{{Rat(1)}});  // t_*[e] = [g - 1] != 0

    auto tau2 = rp2_cover(presets::rp2(), G);
    GradedTwist gt2 = graded_twisting_cochain(f2, *tau2, af);
    CHECK(gt2.well_defined);  // t(dc) = 2(g-1) lies in a^2 over F_2
    CHECK(gt2.matrix == QMat{{Rat(1)}});

    auto triv = TwistingFunction::trivial(presets::circle(), G);
    GradedTwist gt3 = graded_twisting_cochain(f2, *triv, af);
    CHECK(gt3.well_defined);
    CHECK(gt3.matrix == QMat{{Rat(0)}});

    // H_1(RP^2; Q) = 0: nothing to record
    Field q = Field::rationals();
    AugmentationFiltration aq = augmentation_filtration(q, *Fibre::group_itself(G));
    GradedTwist gt4 = graded_twisting_cochain(q, *tau2, aq);
    CHECK(gt4.matrix.size() == 1);
    CHECK(gt4.matrix[0].empty());

    AugmentationFiltration as = augmentation_filtration(f2, *swap_fibre(G));
    CHECK_THROWS_AS(graded_twisting_cochain(f2, *tau, as), ValidationError);
}

namespace {

// Cochain pages must be the chain pages with both indices negated/reflected
// and all arrows transposed.
void check_dual_pages(const Field& k, const Filtration& f) {
    SpectralSequence sp = spectral_sequence(k, f);
    SpectralSequence sd = spectral_sequence(k, dual_filtration(f));
    int N = f.complex.top_degree();
    REQUIRE(sp.pages.size() == sd.pages.size());
    for (size_t r = 0; r < sp.pages.size(); ++r) {
        const Page& P = sp.pages[r];
        const Page& D = sd.pages[r];
        for (const auto& [key, e] : P.entries)
            CHECK(D.rank(-key.first, N - key.second) == e.rank);
        for (const auto& [key, e] : D.entries)
            CHECK(P.rank(-key.first, N - key.second) == e.rank);
        int rr = static_cast<int>(r);
        for (const auto& [key, e] : P.entries) {
            int pr = 0, dr = 0;
            if (const QMat* m = P.differential(key.first, key.second))
                pr = rank_over(k, *m);
            if (const QMat* m = D.differential(-key.first + rr, N - key.second + 1))
                dr = rank_over(k, *m);
            CHECK(pr == dr);
        }
        for (const auto& [key, e] : D.entries) {
            int pr = 0, dr = 0;
            if (const QMat* m = D.differential(key.first, key.second))
                dr = rank_over(k, *m);
            if (const QMat* m = P.differential(-key.first + rr, N - key.second + 1))
                pr = rank_over(k, *m);
            CHECK(pr == dr);
        }
    }
}

void check_stable(const Field& k, const SpectralSequence& ss,
                  const FiniteComplex& total) {
    const Page& inf = ss.infinity();
    for (const auto& [key, e] : inf.entries)
        CHECK(inf.differential(key.first, key.second) == nullptr);
    for (int n = 0; n <= total.top_degree(); ++n) {
        int sum = 0;
        for (const auto& [key, e] : inf.entries)
            if (key.second == n) sum += e.rank;
        CHECK(sum == field_betti(k, total, n));
    }
}

}  // namespace

TEST_CASE("spectral sequence of the trivial filtration") {
    Field f2 = Field::prime(2);
    FiniteComplex rp2 = complex_of_presentation(*presets::rp2(), 3);
    Filtration f;
    f.complex = rp2;
    f.level.resize(4);
    for (int n = 0; n <= 3; ++n) f.level[n].assign(rp2.dim(n), 0);
    SpectralSequence ss = spectral_sequence(f2, f);
    REQUIRE(ss.pages.size() == 2);  // E^0 differentiates, E^1 = E^infinity
    CHECK(ss.pages[0].rank(0, 0) == 1);
    CHECK(ss.pages[0].rank(0, 1) == 1);
    CHECK(ss.pages[0].rank(0, 2) == 1);
    CHECK(ss.pages[1].rank(0, 0) == 1);
    CHECK(ss.pages[1].rank(0, 1) == 1);
    CHECK(ss.pages[1].rank(0, 2) == 1);
    check_stable(f2, ss, rp2);

    Field q = Field::rationals();
    SpectralSequence sq = spectral_sequence(q, f);
    CHECK(sq.infinity().rank(0, 0) == 1);
    CHECK(sq.infinity().rank(0, 1) == 0);
    CHECK(sq.infinity().rank(0, 2) == 0);
    check_stable(q, sq, rp2);
}

TEST_CASE("filtration validation") {
    FiniteComplex rp2 = complex_of_presentation(*presets::rp2(), 2);
    Filtration f;
    f.complex = rp2;
    f.level = {{0}, {0}, {-1}};  // d(c) = 2a raises -1 to 0
    CHECK_THROWS_AS(f.validate(), ValidationError);

    f.level = {{0}, {0}};
    CHECK_THROWS_AS(f.validate(), ValidationError);  // missing a degree

    // boundary that squares to zero only over F_2 is accepted there, not over Q
    Filtration g;
    g.complex.labels = {{"u"}, {"v", "w"}, {"z"}};
    g.complex.boundary = {IMat{}, IMat{{Int(1), Int(1)}}, IMat{{Int(1)}, {Int(1)}}};
    g.level = {{0}, {0, 0}, {0}};
    CHECK_THROWS_AS(spectral_sequence(Field::rationals(), g), ValidationError);
    SpectralSequence ss = spectral_sequence(Field::prime(2), g);
    CHECK(ss.infinity().rank(0, 0) == 0);
    CHECK(ss.infinity().rank(0, 1) == 0);
    CHECK(ss.infinity().rank(0, 2) == 0);
}

TEST_CASE("homological spectral sequence of the double cover") {
    Field f2 = Field::prime(2);
    auto G = z2();
    auto tau = double_cover(presets::circle(), G);
    TwistedTensorComplex T(tau, Fibre::group_itself(G), 3);
    AugmentationFiltration af = augmentation_filtration(f2, *Fibre::group_itself(G));
    Filtration f = cover_filtration(T, af, 2);

    CHECK(f.complex.labels[0] ==
          std::vector<std::string>{"pt (x) (1)", "pt (x) (1 + g)"});
    CHECK(f.level[0] == std::vector<int>{0, -1});
    CHECK(f.level[1] == std::vector<int>{0, -1});

    SpectralSequence ss = spectral_sequence(f2, f);
    REQUIRE(ss.pages.size() == 3);

    // E^0 = E^1 = C(X) (x) gr: four lines of rank one
    for (int r = 0; r <= 1; ++r) {
        CHECK(ss.pages[r].rank(0, 0) == 1);
        CHECK(ss.pages[r].rank(-1, 0) == 1);
        CHECK(ss.pages[r].rank(0, 1) == 1);
        CHECK(ss.pages[r].rank(-1, 1) == 1);
    }
    if (const QMat* d0 = ss.pages[0].differential(0, 1))
        CHECK(rank_over(f2, *d0) == 0);
    if (const QMat* d0 = ss.pages[0].differential(-1, 1))
        CHECK(rank_over(f2, *d0) == 0);

    // d^1 = delta_{t_*}: the graded twisting cochain in matrix form
    const QMat* d1 = ss.pages[1].differential(0, 1);
    REQUIRE(d1 != nullptr);
    GradedTwist gt = graded_twisting_cochain(
        f2, *tau, augmentation_filtration(f2, *Fibre::group_itself(G)));
    CHECK(*d1 == gt.matrix);
    CHECK(*d1 == QMat{{Rat(1)}});

    // E^2 = E^infinity with the two surviving corners
    const Page& inf = ss.infinity();
    CHECK(inf.rank(0, 0) == 1);
    CHECK(inf.rank(-1, 1) == 1);
    CHECK(inf.rank(0, 1) == 0);
    CHECK(inf.rank(-1, 0) == 0);
    check_stable(f2, ss, f.complex);

    check_dual_pages(f2, f);
    SpectralSequence sd = spectral_sequence(f2, dual_filtration(f));
    const QMat* dd = sd.pages[1].differential(1, 2);
    REQUIRE(dd != nullptr);
    CHECK(*dd == QMat{{Rat(1)}});  // the transposed arrow, same 1x1 matrix

    std::string expected =
        "E^1  (s = filtration level, n = total degree)\n"
        "    s    n  rank\n"
        "   -1    0     1\n"
        "   -1    1     1\n"
        "    0    0     1\n"
        "    0    1     1\n"
        "d^1 (0,1) -> (-1,0):\n"
        "  [ 1 ]\n";
    CHECK(ss.pages[1].table() == expected);
}

TEST_CASE("homological spectral sequence of the rp2 cover") {
    Field f2 = Field::prime(2);
    auto G = z2();
    auto tau = rp2_cover(presets::rp2(), G);
    TwistedTensorComplex T(tau, Fibre::group_itself(G), 4);
    AugmentationFiltration af = augmentation_filtration(f2, *Fibre::group_itself(G));
    Filtration f = cover_filtration(T, af, 3);
    SpectralSequence ss = spectral_sequence(f2, f);
    REQUIRE(ss.pages.size() == 3);

    // E^1 = H(RP^2; F_2) (x) gr k[G]
    for (int n = 0; n <= 2; ++n) {
        CHECK(ss.pages[1].rank(0, n) == 1);
        CHECK(ss.pages[1].rank(-1, n) == 1);
    }
    const QMat* d1a = ss.pages[1].differential(0, 1);
    REQUIRE(d1a != nullptr);
    CHECK(*d1a == graded_twisting_cochain(f2, *tau, af).matrix);
    const QMat* d1b = ss.pages[1].differential(0, 2);
    REQUIRE(d1b != nullptr);
    CHECK(*d1b == QMat{{Rat(1)}});

    // the ladder collapses onto H(S^2; F_2)
    const Page& inf = ss.infinity();
    CHECK(inf.rank(0, 0) == 1);
    CHECK(inf.rank(-1, 2) == 1);
    CHECK(inf.rank(0, 1) == 0);
    CHECK(inf.rank(-1, 0) == 0);
    CHECK(inf.rank(-1, 1) == 0);
    CHECK(inf.rank(0, 2) == 0);
    check_stable(f2, ss, f.complex);
    check_dual_pages(f2, f);
}

TEST_CASE("cover filtration through a discrete space fibre") {
    Field f2 = Field::prime(2);
    auto G = z2();
    auto tau = double_cover(presets::circle(), G);
    FibrePtr F = swap_fibre(G);
    TwistedTensorComplex T(tau, F, 3);
    AugmentationFiltration af = augmentation_filtration(f2, *F);
    Filtration f = cover_filtration(T, af, 2);
    SpectralSequence ss = spectral_sequence(f2, f);

    const QMat* d1 = ss.pages[1].differential(0, 1);
    REQUIRE(d1 != nullptr);
    CHECK(*d1 == QMat{{Rat(1)}});
    CHECK(ss.infinity().rank(0, 0) == 1);
    CHECK(ss.infinity().rank(-1, 1) == 1);
    check_stable(f2, ss, f.complex);
    check_dual_pages(f2, f);

    // a circle fibre is not discrete
    auto TG = SimplicialGroup::trivial();
    auto triv = TwistingFunction::trivial(presets::circle(), TG);
    FibrePtr circ = Fibre::space(presets::circle(), TG, {});
    TwistedTensorComplex torus(triv, circ, 3);
    AugmentationFiltration at = augmentation_filtration(f2, *circ);
    CHECK_THROWS_AS(cover_filtration(torus, at, 2), ValidationError);
}

TEST_CASE("serre spectral sequence of trivial bundles") {
    Field q = Field::rationals();
    auto G = SimplicialGroup::trivial();

    // torus = S^1 x S^1
    auto triv = TwistingFunction::trivial(presets::circle(), G);
    TwistedTensorComplex T(triv, Fibre::space(presets::circle(), G, {}), 3);
    Filtration f = serre_filtration(T, 2);
    SpectralSequence ss = spectral_sequence(q, f);
    REQUIRE(ss.pages.size() == 3);

    // E^0_{p,q} = C_p(X) (x) C_q(F)
    CHECK(ss.pages[0].rank(0, 0) == 1);
    CHECK(ss.pages[0].rank(0, 1) == 1);
    CHECK(ss.pages[0].rank(1, 1) == 1);
    CHECK(ss.pages[0].rank(1, 2) == 1);

    // E^1 = C(X) (x) H(F), E^2 = H(X) (x) H(F), nothing ever differentiates
    for (int r = 1; r <= 2; ++r) {
        CHECK(ss.pages[r].rank(0, 0) == 1);
        CHECK(ss.pages[r].rank(0, 1) == 1);
        CHECK(ss.pages[r].rank(1, 1) == 1);
        CHECK(ss.pages[r].rank(1, 2) == 1);
        for (const auto& [key, e] : ss.pages[r].entries) {
            const QMat* d = ss.pages[r].differential(key.first, key.second);
            if (d != nullptr) CHECK(rank_over(q, *d) == 0);
        }
    }
    check_stable(q, ss, f.complex);  // Kuenneth: 1, 2, 1
    CHECK(field_betti(q, f.complex, 0) == 1);
    CHECK(field_betti(q, f.complex, 1) == 2);
    CHECK(field_betti(q, f.complex, 2) == 1);
    check_dual_pages(q, f);

    // S^1 x S^2
    TwistedTensorComplex T2(triv, Fibre::space(presets::sphere2(), G, {}), 4);
    Filtration f2 = serre_filtration(T2, 3);
    SpectralSequence s2 = spectral_sequence(q, f2);
    const Page& inf = s2.infinity();
    CHECK(inf.rank(0, 0) == 1);
    CHECK(inf.rank(1, 1) == 1);
    CHECK(inf.rank(0, 2) == 1);
    CHECK(inf.rank(1, 3) == 1);
    check_stable(q, s2, f2.complex);
}

TEST_CASE("serre filtration converges for a twisted bundle too") {
    Field f2 = Field::prime(2);
    auto G = z2();
    auto tau = rp2_cover(presets::rp2(), G);
    TwistedTensorComplex T(tau, Fibre::group_itself(G), 4);
    Filtration f = serre_filtration(T, 3);
    SpectralSequence ss = spectral_sequence(f2, f);
    check_stable(f2, ss, f.complex);
    int total = 0;
    for (const auto& [key, e] : ss.infinity().entries) total += e.rank;
    CHECK(total == 2);  // H(S^2; F_2)
    check_dual_pages(f2, f);
}
