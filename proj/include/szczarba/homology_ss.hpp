// Exact homological algebra for finite complexes: Smith normal form, integer
// homology, mapping cones, and the spectral sequence of a bounded filtration
// over Q or F_p, together with the augmentation-ideal filtration of a fibre
// and the graded twisting cochain it induces.
#pragma once

#include "szczarba/twisted_tensor.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sz {

using Rat = boost::multiprecision::cpp_rational;
using IMat = std::vector<std::vector<Int>>;  // row-major
using QMat = std::vector<std::vector<Rat>>;

// U A V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SnfResult {
    IMat U, D, V;
};
SnfResult smith_normal_form(const IMat& A);

// ---------------------------------------------------------------------------
// Finite complexes over the integers.

// labels[n] names the basis of degree n; boundary[n] is the matrix of
// C_n -> C_{n-1} (dim(n-1) rows, dim(n) columns), boundary[0] is empty.
struct FiniteComplex {
    std::vector<std::vector<std::string>> labels;
    std::vector<IMat> boundary;

    int top_degree() const { return static_cast<int>(labels.size()) - 1; }
    int dim(int n) const;
    void validate() const;  // shapes and dd = 0
};

struct HomologyGroup {
    int betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility order

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
    std::string str() const;  // "Z^2 + Z/4", "Z", "0"
};
HomologyGroup homology(const FiniteComplex& C, int degree);

// A chain map C -> D as one matrix per degree (dim_D(n) x dim_C(n); missing
// trailing degrees are zero maps).  Cone_n = C_{n-1} (+) D_n with
// d(c, m) = (-dc, dm - f(c)).  Throws NotChainMap when f fails to commute
// with the boundaries or has the wrong shape.
FiniteComplex mapping_cone(const FiniteComplex& C, const FiniteComplex& D,
                           const std::vector<IMat>& f);
// H_n(f) is an isomorphism for all n <= range (detected by an acyclic cone).
bool is_quasi_iso(const FiniteComplex& C, const FiniteComplex& D,
                  const std::vector<IMat>& f, int range);

// ---------------------------------------------------------------------------
// Coefficient fields.  Elements are rationals kept in canonical form: for F_p
// a residue 0..p-1, so arithmetic must go through reduce().

struct Field {
    bool modular = false;
    long p = 0;

    static Field rationals() { return {}; }
    static Field prime(long p);  // throws NonField unless p is prime

    Rat reduce(const Rat& x) const;
    Rat inv(const Rat& x) const;  // x nonzero mod p
    std::string str() const;      // "Q", "F_2"

    friend bool operator==(const Field&, const Field&) = default;
};

QMat to_rat(const IMat& A);
int rank_over(const Field& k, QMat A);
QMat matmul_over(const Field& k, const QMat& A, const QMat& B);
// Columns forming a basis of ker A.
QMat nullspace_over(const Field& k, QMat A);
// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_over(const Field& k, QMat A,
                                           std::vector<Rat> b);
int field_betti(const Field& k, const FiniteComplex& C, int degree);

// ---------------------------------------------------------------------------
// Filtered complexes and their spectral sequences.

// Increasing filtration F_s C = span of the basis elements of level <= s.
// The boundary must not raise the level.
struct Filtration {
    FiniteComplex complex;
    std::vector<std::vector<int>> level;  // level[n][i]

    void validate() const;
};

// Entry at (s, n): s the filtration level, n the total degree.  d is the
// matrix of d_r: (s, n) -> (s-r, n-1) in the chosen representative bases,
// rank(target) rows by rank columns; present whenever both ranks are positive.
struct PageEntry {
    int rank = 0;
    QMat d;
};

struct Page {
    int r = 0;
    std::map<std::pair<int, int>, PageEntry> entries;  // only rank > 0

    int rank(int s, int n) const;
    const QMat* differential(int s, int n) const;  // nullptr when absent
    std::string table() const;
};

// Pages E^0 .. E^R with R = (max level - min level) + 1, so the last page has
// vanishing differentials and equals E^infinity.  Every page is re-derived
// internally as the homology of its predecessor.
struct SpectralSequence {
    Field field;
    std::vector<Page> pages;

    const Page& infinity() const { return pages.back(); }
};
SpectralSequence spectral_sequence(const Field& k, const Filtration& f);

// ---------------------------------------------------------------------------
// The augmentation-ideal filtration (discrete fibre of a finite group).

// A change of basis of k[F] adapted to a k[F] >= a k[F] >= a^2 k[F] >= ...,
// a the augmentation ideal of k[G]: column j of basis lies in a^{-level(j)}
// and the columns of level <= -p span a^p k[F].  nilpotency is the least L with
// a^L k[F] = 0, or -1 when the chain stabilizes at a nonzero subspace.
struct AugmentationFiltration {
    Field field;
    std::vector<std::string> element_names;  // the underlying basis of k[F]
    QMat basis;                              // invertible over the field
    QMat basis_inv;
    std::vector<int> level;                  // level[j] <= 0
    int nilpotency = -1;

    bool nilpotent() const { return nilpotency >= 0; }
    Filtration filtration() const;  // k[F] concentrated in degree 0
};
AugmentationFiltration augmentation_filtration(const Field& k, const Fibre& F);

// t_* : H_1(X; k) -> a/a^2 in the coordinates of an adapted basis of k[G].
// cycles holds the chosen representative cycles in C_1(X); well_defined
// records that t(dc) lands in a^2 for every nondegenerate 2-simplex c.
struct GradedTwist {
    QMat matrix;  // rows: the level -1 block of the adapted basis
    QMat cycles;
    bool well_defined = false;
};
GradedTwist graded_twisting_cochain(const Field& k, const TwistingFunction& tau,
                                    const AugmentationFiltration& af);

// ---------------------------------------------------------------------------
// Bridges into FiniteComplex / Filtration.

FiniteComplex complex_of_presentation(const Presentation& P, int nmax);
// Cobar complex of a 1-reduced presentation (degree-0 letters would make the
// word basis infinite); throws NotOneReduced.
FiniteComplex complex_of_cobar(const Presentation& P, int nmax);
FiniteComplex complex_of_twisted_tensor(const TwistedTensorComplex& T, int nmax);
FiniteComplex complex_of_twisted_product(const TwistedProduct& T, int nmax);
// Matrices of psi from the twisted tensor basis to the nondegenerate twisted
// product basis, degree by degree.
std::vector<IMat> psi_matrices(const TwistedTensorComplex& T,
                               const TwistedProduct& Tp, int nmax);

// C(X) (x)_t k[F] in the adapted fibre basis, filtered by the fibre level;
// boundary entries are reduced over af.field.
Filtration cover_filtration(const TwistedTensorComplex& T,
                            const AugmentationFiltration& af, int nmax);
// Filtration by base degree: level(x (x) y) = dim x.
Filtration serre_filtration(const TwistedTensorComplex& T, int nmax);
// Cochain dual: degree k holds the dual of degree N-k, the differential is
// the negative transpose, levels flip sign (the annihilator filtration).
Filtration dual_filtration(const Filtration& f);

}  // namespace sz
