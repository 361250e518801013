#include "szczarba/homology_ss.hpp"

#include "szczarba/chains.hpp"
#include "szczarba/cobar.hpp"
#include "szczarba/szczarba.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

namespace sz {

namespace {

int irows(const IMat& A) { return static_cast<int>(A.size()); }
int icols(const IMat& A) { return A.empty() ? 0 : static_cast<int>(A[0].size()); }
int qrows(const QMat& A) { return static_cast<int>(A.size()); }
int qcols(const QMat& A) { return A.empty() ? 0 : static_cast<int>(A[0].size()); }

IMat izero(int r, int c) { return IMat(r, std::vector<Int>(c, Int(0))); }
QMat qzero(int r, int c) { return QMat(r, std::vector<Rat>(c, Rat(0))); }

IMat imul(const IMat& A, const IMat& B) {
    if (icols(A) != irows(B))
        throw DimensionMismatch("matrix product shape mismatch");
    IMat C = izero(irows(A), icols(B));
    for (int i = 0; i < irows(A); ++i)
        for (int l = 0; l < irows(B); ++l) {
            if (A[i][l] == 0) continue;
            for (int j = 0; j < icols(B); ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

bool izero_mat(const IMat& A) {
    for (auto& row : A)
        for (auto& e : row)
            if (e != 0) return false;
    return true;
}

// Reduced row elimination with pivots restricted to the first limit columns;
// returns the pivot columns in order (row t has its pivot in pivots[t]).
std::vector<int> eliminate(const Field& k, QMat& A, int limit) {
    std::vector<int> pivots;
    int m = qrows(A);
    int r = 0;
    for (int c = 0; c < limit && r < m; ++c) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (A[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(A[r], A[pr]);
        Rat s = k.inv(A[r][c]);
        for (auto& e : A[r]) e = k.reduce(e * s);
        for (int i = 0; i < m; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat q = A[i][c];
            for (size_t j = 0; j < A[i].size(); ++j)
                A[i][j] = k.reduce(A[i][j] - q * A[r][j]);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

QMat concat_cols(const QMat& A, const QMat& B) {
    if (qcols(A) == 0) return B;
    if (qcols(B) == 0) return A;
    if (qrows(A) != qrows(B))
        throw DimensionMismatch("column concatenation needs equal heights");
    QMat C = A;
    for (int i = 0; i < qrows(A); ++i)
        C[i].insert(C[i].end(), B[i].begin(), B[i].end());
    return C;
}

QMat column_of(const QMat& A, int j) {
    QMat c(qrows(A), std::vector<Rat>(1));
    for (int i = 0; i < qrows(A); ++i) c[i][0] = A[i][j];
    return c;
}

// Candidate columns that are independent modulo the span of base (base must
// already be independent); returned in candidate order.
QMat extend_basis(const Field& k, const QMat& base, const QMat& cands) {
    QMat acc = base;
    QMat picked;
    int r = rank_over(k, acc);
    for (int j = 0; j < qcols(cands); ++j) {
        QMat cj = column_of(cands, j);
        QMat test = concat_cols(acc, cj);
        int r2 = rank_over(k, test);
        if (r2 > r) {
            acc = std::move(test);
            r = r2;
            picked = concat_cols(picked, cj);
        }
    }
    return picked;
}

QMat independent_columns(const Field& k, const QMat& A) {
    return extend_basis(k, QMat{}, A);
}

std::vector<Rat> mat_vec(const Field& k, const QMat& A, const std::vector<Rat>& x) {
    if (qcols(A) != static_cast<int>(x.size()))
        throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<Rat> out(qrows(A), Rat(0));
    for (int i = 0; i < qrows(A); ++i) {
        Rat acc(0);
        for (size_t j = 0; j < x.size(); ++j) acc += A[i][j] * x[j];
        out[i] = k.reduce(acc);
    }
    return out;
}

QMat inverse_over(const Field& k, const QMat& A) {
    int n = qrows(A);
    if (n != qcols(A)) throw DimensionMismatch("only square matrices invert");
    QMat W = A;
    for (int i = 0; i < n; ++i) {
        for (auto& e : W[i]) e = k.reduce(e);
        for (int j = 0; j < n; ++j) W[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    auto piv = eliminate(k, W, n);
    if (static_cast<int>(piv.size()) < n)
        throw ValidationError("matrix is singular over " + k.str());
    QMat inv = qzero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = W[i][n + j];
    return inv;
}

std::string rat_str(const Rat& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

// Mirrors LinComb::str: "a - 2*b", leading "- ".
std::string combo_str(const std::vector<Rat>& col, const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    bool any = false;
    for (size_t a = 0; a < col.size(); ++a) {
        Rat c = col[a];
        if (c == 0) continue;
        any = true;
        if (first) {
            if (c < 0) {
                os << "- ";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (c != 1) os << rat_str(c) << "*";
        os << names[a];
    }
    return any ? os.str() : "0";
}

}  // namespace

// ---------------------------------------------------------------------------
// Smith normal form.

namespace {

void add_row_multiple(IMat& M, int dst, int src, const Int& q) {
    for (size_t j = 0; j < M[dst].size(); ++j) M[dst][j] += q * M[src][j];
}

void add_col_multiple(IMat& M, int dst, int src, const Int& q) {
    for (auto& row : M) row[dst] += q * row[src];
}

void swap_cols(IMat& M, int a, int b) {
    for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

SnfResult smith_normal_form(const IMat& A) {
    int m = irows(A), n = icols(A);
    SnfResult res;
    res.D = A;
    res.U = izero(m, m);
    res.V = izero(n, n);
    for (int i = 0; i < m; ++i) res.U[i][i] = 1;
    for (int j = 0; j < n; ++j) res.V[j][j] = 1;
    IMat& D = res.D;
    IMat& U = res.U;
    IMat& V = res.V;

    using boost::multiprecision::abs;
    for (int t = 0; t < std::min(m, n); ++t) {
        while (true) {
            int pi = -1, pj = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j)
                    if (D[i][j] != 0 &&
                        (pi < 0 || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) goto diagonal_done;
            if (pi != t) {
                std::swap(D[pi], D[t]);
                std::swap(U[pi], U[t]);
            }
            if (pj != t) {
                swap_cols(D, pj, t);
                swap_cols(V, pj, t);
            }
            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (D[i][t] == 0) continue;
                Int q = D[i][t] / D[t][t];
                if (q != 0) {
                    add_row_multiple(D, i, t, -q);
                    add_row_multiple(U, i, t, -q);
                }
                if (D[i][t] != 0) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                if (D[t][j] == 0) continue;
                Int q = D[t][j] / D[t][t];
                if (q != 0) {
                    add_col_multiple(D, j, t, -q);
                    add_col_multiple(V, j, t, -q);
                }
                if (D[t][j] != 0) dirty = true;
            }
            if (dirty) continue;
            // pivot must divide the rest of the submatrix
            int bi = -1;
            for (int i = t + 1; i < m && bi < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        bi = i;
                        break;
                    }
            if (bi >= 0) {
                add_row_multiple(D, t, bi, Int(1));
                add_row_multiple(U, t, bi, Int(1));
                continue;
            }
            break;
        }
        if (D[t][t] < 0) {
            for (auto& e : D[t]) e = -e;
            for (auto& e : U[t]) e = -e;
        }
    }
diagonal_done:
    return res;
}

// ---------------------------------------------------------------------------
// Finite complexes over Z.

int FiniteComplex::dim(int n) const {
    if (n < 0 || n > top_degree()) return 0;
    return static_cast<int>(labels[n].size());
}

void FiniteComplex::validate() const {
    if (boundary.size() != labels.size())
        throw ValidationError("complex needs one boundary matrix per degree");
    for (int n = 0; n <= top_degree(); ++n) {
        const IMat& B = boundary[n];
        int er = (n == 0) ? 0 : dim(n - 1);
        if (irows(B) != er)
            throw ValidationError("boundary " + std::to_string(n) + " has wrong height");
        for (auto& row : B)
            if (static_cast<int>(row.size()) != dim(n))
                throw ValidationError("boundary " + std::to_string(n) + " has a ragged row");
    }
    for (int n = 2; n <= top_degree(); ++n) {
        if (dim(n) == 0 || dim(n - 2) == 0) continue;
        if (!izero_mat(imul(boundary[n - 1], boundary[n])))
            throw ValidationError("boundary squared is nonzero in degree " + std::to_string(n));
    }
}

std::string HomologyGroup::str() const {
    std::ostringstream os;
    bool first = true;
    if (betti > 0) {
        os << "Z";
        if (betti > 1) os << "^" << betti;
        first = false;
    }
    for (auto& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t.str();
        first = false;
    }
    return first ? "0" : os.str();
}

HomologyGroup homology(const FiniteComplex& C, int degree) {
    HomologyGroup H;
    if (degree < 0 || degree > C.top_degree()) return H;
    Field q = Field::rationals();
    int rin = 0, rout = 0;
    if (degree >= 1 && C.dim(degree - 1) > 0) rout = rank_over(q, to_rat(C.boundary[degree]));
    if (degree + 1 <= C.top_degree() && C.dim(degree + 1) > 0) {
        const IMat& B = C.boundary[degree + 1];
        rin = rank_over(q, to_rat(B));
        SnfResult snf = smith_normal_form(B);
        for (int t = 0; t < std::min(irows(snf.D), icols(snf.D)); ++t)
            if (snf.D[t][t] > 1) H.torsion.push_back(snf.D[t][t]);
    }
    H.betti = C.dim(degree) - rout - rin;
    return H;
}

namespace {

IMat chain_map_matrix(const std::vector<IMat>& f, const FiniteComplex& C,
                      const FiniteComplex& D, int n) {
    IMat M = (n >= 0 && n < static_cast<int>(f.size())) ? f[n] : IMat{};
    if (irows(M) == 0 && icols(M) == 0) M = izero(D.dim(n), C.dim(n));
    if (irows(M) != D.dim(n) || (D.dim(n) > 0 && icols(M) != C.dim(n)))
        throw NotChainMap("chain map has the wrong shape in degree " + std::to_string(n));
    return M;
}

}  // namespace

FiniteComplex mapping_cone(const FiniteComplex& C, const FiniteComplex& D,
                           const std::vector<IMat>& f) {
    C.validate();
    D.validate();
    int top = std::max(C.top_degree() + 1, D.top_degree());
    std::vector<IMat> fm(top + 1);
    for (int n = 0; n <= top; ++n) fm[n] = chain_map_matrix(f, C, D, n);
    for (int n = 1; n <= top; ++n) {
        // f d_C = d_D f degreewise
        IMat lhs = (n <= C.top_degree() && C.dim(n) > 0 && C.dim(n - 1) > 0 && D.dim(n - 1) > 0)
                       ? imul(fm[n - 1], C.boundary[n])
                       : izero(D.dim(n - 1), C.dim(n));
        IMat rhs = (n <= D.top_degree() && D.dim(n) > 0 && D.dim(n - 1) > 0 && C.dim(n) > 0)
                       ? imul(D.boundary[n], fm[n])
                       : izero(D.dim(n - 1), C.dim(n));
        if (lhs != rhs)
            throw NotChainMap("map fails to commute with the boundary in degree " +
                              std::to_string(n));
    }

    FiniteComplex E;
    E.labels.resize(top + 1);
    E.boundary.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        for (int i = 0; i < C.dim(n - 1); ++i) E.labels[n].push_back(C.labels[n - 1][i] + "[1]");
        for (int i = 0; i < D.dim(n); ++i) E.labels[n].push_back(D.labels[n][i]);
    }
    for (int n = 1; n <= top; ++n) {
        int rc = C.dim(n - 2), rd = D.dim(n - 1);
        int cc = C.dim(n - 1), cd = D.dim(n);
        IMat B = izero(rc + rd, cc + cd);
        if (rc > 0 && cc > 0)
            for (int i = 0; i < rc; ++i)
                for (int j = 0; j < cc; ++j) B[i][j] = -C.boundary[n - 1][i][j];
        if (rd > 0 && cc > 0)
            for (int i = 0; i < rd; ++i)
                for (int j = 0; j < cc; ++j) B[rc + i][j] = -fm[n - 1][i][j];
        if (rd > 0 && cd > 0 && n <= D.top_degree())
            for (int i = 0; i < rd; ++i)
                for (int j = 0; j < cd; ++j) B[rc + i][cc + j] = D.boundary[n][i][j];
        E.boundary[n] = std::move(B);
    }
    E.validate();
    return E;
}

bool is_quasi_iso(const FiniteComplex& C, const FiniteComplex& D,
                  const std::vector<IMat>& f, int range) {
    FiniteComplex cone = mapping_cone(C, D, f);
    for (int n = 0; n <= range; ++n)
        if (!(homology(cone, n) == HomologyGroup{}))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Fields.

Field Field::prime(long p) {
    if (p < 2) throw NonField("characteristic must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw NonField(std::to_string(p) + " is not prime");
    Field k;
    k.modular = true;
    k.p = p;
    return k;
}

namespace {

long mod_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        long t2 = t - q * nt;
        long r2 = r - q * nr;
        t = nt;
        nt = t2;
        r = nr;
        nr = r2;
    }
    if (r != 1) throw ValidationError("element has no inverse mod p");
    return t < 0 ? t + p : t;
}

}  // namespace

Rat Field::reduce(const Rat& x) const {
    if (!modular) return x;
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int num = numerator(x) % p;
    Int den = denominator(x) % p;
    long n = num.convert_to<long>();
    long d = den.convert_to<long>();
    if (n < 0) n += p;
    if (d < 0) d += p;
    if (d == 0) throw ValidationError("denominator divisible by the characteristic");
    long r = (n * mod_inv(d, p)) % p;
    return Rat(r);
}

Rat Field::inv(const Rat& x) const {
    Rat r = reduce(x);
    if (r == 0) throw ValidationError("division by zero in " + str());
    if (!modular) return Rat(1) / r;
    using boost::multiprecision::numerator;
    long n = numerator(r).convert_to<long>();
    return Rat(mod_inv(n, p));
}

std::string Field::str() const {
    return modular ? "F_" + std::to_string(p) : "Q";
}

QMat to_rat(const IMat& A) {
    QMat B(A.size());
    for (size_t i = 0; i < A.size(); ++i) {
        B[i].reserve(A[i].size());
        for (auto& e : A[i]) B[i].emplace_back(e);
    }
    return B;
}

int rank_over(const Field& k, QMat A) {
    for (auto& row : A)
        for (auto& e : row) e = k.reduce(e);
    return static_cast<int>(eliminate(k, A, qcols(A)).size());
}

QMat matmul_over(const Field& k, const QMat& A, const QMat& B) {
    if (qcols(A) != qrows(B)) throw DimensionMismatch("matrix product shape mismatch");
    QMat C = qzero(qrows(A), qcols(B));
    for (int i = 0; i < qrows(A); ++i)
        for (int l = 0; l < qrows(B); ++l) {
            if (A[i][l] == 0) continue;
            for (int j = 0; j < qcols(B); ++j) C[i][j] += A[i][l] * B[l][j];
        }
    for (auto& row : C)
        for (auto& e : row) e = k.reduce(e);
    return C;
}

QMat nullspace_over(const Field& k, QMat A) {
    int nc = qcols(A);
    for (auto& row : A)
        for (auto& e : row) e = k.reduce(e);
    auto piv = eliminate(k, A, nc);
    std::vector<bool> is_piv(nc, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free;
    for (int c = 0; c < nc; ++c)
        if (!is_piv[c]) free.push_back(c);
    QMat K = qzero(nc, static_cast<int>(free.size()));
    for (size_t j = 0; j < free.size(); ++j) {
        K[free[j]][j] = 1;
        for (size_t t = 0; t < piv.size(); ++t)
            K[piv[t]][j] = k.reduce(-A[t][free[j]]);
    }
    return K;
}

std::optional<std::vector<Rat>> solve_over(const Field& k, QMat A, std::vector<Rat> b) {
    int m = qrows(A), nc = qcols(A);
    if (static_cast<int>(b.size()) != m)
        throw DimensionMismatch("right-hand side has the wrong length");
    for (int i = 0; i < m; ++i) {
        for (auto& e : A[i]) e = k.reduce(e);
        A[i].push_back(k.reduce(b[i]));
    }
    auto piv = eliminate(k, A, nc);
    for (int i = static_cast<int>(piv.size()); i < m; ++i)
        if (A[i][nc] != 0) return std::nullopt;
    std::vector<Rat> x(nc, Rat(0));
    for (size_t t = 0; t < piv.size(); ++t) x[piv[t]] = A[t][nc];
    return x;
}

int field_betti(const Field& k, const FiniteComplex& C, int degree) {
    if (degree < 0 || degree > C.top_degree()) return 0;
    int rin = 0, rout = 0;
    if (degree >= 1 && C.dim(degree - 1) > 0) rout = rank_over(k, to_rat(C.boundary[degree]));
    if (degree + 1 <= C.top_degree() && C.dim(degree + 1) > 0)
        rin = rank_over(k, to_rat(C.boundary[degree + 1]));
    return C.dim(degree) - rout - rin;
}

// ---------------------------------------------------------------------------
// Filtrations and spectral sequences.

void Filtration::validate() const {
    if (level.size() != complex.labels.size())
        throw ValidationError("filtration needs one level list per degree");
    for (int n = 0; n <= complex.top_degree(); ++n)
        if (static_cast<int>(level[n].size()) != complex.dim(n))
            throw ValidationError("level list has the wrong length in degree " +
                                  std::to_string(n));
    for (int n = 1; n <= complex.top_degree(); ++n)
        for (int i = 0; i < complex.dim(n - 1); ++i)
            for (int j = 0; j < complex.dim(n); ++j)
                if (complex.boundary[n][i][j] != 0 && level[n - 1][i] > level[n][j])
                    throw ValidationError("boundary raises the filtration level at " +
                                          complex.labels[n][j]);
}

int Page::rank(int s, int n) const {
    auto it = entries.find({s, n});
    return it == entries.end() ? 0 : it->second.rank;
}

const QMat* Page::differential(int s, int n) const {
    auto it = entries.find({s, n});
    if (it == entries.end() || qcols(it->second.d) == 0 || qrows(it->second.d) == 0)
        return nullptr;
    return &it->second.d;
}

std::string Page::table() const {
    std::ostringstream os;
    os << "E^" << r << "  (s = filtration level, n = total degree)\n";
    if (entries.empty()) {
        os << "  (zero page)\n";
        return os.str();
    }
    os << std::setw(5) << "s" << std::setw(5) << "n" << std::setw(6) << "rank" << "\n";
    for (auto& [key, e] : entries)
        os << std::setw(5) << key.first << std::setw(5) << key.second << std::setw(6)
           << e.rank << "\n";
    for (auto& [key, e] : entries) {
        if (qrows(e.d) == 0 || qcols(e.d) == 0) continue;
        os << "d^" << r << " (" << key.first << "," << key.second << ") -> ("
           << key.first - r << "," << key.second - 1 << "):\n";
        size_t w = 1;
        for (auto& row : e.d)
            for (auto& x : row) w = std::max(w, rat_str(x).size());
        for (auto& row : e.d) {
            os << "  [";
            for (auto& x : row) os << " " << std::setw(static_cast<int>(w)) << rat_str(x);
            os << " ]\n";
        }
    }
    return os.str();
}

SpectralSequence spectral_sequence(const Field& k, const Filtration& f) {
    f.validate();
    const FiniteComplex& C = f.complex;
    int N = C.top_degree();
    std::vector<int> dims(N + 1);
    for (int n = 0; n <= N; ++n) dims[n] = C.dim(n);

    std::vector<QMat> B(N + 1);
    for (int n = 1; n <= N; ++n) {
        B[n] = to_rat(C.boundary[n]);
        for (auto& row : B[n])
            for (auto& e : row) e = k.reduce(e);
    }
    for (int n = 2; n <= N; ++n) {
        if (dims[n] == 0 || dims[n - 2] == 0) continue;
        QMat sq = matmul_over(k, B[n - 1], B[n]);
        for (auto& row : sq)
            for (auto& e : row)
                if (e != 0)
                    throw ValidationError("boundary squared is nonzero over " + k.str());
    }

    SpectralSequence ss;
    ss.field = k;
    int smin = 0, smax = 0;
    bool seen = false;
    for (int n = 0; n <= N; ++n)
        for (int i = 0; i < dims[n]; ++i) {
            int l = f.level[n][i];
            if (!seen) {
                smin = smax = l;
                seen = true;
            }
            smin = std::min(smin, l);
            smax = std::max(smax, l);
        }
    if (!seen) {
        ss.pages.push_back(Page{});
        return ss;
    }
    int R = smax - smin + 1;

    // Z^r_{s,n} = {x in F_s C_n : dx in F_{s-r} C_{n-1}}, as columns; r = -1
    // gives F_s C_n itself.
    std::map<std::array<int, 3>, QMat> zmemo;
    auto zspace = [&](int r, int s, int n) -> const QMat& {
        std::array<int, 3> key{r, s, n};
        auto it = zmemo.find(key);
        if (it != zmemo.end()) return it->second;
        QMat out;
        if (n >= 0 && n <= N && dims[n] > 0) {
            std::vector<int> cols;
            for (int i = 0; i < dims[n]; ++i)
                if (f.level[n][i] <= s) cols.push_back(i);
            std::vector<int> rows;
            if (n >= 1)
                for (int j = 0; j < dims[n - 1]; ++j)
                    if (f.level[n - 1][j] > s - r) rows.push_back(j);
            if (!cols.empty() && rows.empty()) {
                out = qzero(dims[n], static_cast<int>(cols.size()));
                for (size_t b = 0; b < cols.size(); ++b) out[cols[b]][b] = 1;
            } else if (!cols.empty()) {
                QMat sub = qzero(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
                for (size_t a = 0; a < rows.size(); ++a)
                    for (size_t b = 0; b < cols.size(); ++b) sub[a][b] = B[n][rows[a]][cols[b]];
                QMat K = nullspace_over(k, sub);
                out = qzero(dims[n], qcols(K));
                for (size_t b = 0; b < cols.size(); ++b)
                    for (int j = 0; j < qcols(K); ++j) out[cols[b]][j] = K[b][j];
            }
        }
        return zmemo[key] = std::move(out);
    };

    const Page* prev = nullptr;
    for (int r = 0; r <= R; ++r) {
        Page pg;
        pg.r = r;
        std::map<std::pair<int, int>, QMat> reps, dens;
        for (int n = 0; n <= N; ++n) {
            if (dims[n] == 0) continue;
            for (int s = smin; s <= smax; ++s) {
                const QMat& Z = zspace(r, s, n);
                if (qcols(Z) == 0) continue;
                QMat D = zspace(r - 1, s - 1, n);
                const QMat& up = zspace(r - 1, s + r - 1, n + 1);
                if (qcols(up) > 0 && n + 1 <= N && dims[n] > 0)
                    D = concat_cols(D, matmul_over(k, B[n + 1], up));
                D = independent_columns(k, D);
                QMat Rp = extend_basis(k, D, Z);
                if (qcols(Rp) == 0) continue;
                pg.entries[{s, n}].rank = qcols(Rp);
                reps[{s, n}] = std::move(Rp);
                dens[{s, n}] = std::move(D);
            }
        }
        for (auto& [key, e] : pg.entries) {
            auto [s, n] = key;
            int tr = pg.rank(s - r, n - 1);
            if (tr == 0 || n == 0) continue;
            const QMat& Rs = reps[{s, n}];
            QMat sys = concat_cols(reps[{s - r, n - 1}], dens[{s - r, n - 1}]);
            QMat M = qzero(tr, e.rank);
            for (int j = 0; j < e.rank; ++j) {
                std::vector<Rat> x(dims[n]);
                for (int i = 0; i < dims[n]; ++i) x[i] = Rs[i][j];
                std::vector<Rat> v = mat_vec(k, B[n], x);
                auto sol = solve_over(k, sys, v);
                if (!sol)
                    throw ValidationError("page differential escapes its target window");
                for (int i = 0; i < tr; ++i) M[i][j] = (*sol)[i];
            }
            e.d = std::move(M);
        }
        if (prev) {
            // E^r must be the homology of (E^{r-1}, d^{r-1})
            std::map<std::pair<int, int>, bool> keys;
            for (auto& [key, e] : prev->entries) keys[key] = true;
            for (auto& [key, e] : pg.entries) keys[key] = true;
            for (auto& [key, ignored] : keys) {
                auto [s, n] = key;
                int out_rank = 0, in_rank = 0;
                if (const QMat* d = prev->differential(s, n)) out_rank = rank_over(k, *d);
                if (const QMat* d = prev->differential(s + r - 1, n + 1))
                    in_rank = rank_over(k, *d);
                int expected = prev->rank(s, n) - out_rank - in_rank;
                if (pg.rank(s, n) != expected)
                    throw ValidationError("E^" + std::to_string(r) +
                                          " is not the homology of the previous page");
            }
        }
        ss.pages.push_back(std::move(pg));
        prev = &ss.pages.back();
    }
    return ss;
}

// ---------------------------------------------------------------------------
// Augmentation filtration and the graded twisting cochain.

Filtration AugmentationFiltration::filtration() const {
    Filtration f;
    f.complex.labels.resize(1);
    f.complex.boundary.resize(1);
    for (int j = 0; j < qcols(basis); ++j) {
        std::vector<Rat> col(qrows(basis));
        for (int i = 0; i < qrows(basis); ++i) col[i] = basis[i][j];
        f.complex.labels[0].push_back(combo_str(col, element_names));
    }
    f.level.push_back(level);
    return f;
}

AugmentationFiltration augmentation_filtration(const Field& k, const Fibre& F) {
    GroupPtr G = F.group_ptr();
    if (G->kind() != SimplicialGroup::Kind::Finite)
        throw InfiniteDegree("augmentation filtration needs a finite structure group");

    std::vector<FibreElt> els = F.all(0);
    int ne = static_cast<int>(els.size());
    AugmentationFiltration af;
    af.field = k;
    for (auto& y : els) af.element_names.push_back(F.str(y));

    std::map<FibreElt, int> index;
    for (int a = 0; a < ne; ++a) index[els[a]] = a;

    // permutation action of every group element on the basis of k[F]
    std::vector<std::vector<int>> act(G->order(), std::vector<int>(ne));
    for (int g = 0; g < G->order(); ++g) {
        GroupWord w = G->felement(G->element_name(g), 0);
        for (int a = 0; a < ne; ++a) {
            auto it = index.find(F.act(w, els[a]));
            if (it == index.end())
                throw ValidationError("group action leaves the vertex set");
            act[g][a] = it->second;
        }
    }

    // a^p k[F] as a descending chain of column spans
    auto step = [&](const QMat& V) {
        QMat next;
        for (int g = 0; g < G->order(); ++g) {
            if (g == G->unit_index()) continue;
            for (int j = 0; j < qcols(V); ++j) {
                QMat w = qzero(ne, 1);
                for (int a = 0; a < ne; ++a) {
                    if (V[a][j] == 0) continue;
                    w[act[g][a]][0] += V[a][j];
                    w[a][0] -= V[a][j];
                }
                for (int a = 0; a < ne; ++a) w[a][0] = k.reduce(w[a][0]);
                next = concat_cols(next, w);
            }
        }
        return independent_columns(k, next);
    };

    std::vector<QMat> stages;
    QMat id = qzero(ne, ne);
    for (int a = 0; a < ne; ++a) id[a][a] = 1;
    stages.push_back(std::move(id));
    af.nilpotency = -1;
    for (int p = 1; p <= ne + 1; ++p) {
        QMat next = step(stages.back());
        if (qcols(next) == 0) {
            af.nilpotency = p;
            break;
        }
        if (qcols(next) == qcols(stages.back())) break;  // stabilized, not nilpotent
        stages.push_back(std::move(next));
    }
    int deepest = static_cast<int>(stages.size()) - 1;

    // adapted basis, deepest stage first, then sorted level-descending
    std::vector<std::pair<int, std::vector<Rat>>> records;
    QMat acc;
    for (int p = deepest; p >= 0; --p) {
        QMat picked = extend_basis(k, acc, stages[p]);
        acc = concat_cols(acc, picked);
        for (int j = 0; j < qcols(picked); ++j) {
            std::vector<Rat> col(ne);
            for (int a = 0; a < ne; ++a) col[a] = picked[a][j];
            records.emplace_back(-p, std::move(col));
        }
    }
    if (static_cast<int>(records.size()) != ne)
        throw ValidationError("adapted basis has the wrong size");

    af.basis = qzero(ne, ne);
    int j = 0;
    for (int lvl = 0; lvl >= -deepest; --lvl)
        for (auto& [l, col] : records) {
            if (l != lvl) continue;
            for (int a = 0; a < ne; ++a) af.basis[a][j] = col[a];
            af.level.push_back(lvl);
            ++j;
        }
    af.basis_inv = inverse_over(k, af.basis);
    return af;
}

GradedTwist graded_twisting_cochain(const Field& k, const TwistingFunction& tau,
                                    const AugmentationFiltration& af) {
    GroupPtr G = tau.group_ptr();
    int ne = static_cast<int>(af.element_names.size());
    if (G->kind() != SimplicialGroup::Kind::Finite || G->order() != ne)
        throw DimensionMismatch("adapted basis does not match the twisting group");
    std::map<std::string, int> name_index;
    for (int a = 0; a < ne; ++a) name_index[af.element_names[a]] = a;

    const Presentation& X = tau.domain();
    FiniteComplex CX = complex_of_presentation(X, 2);

    // representative cycles of H_1(X; k)
    QMat cycles;
    if (CX.dim(1) > 0) {
        QMat Z = CX.dim(0) > 0 ? nullspace_over(k, to_rat(CX.boundary[1]))
                               : QMat{};
        if (CX.dim(0) == 0) {
            Z = qzero(CX.dim(1), CX.dim(1));
            for (int i = 0; i < CX.dim(1); ++i) Z[i][i] = 1;
        }
        QMat img = CX.dim(2) > 0 ? independent_columns(k, to_rat(CX.boundary[2])) : QMat{};
        cycles = extend_basis(k, img, Z);
    }

    // t on the 1-simplex basis, in k[G] coordinates
    auto tvec = [&](const ChainG& tg) {
        std::vector<Rat> v(ne, Rat(0));
        for (auto& [w, c] : tg.terms) {
            auto it = name_index.find(G->element_name(w.felt));
            if (it == name_index.end())
                throw ValidationError("twisting value outside the group basis");
            v[it->second] += Rat(c);
        }
        for (auto& e : v) e = k.reduce(e);
        return v;
    };
    auto adapted = [&](const std::vector<Rat>& v) { return mat_vec(k, af.basis_inv, v); };

    std::vector<Simplex> edges = X.nondegenerate(1);
    std::vector<std::vector<Rat>> tcols;  // adapted coordinates of t(edge)
    for (auto& x : edges) {
        std::vector<Rat> a = adapted(tvec(szczarba_t(tau, x)));
        for (int i = 0; i < ne; ++i)
            if (af.level[i] == 0 && a[i] != 0)
                throw ValidationError("t(x) is not in the augmentation ideal");
        tcols.push_back(std::move(a));
    }

    GradedTwist gt;
    gt.cycles = cycles;
    std::vector<int> block;
    for (int i = 0; i < ne; ++i)
        if (af.level[i] == -1) block.push_back(i);
    gt.matrix = qzero(static_cast<int>(block.size()), qcols(cycles));
    for (int j = 0; j < qcols(cycles); ++j) {
        std::vector<Rat> a(ne, Rat(0));
        for (size_t e = 0; e < edges.size(); ++e) {
            if (cycles[e][j] == 0) continue;
            for (int i = 0; i < ne; ++i) a[i] += cycles[e][j] * tcols[e][i];
        }
        for (size_t bi = 0; bi < block.size(); ++bi)
            gt.matrix[bi][j] = k.reduce(a[block[bi]]);
    }

    gt.well_defined = true;
    for (auto& c : X.nondegenerate(2)) {
        std::vector<Rat> a = adapted(tvec(szczarba_t(tau, boundary(X, c))));
        for (int i = 0; i < ne; ++i)
            if (af.level[i] >= -1 && a[i] != 0) gt.well_defined = false;
    }
    return gt;
}

// ---------------------------------------------------------------------------
// Bridges.

FiniteComplex complex_of_presentation(const Presentation& P, int nmax) {
    FiniteComplex C;
    C.labels.resize(nmax + 1);
    C.boundary.resize(nmax + 1);
    std::vector<std::vector<Simplex>> basis(nmax + 1);
    std::vector<std::map<Simplex, int>> index(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        basis[n] = P.nondegenerate(n);
        for (size_t i = 0; i < basis[n].size(); ++i) {
            C.labels[n].push_back(P.str(basis[n][i]));
            index[n][basis[n][i]] = static_cast<int>(i);
        }
    }
    for (int n = 1; n <= nmax; ++n) {
        C.boundary[n] = izero(static_cast<int>(basis[n - 1].size()),
                              static_cast<int>(basis[n].size()));
        for (size_t j = 0; j < basis[n].size(); ++j)
            for (auto& [y, c] : boundary(P, basis[n][j]).terms)
                C.boundary[n][index[n - 1].at(y)][j] = c;
    }
    C.validate();
    return C;
}

namespace {

void enumerate_words(const std::vector<std::pair<Simplex, int>>& letters, int remaining,
                     std::vector<Simplex>& cur, std::vector<CobarWord>& out) {
    if (remaining == 0) {
        out.push_back(CobarWord{cur});
        return;
    }
    for (auto& [x, susp] : letters) {
        if (susp > remaining) continue;
        cur.push_back(x);
        enumerate_words(letters, remaining - susp, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FiniteComplex complex_of_cobar(const Presentation& P, int nmax) {
    if (!P.one_reduced())
        throw NotOneReduced("the cobar word basis is finite only for 1-reduced presentations");
    std::vector<std::pair<Simplex, int>> letters;
    for (int d = 2; d <= P.max_dim(); ++d)
        for (auto& x : P.nondegenerate(d)) letters.emplace_back(x, d - 1);

    FiniteComplex C;
    C.labels.resize(nmax + 1);
    C.boundary.resize(nmax + 1);
    std::vector<std::vector<CobarWord>> basis(nmax + 1);
    std::vector<std::map<CobarWord, int>> index(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        std::vector<Simplex> cur;
        enumerate_words(letters, n, cur, basis[n]);
        for (size_t i = 0; i < basis[n].size(); ++i) {
            C.labels[n].push_back(basis[n][i].str(P));
            index[n][basis[n][i]] = static_cast<int>(i);
        }
    }
    for (int n = 1; n <= nmax; ++n) {
        C.boundary[n] = izero(static_cast<int>(basis[n - 1].size()),
                              static_cast<int>(basis[n].size()));
        for (size_t j = 0; j < basis[n].size(); ++j)
            for (auto& [w, c] : cobar_differential(P, basis[n][j]).terms)
                C.boundary[n][index[n - 1].at(w)][j] = c;
    }
    C.validate();
    return C;
}

FiniteComplex complex_of_twisted_tensor(const TwistedTensorComplex& T, int nmax) {
    FiniteComplex C;
    C.labels.resize(nmax + 1);
    C.boundary.resize(nmax + 1);
    std::vector<std::vector<PairXF>> basis(nmax + 1);
    std::vector<std::map<PairXF, int>> index(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        basis[n] = T.basis(n);
        for (size_t i = 0; i < basis[n].size(); ++i) {
            C.labels[n].push_back(T.str(basis[n][i]));
            index[n][basis[n][i]] = static_cast<int>(i);
        }
    }
    for (int n = 1; n <= nmax; ++n) {
        C.boundary[n] = izero(static_cast<int>(basis[n - 1].size()),
                              static_cast<int>(basis[n].size()));
        for (size_t j = 0; j < basis[n].size(); ++j)
            for (auto& [y, c] : twisted_differential(T, basis[n][j]).terms)
                C.boundary[n][index[n - 1].at(y)][j] = c;
    }
    C.validate();
    return C;
}

FiniteComplex complex_of_twisted_product(const TwistedProduct& T, int nmax) {
    FiniteComplex C;
    C.labels.resize(nmax + 1);
    C.boundary.resize(nmax + 1);
    std::vector<std::vector<TwistedSimplex>> basis(nmax + 1);
    std::vector<std::map<TwistedSimplex, int>> index(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        basis[n] = T.nondegenerate(n);
        for (size_t i = 0; i < basis[n].size(); ++i) {
            C.labels[n].push_back(T.str(basis[n][i]));
            index[n][basis[n][i]] = static_cast<int>(i);
        }
    }
    for (int n = 1; n <= nmax; ++n) {
        C.boundary[n] = izero(static_cast<int>(basis[n - 1].size()),
                              static_cast<int>(basis[n].size()));
        for (size_t j = 0; j < basis[n].size(); ++j)
            for (auto& [z, c] : T.boundary(basis[n][j]).terms)
                C.boundary[n][index[n - 1].at(z)][j] = c;
    }
    C.validate();
    return C;
}

std::vector<IMat> psi_matrices(const TwistedTensorComplex& T, const TwistedProduct& Tp,
                               int nmax) {
    if (T.twist_ptr() != Tp.twist_ptr() || T.fibre_ptr() != Tp.fibre_ptr())
        throw ValidationError("psi needs the same twist and fibre on both sides");
    std::vector<IMat> f(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        std::vector<PairXF> src = T.basis(n);
        std::vector<TwistedSimplex> dst = Tp.nondegenerate(n);
        std::map<TwistedSimplex, int> index;
        for (size_t i = 0; i < dst.size(); ++i) index[dst[i]] = static_cast<int>(i);
        f[n] = izero(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (size_t j = 0; j < src.size(); ++j)
            for (auto& [z, c] : psi(Tp, src[j].a, src[j].b).terms)
                f[n][index.at(z)][j] = c;
    }
    return f;
}

Filtration cover_filtration(const TwistedTensorComplex& T,
                            const AugmentationFiltration& af, int nmax) {
    const Field& k = af.field;
    const Fibre& F = T.fibre();
    for (int m = 1; m <= nmax; ++m)
        for (auto& y : F.all(m))
            if (!F.degenerate(y))
                throw ValidationError("cover filtration needs a discrete fibre");

    std::vector<FibreElt> els = F.all(0);
    int ne = static_cast<int>(els.size());
    if (ne != static_cast<int>(af.element_names.size()))
        throw DimensionMismatch("adapted basis does not match the fibre");
    std::map<FibreElt, int> eidx;
    for (int a = 0; a < ne; ++a) eidx[els[a]] = a;

    const Presentation& X = T.base();
    Filtration f;
    f.complex.labels.resize(nmax + 1);
    f.complex.boundary.resize(nmax + 1);
    f.level.resize(nmax + 1);

    std::vector<std::vector<Simplex>> xs(nmax + 1);
    std::vector<std::map<Simplex, int>> xidx(nmax + 1);
    Filtration fib = af.filtration();
    for (int n = 0; n <= nmax; ++n) {
        xs[n] = X.nondegenerate(n);
        for (size_t i = 0; i < xs[n].size(); ++i) {
            xidx[n][xs[n][i]] = static_cast<int>(i);
            for (int j = 0; j < ne; ++j) {
                f.complex.labels[n].push_back(X.str(xs[n][i]) + " (x) (" +
                                              fib.complex.labels[0][j] + ")");
                f.level[n].push_back(af.level[j]);
            }
        }
    }

    for (int n = 1; n <= nmax; ++n) {
        int rows = static_cast<int>(xs[n - 1].size()) * ne;
        int cols = static_cast<int>(xs[n].size()) * ne;
        QMat M = qzero(rows, cols);
        for (size_t xj = 0; xj < xs[n].size(); ++xj) {
            // differential of x (x) e_a, then both sides to the adapted basis
            std::vector<std::map<std::pair<Simplex, int>, Rat>> cols_by_a(ne);
            for (int a = 0; a < ne; ++a)
                for (auto& [pair, c] : twisted_differential(T, PairXF{xs[n][xj], els[a]}).terms) {
                    auto it = eidx.find(pair.b);
                    if (it == eidx.end() || pair.a.dim() != n - 1)
                        throw ValidationError("cover differential leaves the product basis");
                    cols_by_a[a][{pair.a, it->second}] += Rat(c);
                }
            for (int j = 0; j < ne; ++j) {
                std::map<std::pair<Simplex, int>, Rat> out;
                for (int a = 0; a < ne; ++a) {
                    if (af.basis[a][j] == 0) continue;
                    for (auto& [key, c] : cols_by_a[a]) out[key] += af.basis[a][j] * c;
                }
                // regroup each x'-block through basis_inv
                for (size_t xi = 0; xi < xs[n - 1].size(); ++xi) {
                    std::vector<Rat> v(ne, Rat(0));
                    bool any = false;
                    for (int b = 0; b < ne; ++b) {
                        auto it = out.find({xs[n - 1][xi], b});
                        if (it != out.end() && it->second != 0) {
                            v[b] = it->second;
                            any = true;
                        }
                    }
                    if (!any) continue;
                    std::vector<Rat> w = mat_vec(k, af.basis_inv, v);
                    for (int jj = 0; jj < ne; ++jj)
                        M[xi * ne + jj][xj * ne + j] = w[jj];
                }
            }
        }
        f.complex.boundary[n] = izero(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                using boost::multiprecision::denominator;
                using boost::multiprecision::numerator;
                Rat e = k.reduce(M[i][j]);
                if (denominator(e) != 1)
                    throw ValidationError("filtered boundary is not integral over " + k.str() +
                                          "; use a prime field");
                f.complex.boundary[n][i][j] = numerator(e);
            }
    }
    f.validate();
    return f;
}

Filtration serre_filtration(const TwistedTensorComplex& T, int nmax) {
    Filtration f;
    f.complex = complex_of_twisted_tensor(T, nmax);
    f.level.resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n)
        for (auto& pair : T.basis(n)) f.level[n].push_back(pair.a.dim());
    f.validate();
    return f;
}

Filtration dual_filtration(const Filtration& f) {
    int N = f.complex.top_degree();
    Filtration g;
    g.complex.labels.resize(N + 1);
    g.complex.boundary.resize(N + 1);
    g.level.resize(N + 1);
    for (int kk = 0; kk <= N; ++kk) {
        for (auto& lab : f.complex.labels[N - kk]) g.complex.labels[kk].push_back(lab + "*");
        for (int lvl : f.level[N - kk]) g.level[kk].push_back(-lvl);
    }
    for (int kk = 1; kk <= N; ++kk) {
        const IMat& B = f.complex.boundary[N - kk + 1];
        g.complex.boundary[kk] = izero(f.complex.dim(N - kk + 1), f.complex.dim(N - kk));
        for (int i = 0; i < irows(B); ++i)
            for (int j = 0; j < icols(B); ++j) g.complex.boundary[kk][j][i] = -B[i][j];
    }
    g.validate();
    return g;
}

}  // namespace sz
