#pragma once

#include "szczarba/cobar.hpp"
#include "szczarba/fibre.hpp"

namespace sz {

// i = (i_1,...,i_l) with 0 <= i_s <= n-s, i.e. a member of S_{n,l}.
struct IndexSequence {
    int n = 0;
    std::vector<int> entries;

    IndexSequence() = default;
    IndexSequence(int n_, std::vector<int> entries_);

    int length() const { return static_cast<int>(entries.size()); }
    int degree() const;
    bool full() const { return length() == n; }  // member of S_n = S_{n,n}
    IndexSequence tail() const;                  // (i_2,...,i_l) in S_{n-1,l-1}
    std::string str() const;

    friend bool operator==(const IndexSequence&, const IndexSequence&) = default;
    friend bool operator<(const IndexSequence& a, const IndexSequence& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size();
        return a.entries < b.entries;
    }
};

// S_{n,l} in lexicographic order; S_n = S_{n,n}.
std::vector<IndexSequence> S_nl(int n, int l);
std::vector<IndexSequence> S_n(int n);

// D^k_i for i in S_n and 0 <= k <= n; raises dimension by k.
OperatorWord d_operator(int k, const IndexSequence& i);

// Sz_i x = D^0_i sigma(x) D^1_i sigma(d_0 x) ... D^{n-1}_i sigma(d_0^{n-1} x),
// a product in G_{n-1}, for x of dimension n >= 1 and i in S_{n-1}.
GroupWord szczarba_Sz(const TwistingFunction& tf, const IndexSequence& i, const Simplex& x);

// Szczarba's twisting cochain: 0 in dimension 0, sigma(x) - 1 in dimension 1,
// sum of (-1)^{deg i} Sz_i x over S_{n-1} in higher dimensions.  Degenerate
// group simplices vanish on injection into the normalized chains.
ChainG szczarba_t(const TwistingFunction& tf, const Simplex& x);
ChainG szczarba_t(const TwistingFunction& tf, const ChainX& c);
Cochain<GroupWord> szczarba_cochain(TwistPtr tf);

// hatSz_i x = (D^0_i x, D^1_i sigma(x) ... D^n_i sigma(d_0^{n-1} x)) in X_n x G_n
// for i in S_n; equals (x, 1) for n = 0.
std::pair<Simplex, GroupWord> szczarba_hatSz(const TwistingFunction& tf,
                                             const IndexSequence& i, const Simplex& x);

// Twisted shuffle map
//   psi(x (x) y) = sum_{i in S_n} (-1)^{deg i} (id, mu)_* shuffle(hatSz_i x (x) y).
ChainT psi(const TwistedProduct& T, const Simplex& x, const FibreElt& y);
ChainT psi(const TwistedProduct& T, const LinComb<Ten<Simplex, FibreElt>>& c);

// Psi_p: an i in S_{N-1}(p) describes an order of removing from [0..N] the
// vertices missing from p; the decomposition records the per-interval removal
// orders j_s and the interleaving shuffle alpha.
struct ShuffleDecomposition {
    std::vector<std::vector<int>> alpha;  // blocks of a partition of [0..l-1]
    std::vector<IndexSequence> j;         // j_s in S_{q_s - 1}
    int alpha_sign_exponent() const;      // inversion parity (alpha)
};
ShuffleDecomposition Psi_p(const std::vector<int>& p, const IndexSequence& i);
IndexSequence inverse_Psi_p(const std::vector<int>& p, const ShuffleDecomposition& d);
// S_{N-1}(p) in lexicographic order, where N = p.back().
std::vector<IndexSequence> S_of_p(const std::vector<int>& p);

// Degeneracy descent (j, q) = Phi(i, p), so that Sz_i s_p = s_q Sz_j.
std::pair<IndexSequence, int> Phi(const IndexSequence& i, int p);

} // namespace sz
