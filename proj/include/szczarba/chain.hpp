#pragma once

#include "szczarba/basics.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace sz {

// Sparse integer linear combination over an ordered basis type.  Degenerate
// basis elements are never stored; callers drop them on insertion (each
// operation knows its own degeneracy predicate).
template <class B>
struct LinComb {
    std::map<B, Int> terms;

    bool zero() const { return terms.empty(); }

    void add(const B& b, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(b, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    LinComb& operator+=(const LinComb& o) {
        for (auto& [b, c] : o.terms) add(b, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (auto& [b, c] : o.terms) add(b, -c);
        return *this;
    }
    LinComb& operator*=(const Int& k) {
        if (k == 0) {
            terms.clear();
            return *this;
        }
        for (auto& [b, c] : terms) const_cast<Int&>(c) *= k;  // keys untouched
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Int& k, LinComb a) { return a *= k; }
    friend LinComb operator*(LinComb a, const Int& k) { return a *= k; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms == b.terms; }

    static LinComb single(const B& b, Int c = 1) {
        LinComb l;
        l.add(b, c);
        return l;
    }

    // Pushforward along a basis map producing chains; f may drop (normalize).
    template <class C>
    LinComb<C> map(const std::function<LinComb<C>(const B&)>& f) const {
        LinComb<C> out;
        for (auto& [b, c] : terms) {
            LinComb<C> fb = f(b);
            for (auto& [b2, c2] : fb.terms) out.add(b2, c * c2);
        }
        return out;
    }

    std::string str(const std::function<std::string(const B&)>& basis_str) const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [b, c] : terms) {
            Int a = c;
            if (first) {
                if (a < 0) {
                    os << "- ";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (a != 1) os << a.str() << "*";
            os << basis_str(b);
        }
        return os.str();
    }
};

// Ordered pair basis for tensor products of chain complexes.
template <class A, class B>
struct Ten {
    A a;
    B b;
    friend bool operator==(const Ten&, const Ten&) = default;
    friend bool operator<(const Ten& x, const Ten& y) {
        if (x.a < y.a) return true;
        if (y.a < x.a) return false;
        return x.b < y.b;
    }
};

// tensor of chains, with an explicit Koszul sign supplied by the caller when
// one of the factors was produced by a degree-shifting map
template <class A, class B>
LinComb<Ten<A, B>> tensor(const LinComb<A>& x, const LinComb<B>& y) {
    LinComb<Ten<A, B>> out;
    for (auto& [a, ca] : x.terms)
        for (auto& [b, cb] : y.terms) out.add(Ten<A, B>{a, b}, ca * cb);
    return out;
}

} // namespace sz
