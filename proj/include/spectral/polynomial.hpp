#pragma once

#include <cstddef>
#include <vector>

#include "spectral/bigreal.hpp"

namespace spectral {

// Dense polynomial over a coefficient ring T.  The zero polynomial is the
// empty coefficient vector; all operations trim trailing zeros so degree
// queries stay meaningful.  Instantiated as:
//   EPoly  = Polynomial<BigReal>                 polynomials in the energy E
//   RPoly  = Polynomial<EPoly>                   polynomials in r, coeffs in E
//   BiPoly = Polynomial<Polynomial<BigReal>>     bivariate (outer/inner vars)
template <class T>
struct Polynomial;

inline bool coeff_is_zero(const BigReal& x) { return x.is_zero(); }
template <class T>
bool coeff_is_zero(const Polynomial<T>& p);

template <class T>
struct Polynomial {
    std::vector<T> c;  // c[i] multiplies x^i

    Polynomial() = default;
    explicit Polynomial(std::vector<T> v) : c(std::move(v)) { trim(); }

    static Polynomial constant(T v) {
        Polynomial p;
        if (!coeff_is_zero(v)) p.c.push_back(std::move(v));
        return p;
    }

    bool is_zero() const { return c.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c.size()) - 1; }

    void trim() {
        while (!c.empty() && coeff_is_zero(c.back())) c.pop_back();
    }

    T coeff(size_t i) const { return i < c.size() ? c[i] : T(); }
};

template <class T>
bool coeff_is_zero(const Polynomial<T>& p) {
    return p.is_zero();
}

using EPoly = Polynomial<BigReal>;
using RPoly = Polynomial<EPoly>;
using BiPoly = Polynomial<Polynomial<BigReal>>;

template <class T>
Polynomial<T> operator+(const Polynomial<T>& a, const Polynomial<T>& b) {
    const Polynomial<T>& big = a.c.size() >= b.c.size() ? a : b;
    const Polynomial<T>& small = a.c.size() >= b.c.size() ? b : a;
    Polynomial<T> out = big;
    for (size_t i = 0; i < small.c.size(); ++i) out.c[i] = out.c[i] + small.c[i];
    out.trim();
    return out;
}

template <class T>
Polynomial<T> operator-(const Polynomial<T>& a) {
    Polynomial<T> out = a;
    for (auto& x : out.c) x = -x;
    return out;
}

template <class T>
Polynomial<T> operator-(const Polynomial<T>& a, const Polynomial<T>& b) {
    return a + (-b);
}

template <class T>
Polynomial<T> operator*(const Polynomial<T>& a, const Polynomial<T>& b) {
    Polynomial<T> out;
    if (a.is_zero() || b.is_zero()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, T());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
    out.trim();
    return out;
}

// scalar multiples: BigReal acts on every nesting level
inline BigReal scale_coeff(const BigReal& x, const BigReal& s) { return x * s; }
template <class T>
Polynomial<T> scale_coeff(const Polynomial<T>& p, const BigReal& s) {
    Polynomial<T> out = p;
    for (auto& x : out.c) x = scale_coeff(x, s);
    out.trim();
    return out;
}

template <class T>
Polynomial<T> operator*(const Polynomial<T>& p, const BigReal& s) {
    return scale_coeff(p, s);
}
template <class T>
Polynomial<T> operator*(const BigReal& s, const Polynomial<T>& p) {
    return scale_coeff(p, s);
}

template <class T>
Polynomial<T> operator*(const Polynomial<T>& p, long n) {
    Polynomial<T> out = p;
    for (auto& x : out.c) x = x * n;
    out.trim();
    return out;
}

template <class T>
Polynomial<T> derivative(const Polynomial<T>& p) {
    Polynomial<T> out;
    if (p.c.size() < 2) return out;
    out.c.reserve(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) out.c.push_back(p.c[i] * static_cast<long>(i));
    out.trim();
    return out;
}

// Horner evaluation; X must support T * X -> T and admit T + T.
template <class T, class X>
T eval(const Polynomial<T>& p, const X& x) {
    if (p.is_zero()) return T();
    T acc = p.c.back();
    for (size_t i = p.c.size() - 1; i-- > 0;) acc = acc * x + p.c[i];
    return acc;
}

inline BigReal coeff_max_abs(const BigReal& x) { return abs(x); }
template <class T>
BigReal coeff_max_abs(const Polynomial<T>& p) {
    BigReal m;
    for (const auto& x : p.c) {
        BigReal v = coeff_max_abs(x);
        if (v > m) m = v;
    }
    return m;
}

// Determinant over an arbitrary commutative ring by expansion along rows with
// a subset DP over column choices: O(m^2 * 2^m) ring multiplications.  Meant
// for small matrices (m <= ~12) of polynomial entries where fraction-free
// elimination would blow up degrees.
template <class T>
T ring_det(const std::vector<std::vector<T>>& M) {
    size_t m = M.size();
    if (m == 0) return T();
    for (const auto& row : M)
        if (row.size() != m) throw DomainError("ring_det: matrix is not square");
    size_t full = (size_t{1} << m) - 1;
    // dp[mask] = det of the submatrix formed by the first popcount(mask) rows
    // and the column set `mask`.
    std::vector<T> dp(full + 1, T());
    for (size_t j = 0; j < m; ++j) dp[size_t{1} << j] = M[0][j];
    for (size_t mask = 1; mask <= full; ++mask) {
        size_t r = static_cast<size_t>(__builtin_popcountll(mask));
        if (r < 2) continue;
        // Expand along row r-1: sign is (-1)^((r-1) + position of column in mask).
        T acc{};
        bool first = true;
        int sign = 1;
        for (size_t j = 0; j < m; ++j) {
            size_t bit = size_t{1} << j;
            if (!(mask & bit)) continue;
            T term = M[r - 1][j] * dp[mask ^ bit];
            if (sign < 0) term = -term;
            acc = first ? std::move(term) : acc + term;
            first = false;
            sign = -sign;
        }
        if ((r - 1) & 1) acc = -acc;
        dp[mask] = std::move(acc);
    }
    return dp[full];
}

}  // namespace spectral
