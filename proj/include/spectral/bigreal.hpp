#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "spectral/errors.hpp"

namespace spectral {

// Working precision expressed in decimal digits.  Conversion to mpfr bits
// includes guard bits so that `digits` decimal digits survive round trips.
struct Precision {
    long digits;

    explicit Precision(long d) : digits(d) {
        if (d < 1) throw DomainError("Precision: digits must be >= 1");
    }
    mpfr_prec_t bits() const {
        // log2(10) = 3.3219...; +16 guard bits
        return static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.32193 + 17.0);
    }
    static Precision from_bits(mpfr_prec_t b) {
        long d = static_cast<long>(static_cast<double>(b) / 3.32193);
        return Precision(d < 1 ? 1 : d);
    }
};

// Arbitrary-precision real. Thin RAII wrapper over mpfr_t; every value carries
// its own precision, binary operations compute at the larger of the two.
// Rounding is to nearest everywhere.
class BigReal {
  public:
    BigReal() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigReal(Precision p) { mpfr_init2(v_, p.bits()); mpfr_set_zero(v_, 1); }
    BigReal(long v, Precision p) { mpfr_init2(v_, p.bits()); mpfr_set_si(v_, v, MPFR_RNDN); }
    BigReal(const std::string& s, Precision p);

    BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    static BigReal zero(Precision p) { return BigReal(p); }
    static BigReal zero_like(const BigReal& x) { return BigReal(Precision::from_bits(x.prec_bits())); }
    static BigReal pi(Precision p);

    mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }
    Precision precision() const { return Precision::from_bits(prec_bits()); }

    // Returns a copy rounded to precision p (used to pin working precision).
    BigReal at_precision(Precision p) const {
        BigReal r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    int sign() const { return mpfr_zero_p(v_) ? 0 : (mpfr_sgn(v_) > 0 ? 1 : -1); }
    // Binary exponent e with 0.5 <= |x|/2^e < 1. Only valid for nonzero finite x.
    long exp2() const { return static_cast<long>(mpfr_get_exp(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    int cmp(const BigReal& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp(long o) const { return mpfr_cmp_si(v_, o); }

    // String renderings: fixed-point with n decimals, scientific with n digits
    // after the point, and a form with enough digits to round-trip exactly.
    std::string str_fixed(int n) const;
    std::string str_sci(int n) const;
    std::string str_full() const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    mpfr_t v_;
};

// --- arithmetic ---------------------------------------------------------
BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a);

BigReal operator+(const BigReal& a, long b);
BigReal operator-(const BigReal& a, long b);
BigReal operator*(const BigReal& a, long b);
BigReal operator/(const BigReal& a, long b);
BigReal operator+(long a, const BigReal& b);
BigReal operator-(long a, const BigReal& b);
BigReal operator*(long a, const BigReal& b);
BigReal operator/(long a, const BigReal& b);

inline BigReal& operator+=(BigReal& a, const BigReal& b) { a = a + b; return a; }
inline BigReal& operator-=(BigReal& a, const BigReal& b) { a = a - b; return a; }
inline BigReal& operator*=(BigReal& a, const BigReal& b) { a = a * b; return a; }
inline BigReal& operator/=(BigReal& a, const BigReal& b) { a = a / b; return a; }
inline BigReal& operator+=(BigReal& a, long b) { a = a + b; return a; }
inline BigReal& operator-=(BigReal& a, long b) { a = a - b; return a; }
inline BigReal& operator*=(BigReal& a, long b) { a = a * b; return a; }
inline BigReal& operator/=(BigReal& a, long b) { a = a / b; return a; }

inline bool operator<(const BigReal& a, const BigReal& b) { return a.cmp(b) < 0; }
inline bool operator>(const BigReal& a, const BigReal& b) { return a.cmp(b) > 0; }
inline bool operator<=(const BigReal& a, const BigReal& b) { return a.cmp(b) <= 0; }
inline bool operator>=(const BigReal& a, const BigReal& b) { return a.cmp(b) >= 0; }
inline bool operator==(const BigReal& a, const BigReal& b) { return a.cmp(b) == 0; }
inline bool operator!=(const BigReal& a, const BigReal& b) { return a.cmp(b) != 0; }
inline bool operator<(const BigReal& a, long b) { return a.cmp(b) < 0; }
inline bool operator>(const BigReal& a, long b) { return a.cmp(b) > 0; }
inline bool operator<=(const BigReal& a, long b) { return a.cmp(b) <= 0; }
inline bool operator>=(const BigReal& a, long b) { return a.cmp(b) >= 0; }
inline bool operator==(const BigReal& a, long b) { return a.cmp(b) == 0; }
inline bool operator!=(const BigReal& a, long b) { return a.cmp(b) != 0; }

BigReal abs(const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

BigReal sqrt(const BigReal& x);   // DomainError for x < 0
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);    // DomainError for x <= 0
BigReal pow(const BigReal& x, long n);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal gamma_fn(const BigReal& x);
BigReal mul_2si(const BigReal& x, long k);  // x * 2^k, exact
BigReal floor(const BigReal& x);

}  // namespace spectral
