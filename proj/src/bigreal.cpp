#include "spectral/bigreal.hpp"

#include <cctype>
#include <cstdlib>

namespace spectral {

namespace {

mpfr_prec_t pmax(const BigReal& a, const BigReal& b) {
    mpfr_prec_t pa = a.prec_bits(), pb = b.prec_bits();
    return pa > pb ? pa : pb;
}

std::string take_str(char* s) {
    std::string out(s ? s : "");
    if (s) mpfr_free_str(s);
    return out;
}

}  // namespace

BigReal::BigReal(const std::string& s, Precision p) {
    mpfr_init2(v_, p.bits());
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string t = s.substr(b, e - b);
    if (t.empty()) {
        mpfr_clear(v_);
        throw DomainError("BigReal: empty numeric string");
    }
    char* end = nullptr;
    mpfr_strtofr(v_, t.c_str(), &end, 10, MPFR_RNDN);
    if (end == t.c_str() || *end != '\0') {
        mpfr_clear(v_);
        throw DomainError("BigReal: cannot parse '" + s + "' as a number");
    }
}

BigReal BigReal::pi(Precision p) {
    BigReal r(p);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string BigReal::str_fixed(int n) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rf", n, v_);
    return take_str(s);
}

std::string BigReal::str_sci(int n) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", n, v_);
    return take_str(s);
}

std::string BigReal::str_full() const {
    int digits = static_cast<int>(static_cast<double>(prec_bits()) * 0.30103) + 3;
    return str_sci(digits);
}

#define SPECTRAL_BINOP(name, fn)                                     \
    BigReal name(const BigReal& a, const BigReal& b) {               \
        BigReal r(Precision::from_bits(pmax(a, b)));                 \
        mpfr_set_prec(r.raw(), pmax(a, b));                          \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                    \
        return r;                                                    \
    }

SPECTRAL_BINOP(operator+, mpfr_add)
SPECTRAL_BINOP(operator-, mpfr_sub)
SPECTRAL_BINOP(operator*, mpfr_mul)
SPECTRAL_BINOP(operator/, mpfr_div)
#undef SPECTRAL_BINOP

BigReal operator-(const BigReal& a) {
    BigReal r = a;
    mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigReal operator+(const BigReal& a, long b) {
    BigReal r = a;
    mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
BigReal operator-(const BigReal& a, long b) {
    BigReal r = a;
    mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
BigReal operator*(const BigReal& a, long b) {
    BigReal r = a;
    mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
BigReal operator/(const BigReal& a, long b) {
    BigReal r = a;
    mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
BigReal operator+(long a, const BigReal& b) { return b + a; }
BigReal operator-(long a, const BigReal& b) {
    BigReal r = b;
    mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
BigReal operator*(long a, const BigReal& b) { return b * a; }
BigReal operator/(long a, const BigReal& b) {
    BigReal r = b;
    mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}

BigReal abs(const BigReal& x) {
    BigReal r = x;
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}
BigReal min(const BigReal& a, const BigReal& b) { return a.cmp(b) <= 0 ? a : b; }
BigReal max(const BigReal& a, const BigReal& b) { return a.cmp(b) >= 0 ? a : b; }

BigReal sqrt(const BigReal& x) {
    if (x.is_negative()) throw DomainError("sqrt of a negative value");
    BigReal r = x;
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal cbrt(const BigReal& x) {
    BigReal r = x;
    mpfr_cbrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal exp(const BigReal& x) {
    BigReal r = x;
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal log(const BigReal& x) {
    if (x.sign() <= 0) throw DomainError("log of a non-positive value");
    BigReal r = x;
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal pow(const BigReal& x, long n) {
    BigReal r = x;
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
BigReal pow(const BigReal& x, const BigReal& y) {
    BigReal r(Precision::from_bits(pmax(x, y)));
    mpfr_set_prec(r.raw(), pmax(x, y));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
BigReal gamma_fn(const BigReal& x) {
    BigReal r = x;
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal mul_2si(const BigReal& x, long k) {
    BigReal r = x;
    mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}
BigReal floor(const BigReal& x) {
    BigReal r = x;
    mpfr_floor(r.raw(), x.raw());
    return r;
}

}  // namespace spectral
