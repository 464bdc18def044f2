#pragma once

// Sparse Laurent polynomials in the fixed, ordered variable set (q, p, z)
// over the Eisenstein integers, plus builders for the q-factorial objects
// used by the identity checks: q-shifted factorials (Pochhammer products),
// Gaussian q-binomials and q-multinomials.
//
// Exponents are signed (Laurent).  Polynomials are kept in normalized form:
// no explicit zero coefficients are ever stored, and terms are ordered
// lexicographically by (eq, ep, ez), which makes equality and serialization
// deterministic.

#include <gmpxx.h>

#include <map>
#include <string>

#include "qprove/eisenstein.hpp"

namespace qprove::qlaurent {

using eisenstein::EisensteinInt;
using eisenstein::EisensteinRat;

struct ExponentVector {
    long eq = 0;  // exponent of q
    long ep = 0;  // exponent of p
    long ez = 0;  // exponent of z
    friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
};

enum class Base { q, p };

class LaurentPoly {
  public:
    using TermMap = std::map<ExponentVector, EisensteinInt>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return {}; }
    static LaurentPoly one() { return monomial(EisensteinInt(1), {}); }
    static LaurentPoly monomial(const EisensteinInt& c, const ExponentVector& e) {
        LaurentPoly r;
        if (!c.is_zero()) r.terms_.emplace(e, c);
        return r;
    }
    static LaurentPoly constant(const EisensteinInt& c) { return monomial(c, {}); }
    // The variables themselves (and their Laurent powers).
    static LaurentPoly q_pow(long e) { return monomial(EisensteinInt(1), {e, 0, 0}); }
    static LaurentPoly p_pow(long e) { return monomial(EisensteinInt(1), {0, e, 0}); }
    static LaurentPoly z_pow(long e) { return monomial(EisensteinInt(1), {0, 0, e}); }
    static LaurentPoly base_pow(Base b, long e) { return b == Base::q ? q_pow(e) : p_pow(e); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // Accumulate c * (q,p,z)^e, dropping the entry if it cancels to zero.
    void add_term(const ExponentVector& e, const EisensteinInt& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r = x;
        for (const auto& [e, c] : y.terms_) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r = x;
        for (const auto& [e, c] : y.terms_) r.add_term(e, -c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& x) {
        LaurentPoly r;
        for (const auto& [e, c] : x.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r;
        for (const auto& [ex, cx] : x.terms_)
            for (const auto& [ey, cy] : y.terms_)
                r.add_term({ex.eq + ey.eq, ex.ep + ey.ep, ex.ez + ey.ez}, cx * cy);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& y) { return *this = *this + y; }
    LaurentPoly& operator-=(const LaurentPoly& y) { return *this = *this - y; }
    LaurentPoly& operator*=(const LaurentPoly& y) { return *this = *this * y; }

    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }

    // True iff every coefficient lies in Z (no w component).
    bool omega_free() const {
        for (const auto& [e, c] : terms_)
            if (!c.is_rational()) return false;
        return true;
    }

    // Smallest / largest exponent of q over all terms; only defined for
    // nonzero polynomials.
    long min_eq() const;
    long max_eq() const;

    // Drop every term whose q-exponent exceeds qDeg or whose z-exponent
    // exceeds zDeg (used by the truncated power-series checks).
    LaurentPoly truncated(long qDeg, long zDeg) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            if (e.eq <= qDeg && e.ez <= zDeg) r.terms_.emplace(e, c);
        return r;
    }

  private:
    TermMap terms_;
};

// x(x-1)/2 for ALL integers x (including negative); always a non-negative
// integer.  The alternating binomial sums use C(m-j+1, 2) with m-j+1 < 0.
inline long binom2(long x) { return x * (x - 1) / 2; }

// (A; base)_k = prod_{j=0}^{k-1} (1 - A * base^j).  A is typically a monomial
// such as z or z*q^e.  Negative k is a usage error.
LaurentPoly poch(const LaurentPoly& A, Base base, long k);

// Gaussian binomial [n, r] in the chosen base, via the memoized q-Pascal
// recurrence [n,r] = base^r [n-1,r] + [n-1,r-1].  Zero when r < 0 or r > n
// (natural truncation convention); all integer arguments accepted.
LaurentPoly qbinom(long n, long r, Base base = Base::q);

// q-multinomial [n; j1, j2, j3] = (q;q)_n / ((q;q)_{j1}(q;q)_{j2}(q;q)_{j3}(q;q)_{n-j1-j2-j3}):
// zero if some ji < 0 or j1+j2+j3 > n; when j1+j2+j3 < n the remainder
// n - (j1+j2+j3) acts as an implicit fourth part.
LaurentPoly qmultinomial3(long n, long j1, long j2, long j3);

// Substitute z -> q^qExp (every term z^a becomes q^(a*qExp)).
LaurentPoly substitute_z(const LaurentPoly& x, long qExp);

// Substitute p -> q^qExp (base identification, e.g. the p = q specialization).
LaurentPoly substitute_p(const LaurentPoly& x, long qExp);

// Exact rational power: base^e for signed e; zero base with negative e throws.
mpq_class mpq_pow(const mpq_class& base, long e);

// Exact evaluation at (q, p, z) = (qv, pv, zv); returns the 1-part and the
// w-part as exact rationals.
EisensteinRat eval(const LaurentPoly& x, const mpq_class& qv, const mpq_class& pv,
                   const mpq_class& zv);

// Deterministic human-readable rendering, terms in (eq, ep, ez)-lex order.
std::string to_string(const LaurentPoly& x);

// Renders the first term (in lex order) at which the two polynomials differ;
// empty string if they are equal.  Used as the failure witness.
std::string first_difference(const LaurentPoly& lhs, const LaurentPoly& rhs);

}  // namespace qprove::qlaurent
