#pragma once

// Exact arithmetic in the ring Z[w] of Eisenstein integers, where w is a
// primitive cube root of unity (w^2 + w + 1 = 0).  Every element has the
// unique normal form a + b*w with arbitrary-precision integers a, b; the
// reduction w^2 = -1 - w is applied on every multiplication.

#include <gmpxx.h>

#include <string>
#include <utility>

namespace qprove::eisenstein {

struct EisensteinInt {
    mpz_class a;  // coefficient of 1
    mpz_class b;  // coefficient of w

    EisensteinInt() : a(0), b(0) {}
    EisensteinInt(long x) : a(x), b(0) {}  // NOLINT(google-explicit-constructor)
    EisensteinInt(mpz_class x) : a(std::move(x)), b(0) {}
    EisensteinInt(mpz_class x, mpz_class y) : a(std::move(x)), b(std::move(y)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend EisensteinInt operator-(const EisensteinInt& x) { return {-x.a, -x.b}; }
    // (a1 + b1 w)(a2 + b2 w) = a1 a2 - b1 b2 + (a1 b2 + a2 b1 - b1 b2) w
    friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + y.a * x.b - x.b * y.b};
    }
    EisensteinInt& operator+=(const EisensteinInt& y) {
        a += y.a;
        b += y.b;
        return *this;
    }
    EisensteinInt& operator-=(const EisensteinInt& y) {
        a -= y.a;
        b -= y.b;
        return *this;
    }
    EisensteinInt& operator*=(const EisensteinInt& y) { return *this = *this * y; }
    friend bool operator==(const EisensteinInt& x, const EisensteinInt& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const EisensteinInt& x, const EisensteinInt& y) { return !(x == y); }

    // Rendering used by reports and failure witnesses, e.g. "3", "w", "-1-w".
    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (a != 0) s = a.get_str();
        if (b != 0) {
            if (b > 0 && !s.empty()) s += "+";
            if (b == -1)
                s += "-";
            else if (b != 1)
                s += b.get_str() + "*";
            s += "w";
        }
        return s;
    }
};

// w^k for any integer k (mathematical mod: the result depends on k mod 3).
inline EisensteinInt omega_pow(long k) {
    long r = k % 3;
    if (r < 0) r += 3;
    switch (r) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        default: return {-1, -1};  // w^2 = -1 - w
    }
}

inline EisensteinInt omega() { return {0, 1}; }

// Exact rational Eisenstein number a + b*w with rational components; the
// value domain of polynomial evaluation (negative exponents of the variables
// force rationals).
struct EisensteinRat {
    mpq_class a;
    mpq_class b;

    EisensteinRat() : a(0), b(0) {}
    EisensteinRat(mpq_class x, mpq_class y) : a(std::move(x)), b(std::move(y)) {}
    explicit EisensteinRat(const EisensteinInt& z) : a(z.a), b(z.b) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend EisensteinRat operator+(const EisensteinRat& x, const EisensteinRat& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend EisensteinRat operator*(const EisensteinRat& x, const EisensteinRat& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + y.a * x.b - x.b * y.b};
    }
    EisensteinRat& operator+=(const EisensteinRat& y) {
        a += y.a;
        b += y.b;
        return *this;
    }
    friend bool operator==(const EisensteinRat& x, const EisensteinRat& y) {
        return x.a == y.a && x.b == y.b;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (a != 0) s = a.get_str();
        if (b != 0) {
            if (b > 0 && !s.empty()) s += "+";
            if (b == -1)
                s += "-";
            else if (b != 1)
                s += b.get_str() + "*";
            s += "w";
        }
        return s;
    }
};

}  // namespace qprove::eisenstein
