#pragma once

// GF(p^e) arithmetic contexts (q <= 81) with precomputed operation tables,
// matrices and reduced-row-echelon subspace enumeration, and the two
// finite-field verifiers: the (m,m) alternating flag-count formula and the
// (m,m,m) composition formula with Eisenstein weights.
//
// Elements are stored as integers in [0, q) encoding the coefficient vector
// of the polynomial basis in base p, little-endian (for prime q the element
// is the residue itself) — the same encoding the matrix file format uses.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qprove/verification.hpp"

namespace qprove::gfq {

class FieldCtx;
using Ctx = std::shared_ptr<const FieldCtx>;

class FieldCtx {
  public:
    // Builds the context for GF(q), q = p^e <= 81, choosing the monic
    // irreducible modulus of degree e with the smallest base-p integer
    // encoding (irreducibility checked by exhaustive trial division).
    // Throws std::invalid_argument when q is not a prime power or q > 81.
    static Ctx make(int q);

    // Decomposes q = p^e; returns false when q is not a prime power.
    static bool is_prime_power(int q, int* p = nullptr, int* e = nullptr);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }  // little-endian, monic

    std::uint8_t add(std::uint8_t x, std::uint8_t y) const { return add_[x * q_ + y]; }
    std::uint8_t sub(std::uint8_t x, std::uint8_t y) const { return add_[x * q_ + neg_[y]]; }
    std::uint8_t mul(std::uint8_t x, std::uint8_t y) const { return mul_[x * q_ + y]; }
    std::uint8_t neg(std::uint8_t x) const { return neg_[x]; }
    std::uint8_t inv(std::uint8_t x) const;  // throws on x = 0

  private:
    FieldCtx() = default;
    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

struct MatrixGF {
    Ctx ctx;
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> a;  // row-major

    MatrixGF() = default;
    MatrixGF(Ctx c, int r, int cl) : ctx(std::move(c)), rows(r), cols(cl), a(r * cl, 0) {}

    std::uint8_t& at(int i, int j) { return a[i * cols + j]; }
    std::uint8_t at(int i, int j) const { return a[i * cols + j]; }

    static MatrixGF identity(const Ctx& c, int n);
    static MatrixGF diag(const Ctx& c, const std::vector<int>& entries);
    // Companion matrix of the monic polynomial x^n + c_{n-1} x^{n-1} + ... + c_0;
    // `coeffs` lists c_0..c_{n-1}.
    static MatrixGF companion(const Ctx& c, const std::vector<int>& coeffs);

    friend MatrixGF operator*(const MatrixGF& x, const MatrixGF& y);
    friend bool operator==(const MatrixGF& x, const MatrixGF& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    // Image T(v) of a vector under this matrix.
    std::vector<std::uint8_t> apply(const std::vector<std::uint8_t>& v) const;
};

std::string to_string(const MatrixGF& m);

// Canonical subspace representative: RREF basis rows plus their pivot columns.
struct Subspace {
    MatrixGF basis;           // dim x ambient, reduced row echelon form
    std::vector<int> pivots;  // ascending pivot columns, one per basis row

    int dim() const { return basis.rows; }
    int ambient() const { return basis.cols; }
};

struct RrefResult {
    MatrixGF mat;
    int rank = 0;
    std::vector<int> pivots;
};

// Reduced row echelon form (row space preserved).
RrefResult rref(const MatrixGF& m);

// Lists the C(n, d) pivot-column sets in lexicographic order; the enumeration
// below visits them in this order (this is also the natural parallel split).
std::vector<std::vector<int>> pivot_sets(int n, int d);

// Streams every d-dimensional subspace of GF(q)^n exactly once, grouped by
// pivot-column set; deterministic order.
void enumerate_subspaces(const Ctx& ctx, int n, int d,
                         const std::function<void(const Subspace&)>& fn);
// Only the subspaces with one given pivot-column set.
void enumerate_subspaces_with_pivots(const Ctx& ctx, int n, const std::vector<int>& pivots,
                                     const std::function<void(const Subspace&)>& fn);

// Dimension jumps of W, W + TW, W + TW + T^2 W, ... until stabilization;
// the zero subspace yields the empty sequence.  Always weakly decreasing.
std::vector<int> dimension_sequence(const MatrixGF& T, const Subspace& W);

// Number of subspaces W with dimension_sequence(T, W) == lam (entries must be
// positive, weakly decreasing, lam[0] + ... <= n).
long long sigma_count(const MatrixGF& T, const std::vector<int>& lam);

bool is_invariant(const MatrixGF& T, const Subspace& W);

// Induced matrix of T on GF(q)^n / W in the basis of W's non-pivot
// coordinates; requires T(W) <= W.
MatrixGF quotient_action(const MatrixGF& T, const Subspace& W);

// Number of invariant flags W_1 <= W_2 <= ... with dim(W_i / W_{i-1}) equal
// to parts[i-1], computed recursively through quotient actions.
long long flag_count(const MatrixGF& T, const std::vector<int>& parts);

// sigma_{(m,m)} = q^C(m,2) * sum_{j=0}^{2m} (-1)^j q^C(m-j+1,2) Y_{(j)},
// both sides as exact integers.  `label` names T in the report.
VerificationResult verify_eq_mm(const MatrixGF& T, int m, const std::string& label = "");

// sigma_{(m,m,m)} = q^C(m+1,2) * sum_{j1+j2+j3=3m} q^{(sum C(ji,2) - g3)/3}
//                   * Y_{(j1,j2,j3)} * w^{j2+2j3};
// the w-component of the right side must vanish.  Exponents may be negative
// (exact rational arithmetic).
VerificationResult verify_conj5(const MatrixGF& T, int m, const std::string& label = "");

// Deterministic pseudorandom matrix (raw mt19937_64 output folded mod q).
MatrixGF random_matrix(const Ctx& ctx, int n, std::mt19937_64& rng);

// The index-th matrix (base-q digits, row-major) — exhaustive sweeps.
MatrixGF matrix_from_index(const Ctx& ctx, int n, unsigned long long index);

// Matrix file format: line 1 "q n", then n lines of n integers in [0, q).
// Throws std::runtime_error on malformed input.
MatrixGF parse_matrix(std::istream& in);

}  // namespace qprove::gfq
