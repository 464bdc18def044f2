#pragma once

// Constructs both sides of the numbered q-series identities as exact
// LaurentPoly values and verifies equality: the triple-sum identity and its
// z-generalization, the bibasic form, the 1-dimensional analogue, the
// terminating q-binomial theorem, the S-sums with their recurrence, the
// coefficient form of the infinite-product corollary, and a redundant
// truncated power-series check of its p = q specialization.

#include <string>
#include <vector>

#include "qprove/laurent.hpp"
#include "qprove/verification.hpp"

namespace qprove::identities {

using qlaurent::LaurentPoly;

// Case-split exponent corrections.  g3 acts on a composition (j1,j2,j3):
// returns 2*j2 + j3 when j2 + 2*j3 = 2 (mod 3), else j2 + 2*j3.
long g3(long j1, long j2, long j3);

// Re-indexed form: g2(k, n) = 3n - k when k = 2 (mod 3), else k.
// Requires n <= k <= 2n (the support of the re-indexed inner sum).
long g2(long k, long n);

// --- identity sides -------------------------------------------------------

// Sum over compositions j1+j2+j3 = 3m of
//   q^{(C(j1,2)+C(j2,2)+C(j3,2) - g3)/3} * [3m; j1,j2,j3]_q * w^{j2+2j3}.
// Equals 1 at m = 0 and 0 for m > 0.  Exponent divisibility by 3 is asserted
// term by term; exponents may be negative (Laurent).
LaurentPoly lhs_conjecture1(long m);

// Sum over compositions of 3m of
//   q^{(j2^2+j2*j3+j3^2 - g3)/3} * z^{j2+j3} * [3m; j]_q * w^{j2+2j3};
// equals (z; q)_{3m}.
LaurentPoly lhs_theorem2(long m);
LaurentPoly rhs_theorem2(long m);  // poch(z, q, 3m)

// Re-indexed double sum over (n, k), n <= k <= 2n, using g2; equals
// lhs_theorem2 exactly (validates the change of variables j3 = k-n, j2 = 2n-k).
LaurentPoly lhs_eq8gen(long m);

// Bibasic trivariate form:
//   sum_n q^{C(n+1,2)} p^{C(n,2)} z^n [3m; n]_p
//         sum_k q^{(k^2 - g2)/3 - kn} [n; k-n]_q w^k;
// equals (z; p)_{3m}.
LaurentPoly lhs_theorem3(long m);
LaurentPoly rhs_theorem3(long m);  // poch(z, p, 3m)

// The inner k-sum of lhs_eq8gen at a fixed n (the [3m; n]_p factor removed):
//   sum_{k=n}^{2n} q^{(k^2 - g2)/3 - kn} [n; k-n]_q w^k.
// Splitting k by residue class mod 3 shows this equals
// s_sum(1,n) + w*s_sum(2,n) + w^2*s_sum(3,n) term for term.
LaurentPoly inner_ksum(long n);

// The three residue-class sums (natural truncation via the qbinom zero
// convention; exponents are negative for n > 0):
//   S1(n) = sum_k q^{3k^2-k-3kn} [n; 3k-n]_q
//   S2(n) = q^{-n} sum_k q^{3k^2+k-3kn} [n; 3k+1-n]_q
//   S3(n) = sum_k q^{3k^2-k-3kn} [n; 3k-1-n]_q
LaurentPoly s_sum(int which, long n);

// Individual summand of s_sum (used by the summand-symmetry property test).
LaurentPoly s_sum_term(int which, long n, long k);

// --- checks ---------------------------------------------------------------

VerificationResult conjecture1_check(long m);
VerificationResult theorem2_check(long m);  // equality + z -> q^{-m} collapse
VerificationResult eq8gen_check(long m);
VerificationResult theorem3_check(long m);  // equality + p = q identification
VerificationResult qbinomial_theorem_check(long n);
VerificationResult conj1d_check(long m);
VerificationResult prop6_check(long n);  // S2 = S3, S1 - S3, and the recurrence
VerificationResult corollary_coefficient_check(long n);
// Coefficient of z^n in the p = q corollary, as a power series in q truncated
// at total degree qDeg, against the same coefficient of the infinite product.
VerificationResult cor1a_truncated_check(long n, long qDeg = 30);
VerificationResult eq21_check(long m);

// Minimum q-exponent over the compositions of 3m in lhs_conjecture1 (goes
// negative: -1 already at m = 1, composition (0,0,3)).
long conjecture1_min_exponent(long m);

// The constant c(m) with: conjecture1 summand exponent =
// (theorem2 summand exponent at z = q^{-m}) + c(m), for every composition.
// Returns c(m); throws if the difference is not constant across compositions.
long conjecture1_substitution_offset(long m);

// Registered identity names accepted by verify_range, in display order:
// conjecture1, theorem2, eq8gen-equivalence, theorem3, qbinomial-theorem,
// conj-1d, prop6, corollary-coefficient, cor1a-truncated, eq21.
const std::vector<std::string>& registered_identities();

// Runs the named check for parameter values 0..paramMax (optionally in
// parallel; results are ordered by parameter and identical to a sequential
// run).  Throws std::invalid_argument for unknown names.
std::vector<VerificationResult> verify_range(const std::string& identity, long paramMax,
                                             int threads = 1);

}  // namespace qprove::identities
