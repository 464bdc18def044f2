#pragma once

// Chord diagrams (perfect matchings on [2m]) with the crossing statistic,
// set partitions of [3m] into blocks of size 3 with the interlacing
// statistic, the Touchard–Riordan alternating-sum identity, and the
// composition-sum identity for the interlacing distribution.

#include <gmpxx.h>

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "qprove/verification.hpp"

namespace qprove::combinatorics {

// Perfect matching on nodes 0..2m-1: partner[partner[i]] = i, partner[i] != i.
struct ChordDiagram {
    std::vector<int> partner;
};

// Streams each of the (2m-1)!! diagrams exactly once (smallest unmatched
// node first); deterministic order.
void enumerate_chord_diagrams(int m, const std::function<void(const ChordDiagram&)>& fn);

// Number of chord pairs (a,b), (x,y) with a < x < b < y (endpoints sorted
// within each chord).
int crossings(const ChordDiagram& d);

// Partition of 0..3m-1 into m sorted triples, blocks ordered by minimum.
struct TriplePartition {
    std::vector<std::array<int, 3>> blocks;
};

// Streams each of the (3m)!/(6^m m!) partitions exactly once (smallest
// unused element anchors each new block); deterministic order.
void enumerate_triple_partitions(int m, const std::function<void(const TriplePartition&)>& fn);

// For sorted triples (a,b,c) and (x,y,z), an interlacing is the pattern
// a<x<b<y or b<y<c<z.  ORDERED counts one unit per satisfied condition per
// ordered pair of distinct blocks; UNORDERED counts each unordered pair at
// most once (1 if any of its four pattern checks holds).
enum class InterlacingConvention { kOrdered, kUnordered };
const char* convention_name(InterlacingConvention c);

int interlacings(const TriplePartition& pi, InterlacingConvention convention);

// Ordinary binomial / multinomial coefficients by exact Pascal recursion
// (zero outside the usual support).
mpz_class binomial(long n, long k);
mpz_class multinomial3(long n, long a, long b, long c);

// (q-1)^m sum_sigma q^{crossings(sigma)}  ==  sum_{j=0}^{2m} (-1)^j
// q^{C(m-j+1,2)} C(2m, j), as exact polynomials in q.
VerificationResult verify_touchard(int m);

// (q-1)^{2m} sum_pi q^{interlacings(pi)}  ==  q^{m(3-m)/2} *
// sum_{j1+j2+j3=3m} q^{(sum C(ji,2) - g3)/3} multinomial(3m; j) w^{j2+2j3}
// (the right side must be w-free; exponents may be negative).
VerificationResult verify_extension(int m, InterlacingConvention convention);

// Runs verify_extension(2) under both conventions and returns the passing
// one (the calibration run), or nullopt if neither passes.
std::optional<InterlacingConvention> calibrate_convention();

}  // namespace qprove::combinatorics
