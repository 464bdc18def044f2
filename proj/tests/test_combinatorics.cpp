#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "qprove/combinatorics.hpp"
#include "qprove/laurent.hpp"

using namespace qprove::combinatorics;
using qprove::eisenstein::EisensteinInt;
using qprove::qlaurent::LaurentPoly;

namespace {

// Sparse integer polynomial from (exponent, coefficient) pairs.
LaurentPoly poly(const std::vector<std::pair<long, long>>& terms) {
    LaurentPoly r;
    for (const auto& [e, c] : terms) r.add_term({e, 0, 0}, EisensteinInt(c));
    return r;
}

long count_diagrams(int m) {
    long n = 0;
    enumerate_chord_diagrams(m, [&](const ChordDiagram&) { ++n; });
    return n;
}

long count_partitions(int m) {
    long n = 0;
    enumerate_triple_partitions(m, [&](const TriplePartition&) { ++n; });
    return n;
}

}  // namespace

TEST_CASE("chord diagram counts are the double factorials") {
    const long expected[] = {1, 1, 3, 15, 105, 945, 10395};
    for (int m = 0; m <= 6; ++m) CHECK(count_diagrams(m) == expected[m]);
}

TEST_CASE("chord diagrams are valid perfect matchings, each seen once") {
    std::set<std::vector<int>> seen;
    enumerate_chord_diagrams(3, [&](const ChordDiagram& d) {
        REQUIRE(d.partner.size() == 6);
        for (int i = 0; i < 6; ++i) {
            CHECK(d.partner[i] != i);
            CHECK(d.partner[d.partner[i]] == i);
        }
        seen.insert(d.partner);
    });
    CHECK(seen.size() == 15);
    CHECK_THROWS_AS(enumerate_chord_diagrams(-1, [](const ChordDiagram&) {}),
                    std::invalid_argument);
}

TEST_CASE("crossing statistic") {
    // m = 2: {01|23} and {03|12} have no crossing, {02|13} has one
    std::map<int, int> hist;
    enumerate_chord_diagrams(2, [&](const ChordDiagram& d) { ++hist[crossings(d)]; });
    CHECK(hist == std::map<int, int>{{0, 2}, {1, 1}});
    // the fully nested diagram has no crossings; the fully crossing one has C(m,2)
    ChordDiagram nested{{5, 4, 3, 2, 1, 0}};
    CHECK(crossings(nested) == 0);
    ChordDiagram star{{3, 4, 5, 0, 1, 2}};  // i matched with i + m
    CHECK(crossings(star) == 3);
}

TEST_CASE("Touchard-Riordan identity") {
    for (int m = 0; m <= 5; ++m) {
        auto r = verify_touchard(m);
        CHECK(r.verified);
        CHECK(r.identity == "touchard");
    }
    // frozen at m = 2: both sides equal q^3 - 3q + 2
    auto r2 = verify_touchard(2);
    CHECK(r2.lhs == poly({{3, 1}, {1, -3}, {0, 2}}));
    CHECK(r2.rhs == r2.lhs);
}

TEST_CASE("triple partition counts are (3m)! / (6^m m!)") {
    const long expected[] = {1, 1, 10, 280, 15400};
    for (int m = 0; m <= 4; ++m) CHECK(count_partitions(m) == expected[m]);
}

TEST_CASE("triple partitions cover [3m] in sorted blocks, each seen once") {
    std::set<std::vector<std::array<int, 3>>> seen;
    enumerate_triple_partitions(2, [&](const TriplePartition& pi) {
        REQUIRE(pi.blocks.size() == 2);
        std::set<int> all;
        for (const auto& b : pi.blocks) {
            CHECK(b[0] < b[1]);
            CHECK(b[1] < b[2]);
            all.insert(b.begin(), b.end());
        }
        CHECK(all.size() == 6);
        CHECK(pi.blocks[0][0] == 0);  // blocks anchored by smallest element
        seen.insert(pi.blocks);
    });
    CHECK(seen.size() == 10);
}

TEST_CASE("interlacing statistic under both conventions") {
    // {0,1,2} vs {3,4,5}: no pattern holds
    TriplePartition flat{{{0, 1, 2}, {3, 4, 5}}};
    CHECK(interlacings(flat, InterlacingConvention::kOrdered) == 0);
    CHECK(interlacings(flat, InterlacingConvention::kUnordered) == 0);
    // {0,2,4} vs {1,3,5}: both patterns hold in the forward direction
    TriplePartition alt{{{0, 2, 4}, {1, 3, 5}}};
    CHECK(interlacings(alt, InterlacingConvention::kOrdered) == 2);
    CHECK(interlacings(alt, InterlacingConvention::kUnordered) == 1);
    // unordered count never exceeds the ordered count
    enumerate_triple_partitions(3, [&](const TriplePartition& pi) {
        int ordered = interlacings(pi, InterlacingConvention::kOrdered);
        int unordered = interlacings(pi, InterlacingConvention::kUnordered);
        CHECK(unordered <= ordered);
        CHECK(unordered <= 3);  // at most one unit per unordered block pair
        CHECK(ordered >= 0);
    });
    CHECK(std::string(convention_name(InterlacingConvention::kOrdered)) == "ordered");
    CHECK(std::string(convention_name(InterlacingConvention::kUnordered)) == "unordered");
}

TEST_CASE("exact binomials and multinomials") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(10, 5) == 252);
    CHECK(binomial(12, 0) == 1);
    CHECK(binomial(12, 12) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(-2, 0) == 0);
    for (long n = 1; n <= 30; ++n)
        for (long k = 1; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    CHECK(multinomial3(6, 2, 2, 2) == 90);
    CHECK(multinomial3(6, 1, 2, 3) == 60);
    CHECK(multinomial3(6, 1, 2, 2) == 180);  // implicit fourth part of size 1
    CHECK(multinomial3(4, 3, 2, 0) == 0);
}

TEST_CASE("extension identity under the ordered convention") {
    // frozen LHS polynomials
    auto r2 = verify_extension(2, InterlacingConvention::kOrdered);
    CHECK(r2.verified);
    CHECK(r2.lhs == poly({{0, 5}, {1, -16}, {2, 15}, {4, -5}, {6, 1}}));
    auto r3 = verify_extension(3, InterlacingConvention::kOrdered);
    CHECK(r3.verified);
    CHECK(r3.lhs == poly({{0, 42}, {1, -168}, {2, 204}, {4, -147},
                          {5, 48}, {6, 28}, {9, -8}, {12, 1}}));
    // the composition side must collapse to an omega-free polynomial
    CHECK(r3.rhs.omega_free());
    // prefactor exponent m(3-m)/2 is reported
    bool saw = false;
    for (const auto& [k, v] : r3.extras)
        if (k == "prefactorExponent") {
            CHECK(v == "0");
            saw = true;
        }
    CHECK(saw);
}

TEST_CASE("the unordered convention fails calibration") {
    CHECK(!verify_extension(2, InterlacingConvention::kUnordered).verified);
    auto calibrated = calibrate_convention();
    REQUIRE(calibrated.has_value());
    CHECK(*calibrated == InterlacingConvention::kOrdered);
}

TEST_CASE("extension holds for the small cases under the calibrated convention") {
    for (int m = 0; m <= 3; ++m)
        CHECK(verify_extension(m, InterlacingConvention::kOrdered).verified);
}
