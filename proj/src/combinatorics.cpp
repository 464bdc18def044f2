#include "qprove/combinatorics.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "qprove/identities.hpp"

namespace qprove::combinatorics {

using eisenstein::EisensteinInt;
using eisenstein::omega_pow;
using qlaurent::binom2;
using qlaurent::LaurentPoly;

namespace {

void chords_rec(std::vector<int>& partner, const std::function<void(const ChordDiagram&)>& fn) {
    int n = static_cast<int>(partner.size());
    int first = -1;
    for (int i = 0; i < n; ++i)
        if (partner[i] < 0) {
            first = i;
            break;
        }
    if (first < 0) {
        fn(ChordDiagram{partner});
        return;
    }
    for (int j = first + 1; j < n; ++j) {
        if (partner[j] >= 0) continue;
        partner[first] = j;
        partner[j] = first;
        chords_rec(partner, fn);
        partner[first] = -1;
        partner[j] = -1;
    }
}

void partitions_rec(std::vector<std::array<int, 3>>& blocks, std::vector<bool>& used,
                    const std::function<void(const TriplePartition&)>& fn) {
    int n = static_cast<int>(used.size());
    int anchor = -1;
    for (int i = 0; i < n; ++i)
        if (!used[i]) {
            anchor = i;
            break;
        }
    if (anchor < 0) {
        fn(TriplePartition{blocks});
        return;
    }
    used[anchor] = true;
    for (int b = anchor + 1; b < n; ++b) {
        if (used[b]) continue;
        used[b] = true;
        for (int c = b + 1; c < n; ++c) {
            if (used[c]) continue;
            used[c] = true;
            blocks.push_back({anchor, b, c});
            partitions_rec(blocks, used, fn);
            blocks.pop_back();
            used[c] = false;
        }
        used[b] = false;
    }
    used[anchor] = false;
}

// One unit per satisfied pattern for the ordered block pair (B1, B2).
int ordered_pair_units(const std::array<int, 3>& b1, const std::array<int, 3>& b2) {
    auto [a, b, c] = b1;
    auto [x, y, z] = b2;
    int units = 0;
    if (a < x && x < b && b < y) ++units;
    if (b < y && y < c && c < z) ++units;
    return units;
}

}  // namespace

void enumerate_chord_diagrams(int m, const std::function<void(const ChordDiagram&)>& fn) {
    if (m < 0) throw std::invalid_argument("enumerate_chord_diagrams: negative m");
    std::vector<int> partner(2 * m, -1);
    chords_rec(partner, fn);
}

int crossings(const ChordDiagram& d) {
    int n = static_cast<int>(d.partner.size());
    int count = 0;
    for (int a = 0; a < n; ++a) {
        int b = d.partner[a];
        if (b < a) continue;  // visit each chord from its left endpoint
        for (int x = a + 1; x < b; ++x) {
            int y = d.partner[x];
            if (y > b) ++count;  // a < x < b < y
        }
    }
    return count;
}

void enumerate_triple_partitions(int m, const std::function<void(const TriplePartition&)>& fn) {
    if (m < 0) throw std::invalid_argument("enumerate_triple_partitions: negative m");
    std::vector<std::array<int, 3>> blocks;
    std::vector<bool> used(3 * m, false);
    partitions_rec(blocks, used, fn);
}

const char* convention_name(InterlacingConvention c) {
    return c == InterlacingConvention::kOrdered ? "ordered" : "unordered";
}

int interlacings(const TriplePartition& pi, InterlacingConvention convention) {
    int k = static_cast<int>(pi.blocks.size());
    int total = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            int forward = ordered_pair_units(pi.blocks[i], pi.blocks[j]);
            int backward = ordered_pair_units(pi.blocks[j], pi.blocks[i]);
            if (convention == InterlacingConvention::kOrdered)
                total += forward + backward;
            else
                total += (forward + backward > 0) ? 1 : 0;
        }
    }
    return total;
}

mpz_class binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    // Exact Pascal triangle, cached; guarded so results are independent of
    // thread interleaving.
    static std::mutex mutex;
    static std::vector<std::vector<mpz_class>> rows = {{1}};
    std::lock_guard<std::mutex> lock(mutex);
    while (static_cast<long>(rows.size()) <= n) {
        const auto& prev = rows.back();
        std::vector<mpz_class> row(prev.size() + 1);
        row.front() = 1;
        row.back() = 1;
        for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

mpz_class multinomial3(long n, long a, long b, long c) {
    if (a < 0 || b < 0 || c < 0 || a + b + c > n) return 0;
    return binomial(n, a) * binomial(n - a, b) * binomial(n - a - b, c);
}

VerificationResult verify_touchard(int m) {
    LaurentPoly dist;  // sum over diagrams of q^{crossings}
    enumerate_chord_diagrams(m, [&](const ChordDiagram& d) {
        dist += LaurentPoly::q_pow(crossings(d));
    });
    LaurentPoly qminus1 = LaurentPoly::q_pow(1) - LaurentPoly::one();
    LaurentPoly lhs = dist;
    for (int i = 0; i < m; ++i) lhs *= qminus1;

    LaurentPoly rhs;
    for (long j = 0; j <= 2 * m; ++j) {
        EisensteinInt coeff(j % 2 == 0 ? binomial(2 * m, j) : -binomial(2 * m, j));
        rhs += LaurentPoly::monomial(coeff, {binom2(m - j + 1), 0, 0});
    }
    return VerificationResult::of_polys("touchard", {{"m", m}}, lhs, rhs);
}

VerificationResult verify_extension(int m, InterlacingConvention convention) {
    LaurentPoly dist;
    enumerate_triple_partitions(m, [&](const TriplePartition& pi) {
        dist += LaurentPoly::q_pow(interlacings(pi, convention));
    });
    LaurentPoly qminus1 = LaurentPoly::q_pow(1) - LaurentPoly::one();
    LaurentPoly lhs = dist;
    for (int i = 0; i < 2 * m; ++i) lhs *= qminus1;

    long prefactor = (m * (3 - m)) / 2;  // 3m - m^2 is always even
    LaurentPoly rhs;
    for (long j1 = 0; j1 <= 3 * m; ++j1) {
        for (long j2 = 0; j1 + j2 <= 3 * m; ++j2) {
            long j3 = 3 * m - j1 - j2;
            long num = binom2(j1) + binom2(j2) + binom2(j3) - identities::g3(j1, j2, j3);
            if (num % 3 != 0)
                throw std::logic_error("verify_extension: exponent not divisible by 3");
            EisensteinInt coeff = omega_pow(j2 + 2 * j3);
            coeff.a *= multinomial3(3 * m, j1, j2, j3);
            coeff.b *= multinomial3(3 * m, j1, j2, j3);
            rhs += LaurentPoly::monomial(coeff, {prefactor + num / 3, 0, 0});
        }
    }

    VerificationResult r;
    r.identity = "extension";
    r.params = {{"m", m}};
    r.has_polys = true;
    r.lhs = lhs;
    r.rhs = rhs;
    r.extras.emplace_back("convention", convention_name(convention));
    r.extras.emplace_back("prefactorExponent", std::to_string(prefactor));
    if (!rhs.omega_free()) {
        r.verified = false;
        r.witness = "composition side has a nonzero w-component";
        return r;
    }
    r.verified = (lhs == rhs);
    if (!r.verified) r.witness = qlaurent::first_difference(lhs, rhs);
    return r;
}

std::optional<InterlacingConvention> calibrate_convention() {
    if (verify_extension(2, InterlacingConvention::kOrdered).verified)
        return InterlacingConvention::kOrdered;
    if (verify_extension(2, InterlacingConvention::kUnordered).verified)
        return InterlacingConvention::kUnordered;
    return std::nullopt;
}

}  // namespace qprove::combinatorics
