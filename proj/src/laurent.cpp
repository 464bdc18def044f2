#include "qprove/laurent.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qprove::qlaurent {

long LaurentPoly::min_eq() const {
    if (terms_.empty()) throw std::logic_error("min_eq of zero polynomial");
    long m = terms_.begin()->first.eq;
    for (const auto& [e, c] : terms_)
        if (e.eq < m) m = e.eq;
    return m;
}

long LaurentPoly::max_eq() const {
    if (terms_.empty()) throw std::logic_error("max_eq of zero polynomial");
    long m = terms_.begin()->first.eq;
    for (const auto& [e, c] : terms_)
        if (e.eq > m) m = e.eq;
    return m;
}

LaurentPoly poch(const LaurentPoly& A, Base base, long k) {
    if (k < 0) throw std::invalid_argument("poch: negative length");
    LaurentPoly r = LaurentPoly::one();
    for (long j = 0; j < k; ++j)
        r *= LaurentPoly::one() - A * LaurentPoly::base_pow(base, j);
    return r;
}

namespace {

// Memoized q-Pascal triangle in the base q.  rows[n][r] = [n, r]_q.
// Guarded by a mutex so results are identical regardless of thread count.
std::mutex qbinom_mutex;
std::vector<std::vector<LaurentPoly>> qbinom_rows;  // NOLINT(cert-err58-cpp)

// Swap the roles of q and p in every exponent vector.
LaurentPoly swap_qp(const LaurentPoly& x) {
    LaurentPoly r;
    for (const auto& [e, c] : x.terms()) r.add_term({e.ep, e.eq, e.ez}, c);
    return r;
}

}  // namespace

LaurentPoly qbinom(long n, long r, Base base) {
    if (n < 0 || r < 0 || r > n) return LaurentPoly::zero();
    std::lock_guard<std::mutex> lock(qbinom_mutex);
    if (qbinom_rows.empty()) qbinom_rows.push_back({LaurentPoly::one()});
    while (static_cast<long>(qbinom_rows.size()) <= n) {
        long m = static_cast<long>(qbinom_rows.size());  // building row m
        const auto& prev = qbinom_rows.back();
        std::vector<LaurentPoly> row(m + 1);
        row[0] = LaurentPoly::one();
        row[m] = LaurentPoly::one();
        for (long i = 1; i < m; ++i)
            row[i] = LaurentPoly::q_pow(i) * prev[i] + prev[i - 1];
        qbinom_rows.push_back(std::move(row));
    }
    LaurentPoly result = qbinom_rows[n][r];
    return base == Base::q ? result : swap_qp(result);
}

LaurentPoly qmultinomial3(long n, long j1, long j2, long j3) {
    return qbinom(n, j1) * qbinom(n - j1, j2) * qbinom(n - j1 - j2, j3);
}

LaurentPoly substitute_z(const LaurentPoly& x, long qExp) {
    LaurentPoly r;
    for (const auto& [e, c] : x.terms()) r.add_term({e.eq + e.ez * qExp, e.ep, 0}, c);
    return r;
}

LaurentPoly substitute_p(const LaurentPoly& x, long qExp) {
    LaurentPoly r;
    for (const auto& [e, c] : x.terms()) r.add_term({e.eq + e.ep * qExp, 0, e.ez}, c);
    return r;
}

mpq_class mpq_pow(const mpq_class& base, long e) {
    if (e == 0) return {1};
    if (base == 0) {
        if (e < 0) throw std::domain_error("mpq_pow: zero base with negative exponent");
        return {0};
    }
    mpq_class b = base;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), k);
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

EisensteinRat eval(const LaurentPoly& x, const mpq_class& qv, const mpq_class& pv,
                   const mpq_class& zv) {
    EisensteinRat acc;
    for (const auto& [e, c] : x.terms()) {
        mpq_class scale = mpq_pow(qv, e.eq) * mpq_pow(pv, e.ep) * mpq_pow(zv, e.ez);
        acc += EisensteinRat(mpq_class(c.a) * scale, mpq_class(c.b) * scale);
    }
    return acc;
}

namespace {

void render_term(std::ostringstream& out, const ExponentVector& e, const EisensteinInt& c) {
    std::string cs = c.str();
    bool composite = cs.find_first_of("+-", 1) != std::string::npos || cs.front() == '-' ||
                     (cs.find('w') != std::string::npos && cs != "w");
    bool has_var = e.eq != 0 || e.ep != 0 || e.ez != 0;
    if (!has_var) {
        out << (composite ? "(" + cs + ")" : cs);
        return;
    }
    bool coeff_written = false;
    if (cs != "1") {
        out << (composite ? "(" + cs + ")" : cs);
        coeff_written = true;
    }
    auto var = [&](const char* name, long exp) {
        if (exp == 0) return;
        if (coeff_written) out << "*";
        out << name;
        if (exp != 1) out << "^" << exp;
        coeff_written = true;
    };
    var("q", e.eq);
    var("p", e.ep);
    var("z", e.ez);
}

}  // namespace

std::string to_string(const LaurentPoly& x) {
    if (x.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : x.terms()) {
        if (!first) out << " + ";
        render_term(out, e, c);
        first = false;
    }
    return out.str();
}

std::string first_difference(const LaurentPoly& lhs, const LaurentPoly& rhs) {
    auto it = lhs.terms().begin();
    auto jt = rhs.terms().begin();
    auto describe = [](const ExponentVector& e, const EisensteinInt& l, const EisensteinInt& r) {
        std::ostringstream out;
        out << "q^" << e.eq << "*p^" << e.ep << "*z^" << e.ez << ": lhs coefficient "
            << l.str() << ", rhs coefficient " << r.str();
        return out.str();
    };
    while (it != lhs.terms().end() || jt != rhs.terms().end()) {
        if (jt == rhs.terms().end() || (it != lhs.terms().end() && it->first < jt->first)) {
            return describe(it->first, it->second, EisensteinInt(0));
        }
        if (it == lhs.terms().end() || jt->first < it->first) {
            return describe(jt->first, EisensteinInt(0), jt->second);
        }
        if (it->second != jt->second) return describe(it->first, it->second, jt->second);
        ++it;
        ++jt;
    }
    return {};
}

}  // namespace qprove::qlaurent
