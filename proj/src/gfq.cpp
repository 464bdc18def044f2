#include "qprove/gfq.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "qprove/identities.hpp"

namespace qprove::gfq {

using eisenstein::EisensteinRat;
using qlaurent::binom2;
using qlaurent::mpq_pow;

namespace {

constexpr int kMaxQ = 81;

// --- small polynomial helpers over Z_p (little-endian coefficient vectors) --

std::vector<int> poly_from_code(long code, int p) {
    std::vector<int> c;
    while (code > 0) {
        c.push_back(static_cast<int>(code % p));
        code /= p;
    }
    return c;
}

// Remainder of a mod b over Z_p; b monic.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) > db) {
        int da = static_cast<int>(a.size()) - 1;
        int lead = a.back();
        if (lead != 0) {
            for (int i = 0; i <= db; ++i) {
                int idx = da - db + i;
                a[idx] = ((a[idx] - lead * b[i]) % p + p * p) % p;
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool is_irreducible(const std::vector<int>& f, int p) {
    int deg = static_cast<int>(f.size()) - 1;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<int> g = poly_from_code(code, p);
            g.resize(d, 0);
            g.push_back(1);  // monic
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

bool FieldCtx::is_prime_power(int q, int* p, int* e) {
    if (q < 2) return false;
    int base = 0;
    for (int d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            base = d;
            break;
        }
    }
    if (base == 0) base = q;  // q itself prime
    int exp = 0;
    int rest = q;
    while (rest % base == 0) {
        rest /= base;
        ++exp;
    }
    if (rest != 1) return false;
    if (p) *p = base;
    if (e) *e = exp;
    return true;
}

Ctx FieldCtx::make(int q) {
    int p = 0, e = 0;
    if (!is_prime_power(q, &p, &e))
        throw std::invalid_argument("field_new: " + std::to_string(q) + " is not a prime power");
    if (q > kMaxQ)
        throw std::invalid_argument("field_new: q = " + std::to_string(q) +
                                    " exceeds the supported ceiling " + std::to_string(kMaxQ));

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->e_ = e;
    ctx->q_ = q;

    // Modulus: smallest (base-p integer encoding) monic irreducible of degree e.
    if (e == 1) {
        ctx->modulus_ = {0, 1};  // x; unused for prime fields
    } else {
        long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<int> f = poly_from_code(code, p);
            f.resize(e, 0);
            f.push_back(1);
            if (is_irreducible(f, p)) {
                ctx->modulus_ = f;
                break;
            }
        }
        if (ctx->modulus_.empty()) throw std::logic_error("field_new: no irreducible found");
    }

    // Element <-> coefficient-vector codec (base-p digits, little-endian).
    auto decode = [&](int x) {
        std::vector<int> c(e, 0);
        for (int i = 0; i < e; ++i) {
            c[i] = x % p;
            x /= p;
        }
        return c;
    };
    auto encode = [&](const std::vector<int>& c) {
        int x = 0;
        for (int i = e - 1; i >= 0; --i) x = x * p + (i < static_cast<int>(c.size()) ? c[i] : 0);
        return x;
    };

    ctx->add_.resize(q * q);
    ctx->mul_.resize(q * q);
    ctx->neg_.resize(q);
    ctx->inv_.resize(q, 0);
    for (int x = 0; x < q; ++x) {
        std::vector<int> cx = decode(x);
        std::vector<int> nx(e);
        for (int i = 0; i < e; ++i) nx[i] = (p - cx[i]) % p;
        ctx->neg_[x] = static_cast<std::uint8_t>(encode(nx));
        for (int y = 0; y < q; ++y) {
            std::vector<int> cy = decode(y);
            std::vector<int> s(e);
            for (int i = 0; i < e; ++i) s[i] = (cx[i] + cy[i]) % p;
            ctx->add_[x * q + y] = static_cast<std::uint8_t>(encode(s));
            std::vector<int> prod(2 * e - 1, 0);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % p;
            std::vector<int> red = e == 1 ? std::vector<int>{prod[0] % p}
                                          : poly_mod(prod, ctx->modulus_, p);
            ctx->mul_[x * q + y] = static_cast<std::uint8_t>(encode(red));
        }
    }
    for (int x = 1; x < q; ++x)
        for (int y = 1; y < q; ++y)
            if (ctx->mul_[x * q + y] == 1) {
                ctx->inv_[x] = static_cast<std::uint8_t>(y);
                break;
            }
    return ctx;
}

std::uint8_t FieldCtx::inv(std::uint8_t x) const {
    if (x == 0) throw std::domain_error("FieldCtx::inv: zero element");
    return inv_[x];
}

MatrixGF MatrixGF::identity(const Ctx& c, int n) {
    MatrixGF m(c, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatrixGF MatrixGF::diag(const Ctx& c, const std::vector<int>& entries) {
    int n = static_cast<int>(entries.size());
    MatrixGF m(c, n, n);
    for (int i = 0; i < n; ++i) {
        if (entries[i] < 0 || entries[i] >= c->q())
            throw std::invalid_argument("diag: entry outside [0, q)");
        m.at(i, i) = static_cast<std::uint8_t>(entries[i]);
    }
    return m;
}

MatrixGF MatrixGF::companion(const Ctx& c, const std::vector<int>& coeffs) {
    int n = static_cast<int>(coeffs.size());
    MatrixGF m(c, n, n);
    for (int i = 1; i < n; ++i) m.at(i, i - 1) = 1;
    for (int i = 0; i < n; ++i)
        m.at(i, n - 1) = c->neg(static_cast<std::uint8_t>(coeffs[i] % c->q()));
    return m;
}

MatrixGF operator*(const MatrixGF& x, const MatrixGF& y) {
    if (x.cols != y.rows || x.ctx->q() != y.ctx->q())
        throw std::invalid_argument("matrix product: shape or field mismatch");
    const FieldCtx& F = *x.ctx;
    MatrixGF r(x.ctx, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            std::uint8_t v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
        }
    return r;
}

std::vector<std::uint8_t> MatrixGF::apply(const std::vector<std::uint8_t>& v) const {
    if (static_cast<int>(v.size()) != cols)
        throw std::invalid_argument("apply: dimension mismatch");
    const FieldCtx& F = *ctx;
    std::vector<std::uint8_t> r(rows, 0);
    for (int i = 0; i < rows; ++i) {
        std::uint8_t acc = 0;
        for (int j = 0; j < cols; ++j) acc = F.add(acc, F.mul(at(i, j), v[j]));
        r[i] = acc;
    }
    return r;
}

std::string to_string(const MatrixGF& m) {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < m.rows; ++i) {
        out << (i ? ";" : "") << "[";
        for (int j = 0; j < m.cols; ++j) out << (j ? "," : "") << static_cast<int>(m.at(i, j));
        out << "]";
    }
    out << "]";
    return out.str();
}

RrefResult rref(const MatrixGF& m) {
    const FieldCtx& F = *m.ctx;
    MatrixGF a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < a.cols && r < a.rows; ++col) {
        int sel = -1;
        for (int i = r; i < a.rows; ++i)
            if (a.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < a.cols; ++j) std::swap(a.at(sel, j), a.at(r, j));
        std::uint8_t piv_inv = F.inv(a.at(r, col));
        for (int j = 0; j < a.cols; ++j) a.at(r, j) = F.mul(a.at(r, j), piv_inv);
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || a.at(i, col) == 0) continue;
            std::uint8_t f = a.at(i, col);
            for (int j = 0; j < a.cols; ++j)
                a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(r, j)));
        }
        pivots.push_back(col);
        ++r;
    }
    // Drop zero rows so the result is the canonical basis matrix.
    MatrixGF basis(m.ctx, r, a.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < a.cols; ++j) basis.at(i, j) = a.at(i, j);
    return {std::move(basis), r, std::move(pivots)};
}

std::vector<std::vector<int>> pivot_sets(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = i;
    if (d > n) return out;
    for (;;) {
        out.push_back(cur);
        if (d == 0) break;
        int i = d - 1;
        while (i >= 0 && cur[i] == n - d + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

void enumerate_subspaces_with_pivots(const Ctx& ctx, int n, const std::vector<int>& pivots,
                                     const std::function<void(const Subspace&)>& fn) {
    int d = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    // Free cells of the RREF pattern, row-major.
    std::vector<std::pair<int, int>> free_cells;
    for (int i = 0; i < d; ++i)
        for (int j = pivots[i] + 1; j < n; ++j)
            if (!is_pivot[j]) free_cells.emplace_back(i, j);

    Subspace w;
    w.basis = MatrixGF(ctx, d, n);
    w.pivots = pivots;
    for (int i = 0; i < d; ++i) w.basis.at(i, pivots[i]) = 1;

    int q = ctx->q();
    std::vector<std::uint8_t> odo(free_cells.size(), 0);
    for (;;) {
        fn(w);
        std::size_t k = 0;
        for (; k < odo.size(); ++k) {
            auto [i, j] = free_cells[k];
            if (odo[k] + 1 < q) {
                ++odo[k];
                w.basis.at(i, j) = odo[k];
                break;
            }
            odo[k] = 0;
            w.basis.at(i, j) = 0;
        }
        if (k == odo.size()) break;
    }
}

void enumerate_subspaces(const Ctx& ctx, int n, int d,
                         const std::function<void(const Subspace&)>& fn) {
    if (d < 0 || d > n) throw std::invalid_argument("enumerate_subspaces: bad dimension");
    for (const auto& piv : pivot_sets(n, d)) enumerate_subspaces_with_pivots(ctx, n, piv, fn);
}

namespace {

// Reduces v modulo the row space of an RREF basis (eliminates all pivot
// coordinates); the residual is supported on non-pivot columns.
std::vector<std::uint8_t> reduce_mod(const Subspace& W, std::vector<std::uint8_t> v) {
    const FieldCtx& F = *W.basis.ctx;
    for (int i = 0; i < W.dim(); ++i) {
        std::uint8_t c = v[W.pivots[i]];
        if (c == 0) continue;
        for (int j = 0; j < W.ambient(); ++j) v[j] = F.sub(v[j], F.mul(c, W.basis.at(i, j)));
    }
    return v;
}

bool all_zero(const std::vector<std::uint8_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

}  // namespace

std::vector<int> dimension_sequence(const MatrixGF& T, const Subspace& W) {
    if (T.rows != T.cols || T.cols != W.ambient())
        throw std::invalid_argument("dimension_sequence: dimension mismatch");
    std::vector<int> dims = {W.dim()};
    MatrixGF cur = W.basis;
    for (;;) {
        int prev_dim = cur.rows;
        // Stack the current basis with its image under T and re-reduce.
        MatrixGF stacked(T.ctx, 2 * cur.rows, T.cols);
        for (int i = 0; i < cur.rows; ++i) {
            std::vector<std::uint8_t> row(cur.cols), img;
            for (int j = 0; j < cur.cols; ++j) row[j] = cur.at(i, j);
            img = T.apply(row);
            for (int j = 0; j < cur.cols; ++j) {
                stacked.at(i, j) = row[j];
                stacked.at(cur.rows + i, j) = img[j];
            }
        }
        RrefResult rr = rref(stacked);
        if (rr.rank == prev_dim) break;
        dims.push_back(rr.rank);
        cur = std::move(rr.mat);
    }
    std::vector<int> js;
    int prev = 0;
    for (int dcur : dims) {
        if (dcur - prev > 0) js.push_back(dcur - prev);
        prev = dcur;
    }
    for (std::size_t i = 1; i < js.size(); ++i)
        if (js[i] > js[i - 1]) throw std::logic_error("dimension sequence not weakly decreasing");
    return js;
}

long long sigma_count(const MatrixGF& T, const std::vector<int>& lam) {
    if (T.rows != T.cols) throw std::invalid_argument("sigma_count: T must be square");
    if (lam.empty()) throw std::invalid_argument("sigma_count: empty sequence");
    long sum = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] <= 0) throw std::invalid_argument("sigma_count: parts must be positive");
        if (i > 0 && lam[i] > lam[i - 1])
            throw std::invalid_argument("sigma_count: sequence must be weakly decreasing");
        sum += lam[i];
    }
    if (lam[0] > T.rows || sum > T.rows)
        throw std::invalid_argument("sigma_count: sequence too large for ambient space");
    long long count = 0;
    enumerate_subspaces(T.ctx, T.rows, lam[0], [&](const Subspace& W) {
        if (dimension_sequence(T, W) == lam) ++count;
    });
    return count;
}

bool is_invariant(const MatrixGF& T, const Subspace& W) {
    for (int i = 0; i < W.dim(); ++i) {
        std::vector<std::uint8_t> row(W.ambient());
        for (int j = 0; j < W.ambient(); ++j) row[j] = W.basis.at(i, j);
        if (!all_zero(reduce_mod(W, T.apply(row)))) return false;
    }
    return true;
}

MatrixGF quotient_action(const MatrixGF& T, const Subspace& W) {
    if (!is_invariant(T, W)) throw std::invalid_argument("quotient_action: W not T-invariant");
    int n = W.ambient();
    std::vector<bool> is_pivot(n, false);
    for (int c : W.pivots) is_pivot[c] = true;
    std::vector<int> complement;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) complement.push_back(j);
    int k = static_cast<int>(complement.size());
    MatrixGF Q(T.ctx, k, k);
    for (int jc = 0; jc < k; ++jc) {
        std::vector<std::uint8_t> ej(n, 0);
        ej[complement[jc]] = 1;
        std::vector<std::uint8_t> img = reduce_mod(W, T.apply(ej));
        for (int ic = 0; ic < k; ++ic) Q.at(ic, jc) = img[complement[ic]];
    }
    return Q;
}

long long flag_count(const MatrixGF& T, const std::vector<int>& parts) {
    if (T.rows != T.cols) throw std::invalid_argument("flag_count: T must be square");
    long sum = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("flag_count: negative part");
        sum += p;
    }
    if (sum > T.rows) throw std::invalid_argument("flag_count: parts exceed ambient dimension");
    if (parts.empty()) return 1;
    std::vector<int> rest(parts.begin() + 1, parts.end());
    long long count = 0;
    enumerate_subspaces(T.ctx, T.rows, parts[0], [&](const Subspace& W) {
        if (!is_invariant(T, W)) return;
        count += flag_count(quotient_action(T, W), rest);
    });
    return count;
}

namespace {

mpz_class mpz_pow_long(long base, long e) {
    mpz_class r;
    mpz_class b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

VerificationResult verify_eq_mm(const MatrixGF& T, int m, const std::string& label) {
    if (T.rows != T.cols || T.rows != 2 * m)
        throw std::invalid_argument("verify_eq_mm: T must be 2m x 2m");
    long q = T.ctx->q();
    long long sigma = sigma_count(T, std::vector<int>(2, m));
    mpz_class rhs = 0;
    for (long j = 0; j <= 2 * m; ++j) {
        mpz_class term = mpz_pow_long(q, binom2(m - j + 1)) *
                         mpz_class(static_cast<long>(flag_count(T, {static_cast<int>(j)})));
        rhs += (j % 2 == 0) ? term : -term;
    }
    rhs *= mpz_pow_long(q, binom2(m));

    VerificationResult r;
    r.identity = "eq11";
    r.params = {{"m", m}, {"q", q}};
    r.lhs_value = mpz_class(static_cast<long>(sigma)).get_str();
    r.rhs_value = rhs.get_str();
    r.verified = (rhs == static_cast<long>(sigma));
    if (!r.verified)
        r.witness = "sigma_(m,m) = " + r.lhs_value + " but flag-count side = " + r.rhs_value;
    if (!label.empty()) r.extras.emplace_back("matrix", label);
    return r;
}

VerificationResult verify_conj5(const MatrixGF& T, int m, const std::string& label) {
    if (T.rows != T.cols || T.rows != 3 * m)
        throw std::invalid_argument("verify_conj5: T must be 3m x 3m");
    long q = T.ctx->q();
    long long sigma = sigma_count(T, std::vector<int>(3, m));

    long prefactor = binom2(m + 1);
    EisensteinRat rhs;
    for (long j1 = 0; j1 <= 3 * m; ++j1) {
        for (long j2 = 0; j2 + j1 <= 3 * m; ++j2) {
            long j3 = 3 * m - j1 - j2;
            long num = binom2(j1) + binom2(j2) + binom2(j3) - identities::g3(j1, j2, j3);
            if (num % 3 != 0) throw std::logic_error("verify_conj5: exponent not divisible by 3");
            long long y = flag_count(
                T, {static_cast<int>(j1), static_cast<int>(j2), static_cast<int>(j3)});
            mpq_class scale = mpq_pow(mpq_class(q), num / 3 + prefactor) *
                              mpq_class(mpz_class(static_cast<long>(y)));
            EisensteinRat w(eisenstein::omega_pow(j2 + 2 * j3));
            rhs += EisensteinRat(w.a * scale, w.b * scale);
        }
    }

    VerificationResult r;
    r.identity = "conj5";
    r.params = {{"m", m}, {"q", q}};
    r.lhs_value = mpz_class(static_cast<long>(sigma)).get_str();
    r.rhs_value = rhs.str();
    r.extras.emplace_back("prefactorExponent", std::to_string(prefactor));
    if (!label.empty()) r.extras.emplace_back("matrix", label);
    if (!rhs.is_rational()) {
        r.verified = false;
        r.witness = "flag-count side has nonzero w-component: " + rhs.str();
        return r;
    }
    r.verified = (rhs.a == mpq_class(mpz_class(static_cast<long>(sigma))));
    if (!r.verified)
        r.witness = "sigma_(m,m,m) = " + r.lhs_value + " but flag-count side = " + r.rhs_value;
    return r;
}

MatrixGF random_matrix(const Ctx& ctx, int n, std::mt19937_64& rng) {
    MatrixGF m(ctx, n, n);
    for (auto& x : m.a) x = static_cast<std::uint8_t>(rng() % ctx->q());
    return m;
}

MatrixGF matrix_from_index(const Ctx& ctx, int n, unsigned long long index) {
    MatrixGF m(ctx, n, n);
    unsigned long long rest = index;
    for (auto& x : m.a) {
        x = static_cast<std::uint8_t>(rest % ctx->q());
        rest /= ctx->q();
    }
    if (rest != 0) throw std::invalid_argument("matrix_from_index: index out of range");
    return m;
}

MatrixGF parse_matrix(std::istream& in) {
    int q = 0, n = 0;
    if (!(in >> q >> n)) throw std::runtime_error("matrix file: missing 'q n' header");
    if (n <= 0) throw std::runtime_error("matrix file: non-positive dimension");
    Ctx ctx = FieldCtx::make(q);  // throws invalid_argument for bad q
    MatrixGF m(ctx, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long v;
            if (!(in >> v)) throw std::runtime_error("matrix file: truncated entries");
            if (v < 0 || v >= q)
                throw std::runtime_error("matrix file: entry " + std::to_string(v) +
                                         " outside [0, " + std::to_string(q) + ")");
            m.at(i, j) = static_cast<std::uint8_t>(v);
        }
    return m;
}

}  // namespace qprove::gfq
