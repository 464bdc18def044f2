// qprove — command-line driver for the exact identity verifiers.
//
// Subcommands
//   verify <identity> [--max N]          polynomial identity sweeps, m or n = 0..N
//   profile --matrix F --lambda 1,1,1    sigma^T_lambda by subspace enumeration
//   flags   --matrix F --parts 2,1       Y^T_(parts) invariant-flag count
//   conj5   --q Q --m M (--exhaustive | --trials T --seed S)
//   eqmm    --q Q --m M (--exhaustive | --trials T --seed S)
//
// Exit status: 0 all verified, 1 verification failure, 2 usage/input error.
//
// Reports (text and --json) are byte-identical across repeated runs with the
// same arguments and seed, independent of --threads; --timing opts out by
// recording wall-clock time.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qprove/combinatorics.hpp"
#include "qprove/gfq.hpp"
#include "qprove/identities.hpp"
#include "qprove/report.hpp"

namespace {

using qprove::VerificationResult;
using qprove::report::RunReport;
namespace combinatorics = qprove::combinatorics;
namespace gfq = qprove::gfq;
namespace identities = qprove::identities;

struct CommonOpts {
    int threads = 0;  // 0 = hardware concurrency
    std::string json_path;
    bool allow_large = false;
    bool timing = false;
};

// Safe sweep ceilings (the default --max, and the largest --max accepted
// without --allow-large).
struct IdentityInfo {
    const char* param;
    long desk_max;
};

const std::map<std::string, IdentityInfo>& identity_table() {
    static const std::map<std::string, IdentityInfo> table = {
        {"conjecture1", {"m", 4}},
        {"theorem2", {"m", 4}},
        {"eq8gen-equivalence", {"m", 4}},
        {"theorem3", {"m", 3}},
        {"qbinomial-theorem", {"n", 30}},
        {"conj-1d", {"m", 12}},
        {"prop6", {"n", 40}},
        {"corollary-coefficient", {"n", 40}},
        {"cor1a-truncated", {"n", 8}},
        {"eq21", {"m", 4}},
        {"touchard", {"m", 6}},
        {"extension", {"m", 4}},
    };
    return table;
}

std::string known_identity_names() {
    std::string s;
    for (const auto& [name, info] : identity_table()) {
        if (!s.empty()) s += ", ";
        s += name;
    }
    return s;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Index pool: applies fn to 0..count-1 on `threads` workers.  Callers keep
// determinism by writing to slot `i` of a pre-sized container (or merging by
// index afterwards), so the report never depends on completion order.
void run_pool(unsigned long long count, int threads,
              const std::function<void(unsigned long long)>& fn) {
    if (count == 0) return;
    auto t = static_cast<unsigned long long>(threads);
    if (t > count) t = count;
    if (t <= 1) {
        for (unsigned long long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<unsigned long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned long long w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::string format_line(const VerificationResult& r) {
    std::string line = r.identity;
    std::string ps;
    for (const auto& [k, v] : r.params) {
        if (!ps.empty()) ps += ", ";
        ps += k + "=" + std::to_string(v);
    }
    if (!ps.empty()) line += " " + ps;
    line += r.verified ? ": verified" : ": FAILED";
    if (!r.verified && !r.witness.empty()) line += " -- " + r.witness;
    if (!r.lhs_value.empty()) line += "  [lhs=" + r.lhs_value + ", rhs=" + r.rhs_value + "]";
    if (!r.extras.empty()) {
        line += "  [";
        bool first = true;
        for (const auto& [k, v] : r.extras) {
            if (!first) line += ", ";
            first = false;
            line += k + "=" + v;
        }
        line += "]";
    }
    return line;
}

void print_results(const std::vector<VerificationResult>& results) {
    for (const auto& r : results) {
        std::cout << format_line(r) << "\n";
        if (!r.verified && r.has_polys) {
            std::cout << "  lhs = " << qprove::qlaurent::to_string(r.lhs) << "\n";
            std::cout << "  rhs = " << qprove::qlaurent::to_string(r.rhs) << "\n";
        }
    }
}

int finish(RunReport& rep, const CommonOpts& opts,
           std::chrono::steady_clock::time_point t0) {
    if (opts.timing) {
        auto dt = std::chrono::steady_clock::now() - t0;
        rep.elapsed_millis =
            std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    }
    if (!opts.json_path.empty()) {
        std::ofstream out(opts.json_path);
        if (!out) throw std::runtime_error("cannot open --json path: " + opts.json_path);
        out << rep.to_json().dump(2) << "\n";
        std::cerr << "report written to " << opts.json_path << "\n";
    }
    return rep.success() ? 0 : 1;
}

// ---------------------------------------------------------------- verify ---

int run_verify(const std::string& identity, long max_param, const CommonOpts& opts,
               std::chrono::steady_clock::time_point t0) {
    auto it = identity_table().find(identity);
    if (it == identity_table().end())
        throw std::invalid_argument("unknown identity '" + identity +
                                    "'; known: " + known_identity_names());
    const IdentityInfo& info = it->second;
    long max_n = max_param >= 0 ? max_param : info.desk_max;
    if (max_n > info.desk_max && !opts.allow_large)
        throw std::invalid_argument(identity + ": --max " + std::to_string(max_n) +
                                    " exceeds the safe ceiling " +
                                    std::to_string(info.desk_max) +
                                    " (pass --allow-large to override)");
    int threads = resolve_threads(opts.threads);

    RunReport rep;
    rep.command = "verify " + identity + " --max " + std::to_string(max_n);

    if (identity == "touchard") {
        rep.results.resize(max_n + 1);
        run_pool(max_n + 1, threads, [&](unsigned long long i) {
            rep.results[i] = combinatorics::verify_touchard(static_cast<int>(i));
        });
    } else if (identity == "extension") {
        auto convention = combinatorics::calibrate_convention();
        if (convention) {
            rep.extras.emplace_back("convention", combinatorics::convention_name(*convention));
            rep.results.resize(max_n + 1);
            run_pool(max_n + 1, threads, [&](unsigned long long i) {
                rep.results[i] =
                    combinatorics::verify_extension(static_cast<int>(i), *convention);
            });
        } else {
            // Neither convention matches the calibration case m = 2: report
            // the sweep under both conventions, polynomials verbatim.
            rep.extras.emplace_back("convention", "uncalibrated");
            for (long i = 0; i <= max_n; ++i)
                for (auto c : {combinatorics::InterlacingConvention::kOrdered,
                               combinatorics::InterlacingConvention::kUnordered})
                    rep.results.push_back(combinatorics::verify_extension(static_cast<int>(i), c));
        }
    } else {
        rep.results = identities::verify_range(identity, max_n, threads);
    }

    for (const auto& [k, v] : rep.extras)
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    print_results(rep.results);
    std::size_t passed = 0;
    for (const auto& r : rep.results) passed += r.verified ? 1 : 0;
    std::cout << "summary: " << passed << "/" << rep.results.size() << " verified\n";
    return finish(rep, opts, t0);
}

// ------------------------------------------------------- profile / flags ---

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad " + what + " entry '" + item + "'");
        }
        if (pos != item.size() || v <= 0)
            throw std::invalid_argument("bad " + what + " entry '" + item +
                                        "' (want positive integers)");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(what + " list is empty");
    return out;
}

int run_profile(const std::string& subcommand, const std::string& matrix_path,
                const std::string& parts_str, const CommonOpts& opts,
                std::chrono::steady_clock::time_point t0) {
    std::ifstream in(matrix_path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + matrix_path);
    gfq::MatrixGF T = gfq::parse_matrix(in);
    int q = T.ctx->q(), n = T.rows;
    if (!opts.allow_large && (q > 9 || n > 6))
        throw std::invalid_argument("matrix has q=" + std::to_string(q) + ", n=" +
                                    std::to_string(n) +
                                    "; the safe ceilings are q <= 9, n <= 6 "
                                    "(pass --allow-large to override)");

    bool flags_mode = subcommand == "flags";
    const char* list_name = flags_mode ? "--parts" : "--lambda";
    std::vector<int> parts = parse_int_list(parts_str, list_name);
    long long count = flags_mode ? gfq::flag_count(T, parts) : gfq::sigma_count(T, parts);
    std::cout << count << "\n";

    RunReport rep;
    rep.command = subcommand + " --matrix " + matrix_path + " " + list_name + " " + parts_str;
    rep.extras.emplace_back("matrix", gfq::to_string(T));
    rep.extras.emplace_back("q", q);
    rep.extras.emplace_back("n", n);
    rep.extras.emplace_back(flags_mode ? "parts" : "lambda", parts_str);
    rep.extras.emplace_back(flags_mode ? "flagCount" : "sigma", count);
    return finish(rep, opts, t0);
}

// --------------------------------------------------------- conj5 / eqmm ---

struct FieldSweepOpts {
    int q = 0;
    int m = 0;
    bool exhaustive = false;
    long trials = 0;
    long seed = 1;
};

int run_field_sweep(const std::string& subcommand, const FieldSweepOpts& f,
                    const CommonOpts& opts, std::chrono::steady_clock::time_point t0) {
    bool conj5 = subcommand == "conj5";
    int n = (conj5 ? 3 : 2) * f.m;
    if (f.exhaustive == (f.trials > 0))
        throw std::invalid_argument(subcommand +
                                    ": pass exactly one of --exhaustive or --trials");
    if (!opts.allow_large) {
        if (f.q > 9)
            throw std::invalid_argument("q=" + std::to_string(f.q) +
                                        " exceeds the safe ceiling 9 "
                                        "(pass --allow-large to override)");
        if (n > 6)
            throw std::invalid_argument("matrix dimension " + std::to_string(n) +
                                        " exceeds the safe ceiling 6 "
                                        "(pass --allow-large to override)");
    }
    gfq::Ctx ctx = gfq::FieldCtx::make(f.q);
    int threads = resolve_threads(opts.threads);
    auto verify = [&](const gfq::MatrixGF& T, const std::string& label) {
        return conj5 ? gfq::verify_conj5(T, f.m, label) : gfq::verify_eq_mm(T, f.m, label);
    };

    RunReport rep;
    rep.extras.emplace_back("q", f.q);
    rep.extras.emplace_back("m", f.m);
    rep.extras.emplace_back("n", n);

    if (f.exhaustive) {
        rep.command = subcommand + " --q " + std::to_string(f.q) + " --m " +
                      std::to_string(f.m) + " --exhaustive";
        mpz_class total_z;
        mpz_ui_pow_ui(total_z.get_mpz_t(), static_cast<unsigned long>(f.q),
                      static_cast<unsigned long>(n) * static_cast<unsigned long>(n));
        if (!opts.allow_large && total_z > 1048576)
            throw std::invalid_argument(
                "exhaustive sweep has " + total_z.get_str() +
                " matrices, above the safe ceiling 2^20 (pass --allow-large to override)");
        if (!total_z.fits_ulong_p())
            throw std::invalid_argument("exhaustive sweep of " + total_z.get_str() +
                                        " matrices cannot be indexed");
        auto total = static_cast<unsigned long long>(total_z.get_ui());

        std::atomic<unsigned long long> passed{0};
        std::mutex fail_mu;
        std::map<unsigned long long, VerificationResult> failures;
        run_pool(total, threads, [&](unsigned long long i) {
            gfq::MatrixGF T = gfq::matrix_from_index(ctx, n, i);
            VerificationResult r = verify(T, "");
            if (r.verified) {
                passed.fetch_add(1);
            } else {
                r.extras.emplace_back("matrix", gfq::to_string(T));
                r.extras.emplace_back("index", std::to_string(i));
                std::lock_guard<std::mutex> g(fail_mu);
                failures.emplace(i, std::move(r));
            }
        });

        rep.extras.emplace_back("mode", "exhaustive");
        rep.extras.emplace_back("totalMatrices", static_cast<long>(total));
        rep.extras.emplace_back("verifiedCount", static_cast<long>(passed.load()));
        constexpr std::size_t kMaxReported = 10;
        for (auto& [i, r] : failures) {
            if (rep.results.size() >= kMaxReported) break;
            rep.results.push_back(std::move(r));
        }
        std::cout << subcommand << " q=" << f.q << " m=" << f.m << " exhaustive: "
                  << passed.load() << "/" << total << " verified\n";
        if (!failures.empty()) {
            std::cout << failures.size() << " failure(s); first "
                      << rep.results.size() << " reported\n";
            print_results(rep.results);
        }
        return finish(rep, opts, t0);
    }

    // Seeded trials: matrices are drawn sequentially from one generator, so
    // the trial list depends only on (q, n, trials, seed); verification then
    // fans out over the pool.
    rep.command = subcommand + " --q " + std::to_string(f.q) + " --m " +
                  std::to_string(f.m) + " --trials " + std::to_string(f.trials) +
                  " --seed " + std::to_string(f.seed);
    rep.seed = f.seed;
    rep.extras.emplace_back("mode", "trials");
    rep.extras.emplace_back("trials", f.trials);
    std::mt19937_64 rng(static_cast<unsigned long long>(f.seed));
    std::vector<gfq::MatrixGF> mats;
    mats.reserve(f.trials);
    for (long i = 0; i < f.trials; ++i) mats.push_back(gfq::random_matrix(ctx, n, rng));
    rep.results.resize(f.trials);
    run_pool(f.trials, threads, [&](unsigned long long i) {
        rep.results[i] = verify(mats[i], gfq::to_string(mats[i]));
    });
    print_results(rep.results);
    std::size_t passed = 0;
    for (const auto& r : rep.results) passed += r.verified ? 1 : 0;
    std::cout << "summary: " << passed << "/" << rep.results.size() << " verified\n";
    return finish(rep, opts, t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qprove: exact verification of the q-series and finite-field identities"};
    app.require_subcommand(1);

    CommonOpts common;
    auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--threads", common.threads,
                        "Worker threads for parameter sweeps (default: hardware)")
            ->envname("QPROVE_THREADS")
            ->check(CLI::PositiveNumber);
        sub->add_option("--json", common.json_path, "Write the JSON run report to this file");
        sub->add_flag("--allow-large", common.allow_large,
                      "Lift the safe parameter ceilings");
        sub->add_flag("--timing", common.timing,
                      "Record wall-clock elapsedMillis (reports are no longer "
                      "byte-reproducible)");
    };

    std::string identity;
    long max_param = -1;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Verify an identity family for parameter values 0..N");
    verify_cmd->add_option("identity", identity, "One of: " + known_identity_names())
        ->required();
    verify_cmd->add_option("--max", max_param, "Largest parameter value (default: ceiling)")
        ->check(CLI::NonNegativeNumber);
    add_common(verify_cmd);

    std::string matrix_path, parts_str;
    CLI::App* profile_cmd = app.add_subcommand(
        "profile", "Count subspaces with the given dimension sequence (sigma)");
    profile_cmd
        ->add_option("--matrix", matrix_path,
                     "Matrix file: line 1 is 'q n', then n rows of n entries in [0,q)")
        ->required();
    profile_cmd->add_option("--lambda", parts_str, "Dimension sequence, e.g. 1,1,1")
        ->required();
    add_common(profile_cmd);

    CLI::App* flags_cmd = app.add_subcommand(
        "flags", "Count invariant flags with prescribed quotient dimensions (Y)");
    flags_cmd
        ->add_option("--matrix", matrix_path,
                     "Matrix file: line 1 is 'q n', then n rows of n entries in [0,q)")
        ->required();
    flags_cmd->add_option("--parts", parts_str, "Quotient dimensions, e.g. 2,1")
        ->required();
    add_common(flags_cmd);

    FieldSweepOpts field;
    auto add_field = [&field](CLI::App* sub) {
        sub->add_option("--q", field.q, "Field size (prime power, q <= 81)")->required();
        sub->add_option("--m", field.m, "Identity parameter m")
            ->required()
            ->check(CLI::PositiveNumber);
        CLI::Option* ex = sub->add_flag("--exhaustive", field.exhaustive,
                                        "Sweep every matrix of the given dimension");
        CLI::Option* tr = sub->add_option("--trials", field.trials,
                                          "Number of seeded random matrices")
                              ->check(CLI::PositiveNumber);
        sub->add_option("--seed", field.seed, "PRNG seed for --trials (default 1)");
        ex->excludes(tr);
        tr->excludes(ex);
    };
    CLI::App* conj5_cmd = app.add_subcommand(
        "conj5", "Check the (m,m,m) composition formula on 3m x 3m matrices");
    add_field(conj5_cmd);
    add_common(conj5_cmd);
    CLI::App* eqmm_cmd = app.add_subcommand(
        "eqmm", "Check the (m,m) alternating flag formula on 2m x 2m matrices");
    add_field(eqmm_cmd);
    add_common(eqmm_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (app.got_subcommand(verify_cmd))
            return run_verify(identity, max_param, common, t0);
        if (app.got_subcommand(profile_cmd))
            return run_profile("profile", matrix_path, parts_str, common, t0);
        if (app.got_subcommand(flags_cmd))
            return run_profile("flags", matrix_path, parts_str, common, t0);
        if (app.got_subcommand(conj5_cmd))
            return run_field_sweep("conj5", field, common, t0);
        if (app.got_subcommand(eqmm_cmd))
            return run_field_sweep("eqmm", field, common, t0);
    } catch (const std::exception& e) {
        std::cerr << "qprove: error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "qprove: no subcommand\n";
    return 2;
}
