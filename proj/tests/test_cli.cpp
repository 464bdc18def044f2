#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "schema_lite.hpp"

// QPROVE_BIN and QPROVE_SCHEMA_DIR are provided by the build.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunOutcome {
    int code = -1;
    std::string out;
};

fs::path tmp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "qprove_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the tool with the given arguments; captures exit code and stdout.
RunOutcome run_cli(const std::string& args, const std::string& tag) {
    fs::path out = tmp_dir() / (tag + ".out");
    std::string cmd =
        std::string(QPROVE_BIN) + " " + args + " > " + out.string() + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    RunOutcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++n;
    return n;
}

json load_schema() {
    std::string text = slurp(fs::path(QPROVE_SCHEMA_DIR) / "report.schema.json");
    REQUIRE(!text.empty());
    return json::parse(text);
}

fs::path write_matrix_file(const std::string& name, const std::string& content) {
    fs::path p = tmp_dir() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("usage errors exit with status 2, help with 0") {
    CHECK(run_cli("", "noargs").code == 2);
    CHECK(run_cli("--help", "help").code == 0);
    CHECK(run_cli("verify", "no_identity").code == 2);
    CHECK(run_cli("verify no-such-identity", "unknown").code == 2);
    CHECK(run_cli("frobnicate", "bad_subcommand").code == 2);
    CHECK(run_cli("conj5 --q 2 --m 1", "neither_mode").code == 2);
    CHECK(run_cli("conj5 --q 2 --m 1 --exhaustive --trials 5", "both_modes").code == 2);
    CHECK(run_cli("conj5 --q 6 --m 1 --exhaustive", "composite_q").code == 2);
}

TEST_CASE("safe ceilings require --allow-large") {
    CHECK(run_cli("verify conjecture1 --max 99", "too_large").code == 2);
    CHECK(run_cli("eqmm --q 2 --m 4 --trials 1", "dim_too_large").code == 2);
    CHECK(run_cli("conj5 --q 16 --m 1 --trials 1", "q_too_large").code == 2);
    // m = 1 exhaustive eqmm over F4 is only 4^4 = 256 matrices: inside the ceiling
    CHECK(run_cli("eqmm --q 4 --m 1 --exhaustive", "f4_ok").code == 0);
}

TEST_CASE("verify sweeps print one line per parameter value") {
    auto r = run_cli("verify prop6 --max 25", "prop6_25");
    CHECK(r.code == 0);
    CHECK(count_occurrences(r.out, ": verified") == 26);
    CHECK(r.out.find("summary: 26/26 verified") != std::string::npos);

    auto c1 = run_cli("verify conjecture1", "conjecture1_default");
    CHECK(c1.code == 0);  // default --max is the ceiling, 4
    CHECK(count_occurrences(c1.out, ": verified") == 5);
    CHECK(c1.out.find("minExponent=") != std::string::npos);

    auto ext = run_cli("verify extension --max 3", "extension_3");
    CHECK(ext.code == 0);
    CHECK(ext.out.find("convention: ordered") != std::string::npos);
}

TEST_CASE("JSON reports validate against the shipped schema") {
    json schema = load_schema();
    fs::path rep = tmp_dir() / "verify_theorem2.json";
    auto r = run_cli("verify theorem2 --max 2 --json " + rep.string(), "t2_json");
    CHECK(r.code == 0);
    json doc = json::parse(slurp(rep));
    CHECK(schema_lite::validate_report(doc, schema).empty());
    CHECK(doc["tool"] == "qprove");
    CHECK(doc["command"] == "verify theorem2 --max 2");
    CHECK(doc["success"] == true);
    CHECK(doc["elapsedMillis"] == 0);
    REQUIRE(doc["results"].size() == 3);
    CHECK(doc["results"][0]["identity"] == "theorem2");
    CHECK(doc["results"][2]["params"]["m"] == 2);
    CHECK(doc["results"][2]["status"] == "verified");

    fs::path rep2 = tmp_dir() / "conj5_trials.json";
    auto t = run_cli("conj5 --q 2 --m 2 --trials 3 --seed 7 --json " + rep2.string(),
                     "conj5_json");
    CHECK(t.code == 0);
    json doc2 = json::parse(slurp(rep2));
    CHECK(schema_lite::validate_report(doc2, schema).empty());
    CHECK(doc2["seed"] == 7);
    REQUIRE(doc2["results"].size() == 3);
    CHECK(doc2["extras"]["mode"] == "trials");
}

TEST_CASE("reports are byte-identical across thread counts and reruns") {
    fs::path a = tmp_dir() / "det_a.json";
    fs::path b = tmp_dir() / "det_b.json";
    fs::path c = tmp_dir() / "det_c.json";
    auto ra = run_cli("verify theorem2 --max 3 --threads 1 --json " + a.string(), "det_a");
    auto rb = run_cli("verify theorem2 --max 3 --threads 4 --json " + b.string(), "det_b");
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    CHECK(ra.out == rb.out);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());

    // QPROVE_THREADS is the environment fallback for --threads
    fs::path envout = tmp_dir() / "det_env.out";
    std::string cmd = std::string("QPROVE_THREADS=3 ") + QPROVE_BIN +
                      " verify theorem2 --max 3 --json " + c.string() + " > " +
                      envout.string() + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(slurp(c) == slurp(a));
    CHECK(slurp(envout) == ra.out);

    // seeded runs reproduce byte for byte
    fs::path s1 = tmp_dir() / "seed1.json";
    fs::path s2 = tmp_dir() / "seed2.json";
    auto q1 = run_cli("eqmm --q 2 --m 2 --trials 5 --seed 42 --threads 2 --json " +
                          s1.string(),
                      "seed_run1");
    auto q2 = run_cli("eqmm --q 2 --m 2 --trials 5 --seed 42 --threads 5 --json " +
                          s2.string(),
                      "seed_run2");
    CHECK(q1.code == 0);
    CHECK(q2.code == 0);
    CHECK(q1.out == q2.out);
    CHECK(slurp(s1) == slurp(s2));
    // ... and a different seed gives a different matrix sample
    fs::path s3 = tmp_dir() / "seed3.json";
    run_cli("eqmm --q 2 --m 2 --trials 5 --seed 43 --json " + s3.string(), "seed_run3");
    CHECK(slurp(s3) != slurp(s1));
}

TEST_CASE("profile and flags print the count") {
    fs::path diag = write_matrix_file("diag123_f7.txt", "7 3\n1 0 0\n0 2 0\n0 0 3\n");
    auto p = run_cli("profile --matrix " + diag.string() + " --lambda 1,1,1", "profile36");
    CHECK(p.code == 0);
    CHECK(p.out.substr(0, 3) == "36\n");

    fs::path eye = write_matrix_file("identity_f2.txt", "2 3\n1 0 0\n0 1 0\n0 0 1\n");
    auto f = run_cli("flags --matrix " + eye.string() + " --parts 1,1", "flags21");
    CHECK(f.code == 0);
    CHECK(f.out.substr(0, 3) == "21\n");  // [3,1]_2 * [2,1]_2 = 7 * 3

    json schema = load_schema();
    fs::path rep = tmp_dir() / "profile.json";
    auto pj = run_cli("profile --matrix " + diag.string() + " --lambda 1,1,1 --json " +
                          rep.string(),
                      "profile_json");
    CHECK(pj.code == 0);
    json doc = json::parse(slurp(rep));
    CHECK(schema_lite::validate_report(doc, schema).empty());
    CHECK(doc["extras"]["sigma"] == 36);
    CHECK(doc["extras"]["q"] == 7);
}

TEST_CASE("matrix file problems are usage errors") {
    fs::path bad1 = write_matrix_file("bad_header.txt", "oops\n");
    CHECK(run_cli("profile --matrix " + bad1.string() + " --lambda 1", "bad_header").code ==
          2);
    fs::path bad2 = write_matrix_file("bad_q.txt", "6 2\n0 0\n0 0\n");
    CHECK(run_cli("profile --matrix " + bad2.string() + " --lambda 1", "bad_q").code == 2);
    fs::path bad3 = write_matrix_file("truncated.txt", "5 2\n1 2\n3\n");
    CHECK(run_cli("profile --matrix " + bad3.string() + " --lambda 1", "truncated").code ==
          2);
    CHECK(run_cli("profile --matrix /nonexistent.txt --lambda 1", "missing_file").code == 2);
    fs::path diag = write_matrix_file("diag12_f5.txt", "5 2\n1 0\n0 2\n");
    CHECK(run_cli("profile --matrix " + diag.string() + " --lambda 1,x", "bad_lambda").code ==
          2);
    CHECK(run_cli("profile --matrix " + diag.string() + " --lambda 1,2", "bad_order").code ==
          2);  // not weakly decreasing
}

TEST_CASE("exhaustive finite-field sweeps") {
    auto c5 = run_cli("conj5 --q 2 --m 1 --exhaustive", "conj5_f2");
    CHECK(c5.code == 0);
    CHECK(c5.out.find("512/512 verified") != std::string::npos);

    auto mm = run_cli("eqmm --q 3 --m 1 --exhaustive", "eqmm_f3");
    CHECK(mm.code == 0);
    CHECK(mm.out.find("81/81 verified") != std::string::npos);

    json schema = load_schema();
    fs::path rep = tmp_dir() / "eqmm_f2.json";
    auto m2 = run_cli("eqmm --q 2 --m 1 --exhaustive --json " + rep.string(), "eqmm_f2");
    CHECK(m2.code == 0);
    json doc = json::parse(slurp(rep));
    CHECK(schema_lite::validate_report(doc, schema).empty());
    CHECK(doc["extras"]["totalMatrices"] == 16);
    CHECK(doc["extras"]["verifiedCount"] == 16);
    CHECK(doc["results"].empty());  // only failures are itemized
    CHECK(doc["success"] == true);
}
