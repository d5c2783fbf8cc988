#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "specbal/instance.hpp"
#include "specbal/linalg.hpp"
#include "specbal/report.hpp"

namespace {

namespace fs = std::filesystem;

std::string tmp_dir() {
    const auto dir = fs::temp_directory_path() / "specbal_cli_test";
    fs::create_directories(dir);
    return dir.string();
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = tmp_dir() + "/cli_out.txt";
    const std::string cmd = std::string(SPECBAL_CLI_PATH) + " " + args + " > " + out_path +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    res.output = ss.str();
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes an instance and echoes the parameters") {
    const std::string path = tmp_dir() + "/lb8.json";
    const RunResult res = run_cli("gen --family lower-bound --n 8 --seed 1 --out " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("n=8 d=8") != std::string::npos);
    CHECK(res.output.find("sigma=") != std::string::npos);

    const specbal::Instance inst = specbal::read_instance(path);
    CHECK(inst.n == 8);
    CHECK(inst.d == 8);
}

TEST_CASE("gen rejects missing and bad arguments with exit code 2") {
    CHECK(run_cli("gen --family lower-bound").exit_code == 2);
    CHECK(run_cli("gen --family unknown --n 4").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("solve produces a reproducible report consistent with its signs") {
    const std::string inst_path = tmp_dir() + "/lr.json";
    REQUIRE(run_cli("gen --family low-rank --n 12 --d 8 --r 2 --seed 3 --out " + inst_path)
                .exit_code == 0);

    const std::string rep1 = tmp_dir() + "/rep1.json";
    const std::string rep2 = tmp_dir() + "/rep2.json";
    const RunResult r1 = run_cli("solve " + inst_path + " --seed 42 --out " + rep1);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("discrepancy=") != std::string::npos);
    const RunResult r2 = run_cli("solve " + inst_path + " --seed 42 --out " + rep2);
    CHECK(r2.exit_code == 0);

    // identical seeds give byte-identical reports
    CHECK(slurp(rep1) == slurp(rep2));

    // recomputing the discrepancy from the stored signs matches the report
    const specbal::ParsedReport rep = specbal::read_report(rep1);
    const specbal::Instance inst = specbal::read_instance(inst_path);
    const auto ptrs = inst.matrix_ptrs();
    const double recomputed =
        specbal::spectral_norm(specbal::weighted_sum(ptrs, rep.signs.values));
    CHECK(recomputed == doctest::Approx(rep.discrepancy).epsilon(1e-8));
}

TEST_CASE("solve on a missing file exits with code 2") {
    CHECK(run_cli("solve /nonexistent/path.json --seed 1").exit_code == 2);
}

TEST_CASE("bench emits the fixed CSV header and cross-consistent rows") {
    const std::string inst_path = tmp_dir() + "/lb12.json";
    REQUIRE(run_cli("gen --family lower-bound --n 12 --out " + inst_path).exit_code == 0);
    const std::string csv_path = tmp_dir() + "/bench.csv";
    const RunResult res =
        run_cli("bench " + inst_path + " --samples 20 --seed 5 --out " + csv_path);
    CHECK(res.exit_code == 0);

    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("method,discrepancy,normalized,runtime_ms,seed\n", 0) == 0);
    CHECK(csv.find("solver,") != std::string::npos);
    CHECK(csv.find("random,") != std::string::npos);
    CHECK(csv.find("brute_force,") != std::string::npos);
    CHECK(csv.find("chernoff_bound,") != std::string::npos);
    CHECK(csv.find("bbvh_bound,") != std::string::npos);

    // solver row is at least the brute-force row
    double solver_val = -1.0;
    double brute_val = -1.0;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("solver,", 0) == 0) solver_val = std::stod(line.substr(7));
        if (line.rfind("brute_force,", 0) == 0) brute_val = std::stod(line.substr(12));
    }
    REQUIRE(solver_val >= 0.0);
    REQUIRE(brute_val >= 0.0);
    CHECK(solver_val >= brute_val - 1e-9);
}

TEST_CASE("bench skips brute force above the cap") {
    const std::string inst_path = tmp_dir() + "/d40.json";
    REQUIRE(run_cli("gen --family diagonal-spencer --n 40 --d 8 --seed 2 --out " + inst_path)
                .exit_code == 0);
    const RunResult res = run_cli("bench " + inst_path + " --samples 10 --seed 5");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("brute_force,skipped (n>24)") != std::string::npos);
}

TEST_CASE("verify passes on a fresh instance and fails on a corrupted one") {
    const std::string inst_path = tmp_dir() + "/verify.json";
    REQUIRE(run_cli("gen --family low-rank --n 8 --d 6 --r 2 --seed 9 --out " + inst_path)
                .exit_code == 0);
    const RunResult good = run_cli("verify " + inst_path + " --seed 4");
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("FAIL") == std::string::npos);
    CHECK(good.output.find("gram_covariance_spectrum") != std::string::npos);
    CHECK(good.output.find("v_contraction") != std::string::npos);

    // asymmetric matrix entries are rejected at parse
    const std::string asym_path = tmp_dir() + "/asym.json";
    std::ofstream(asym_path) << R"({"n": 1, "d": 2, "label": "", "seed": null,
                                    "matrices": [[1, 0.25, 0.5, 1]]})";
    const RunResult asym = run_cli("verify " + asym_path + " --seed 4");
    CHECK(asym.exit_code == 2);

    // a parseable instance that fails an invariant exits with code 1
    const std::string heavy_path = tmp_dir() + "/heavy.json";
    std::ofstream(heavy_path) << R"({"n": 1, "d": 2, "label": "", "seed": null,
                                     "matrices": [[2, 0, 0, 2]]})";
    const RunResult heavy = run_cli("verify " + heavy_path + " --seed 4");
    CHECK(heavy.exit_code == 1);
    CHECK(heavy.output.find("FAIL") != std::string::npos);
}

TEST_CASE("omitting the seed draws one from entropy and prints it") {
    const std::string inst_path = tmp_dir() + "/seedless.json";
    const RunResult res =
        run_cli("gen --family diagonal-spencer --n 4 --d 4 --out " + inst_path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("drawn from entropy") != std::string::npos);
}

}  // TEST_SUITE
