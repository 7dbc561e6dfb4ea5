#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

// minimal-branch center value from the shooting oracle (tests/oracle)
constexpr double kOracleCenter1dLambdaHalf = 0.328952421430;

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("liouville_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const fs::path& cwd, const std::string& args) {
    const std::string cmd =
        "cd " + cwd.string() + " && " + LIOUVILLE_CLI_PATH + " " + args + " >cli.log 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// first data row of a CSV, split into doubles
std::vector<double> first_csv_row(const fs::path& p) {
    std::ifstream in(p);
    std::string header, line;
    REQUIRE(std::getline(in, header).good());
    REQUIRE(std::getline(in, line).good());
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = line.find(',', pos);
        out.push_back(std::strtod(line.substr(pos, comma - pos).c_str(), nullptr));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int line_count(const fs::path& p) {
    std::ifstream in(p);
    int count = 0;
    std::string line;
    while (std::getline(in, line)) ++count;
    return count;
}

} // namespace

TEST_CASE("solve command matches the oracle and writes both artifacts") {
    const fs::path dir = fresh_dir("solve");
    REQUIRE(run_cli(dir, "solve --dim 1 --n 2000 --lambda 0.5 --mu 0.5") == 0);
    const auto row = first_csv_row(dir / "fields.csv");
    REQUIRE(row.size() == 3);
    REQUIRE(row[0] == 0.0);                                             // r
    REQUIRE(row[1] == Approx(kOracleCenter1dLambdaHalf).margin(1e-5)); // u(0)
    const std::string json = slurp(dir / "solve_report.json");
    REQUIRE(json.find("\"converged\":true") != std::string::npos);
    REQUIRE(json.find("\"command\":\"solve\"") != std::string::npos);
    REQUIRE(json.find("\"seed\":0") != std::string::npos);
}

TEST_CASE("trace command finds the disk fold near (2, 2)") {
    const fs::path dir = fresh_dir("trace");
    REQUIRE(run_cli(dir, "trace --dim 2 --n 800 --rays 1") == 0);
    const auto row = first_csv_row(dir / "curve.csv");
    // t, lambda_star, mu_star, bracket_width, lambda1_at_fold
    REQUIRE(row.size() == 5);
    REQUIRE(row[0] == 1.0);
    REQUIRE(row[1] == Approx(2.0).margin(1e-2));
    REQUIRE(row[2] == Approx(2.0).margin(1e-2));
}

TEST_CASE("trace emits one CSV data row per ray") {
    const fs::path dir = fresh_dir("trace_rows");
    REQUIRE(run_cli(dir, "trace --dim 1 --n 300 --rays 0.5,1,2 --threads 3") == 0);
    REQUIRE(line_count(dir / "curve.csv") == 4); // header + 3 rays
}

TEST_CASE("trace with an s-max below the branch reports errors and an empty table") {
    const fs::path dir = fresh_dir("trace_empty");
    REQUIRE(run_cli(dir, "trace --dim 1 --n 200 --rays 1 --s-max 0.1") == 1);
    REQUIRE(line_count(dir / "curve.csv") == 1); // header only
    const std::string json = slurp(dir / "trace_report.json");
    REQUIRE(json.find("\"curve\":[]") != std::string::npos);
    REQUIRE(json.find("no existence boundary") != std::string::npos);
}

TEST_CASE("verify command audits every inequality at a stable point") {
    const fs::path dir = fresh_dir("verify");
    REQUIRE(run_cli(dir, "verify --dim 1 --n 800 --lambda 0.4 --mu 0.4 --alpha 3.9") == 0);
    const std::string json = slurp(dir / "verify_report.json");
    REQUIRE(json.find("\"all_satisfied\":true") != std::string::npos);
    REQUIRE(json.find("\"label\":\"l1\"") != std::string::npos);
    REQUIRE(json.find("\"label\":\"a1\"") != std::string::npos);
    REQUIRE(json.find("\"label\":\"young\"") != std::string::npos);
    REQUIRE(json.find("\"label\":\"a7\"") != std::string::npos);
    REQUIRE(json.find("\"label\":\"2161\"") != std::string::npos);
    REQUIRE(json.find("\"label\":\"step2-final\"") != std::string::npos);
    REQUIRE(json.find("\"label\":\"stability\"") != std::string::npos);
}

TEST_CASE("exit code contract") {
    SECTION("config errors exit 2") {
        const fs::path dir = fresh_dir("exit2");
        REQUIRE(run_cli(dir, "solve --dim 0 --lambda 1 --mu 1") == 2);
        REQUIRE(run_cli(dir, "solve --lambda 1 --mu 1") == 2);          // missing --dim
        REQUIRE(run_cli(dir, "solve --dim 1 --lambda 1") == 2);         // missing --mu
        REQUIRE(run_cli(dir, "frobnicate") == 2);                       // unknown command
        REQUIRE(run_cli(dir, "solve --dim 1 --lambda 1 --mu 1 --bogus 3") == 2);
        REQUIRE(run_cli(dir, "verify --dim 1 --lambda 0.4 --mu 0.4 --alpha 7") == 2);
    }
    SECTION("nonconvergence without blow-up exits 1") {
        const fs::path dir = fresh_dir("exit1");
        REQUIRE(run_cli(dir,
                        "solve --dim 1 --n 300 --lambda 0.87 --mu 0.87 "
                        "--monotone-max-iter 50") == 1);
        const std::string json = slurp(dir / "solve_report.json");
        REQUIRE(json.find("\"converged\":false") != std::string::npos);
        REQUIRE(json.find("\"blew_up\":false") != std::string::npos);
    }
    SECTION("overflow aborts exit 3") {
        const fs::path dir = fresh_dir("exit3");
        REQUIRE(run_cli(dir, "solve --dim 1 --n 200 --lambda 10 --mu 10") == 3);
        REQUIRE(run_cli(dir, "verify --dim 1 --n 200 --lambda 10 --mu 10") == 3);
    }
    SECTION("unwritable output exits 4") {
        const fs::path dir = fresh_dir("exit4");
        REQUIRE(run_cli(dir, "solve --dim 1 --n 200 --lambda 0.5 --mu 0.5 "
                             "--json missing_dir/out.json") == 4);
    }
    SECTION("help exits 0") {
        const fs::path dir = fresh_dir("exit0");
        REQUIRE(run_cli(dir, "--help") == 0);
        REQUIRE(run_cli(dir, "solve --help") == 0);
    }
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const std::string cmd = "verify --dim 2 --n 400 --lambda 0.8 --mu 1.1 --seed 7";
    REQUIRE(run_cli(a, cmd) == 0);
    REQUIRE(run_cli(b, cmd) == 0);
    REQUIRE(slurp(a / "verify_report.json") == slurp(b / "verify_report.json"));
    REQUIRE(slurp(a / "fields.csv") == slurp(b / "fields.csv"));

    const std::string trace_cmd = "trace --dim 1 --n 300 --rays 0.5,1,2";
    REQUIRE(run_cli(a, trace_cmd + " --threads 1") == 0);
    REQUIRE(run_cli(b, trace_cmd + " --threads 3") == 0);
    REQUIRE(slurp(a / "trace_report.json") == slurp(b / "trace_report.json"));
    REQUIRE(slurp(a / "curve.csv") == slurp(b / "curve.csv"));
}

TEST_CASE("seed changes the generated test fields but not the solution") {
    const fs::path a = fresh_dir("seed_a");
    const fs::path b = fresh_dir("seed_b");
    REQUIRE(run_cli(a, "verify --dim 1 --n 300 --lambda 0.5 --mu 0.5 --seed 1") == 0);
    REQUIRE(run_cli(b, "verify --dim 1 --n 300 --lambda 0.5 --mu 0.5 --seed 2") == 0);
    REQUIRE(slurp(a / "fields.csv") == slurp(b / "fields.csv"));
    REQUIRE(slurp(a / "verify_report.json") != slurp(b / "verify_report.json"));
}
