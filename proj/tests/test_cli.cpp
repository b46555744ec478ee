#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef PARAFLOAT_CLI_PATH
#error "PARAFLOAT_CLI_PATH must point at the built executable"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

/// Runs the CLI with the given arguments, capturing stdout (and stderr when
/// merge_stderr is set); exit_code is the process exit status.
RunResult run_cli(const std::string& args, bool merge_stderr = true) {
    std::string cmd = std::string("\"") + PARAFLOAT_CLI_PATH + "\" " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = ::pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

constexpr const char* kAxis = "3.17690918";

} // namespace

TEST_CASE("solve prints a table of equilibria") {
    const auto r = run_cli(std::string("solve --axis ") + kAxis + " --density 0.51");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("side") != std::string::npos);
    CHECK(r.output.find("non-archimedean") != std::string::npos);
    CHECK(r.output.find("archimedean") != std::string::npos);
    CHECK(r.output.find("stable") != std::string::npos);
    CHECK(r.output.find("saddle") != std::string::npos);
    CHECK(r.output.find("search:") != std::string::npos);  // diagnostics on stderr
}

TEST_CASE("solve csv carries the five rim-crossing rows") {
    const auto r = run_cli(
        std::string("solve --axis ") + kAxis + " --density 0.51 --format csv", false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("side,case,X,b,c,sigma,tilt_deg,stability,", 0) == 0);
    int rim_rows = 0;
    std::size_t pos = 0;
    while ((pos = r.output.find(",non-archimedean,", pos)) != std::string::npos) {
        ++rim_rows;
        pos += 1;
    }
    CHECK(rim_rows == 5);
}

TEST_CASE("solve json parses and echoes the input") {
    const auto r = run_cli(
        std::string("solve --axis ") + kAxis + " --density 0.51 --format json", false);
    CHECK(r.exit_code == 0);
    REQUIRE(!r.output.empty());
    CHECK(r.output[0] == '{');
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("input").at("density").get<double>() == doctest::Approx(0.51));
    CHECK(j.at("equilibria").size() >= 5);
    CHECK(j.at("diagnostics").at("converged").get<int>() >= 5);
}

TEST_CASE("invalid density exits with code two") {
    const auto r = run_cli("solve --axis 2.5 --density 1.5");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("relative density must lie in (0, 1)") != std::string::npos);
}

TEST_CASE("exactly one shape option is required") {
    CHECK(run_cli("solve --density 0.4").exit_code == 2);
    const auto both = run_cli("solve --axis 2.5 --base-angle 70 --density 0.4");
    CHECK(both.exit_code == 2);
    const auto angle = run_cli("solve --base-angle 74.33 --density 0.51 --format csv",
                               false);
    CHECK(angle.exit_code == 0);
    CHECK(angle.output.find("non-archimedean") != std::string::npos);
}

TEST_CASE("help and argument errors") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);               // missing subcommand
    CHECK(run_cli("frobnicate").exit_code == 2);     // unknown subcommand
    CHECK(run_cli("solve --axis 2.5").exit_code == 2);  // missing --density
    CHECK(run_cli("solve --axis 2.5 --density 0.4 --format yaml").exit_code == 2);
}

TEST_CASE("region reports the closed-form interval") {
    const auto r = run_cli("region --axis 2.5", false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("X1    = -1.14298503") != std::string::npos);
    CHECK(r.output.find("X2    = -0.09165173") != std::string::npos);
    CHECK(r.output.find("case  = X1-to-X2") != std::string::npos);
    const auto deep = run_cli("region --axis 3.5", false);
    CHECK(deep.output.find("case  = empty") != std::string::npos);
}

TEST_CASE("sweep csv starts with the column header") {
    const auto r = run_cli("sweep --axis 2.5 --step 0.05 --format csv", false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("X,b,sigma,branch,stability,case\n", 0) == 0);
}

TEST_CASE("classify labels the frozen merged configuration") {
    const auto r = run_cli(
        "classify --axis 3.17690918 --X -1.0270270346 --b -1.1320542054 "
        "--density 0.5100055418", false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("verdict     = degenerate-unstable") != std::string::npos);
    CHECK(r.output.find("cubic") != std::string::npos);
}

TEST_CASE("classify labels a plain minimum") {
    const auto r = run_cli(
        "classify --axis 3.17690918 --X -1.03304236 --b -1.12424322 --density 0.51",
        false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("verdict     = stable") != std::string::npos);
}

TEST_CASE("output lands in the requested file") {
    const std::string path = "/tmp/parafloat_cli_out_test.csv";
    std::remove(path.c_str());
    const auto r = run_cli("region --axis 2.5 --format json --output " + path, false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    const std::string data = slurp(path);
    const auto j = nlohmann::json::parse(data);
    CHECK(j.at("X1").get<double>() == doctest::Approx(-1.14298503).epsilon(1e-6));
    std::remove(path.c_str());
}

TEST_CASE("unwritable output path exits with code one") {
    const auto r = run_cli("region --axis 2.5 --output /nonexistent-dir/out.txt");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("cannot open output file") != std::string::npos);
}
