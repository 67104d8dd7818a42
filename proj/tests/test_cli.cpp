#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const std::string& capture_path = "/dev/null") {
    const std::string cmd = std::string("\"") + WSVD_CLI_PATH + "\" " + args +
                            " > \"" + capture_path + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "wsvd_cli_tests";
    fs::create_directories(dir);
    return dir;
}

long count_lines(const std::string& text) {
    return std::count(text.begin(), text.end(), '\n');
}

} // namespace

TEST_CASE("identical invocations write byte-identical tables", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path first = dir / "sweep_a.csv";
    const fs::path second = dir / "sweep_b.csv";
    const std::string args = "run --kernel imq --eps 4 --domain disk --rule polar"
                             " --n 100 --m 10,30 --grid 12 --out ";
    REQUIRE(run_cli(args + "\"" + first.string() + "\"") == 0);
    REQUIRE(run_cli(args + "\"" + second.string() + "\"") == 0);
    const std::string a = slurp(first);
    const std::string b = slurp(second);
    CHECK(a == b);
    CHECK(count_lines(a) == 3); // header + one row per truncation order
}

TEST_CASE("flags override config file entries", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path config = dir / "sweep.cfg";
    const fs::path out = dir / "override.csv";
    {
        std::ofstream cfg(config);
        cfg << "kernel = gauss\neps = 2\nn = 49\ngrid = 8\nout = " << (dir / "ignored.csv").string()
            << "\n";
    }
    REQUIRE(run_cli("run --config \"" + config.string() + "\" --n 25 --out \"" + out.string() +
                    "\"") == 0);
    const std::string csv = slurp(out);
    const std::string row = csv.substr(csv.find('\n') + 1);
    CHECK(row.rfind("25,", 0) == 0); // the flag's budget, not the file's
    CHECK_FALSE(fs::exists(dir / "ignored.csv"));
}

TEST_CASE("bad input exits nonzero", "[cli]") {
    const fs::path dir = scratch_dir();
    CHECK(run_cli("run --kernel gaussian --out \"" + (dir / "junk.csv").string() + "\"") == 2);
    CHECK(run_cli("") != 0);         // a subcommand is required
    CHECK(run_cli("run --fuzz 1") != 0); // unknown flag
}

TEST_CASE("spectrum subcommand dumps one row per order", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "spectrum.csv";
    REQUIRE(run_cli("spectrum --kernel gauss --eps 4 --domain disk --rule polar --n 50 --out \"" +
                    out.string() + "\"") == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("j,sigma2\n", 0) == 0);
    CHECK(count_lines(csv) == 58); // header + the 57 nodes closest to the budget
}

TEST_CASE("shape scan reports the best candidate on stdout", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "loo.csv";
    const fs::path log = dir / "loo_stdout.txt";
    REQUIRE(run_cli("loo --eps-grid 2:1:4 --n 9 --out \"" + out.string() + "\"",
                    log.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("eps,score\n", 0) == 0);
    CHECK(count_lines(csv) == 4);
    CHECK(slurp(log).find("best_eps=") != std::string::npos);
}
