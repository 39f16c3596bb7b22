#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const std::string cmd =
        std::string(FIQSIM_BINARY) + " " + args + " > " + out.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fiqsim_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("make emits periodic digit metadata for rationals") {
    TempDir tmp;
    const auto res = run_cli("make rational:1/3", tmp.path);
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.stdout_text);
    CHECK(j["kind"] == "rational");
    CHECK(j["expansion"]["period"] == 2);
}

TEST_CASE("make/validate/evolve/measure round trip on a fiq") {
    TempDir tmp;
    const fs::path qfile = tmp.path / "q.json";
    auto made = run_cli("make 'fiq:prefix=101,window=3/10;1/4' --out " + qfile.string(), tmp.path);
    REQUIRE(made.exit_code == 0);

    auto valid = run_cli("validate " + qfile.string(), tmp.path);
    CHECK(valid.exit_code == 0);
    CHECK(json::parse(valid.stdout_text)["ok"] == true);

    const fs::path traj = tmp.path / "traj.csv";
    const fs::path evolved = tmp.path / "evolved.json";
    auto ev = run_cli("evolve " + qfile.string() + " --map shift:1 --steps 2 --seed 4 --out " +
                          traj.string() + " --save " + evolved.string(),
                      tmp.path);
    REQUIRE(ev.exit_code == 0);
    const std::string csv = slurp(traj);
    CHECK(csv.rfind("step,emitted_bits,N,M,information_content\n", 0) == 0);
    CHECK(csv.find("1,1,") != std::string::npos);  // first step emits the leading 1
    CHECK(csv.find("2,0,") != std::string::npos);

    auto revalid = run_cli("validate " + evolved.string(), tmp.path);
    CHECK(revalid.exit_code == 0);

    const fs::path measured = tmp.path / "measured.json";
    auto m1 = run_cli("measure " + evolved.string() + " --resolution 4 --seed 9 --out " + measured.string(),
                      tmp.path);
    REQUIRE(m1.exit_code == 0);
    const std::string reading1 = m1.stdout_text;
    REQUIRE(reading1.size() == 5);  // 4 bits + newline

    // Re-measuring the saved state at the same resolution reads the same digits.
    auto m2 = run_cli("measure " + measured.string() + " --resolution 4 --seed 1", tmp.path);
    CHECK(m2.stdout_text == reading1);
}

TEST_CASE("validate rejects invalid fiq files with exit code 1") {
    TempDir tmp;
    const fs::path bad = tmp.path / "bad.json";
    std::ofstream(bad) << R"({"prefix":"10","window":[["0","1"]],"clock":0})";
    auto res = run_cli("validate " + bad.string(), tmp.path);
    CHECK(res.exit_code == 1);
    const json j = json::parse(res.stdout_text);
    CHECK(j["ok"] == false);
    REQUIRE_FALSE(j["violations"].empty());
}

TEST_CASE("usage errors exit with code 2") {
    TempDir tmp;
    CHECK(run_cli("frobnicate", tmp.path).exit_code == 2);
    CHECK(run_cli("make klingon:1", tmp.path).exit_code == 2);
    CHECK(run_cli("make rational:1/0", tmp.path).exit_code == 2);
}

TEST_CASE("experiment writes results and summary; statistical verdict sets the exit code") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "cfg.json";
    std::ofstream(cfg) << json({{"schema", "fiqsim-experiment/1"},
                                {"name", "recurrence"},
                                {"seed", 5},
                                {"params", {{"ic", "rational:1/3"}, {"k", 2}, {"steps", 10}}}})
                              .dump();
    auto res = run_cli("experiment --config " + cfg.string() + " --out-dir " + tmp.path.string(),
                       tmp.path);
    REQUIRE(res.exit_code == 0);
    const json summary = json::parse(slurp(tmp.path / "summary.json"));
    CHECK(summary["pass"] == true);
    CHECK(summary["statistics"]["period"] == 2);
    CHECK(slurp(tmp.path / "results.csv").rfind("ic,recurred,period", 0) == 0);

    // An ensemble too small for its claimed tolerance fails statistically -> 3.
    const fs::path cfg2 = tmp.path / "cfg2.json";
    std::ofstream(cfg2) << json({{"schema", "fiqsim-experiment/1"},
                                 {"name", "recurrence"},
                                 {"seed", 5},
                                 {"params", {{"ic", "rational:1/7"}, {"k", 3}, {"steps", 1}}}})
                               .dump();
    auto res2 = run_cli("experiment --config " + cfg2.string() + " --out-dir " + tmp.path.string(),
                        tmp.path);
    CHECK(res2.exit_code == 3);  // no recurrence within one step
}

TEST_CASE("experiment reruns are byte-identical") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "cfg.json";
    std::ofstream(cfg) << json({{"schema", "fiqsim-experiment/1"},
                                {"name", "measurement_stability"},
                                {"seed", 77},
                                {"params", {{"schedule", {2, 4, 8}}, {"replicas", 50}}}})
                              .dump();
    const fs::path dir1 = tmp.path / "run1";
    const fs::path dir2 = tmp.path / "run2";
    fs::create_directories(dir1);
    fs::create_directories(dir2);
    REQUIRE(run_cli("experiment --config " + cfg.string() + " --out-dir " + dir1.string(), tmp.path)
                .exit_code == 0);
    REQUIRE(run_cli("experiment --config " + cfg.string() + " --out-dir " + dir2.string(), tmp.path)
                .exit_code == 0);
    CHECK(slurp(dir1 / "results.csv") == slurp(dir2 / "results.csv"));
    CHECK(slurp(dir1 / "summary.json") == slurp(dir2 / "summary.json"));
}

TEST_CASE("evolve on an exact rational matches the periodic expansion") {
    TempDir tmp;
    const fs::path qfile = tmp.path / "third.json";
    REQUIRE(run_cli("make rational:1/3 --out " + qfile.string(), tmp.path).exit_code == 0);
    auto res = run_cli("evolve " + qfile.string() + " --map shift:1 --steps 4", tmp.path);
    REQUIRE(res.exit_code == 0);
    CHECK(res.stdout_text.find("1,0,2/3") != std::string::npos);
    CHECK(res.stdout_text.find("2,1,1/3") != std::string::npos);
}
