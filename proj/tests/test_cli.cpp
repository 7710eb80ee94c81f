#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cwcmatch/cli.hpp"
#include "cwcmatch/sweep.hpp"

using namespace cwcmatch;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

/// Fresh scratch directory, removed on scope exit.
struct Scratch {
    fs::path dir;
    Scratch() {
        std::random_device rd;
        dir = fs::temp_directory_path() / ("cwcmatch-cli-" + std::to_string(rd()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("bound subcommand") {
    const Run r = run({"bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2"});
    CHECK(r.status == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["bound"] == "4");
    CHECK(j["t"] == 1);
    CHECK(j["parity"] == "odd");

    const Run c = run({"--format", "csv", "bound", "--q", "3", "--n", "4", "--d", "3", "--wbar", "1,1"});
    CHECK(c.status == kExitOk);
    CHECK(c.out.rfind("kind,q,n,d,weight,t,bound,parity,formula,f,witness\n", 0) == 0);
    CHECK(c.out.find("ccc,3,4,3,1;1,1,4,") != std::string::npos);
}

TEST_CASE("invalid input exits 1") {
    CHECK(run({"bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2", "--frobnicate"}).status == kExitInvalidInput);
    CHECK(run({"bound", "--q", "3", "--n", "4", "--d", "3"}).status == kExitInvalidInput);
    CHECK(run({"bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2", "--wbar", "1,1"}).status == kExitInvalidInput);
    CHECK(run({"bound", "--q", "3", "--n", "4", "--d", "9", "--w", "2"}).status == kExitInvalidInput);
    CHECK(run({"teleport"}).status == kExitInvalidInput);
    CHECK(run({}).status == kExitInvalidInput);
    CHECK(run({"--help"}).status == kExitOk);

    const Run even = run({"construct", "--q", "3", "--n", "6", "--d", "4", "--w", "3"});
    CHECK(even.status == kExitInvalidInput);
    CHECK(even.err.find("even d unsupported by constructor") != std::string::npos);
}

TEST_CASE("construct then verify") {
    Scratch s;
    const auto code = s / "code.txt";
    const auto report = s / "report.json";
    const Run c = run({"construct", "--q", "3", "--n", "12", "--d", "3", "--w", "3", "--algo", "nibble", "--seed",
                       "42", "--out", code, "--report", report});
    REQUIRE(c.status == kExitOk);
    CHECK(slurp(report) == c.out);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["config"]["algorithm"] == "nibble");
    CHECK(j["config"]["seed"] == 42);
    CHECK(j["config"]["completion"] == true);
    CHECK(j.contains("ratio"));
    CHECK_FALSE(j.contains("wall_time_ms"));

    const Run v = run({"verify", "--in", code});
    CHECK(v.status == kExitOk);
    const auto vj = nlohmann::json::parse(v.out);
    CHECK(vj["valid"] == true);
    CHECK(vj["size"] == j["code_size"]);

    // identical inputs give identical files
    const auto code2 = s / "code2.txt";
    const Run c2 = run({"construct", "--q", "3", "--n", "12", "--d", "3", "--w", "3", "--algo", "nibble", "--seed",
                        "42", "--out", code2});
    CHECK(c2.out == c.out);
    CHECK(slurp(code) == slurp(code2));
}

TEST_CASE("verify exit statuses") {
    Scratch s;
    spit(s / "bad.txt", "#cwc q=3 n=4 d=3 w=2\n1100\n1200\n");
    const Run bad = run({"verify", "--in", s / "bad.txt"});
    CHECK(bad.status == kExitVerificationFailed);
    const auto j = nlohmann::json::parse(bad.out);
    CHECK(j["valid"] == false);
    CHECK(j["violation"]["kind"] == "distance");
    CHECK(j["violation"]["first"] == 1);
    CHECK(j["violation"]["second"] == 2);

    spit(s / "garbled.txt", "#cwc q=3 n=4 d=3 w=2\n11x0\n");
    const Run garbled = run({"verify", "--in", s / "garbled.txt"});
    CHECK(garbled.status == kExitInvalidInput);
    CHECK(garbled.err.find("line 2") != std::string::npos);
    CHECK(run({"verify", "--in", s / "missing.txt"}).status == kExitInvalidInput);
}

TEST_CASE("exact subcommand") {
    Scratch s;
    const Run r = run({"exact", "--q", "2", "--n", "7", "--d", "3", "--w", "3", "--witness", s / "w.txt"});
    CHECK(r.status == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == 7);
    CHECK(j["bound"] == "7");
    CHECK(j["tight"] == true);
    CHECK(j["status"] == "exact");
    CHECK(j["witness_file"] == s / "w.txt");
    CHECK(run({"verify", "--in", s / "w.txt"}).status == kExitOk);

    const Run t = run({"exact", "--q", "3", "--n", "9", "--d", "3", "--w", "3", "--time-limit-s", "0.001"});
    CHECK(t.status == kExitCapOrTimeout);
    CHECK(nlohmann::json::parse(t.out)["status"] == "timeout");
    CHECK(run({"exact", "--q", "3", "--n", "9", "--d", "3", "--w", "3", "--vertex-cap", "10"}).status ==
          kExitCapOrTimeout);
}

TEST_CASE("stats subcommand") {
    const Run r = run({"stats", "--q", "3", "--n", "5", "--d", "3", "--w", "2"});
    CHECK(r.status == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["max_degree"] == "8");
    CHECK(j["diagnostics"].is_null());
    const Run c = run({"stats", "--q", "3", "--n", "8", "--d", "3", "--wbar", "1,1", "--mode", "empirical"});
    CHECK(c.status == kExitOk);
    const auto cj = nlohmann::json::parse(c.out);
    CHECK(cj["diagnostics"]["delta2_envelope"] == "2");
    CHECK(run({"stats", "--q", "3", "--n", "30", "--d", "3", "--w", "3", "--mode", "empirical", "--budget", "10"})
              .status == kExitCapOrTimeout);
}

TEST_CASE("sweep output does not depend on the thread count") {
    Scratch s;
    const std::vector<std::string> base{"sweep", "--q", "3", "--n", "10,14,18", "--d", "3", "--w", "2", "--seeds", "0,1,2,3"};
    auto one = base;
    one.insert(one.begin(), {"--threads", "1"});
    auto three = base;
    three.insert(three.begin(), {"--threads", "3", "--log", s / "sweep.log"});
    three.insert(three.end(), {"--csv", s / "t.csv"});
    const Run a = run(one);
    const Run b = run(three);
    REQUIRE(a.status == kExitOk);
    CHECK(a.out == b.out);
    CHECK(fs::exists(s / "sweep.log"));
    const std::string csv = slurp(s / "t.csv");
    CHECK(csv.rfind("n,bound,best_size,mean_size,ratio,ratio_decimal,sizes,error\n", 0) == 0);
    const auto j = nlohmann::json::parse(a.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["n"] == 10);
    CHECK(j["rows"][0]["sizes"].size() == 4);

    CHECK(run({"sweep", "--q", "3", "--n", "10,8", "--d", "3", "--w", "2"}).status == kExitInvalidInput);
    CHECK(run({"sweep", "--q", "3", "--n", "10", "--d", "4", "--w", "2"}).status == kExitInvalidInput);
}

TEST_CASE("sweep library edge cases") {
    SweepPlan plan;
    plan.seeds = {0, 1};
    CHECK(run_sweep(plan).empty());
    CHECK(sweep_csv({}) == "n,bound,best_size,mean_size,ratio,ratio_decimal,sizes,error\n");

    // a cell that cannot be built is recorded, not thrown
    plan.weight = 4;
    plan.n_values = {3, 6};
    const auto rows = run_sweep(plan, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].error.has_value());
    CHECK_FALSE(rows[1].error.has_value());
    CHECK(rows[1].best_size >= 1);
}
