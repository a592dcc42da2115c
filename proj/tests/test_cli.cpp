#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& stdin_data = "") {
    std::string in_path = "cli_in.tmp";
    std::string out_path = "cli_out.tmp";
    {
        std::ofstream f(in_path, std::ios::binary);
        f << stdin_data;
    }
    std::string cmd = std::string(BBS_CLI_PATH) + " " + args + " < " + in_path + " > " + out_path +
                      " 2> cli_err.tmp";
    int status = std::system(cmd.c_str());
    std::ifstream f(out_path, std::ios::binary);
    std::string out((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return {WEXITSTATUS(status), out};
}

const char* kFigure = "011001110101100010";

}  // namespace

TEST_CASE("cli skip reproduces the published row") {
    RunResult r = run_cli("skip -k 1", kFigure);
    CHECK(r.status == 0);
    CHECK(r.out == "010111000\n");
}

TEST_CASE("cli ts lists soliton sizes largest first") {
    RunResult r = run_cli("ts", "0110011101011000100");
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == 1);
    std::vector<int> sizes;
    for (auto& s : doc["solitons"]) sizes.push_back(s["size"].get<int>());
    CHECK(sizes == std::vector<int>{4, 2, 1, 1, 1});
    CHECK(doc["records"] == nlohmann::json::array({0}));
}

TEST_CASE("cli eliminate pipes like a semigroup") {
    RunResult once = run_cli("eliminate -k 1", kFigure);
    REQUIRE(once.status == 0);
    CHECK(once.out == "010111000\n");
    RunResult twice = run_cli("eliminate -k 1", once.out);
    RunResult direct = run_cli("eliminate -k 2", kFigure);
    REQUIRE(twice.status == 0);
    REQUIRE(direct.status == 0);
    CHECK(twice.out == direct.out);
    CHECK(direct.out == "01100\n");
}

TEST_CASE("cli zeta emits the sparse triples") {
    RunResult r = run_cli("zeta", kFigure);
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    auto expected =
        nlohmann::json::array({nlohmann::json::array({1, 4, 2}), nlohmann::json::array({1, 7, 1}),
                               nlohmann::json::array({2, 0, 1}), nlohmann::json::array({4, 0, 1})});
    CHECK(doc["entries"] == expected);
}

TEST_CASE("cli evolve conserves balls and reports offsets") {
    RunResult r = run_cli("evolve", "0110");
    REQUIRE(r.status == 0);
    CHECK(r.out == "#origin=3\n11\n");
    RunResult rep = run_cli("evolve --report json", "10");
    REQUIRE(rep.status == 0);
    auto doc = nlohmann::json::parse(rep.out);
    CHECK(doc["offsets"]["1"] == -1);
}

TEST_CASE("cli error paths") {
    CHECK(run_cli("skip -k 1", "01x1").status == 1);
    CHECK(run_cli("frobnicate", "0").status == 64);
    CHECK(run_cli("eliminate -k 1", "#origin=-2\n10").status == 1);
}

TEST_CASE("cli verify is byte-stable and respects the exit code") {
    RunResult a = run_cli("verify fermionic --seed 5");
    RunResult b = run_cli("verify fermionic --seed 5");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    RunResult m = run_cli("verify measures");
    CHECK(m.status == 0);
}

TEST_CASE("cli verify runs the linearization suite") {
    CHECK(run_cli("verify linearization").status == 0);
}

TEST_CASE("cli reads measure parameter files") {
    {
        std::ofstream f("params.tmp.json");
        f << "{\"alpha_geometric\": {\"a\": 0.05, \"b\": 0.05}}";
    }
    RunResult r = run_cli(
        "expect --model glue --params params.tmp.json --windows 20 --seed 6 "
        "--observable density");
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["estimate"].get<double>() > 0.0);
    CHECK(doc["estimate"].get<double>() < 0.2);
}

TEST_CASE("cli seats emits the event table") {
    RunResult r = run_cli("seats", "0110");
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["k_max"] == 2);
}

TEST_CASE("cli expect emits a report with a z-score") {
    RunResult r = run_cli(
        "expect --model markov --a 0.2 --b 0.1 --length 1024 --windows 30 --seed 3 "
        "--observable density --target 0.2089488982985135");
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["observable"] == "density");
    CHECK(doc.contains("estimate"));
    CHECK(doc.contains("stderr"));
    CHECK(doc.contains("z"));
    CHECK(std::abs(doc["z"].get<double>()) < 6.0);
}

TEST_CASE("cli sample is deterministic per seed and stream") {
    RunResult a = run_cli("sample --model markov --a 0.2 --b 0.1 --length 64 --seed 10");
    RunResult b = run_cli("sample --model markov --a 0.2 --b 0.1 --length 64 --seed 10");
    RunResult c = run_cli("sample --model markov --a 0.2 --b 0.1 --length 64 --seed 11");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}
