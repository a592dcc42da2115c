#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbs/dynamics.hpp"
#include "bbs/json_io.hpp"
#include "bbs/seat.hpp"
#include "bbs/skip.hpp"
#include "bbs/stat_lab.hpp"
#include "bbs/ten_elim.hpp"
#include "bbs/ts.hpp"
#include "bbs/verify.hpp"

namespace {

using nlohmann::json;

std::string read_all(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw bbs::ConfigError("cannot open input file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_all(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw bbs::ConfigError("cannot open output file " + path);
    f << data;
}

int parse_capacity(const std::string& s) {
    if (s == "inf") return bbs::kInfCapacity;
    int v = std::stoi(s);
    if (v < 1) throw bbs::ConfigError("capacity must be >= 1 or inf");
    return v;
}

// Word output used for skip/eliminate: the figure-style row through the last
// non-record site when the configuration lives on the nonnegative sites,
// otherwise the full config format with an origin header.
std::string word_or_config(const bbs::BallConfig& cfg) {
    bbs::SeatProfile p = bbs::seat_decompose(cfg);
    bool nonnegative = true;
    for (long x = p.lo; x < 0 && x <= p.hi; ++x)
        if (p.event(x) != 0) nonnegative = false;
    if (cfg.ball_count() > 0 && cfg.first_ball() < 0) nonnegative = false;
    if (nonnegative) return bbs::active_word(cfg) + "\n";
    return bbs::render_config(cfg);
}

bbs::SampleSpec spec_from_flags(const std::string& model, double a, double b, long length,
                                const std::string& params_path, int per_side, long cap,
                                std::uint64_t seed) {
    if (model == "markov") {
        return bbs::SampleSpec{bbs::MarkovSpec{bbs::make_ab(a, b), length}, seed};
    }
    if (model == "glue") {
        bbs::AlphaParams alpha = bbs::AlphaParams::geometric(a, b);
        if (!params_path.empty()) alpha = bbs::load_alpha(json::parse(read_all(params_path)));
        bbs::GlueSpec g;
        g.alpha = alpha;
        g.per_side = per_side;
        g.cap = cap;
        return bbs::SampleSpec{g, seed};
    }
    throw bbs::ConfigError("model must be markov or glue");
}

int suite_number(const std::string& name) {
    static const std::map<std::string, int> names = {
        {"figure1", 1},       {"ts", 2},        {"ten-seat", 3},   {"linearization", 4},
        {"skip-algebra", 5},  {"bijection", 6}, {"fermionic", 7},  {"measures", 8},
        {"skip-markov", 9},   {"carrier", 10},  {"invariance", 11}, {"determinism", 12}};
    if (auto it = names.find(name); it != names.end()) return it->second;
    try {
        int v = std::stoi(name);
        if (v >= 1 && v <= 12) return v;
    } catch (const std::exception&) {
    }
    throw bbs::ConfigError("unknown verify suite '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"box-ball system toolkit"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    app.add_option("-i,--input", in_path, "input file (default stdin)");
    app.add_option("-o,--output", out_path, "output file (default stdout)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "apply one time step T_l");
    std::string capacity_s = "inf";
    std::string report_fmt;
    evolve_cmd->add_option("-l,--capacity", capacity_s, "carrier capacity (int or inf)");
    evolve_cmd->add_option("--report", report_fmt, "emit a json report instead of the word");

    // seats / zeta / ts
    auto* seats_cmd = app.add_subcommand("seats", "seat events of the configuration");
    auto* zeta_cmd = app.add_subcommand("zeta", "zeta coordinates of the configuration");
    auto* ts_cmd = app.add_subcommand("ts", "Takahashi-Satsuma soliton decomposition");

    // skip
    auto* skip_cmd = app.add_subcommand("skip", "apply the k-skip map");
    int skip_k = 1;
    skip_cmd->add_option("-k", skip_k, "skip level")->required();

    // eliminate
    auto* elim_cmd = app.add_subcommand("eliminate", "apply the 10-elimination k times");
    int elim_k = 1;
    std::string rigging_fmt;
    elim_cmd->add_option("-k", elim_k, "elimination depth");
    elim_cmd->add_option("--rigging", rigging_fmt, "also emit the rigging (json)");

    // sample / expect
    std::string model = "markov", params_path, observable;
    double mk_a = 0.2, mk_b = 0.1;
    long mk_len = 100000, windows = 100, cap = 31;
    int per_side = 128, workers = 1;
    std::uint64_t seed = 1, stream = 0;
    bool csv = false;
    double target = 0;
    bool has_target = false;

    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--model", model, "markov | glue");
        cmd->add_option("--a", mk_a, "markov/geometric parameter a");
        cmd->add_option("--b", mk_b, "markov/geometric parameter b");
        cmd->add_option("--length", mk_len, "markov chain length");
        cmd->add_option("--params", params_path, "measure parameter json file");
        cmd->add_option("--per-side", per_side, "glued excursions per side");
        cmd->add_option("--cap", cap, "excursion length cap (odd)");
        cmd->add_option("--seed", seed, "rng seed");
    };

    auto* sample_cmd = app.add_subcommand("sample", "draw one stationary window");
    add_model_flags(sample_cmd);
    sample_cmd->add_option("--stream", stream, "stream index");

    auto* expect_cmd = app.add_subcommand("expect", "Monte Carlo expectation of an observable");
    add_model_flags(expect_cmd);
    expect_cmd->add_option("--observable", observable, "observable name")->required();
    expect_cmd->add_option("--windows", windows, "number of independent windows");
    expect_cmd->add_option("--workers", workers, "worker threads");
    auto* target_opt = expect_cmd->add_option("--target", target, "optional closed-form target");
    expect_cmd->add_flag("--csv", csv, "emit csv instead of json");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    verify_cmd->add_option("suite", suite, "suite name, number 1..12, or all");
    verify_cmd->add_option("--seed", seed, "rng seed");
    verify_cmd->add_option("--workers", workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*evolve_cmd) {
            bbs::BallConfig cfg = bbs::parse_config(read_all(in_path));
            int capv = parse_capacity(capacity_s);
            if (report_fmt == "json") {
                bbs::EvolutionReport er = bbs::evolve_report(cfg, capv);
                json j{{"schema", 1},
                       {"capacity", capv == bbs::kInfCapacity ? json("inf") : json(capv)},
                       {"before", bbs::render_config(er.before)},
                       {"after", bbs::render_config(er.after)},
                       {"zeta_before", bbs::zeta_json(bbs::zeta_of(er.before))["entries"]},
                       {"zeta_after", bbs::zeta_json(bbs::zeta_of(er.after))["entries"]}};
                if (!er.offsets.empty()) {
                    json offs = json::object();
                    for (auto& [k, o] : er.offsets) offs[std::to_string(k)] = o;
                    j["offsets"] = offs;
                }
                write_all(out_path, j.dump(2) + "\n");
            } else {
                write_all(out_path, bbs::render_config(bbs::evolve(cfg, capv)));
            }
        } else if (*seats_cmd) {
            bbs::BallConfig cfg = bbs::parse_config(read_all(in_path));
            write_all(out_path, bbs::seat_profile_json(cfg).dump(2) + "\n");
        } else if (*zeta_cmd) {
            bbs::BallConfig cfg = bbs::parse_config(read_all(in_path));
            write_all(out_path, bbs::zeta_json(bbs::zeta_of(cfg)).dump(2) + "\n");
        } else if (*ts_cmd) {
            bbs::BallConfig cfg = bbs::parse_config(read_all(in_path));
            write_all(out_path, bbs::solitons_json(bbs::ts_decompose(cfg)).dump(2) + "\n");
        } else if (*skip_cmd) {
            bbs::BallConfig cfg = bbs::parse_config(read_all(in_path));
            write_all(out_path, word_or_config(bbs::skip(cfg, skip_k)));
        } else if (*elim_cmd) {
            bbs::BallConfig cfg = bbs::parse_config(read_all(in_path));
            auto [result, rigging] = bbs::eliminate_k(cfg, elim_k);
            if (rigging_fmt == "json") {
                json j = bbs::rigging_json(rigging);
                j["config"] = bbs::active_word(result);
                write_all(out_path, j.dump(2) + "\n");
            } else {
                write_all(out_path, word_or_config(result));
            }
        } else if (*sample_cmd) {
            bbs::SampleSpec spec =
                spec_from_flags(model, mk_a, mk_b, mk_len, params_path, per_side, cap, seed);
            write_all(out_path, bbs::render_config(bbs::sample_stationary(spec, stream)));
        } else if (*expect_cmd) {
            has_target = target_opt->count() > 0;
            bbs::SampleSpec spec =
                spec_from_flags(model, mk_a, mk_b, mk_len, params_path, per_side, cap, seed);
            bbs::EstimateReport er = bbs::estimate_functional(
                spec, observable, windows, workers,
                has_target ? std::optional<double>(target) : std::nullopt);
            if (csv)
                write_all(out_path, bbs::estimate_csv({er}));
            else
                write_all(out_path, bbs::estimate_json(er).dump(2) + "\n");
        } else if (*verify_cmd) {
            std::vector<bbs::SuiteResult> results;
            if (suite == "all") {
                results = bbs::run_all_suites(seed, workers);
            } else {
                results.push_back(bbs::run_suite(suite_number(suite), seed, workers));
            }
            json j = json::array();
            bool all_pass = true;
            for (auto& r : results) {
                j.push_back(r.report);
                all_pass = all_pass && r.pass;
            }
            write_all(out_path, json{{"schema", 1}, {"suites", j}}.dump(2) + "\n");
            if (!all_pass) return 2;
        }
    } catch (const bbs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
