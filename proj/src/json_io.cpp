#include "bbs/json_io.hpp"

namespace bbs {

using nlohmann::json;

json seat_profile_json(const BallConfig& cfg) {
    SeatProfile p = seat_decompose(cfg);
    json sites = json::array();
    for (long x = p.lo; x <= p.hi; ++x) {
        int ev = p.event(x);
        json row;
        row["x"] = x;
        if (ev == 0) {
            row["event"] = "record";
        } else {
            row["event"] = ev > 0 ? "up" : "down";
            row["k"] = std::abs(ev);
        }
        sites.push_back(row);
    }
    return json{{"schema", 1}, {"k_max", p.k_max}, {"anchor", p.anchor}, {"sites", sites}};
}

json zeta_json(const ZetaMatrix& z) {
    json entries = json::array();
    for (auto& [k, row] : z.levels)
        for (auto& [i, c] : row) entries.push_back(json::array({k, i, c}));
    return json{{"schema", 1}, {"entries", entries}};
}

json rigging_json(const Rigging& r) {
    json entries = json::array();
    for (auto& [k, row] : r.levels)
        for (auto& [i, m] : row) entries.push_back(json::array({k, i, m}));
    return json{{"schema", 1}, {"rigging", entries}};
}

json solitons_json(const SolitonSet& s) {
    json sol = json::array();
    for (auto& g : s.solitons) sol.push_back(json{{"size", g.size}, {"sites", g.sites}});
    return json{{"schema", 1}, {"solitons", sol}, {"records", s.records}};
}

json estimate_json(const EstimateReport& rep) {
    json j{{"schema", 1},
           {"observable", rep.observable},
           {"estimate", rep.estimate},
           {"stderr", rep.stderr_},
           {"n", rep.n}};
    if (rep.target) j["target"] = *rep.target;
    if (rep.z) j["z"] = *rep.z;
    return j;
}

std::string estimate_csv(const std::vector<EstimateReport>& reps) {
    std::string out = "observable,estimate,stderr,n,target,z\n";
    for (auto& r : reps) {
        out += r.observable + "," + std::to_string(r.estimate) + "," + std::to_string(r.stderr_) +
               "," + std::to_string(r.n) + ",";
        out += r.target ? std::to_string(*r.target) : "";
        out += ",";
        out += r.z ? std::to_string(*r.z) : "";
        out += "\n";
    }
    return out;
}

AlphaParams load_alpha(const json& doc) {
    if (doc.contains("alpha")) return AlphaParams::finite(doc["alpha"].get<std::vector<double>>());
    if (doc.contains("alpha_geometric")) {
        auto& g = doc["alpha_geometric"];
        return AlphaParams::geometric(g.at("a").get<double>(), g.at("b").get<double>());
    }
    if (doc.contains("q")) return alpha_from_q(QParams(doc["q"].get<std::vector<double>>()));
    if (doc.contains("ab")) return alpha_of_ab(load_ab(doc));
    throw ConfigError("parameter file needs one of: alpha, alpha_geometric, q, ab");
}

AB load_ab(const json& doc) {
    if (!doc.contains("ab")) throw ConfigError("parameter file needs an \"ab\" object");
    auto& g = doc["ab"];
    return make_ab(g.at("a").get<double>(), g.at("b").get<double>());
}

}  // namespace bbs
