#include "bbs/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include "bbs/dynamics.hpp"
#include "bbs/excursion.hpp"
#include "bbs/json_io.hpp"
#include "bbs/measures.hpp"
#include "bbs/rng.hpp"
#include "bbs/seat.hpp"
#include "bbs/skip.hpp"
#include "bbs/stat_lab.hpp"
#include "bbs/ten_elim.hpp"
#include "bbs/ts.hpp"

namespace bbs {

using nlohmann::json;

namespace {

const char* kFigureWord = "011001110101100010";

BallConfig mask_config(std::uint32_t mask, int width, long origin, Boundary mode) {
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) bits.push_back((mask >> i) & 1u);
    return BallConfig(origin, std::move(bits), mode);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

SuiteResult finish(std::string name, bool pass, double limit_s, const Timer& t, json report) {
    SuiteResult r;
    r.name = std::move(name);
    r.seconds = t.elapsed();
    // wall-clock stays out of the json so reports are byte-identical per seed
    report["suite"] = r.name;
    report["pass"] = pass;
    r.pass = pass && r.seconds <= limit_s;
    r.report = std::move(report);
    return r;
}

json rigging_entries(const Rigging& r) {
    json out = json::array();
    for (auto& [k, row] : r.levels)
        for (auto& [i, m] : row) out.push_back(json::array({k, i, m}));
    return out;
}

}  // namespace

SuiteResult suite_figure1() {
    Timer t;
    json rep;
    BallConfig cfg = parse_config(kFigureWord);
    const std::vector<std::string> expected_rows = {"010111000", "01100", "010", "0"};
    bool rows_ok = true;
    json rows = json::array();
    BallConfig cur = cfg;
    Rigging rig;
    for (int k = 1; k <= 4; ++k) {
        auto [next, row] = eliminate_once(cur);
        if (!row.empty()) rig.levels[k] = row;
        cur = next;
        std::string word = active_word(cur);
        rows.push_back(word);
        if (word != expected_rows[static_cast<std::size_t>(k - 1)]) rows_ok = false;
    }
    rep["rows"] = rows;
    rep["rows_expected"] = expected_rows;
    rep["rows_pass"] = rows_ok;

    Rigging spec_expected;
    spec_expected.levels[1][4] = 2;
    spec_expected.levels[1][5] = 1;
    spec_expected.levels[2][0] = 1;
    spec_expected.levels[4][0] = 1;
    bool rig_ok = rig == spec_expected;
    rep["rigging"] = rigging_entries(rig);
    rep["rigging_expected"] = rigging_entries(spec_expected);
    rep["rigging_pass"] = rig_ok;

    // Internal consistency: the computed rigging must equal the zeta
    // coordinates level by level (the exhaustive equality of suite 3).
    ZetaMatrix z = zeta_of(BallConfig(cfg.origin, cfg.bits, Boundary::HalfLine));
    bool rig_eq_zeta = rig.levels == z.levels;
    rep["rigging_matches_zeta"] = rig_eq_zeta;
    if (!rig_ok && rig_eq_zeta)
        rep["note"] =
            "computed rigging disagrees with the published example at one entry but equals the "
            "zeta coordinates, which the elimination/zeta equality suite pins exhaustively";
    return finish("figure1", rows_ok && rig_ok, 0.5, t, std::move(rep));
}

SuiteResult suite_ts_appendix() {
    Timer t;
    json rep;
    BallConfig cfg = parse_config("0110011101011000100");
    SolitonSet s = ts_decompose(cfg);
    std::multiset<int> sizes;
    for (auto& g : s.solitons) sizes.insert(g.size);
    bool sizes_ok = sizes == std::multiset<int>{4, 2, 1, 1, 1};
    json sol = json::array();
    for (auto& g : s.solitons) sol.push_back(json{{"size", g.size}, {"sites", g.sites}});
    rep["solitons"] = sol;
    bool sites_ok = s.solitons.size() == 5 &&
                    s.solitons[0].sites == std::vector<long>{5, 6, 7, 12, 13, 14, 15, 18} &&
                    s.solitons[1].sites == std::vector<long>{1, 2, 3, 4};
    rep["sizes_pass"] = sizes_ok;
    rep["sites_pass"] = sites_ok;
    return finish("ts_appendix", sizes_ok && sites_ok, 0.5, t, std::move(rep));
}

SuiteResult suite_ten_seat() {
    Timer t;
    json rep;
    long checked = 0, failures = 0;
    json first_failure;
    for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
        BallConfig cfg = mask_config(mask, 15, 1, Boundary::HalfLine);
        ZetaMatrix z = zeta_of(cfg);
        BallConfig cur = cfg;
        Rigging rig;
        bool ok = true;
        for (int k = 1; k <= 5; ++k) {
            auto [next, row] = eliminate_once(cur);
            if (!row.empty()) rig.levels[k] = row;
            cur = next;
            if (!same_configuration(cur, skip(cfg, k))) ok = false;
        }
        std::map<int, std::map<long, long>> zeta_low;
        for (auto& [k, row] : z.levels)
            if (k <= 5) zeta_low[k] = row;
        if (rig.levels != zeta_low) ok = false;
        ++checked;
        if (!ok) {
            ++failures;
            if (first_failure.is_null()) first_failure = render_config(cfg);
        }
    }
    rep["configs"] = checked;
    rep["failures"] = failures;
    if (!first_failure.is_null()) rep["first_failure"] = first_failure;
    return finish("ten_equals_seat", failures == 0, 10.0, t, std::move(rep));
}

SuiteResult suite_linearization(std::uint64_t seed) {
    Timer t;
    json rep;
    long failures = 0;
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
        BallConfig cfg = mask_config(mask, 12, 1, Boundary::HalfLine);
        for (int cap : {1, 2, kInfCapacity})
            for (int k = 1; k <= 4; ++k)
                if (!verify_linearization(cfg, cap, k).ok) ++failures;
    }
    rep["half_line_configs"] = 1 << 12;

    Rng rng(seed, 41);
    long offset_failures = 0;
    const long n_random = 10000;
    for (long i = 0; i < n_random; ++i) {
        int len = 1 + static_cast<int>(rng.below(24));
        long origin = -static_cast<long>(rng.below(13));
        std::vector<std::uint8_t> bits;
        for (int j = 0; j < len; ++j) bits.push_back(rng.bernoulli(0.45) ? 1 : 0);
        BallConfig cfg(origin, std::move(bits), Boundary::WholeLine);
        for (int k = 1; k <= 4; ++k) {
            OffsetFormulas f = offset_o_all(cfg, k);
            if (!f.consistent()) ++offset_failures;
            if (!verify_linearization(cfg, kInfCapacity, k).ok) ++offset_failures;
        }
    }
    rep["whole_line_configs"] = n_random;
    rep["failures"] = failures;
    rep["offset_failures"] = offset_failures;
    return finish("linearization", failures == 0 && offset_failures == 0, 30.0, t, std::move(rep));
}

SuiteResult suite_skip_algebra() {
    Timer t;
    json rep;
    long fail_semigroup = 0, fail_seat_shift = 0, fail_zeta_shift = 0, fail_flip = 0,
         fail_commute = 0, fail_t_psi = 0;

    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
        BallConfig h = mask_config(mask, 12, 1, Boundary::HalfLine);

        // semigroup + zeta shift
        for (int l = 1; l <= 3; ++l) {
            BallConfig sl = skip(h, l);
            for (int k = 1; k <= 3; ++k) {
                if (!same_configuration(skip(sl, k), skip(h, k + l))) ++fail_semigroup;
            }
            SeatProfile pl = seat_decompose(sl);
            SeatProfile ph = seat_decompose(h);
            for (int k = 1; k <= 3; ++k)
                if (zeta_level(pl, k) != zeta_level(ph, k + l)) ++fail_zeta_shift;
        }

        // seat shift identity on events
        {
            SeatProfile ph = seat_decompose(h);
            for (int k = 1; k <= 3; ++k) {
                SlotCoords sc(ph, k);
                BallConfig sk = skip(h, k);
                SeatProfile ps = seat_decompose(sk);
                for (long x = 1; x <= ps.hi; ++x) {
                    int ev_skip = ps.event(x);
                    int ev_base = ph.event(sc.s(x));
                    int want = ev_skip == 0 ? 0 : (ev_skip > 0 ? ev_skip + k : ev_skip - k);
                    if (ev_base != want) {
                        ++fail_seat_shift;
                        break;
                    }
                }
            }
        }

        // flip, on the whole line
        {
            BallConfig w = mask_config(mask, 12, -6, Boundary::WholeLine);
            BallConfig tw = evolve(w, kInfCapacity);
            SeatProfile p = seat_decompose(w);
            SeatProfile pt = seat_decompose(tw);
            long lo = std::min(p.lo, pt.lo), hi = std::max(p.hi, pt.hi);
            for (long x = lo; x <= hi; ++x) {
                int e = p.event(x), et = pt.event(x);
                if ((e < 0) != (et > 0) || (e < 0 && et != -e)) {
                    ++fail_flip;
                    break;
                }
                if (e > 0 && !(et == 0 || et <= -e)) {
                    ++fail_flip;
                    break;
                }
            }
        }

        // commutation with T_1 and T_inf
        for (int k = 1; k <= 3; ++k) {
            if (!same_configuration(skip(evolve(h, 1), k), evolve(skip(h, k), 1))) ++fail_commute;
            BallConfig lhs = skip(evolve(h, kInfCapacity), k);
            BallConfig rhs = evolve(skip(evolve(h, k), k), kInfCapacity);
            if (!same_configuration(lhs, rhs)) ++fail_commute;
        }

        // whole-line relation between T and Psi_k:
        //   T Psi_k(eta)(x) = Psi_k(T eta)(x + k - W_k(eta,0) - W_k(T eta,0)).
        // At k = 1 the shift equals r(eta,0). Checked both as the general
        // formula and, for k = 1, in the record form.
        {
            BallConfig w = mask_config(mask, 12, -6, Boundary::WholeLine);
            BallConfig tw = evolve(w, kInfCapacity);
            SeatProfile pw = seat_decompose(w);
            SeatProfile ptw = seat_decompose(tw);
            for (int k = 1; k <= 3; ++k) {
                long d = k - carrier_load(pw, k, 0) - carrier_load(ptw, k, 0);
                if (k == 1 && d != (pw.is_record(0) ? 1 : 0)) ++fail_t_psi;
                BallConfig lhs = evolve(skip(w, k), kInfCapacity);
                BallConfig rhs = skip(tw, k);
                if (!same_configuration(lhs, shift(rhs, d))) ++fail_t_psi;
            }
        }
    }
    rep["configs"] = 1 << 12;
    rep["fail_semigroup"] = fail_semigroup;
    rep["fail_seat_shift"] = fail_seat_shift;
    rep["fail_zeta_shift"] = fail_zeta_shift;
    rep["fail_flip"] = fail_flip;
    rep["fail_commute"] = fail_commute;
    rep["fail_t_psi"] = fail_t_psi;
    bool pass = fail_semigroup + fail_seat_shift + fail_zeta_shift + fail_flip + fail_commute +
                    fail_t_psi ==
                0;
    return finish("skip_algebra", pass, 60.0, t, std::move(rep));
}

SuiteResult suite_bijection() {
    Timer t;
    json rep;
    long fail_config = 0;
    for (std::uint32_t mask = 0; mask < (1u << 14); ++mask) {
        BallConfig h = mask_config(mask, 14, 1, Boundary::HalfLine);
        if (!same_configuration(reconstruct_from_zeta(zeta_of(h), Boundary::HalfLine), h))
            ++fail_config;
        BallConfig w = mask_config(mask, 14, 1, Boundary::WholeLine);
        BallConfig back = reconstruct_from_zeta(zeta_of(w), Boundary::WholeLine);
        if (!same_configuration(back, w)) ++fail_config;
    }

    // all zeta matrices with sum k*zeta <= 4 over a bounded index window
    long fail_matrix = 0, n_matrices = 0;
    std::vector<std::pair<int, long>> cells;
    for (int k = 1; k <= 4; ++k)
        for (long i = 0; i <= 6; ++i) cells.emplace_back(k, i);
    std::function<void(std::size_t, long, ZetaMatrix&)> rec = [&](std::size_t idx, long budget,
                                                                  ZetaMatrix& z) {
        if (idx == cells.size()) {
            ++n_matrices;
            for (Boundary mode : {Boundary::HalfLine, Boundary::WholeLine}) {
                BallConfig cfg = reconstruct_from_zeta(z, mode);
                ZetaMatrix rz = zeta_of(cfg);
                if (!(rz == z)) ++fail_matrix;
                if (mode == Boundary::WholeLine && !classify(cfg).omega_r) ++fail_matrix;
            }
            return;
        }
        auto [k, i] = cells[idx];
        for (long c = 0; c * k <= budget; ++c) {
            if (c > 0) z.levels[k][i] = c;
            rec(idx + 1, budget - c * k, z);
        }
        if (auto it = z.levels.find(k); it != z.levels.end()) {
            it->second.erase(i);
            if (it->second.empty()) z.levels.erase(it);
        }
    };
    ZetaMatrix z;
    rec(0, 4, z);

    // negative slot indices on the whole line
    long fail_negative = 0;
    for (int k = 1; k <= 3; ++k)
        for (long i = -3; i <= 3; ++i)
            for (long c = 1; c <= 2; ++c) {
                ZetaMatrix m;
                m.add(k, i, c);
                m.add(1, i + 2, 1);
                BallConfig cfg = reconstruct_from_zeta(m, Boundary::WholeLine);
                if (!(zeta_of(cfg) == m)) ++fail_negative;
            }

    rep["configs"] = 2 * (1 << 14);
    rep["matrices"] = n_matrices;
    rep["fail_config"] = fail_config;
    rep["fail_matrix"] = fail_matrix;
    rep["fail_negative"] = fail_negative;
    bool pass = fail_config + fail_matrix + fail_negative == 0;
    return finish("bijection", pass, 60.0, t, std::move(rep));
}

SuiteResult suite_fermionic() {
    Timer t;
    json rep;
    auto all = enumerate_excursions(13);
    std::map<std::map<int, long>, long> histogram;
    for (auto& e : all) histogram[zeta_of_excursion(e)] += 1;
    long mismatches = 0, contents = 0;
    for (auto& c : contents_up_to(6)) {
        ++contents;
        long brute = 0;
        if (auto it = histogram.find(c); it != histogram.end()) brute = it->second;
        if (brute != static_cast<long>(fermionic_count(c))) ++mismatches;
    }
    rep["contents"] = contents;
    rep["excursions"] = all.size();
    rep["mismatches"] = mismatches;
    return finish("fermionic", mismatches == 0, 10.0, t, std::move(rep));
}

SuiteResult suite_measures() {
    Timer t;
    json rep;
    AlphaParams alpha = AlphaParams::geometric(0.05, 0.05);
    PartitionMean pm = partition_and_mean(alpha, 41);
    PartitionMean pm_theta = partition_and_mean(alpha.theta(), 41);
    double z_rel = std::abs(pm_theta.Z - pm.Z * (1.0 - alpha.alpha(1))) / pm_theta.Z;
    double cf = mean_length_cf(alpha, 40, 1e-10);
    double cf_rel = std::abs(cf - pm.mean_len) / pm.mean_len;
    double exact = 1.0 / std::sqrt(1.0 - 4.0 * 0.05);  // Bernoulli closed form at a = b
    rep["Z"] = pm.Z;
    rep["Z_theta"] = pm_theta.Z;
    rep["Z_identity_rel_err"] = z_rel;
    rep["mean_enumeration"] = pm.mean_len;
    rep["mean_cf"] = cf;
    rep["cf_rel_err"] = cf_rel;
    rep["mean_closed_form"] = exact;
    bool pass = z_rel <= 1e-4 && cf_rel <= 1e-4 && std::abs(cf - exact) / exact <= 1e-6;
    return finish("measures", pass, 10.0, t, std::move(rep));
}

SuiteResult suite_skip_markov(std::uint64_t seed) {
    Timer t;
    json rep;
    AB ab = make_ab(0.2, 0.1);
    AB ab1 = ab_shift(ab, 1);
    bool shift_exact = std::abs(ab1.a - 0.03125) < 1e-12 && std::abs(ab1.b - 0.15625) < 1e-12;
    rep["ab1"] = {ab1.a, ab1.b};
    rep["ab_shift_exact"] = shift_exact;
    bool pass = shift_exact;
    for (int k : {1, 2}) {
        SkipMarkovReport r = verify_skip_markov(ab, k, 1000000, seed + static_cast<std::uint64_t>(k));
        json entries = json::array();
        for (auto& e : r.entries)
            entries.push_back(json{{"from", e.from},
                                   {"to", e.to},
                                   {"empirical", e.empirical},
                                   {"target", e.target},
                                   {"z", e.z},
                                   {"n_from", e.n_from}});
        rep["k" + std::to_string(k)] = entries;
        if (!r.pass) pass = false;
    }
    return finish("skip_markov", pass, 60.0, t, std::move(rep));
}

SuiteResult suite_carrier(std::uint64_t seed, int workers) {
    Timer t;
    json rep;
    AB ab = make_ab(0.2, 0.1);
    AlphaParams alpha = alpha_of_ab(ab);
    SampleSpec spec{MarkovSpec{ab, 2048}, seed};
    const long n_win = 650;  // ~1e6 interior sites in total
    bool pass = true;
    json checks = json::array();

    auto record = [&](const std::string& label, const EstimateReport& er) {
        json j = estimate_json(er);
        j["label"] = label;
        bool ok = er.z && std::abs(*er.z) <= 4.0;
        j["pass"] = ok;
        checks.push_back(j);
        if (!ok) pass = false;
    };

    for (int k = 1; k <= 3; ++k) {
        double target = carrier_seat_mean(alpha, k);
        record("E[seat_" + std::to_string(k) + "(0)]",
               estimate_functional(spec, "carrier_seat:" + std::to_string(k), n_win, workers,
                                   target));
    }
    record("E[W_inf(0)]",
           estimate_functional(spec, "carrier:inf", n_win, workers, carrier_inf_mean_ab(ab)));
    record("E[seat_1(0) seat_2(0)]",
           estimate_functional(spec, "product:1:2", n_win, workers, cor_kl_closed(alpha, 1, 2)));

    // deterministic identities on the sampled windows
    long identity_failures = 0;
    {
        Observable skip1 = parse_observable("skip:1:density");
        Observable skip2 = parse_observable("skip:2:density");
        Observable w2 = parse_observable("carrier:2");
        Observable s1 = parse_observable("carrier_seat:1");
        Observable s2 = parse_observable("carrier_seat:2");
        Observable s3 = parse_observable("carrier_seat:3");
        Observable eta = parse_observable("density");
        for (std::uint64_t s = 0; s < 8; ++s) {
            Window w = sample_window(spec, s);
            auto v_eta = site_values(w.cfg, eta, w.int_lo, w.int_hi);
            auto v1 = site_values(w.cfg, s1, w.int_lo, w.int_hi);
            auto v2 = site_values(w.cfg, s2, w.int_lo, w.int_hi);
            auto v3 = site_values(w.cfg, s3, w.int_lo, w.int_hi);
            auto k1 = site_values(w.cfg, skip1, w.int_lo, w.int_hi);
            auto k2 = site_values(w.cfg, skip2, w.int_lo, w.int_hi);
            auto load2 = site_values(w.cfg, w2, w.int_lo, w.int_hi);
            for (std::size_t i = 0; i < v1.size(); ++i) {
                if (v1[i] != v_eta[i]) ++identity_failures;     // seat 1 == eta
                if (v2[i] != k1[i]) ++identity_failures;        // seat k == Psi_{k-1} at origin
                if (v3[i] != k2[i]) ++identity_failures;
                if (load2[i] != v1[i] + v2[i]) ++identity_failures;  // W_l == sum of seats
            }
        }
    }
    rep["identity_failures"] = identity_failures;
    if (identity_failures != 0) pass = false;

    // closed-form consistency: summed seat means vs the Markov carrier mean
    double sum_route = carrier_mean(alpha, kInfCapacity);
    double markov_route = carrier_inf_mean_ab(ab);
    rep["carrier_mean_sum_route"] = sum_route;
    rep["carrier_mean_markov_route"] = markov_route;
    if (std::abs(sum_route - markov_route) > 1e-6) pass = false;

    rep["checks"] = checks;
    return finish("carrier", pass, 120.0, t, std::move(rep));
}

SuiteResult suite_invariance(std::uint64_t seed, int workers) {
    Timer t;
    json rep;
    SampleSpec spec{MarkovSpec{make_ab(0.2, 0.1), 2048}, seed};
    auto checks = verify_invariance(spec, 650, workers, 4.0);
    bool pass = true;
    json arr = json::array();
    for (auto& c : checks) {
        arr.push_back(json{{"label", c.label},
                           {"mean_diff", c.mean_diff},
                           {"stderr", c.stderr_},
                           {"z", c.z},
                           {"pass", c.pass}});
        if (!c.pass) pass = false;
    }
    rep["checks"] = arr;
    return finish("invariance", pass, 60.0, t, std::move(rep));
}

SuiteResult suite_determinism(std::uint64_t seed) {
    Timer t;
    json rep;
    bool pass = true;

    auto r1 = verify_skip_markov(make_ab(0.2, 0.1), 1, 100000, seed);
    auto r2 = verify_skip_markov(make_ab(0.2, 0.1), 1, 100000, seed);
    json j1 = json::array(), j2 = json::array();
    for (auto& e : r1.entries) j1.push_back(json{{"e", e.empirical}, {"z", e.z}});
    for (auto& e : r2.entries) j2.push_back(json{{"e", e.empirical}, {"z", e.z}});
    if (j1.dump() != j2.dump()) pass = false;
    rep["skip_markov_identical"] = j1.dump() == j2.dump();

    SampleSpec spec{MarkovSpec{make_ab(0.2, 0.1), 4096}, seed};
    auto e1 = estimate_json(estimate_functional(spec, "carrier:inf", 50, 1, 0.0)).dump();
    auto e2 = estimate_json(estimate_functional(spec, "carrier:inf", 50, 2, 0.0)).dump();
    auto e3 = estimate_json(estimate_functional(spec, "carrier:inf", 50, 4, 0.0)).dump();
    rep["estimate_workers_identical"] = e1 == e2 && e2 == e3;
    if (e1 != e2 || e2 != e3) pass = false;

    auto inv1 = verify_invariance(spec, 30, 1);
    auto inv2 = verify_invariance(spec, 30, 3);
    bool inv_same = inv1.size() == inv2.size();
    for (std::size_t i = 0; inv_same && i < inv1.size(); ++i)
        inv_same = inv1[i].mean_diff == inv2[i].mean_diff && inv1[i].stderr_ == inv2[i].stderr_;
    rep["invariance_workers_identical"] = inv_same;
    if (!inv_same) pass = false;

    SampleSpec glue{GlueSpec{AlphaParams::geometric(0.05, 0.05)}, seed};
    auto g1 = estimate_json(estimate_functional(glue, "density", 40, 1, 0.0)).dump();
    auto g2 = estimate_json(estimate_functional(glue, "density", 40, 3, 0.0)).dump();
    rep["glue_workers_identical"] = g1 == g2;
    if (g1 != g2) pass = false;

    return finish("determinism", pass, 60.0, t, std::move(rep));
}

SuiteResult run_suite(int criterion, std::uint64_t seed, int workers) {
    switch (criterion) {
        case 1:
            return suite_figure1();
        case 2:
            return suite_ts_appendix();
        case 3:
            return suite_ten_seat();
        case 4:
            return suite_linearization(seed);
        case 5:
            return suite_skip_algebra();
        case 6:
            return suite_bijection();
        case 7:
            return suite_fermionic();
        case 8:
            return suite_measures();
        case 9:
            return suite_skip_markov(seed);
        case 10:
            return suite_carrier(seed, workers);
        case 11:
            return suite_invariance(seed, workers);
        case 12:
            return suite_determinism(seed);
        default:
            throw ConfigError("criterion must be 1..12");
    }
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int workers) {
    std::vector<SuiteResult> out;
    for (int i = 1; i <= 12; ++i) out.push_back(run_suite(i, seed, workers));
    return out;
}

}  // namespace bbs
