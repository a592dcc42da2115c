#include "bbs/stat_lab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "bbs/dynamics.hpp"
#include "bbs/seat.hpp"
#include "bbs/skip.hpp"

namespace bbs {

ExcursionSampler::ExcursionSampler(const AlphaParams& alpha, long cap, double max_bias) {
    if (cap < 1 || cap % 2 == 0) throw DomainError("length cap must be a positive odd integer");
    contents_ = contents_up_to((cap - 1) / 2);
    double z = 0, zsb = 0;
    for (auto& c : contents_) {
        double w = static_cast<double>(fermionic_count(c)) * nu_weight(alpha, c);
        long m = 0;
        for (auto& [k, n] : c) m += static_cast<long>(k) * n;
        z += w;
        zsb += static_cast<double>(1 + 2 * m) * w;
        cum_.push_back(z);
        cum_sb_.push_back(zsb);
    }
    bias_ = std::max(0.0, 1.0 - z / z_alpha_closed(alpha));
    if (bias_ > max_bias)
        throw TruncationError("excursion length cap leaves bias " + std::to_string(bias_));
}

Excursion ExcursionSampler::build(const std::map<int, long>& content, Rng& rng) const {
    std::vector<std::uint8_t> w = {0};
    int top = content.empty() ? 0 : content.rbegin()->first;
    for (int k = top; k >= 1; --k) {
        long nk = 0;
        if (auto it = content.find(k); it != content.end()) nk = it->second;
        long slots = static_cast<long>(w.size());
        // uniform composition of nk into `slots` parts via a uniform
        // stars-and-bars combination
        std::vector<long> comp(static_cast<std::size_t>(slots), 0);
        if (nk > 0) {
            long universe = nk + slots - 1;
            std::vector<long> chosen;
            std::vector<bool> used(static_cast<std::size_t>(universe), false);
            for (long t = universe - nk; t < universe; ++t) {  // Floyd's sampling
                long r = rng.below(t + 1);
                long pick = used[static_cast<std::size_t>(r)] ? t : r;
                used[static_cast<std::size_t>(pick)] = true;
                chosen.push_back(pick);
            }
            std::sort(chosen.begin(), chosen.end());
            for (std::size_t t = 0; t < chosen.size(); ++t)
                comp[static_cast<std::size_t>(chosen[t] - static_cast<long>(t))] += 1;
        }
        std::vector<std::uint8_t> nw;
        for (long i = 0; i < slots; ++i) {
            nw.push_back(w[static_cast<std::size_t>(i)]);
            long m = comp[static_cast<std::size_t>(i)];
            std::uint8_t right = i + 1 < slots ? w[static_cast<std::size_t>(i + 1)] : 0;
            if (w[static_cast<std::size_t>(i)] == 1 && right == 0) m += 1;
            for (long t = 0; t < m; ++t) {
                nw.push_back(1);
                nw.push_back(0);
            }
        }
        w = std::move(nw);
    }
    return Excursion(std::move(w));
}

Excursion ExcursionSampler::sample(Rng& rng) const {
    double u = rng.uniform01() * cum_.back();
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
    if (idx >= contents_.size()) idx = contents_.size() - 1;
    return build(contents_[idx], rng);
}

Excursion ExcursionSampler::sample_size_biased(Rng& rng) const {
    double u = rng.uniform01() * cum_sb_.back();
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cum_sb_.begin(), cum_sb_.end(), u) - cum_sb_.begin());
    if (idx >= contents_.size()) idx = contents_.size() - 1;
    return build(contents_[idx], rng);
}

namespace {

constexpr long kMarkovMargin = 256;
constexpr long kGlueMargin = 64;

struct PreparedModel {
    const SampleSpec* spec;
    std::unique_ptr<ExcursionSampler> sampler;  // glue only
    Matrix2 transition;                         // markov only
    double pi1 = 0;

    explicit PreparedModel(const SampleSpec& s) : spec(&s) {
        if (auto* g = std::get_if<GlueSpec>(&s.model)) {
            sampler = std::make_unique<ExcursionSampler>(g->alpha, g->cap, g->max_bias);
        } else {
            auto& m = std::get<MarkovSpec>(s.model);
            transition = markov_matrix(m.ab);
            pi1 = stationary_one(transition);
        }
    }

    Window window(std::uint64_t stream) const {
        Rng rng(spec->seed, stream);
        Window w;
        if (auto* g = std::get_if<GlueSpec>(&spec->model)) {
            Excursion center = g->palm ? sampler->sample_size_biased(rng) : sampler->sample(rng);
            std::vector<std::uint8_t> bits;
            long origin = 0;
            for (int i = 0; i < g->per_side; ++i) {
                Excursion e = sampler->sample(rng);
                bits.insert(bits.begin(), e.word.begin(), e.word.end());
                origin -= e.length();
            }
            bits.insert(bits.end(), center.word.begin(), center.word.end());
            for (int i = 0; i < g->per_side; ++i) {
                Excursion e = sampler->sample(rng);
                bits.insert(bits.end(), e.word.begin(), e.word.end());
            }
            long y = g->palm ? rng.below(center.length()) : 0;  // uniform inside the sized block
            BallConfig world(origin, std::move(bits), Boundary::WholeLine);
            w.cfg = shift(world, y);
            w.int_lo = w.cfg.window_begin() + kGlueMargin;
            w.int_hi = w.cfg.window_end() - 1 - kGlueMargin;
        } else {
            auto& m = std::get<MarkovSpec>(spec->model);
            if (m.length < 4) throw WindowError("markov window too short");
            std::vector<std::uint8_t> bits;
            bits.reserve(static_cast<std::size_t>(m.length));
            int state = rng.bernoulli(pi1) ? 1 : 0;
            bits.push_back(static_cast<std::uint8_t>(state));
            for (long i = 1; i < m.length; ++i) {
                state = rng.bernoulli(transition(state, 1)) ? 1 : 0;
                bits.push_back(static_cast<std::uint8_t>(state));
            }
            long margin = std::min(kMarkovMargin, std::max(8L, m.length / 8));
            w.cfg = BallConfig(-m.length / 2, std::move(bits), Boundary::WholeLine);
            w.int_lo = w.cfg.window_begin() + margin;
            w.int_hi = w.cfg.window_end() - 1 - margin;
        }
        if (w.int_lo > w.int_hi) throw WindowError("window interior is empty");
        return w;
    }
};

}  // namespace

Window sample_window(const SampleSpec& spec, std::uint64_t stream) {
    PreparedModel pm(spec);
    return pm.window(stream);
}

BallConfig sample_stationary(const SampleSpec& spec, std::uint64_t stream) {
    return sample_window(spec, stream).cfg;
}

// ---------------------------------------------------------------------------
// Observables

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

int parse_level(const std::string& s) {
    if (s == "inf") return kInfCapacity;
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size() || v < 1) throw ConfigError("bad level '" + s + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad level '" + s + "'");
    }
}

}  // namespace

Observable parse_observable(const std::string& name) {
    Observable o;
    if (name == "density" || name == "eta0") {
        o.kind = Observable::Kind::Eta;
        return o;
    }
    if (name == "one") {
        o.kind = Observable::Kind::Pattern;
        return o;  // empty pattern == constant 1
    }
    auto parts = split(name, ':');
    const std::string& head = parts[0];
    if (head == "pattern" && parts.size() == 2) {
        o.kind = Observable::Kind::Pattern;
        for (char c : parts[1]) {
            if (c != '0' && c != '1') throw ConfigError("pattern must be 0/1: " + name);
            o.pattern.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return o;
    }
    if (head == "seat_event" && parts.size() == 3) {
        o.kind = Observable::Kind::SeatEvent;
        o.k = parse_level(parts[1]);
        if (parts[2] == "up")
            o.up = true;
        else if (parts[2] == "down")
            o.up = false;
        else
            throw ConfigError("seat_event direction must be up|down: " + name);
        return o;
    }
    if (head == "carrier_seat" && parts.size() == 2) {
        o.kind = Observable::Kind::CarrierSeat;
        o.k = parse_level(parts[1]);
        return o;
    }
    if (head == "carrier" && parts.size() == 2) {
        o.kind = Observable::Kind::Carrier;
        o.k = parse_level(parts[1]);
        return o;
    }
    if (head == "product" && parts.size() == 3) {
        o.kind = Observable::Kind::Product;
        o.k = parse_level(parts[1]);
        o.l = parse_level(parts[2]);
        return o;
    }
    if (head == "seat1sum" && parts.size() >= 2) {
        o.kind = Observable::Kind::Seat1Sum;
        o.inner = std::make_shared<Observable>(
            parse_observable(name.substr(std::string("seat1sum:").size())));
        return o;
    }
    if (head == "skip" && parts.size() >= 3) {
        o.kind = Observable::Kind::Skip;
        o.k = parse_level(parts[1]);
        o.inner = std::make_shared<Observable>(
            parse_observable(name.substr(std::string("skip:").size() + parts[1].size() + 1)));
        return o;
    }
    throw ConfigError("unknown observable '" + name + "'");
}

std::string observable_name(const Observable& o) {
    using K = Observable::Kind;
    switch (o.kind) {
        case K::Eta:
            return "density";
        case K::Pattern: {
            if (o.pattern.empty()) return "one";
            std::string s = "pattern:";
            for (auto b : o.pattern) s += static_cast<char>('0' + b);
            return s;
        }
        case K::SeatEvent:
            return "seat_event:" + std::to_string(o.k) + (o.up ? ":up" : ":down");
        case K::CarrierSeat:
            return "carrier_seat:" + std::to_string(o.k);
        case K::Carrier:
            return "carrier:" + (o.k == kInfCapacity ? std::string("inf") : std::to_string(o.k));
        case K::Product:
            return "product:" + std::to_string(o.k) + ":" + std::to_string(o.l);
        case K::Seat1Sum:
            return "seat1sum:" + observable_name(*o.inner);
        case K::Skip:
            return "skip:" + std::to_string(o.k) + ":" + observable_name(*o.inner);
    }
    return "?";
}

std::vector<double> site_values(const BallConfig& cfg, const Observable& obs, long lo, long hi) {
    std::vector<double> out;
    if (lo > hi) return out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    using K = Observable::Kind;
    switch (obs.kind) {
        case K::Eta:
            for (long x = lo; x <= hi; ++x) out.push_back(cfg.at(x));
            return out;
        case K::Pattern:
            for (long x = lo; x <= hi; ++x) {
                double v = 1;
                for (std::size_t j = 0; j < obs.pattern.size(); ++j)
                    if (cfg.at(x + static_cast<long>(j)) != obs.pattern[j]) {
                        v = 0;
                        break;
                    }
                out.push_back(v);
            }
            return out;
        case K::SeatEvent: {
            SeatProfile p = seat_decompose(cfg);
            int want = obs.up ? obs.k : -obs.k;
            for (long x = lo; x <= hi; ++x) out.push_back(p.event(x + 1) == want ? 1.0 : 0.0);
            return out;
        }
        case K::CarrierSeat:
        case K::Carrier:
        case K::Product: {
            SeatProfile p = seat_decompose(cfg);
            long load = 0;
            int occ_k = 0, occ_l = 0;
            for (long x = p.lo; x <= std::min(hi, p.hi); ++x) {
                int ev = p.event(x);
                if (obs.kind == K::Carrier) {
                    if (ev > 0 && (obs.k == kInfCapacity || ev <= obs.k))
                        ++load;
                    else if (ev < 0 && (obs.k == kInfCapacity || -ev <= obs.k))
                        --load;
                } else {
                    if (ev == obs.k) occ_k = 1;
                    if (ev == -obs.k) occ_k = 0;
                    if (obs.kind == K::Product) {
                        if (ev == obs.l) occ_l = 1;
                        if (ev == -obs.l) occ_l = 0;
                    }
                }
                if (x >= lo) {
                    if (obs.kind == K::Carrier)
                        out.push_back(static_cast<double>(load));
                    else if (obs.kind == K::CarrierSeat)
                        out.push_back(occ_k);
                    else
                        out.push_back(occ_k * occ_l);
                }
            }
            while (out.size() < static_cast<std::size_t>(hi - lo + 1)) out.push_back(0.0);
            return out;
        }
        case K::Seat1Sum: {
            SeatProfile p = seat_decompose(cfg);
            std::vector<double> inner = site_values(cfg, *obs.inner, lo, hi);
            for (long x = lo; x <= hi; ++x) {
                int ev = p.event(x + 1);
                double s = (ev == 1 || ev == -1) ? 1.0 : 0.0;
                out.push_back(s * inner[static_cast<std::size_t>(x - lo)]);
            }
            return out;
        }
        case K::Skip: {
            SeatProfile p = seat_decompose(cfg);
            SlotCoords sc(p, obs.k);
            BallConfig skipped = skip(cfg, obs.k);
            long base = sc.xi(0);
            long jlo = sc.xi(lo) - base;
            long jhi = sc.xi(hi) - base;
            std::vector<double> inner = site_values(skipped, *obs.inner, jlo, jhi);
            for (long x = lo; x <= hi; ++x) {
                long j = sc.xi(x) - base - jlo;
                out.push_back(inner[static_cast<std::size_t>(j)]);
            }
            return out;
        }
    }
    throw ConfigError("unhandled observable");
}

double window_average(const Window& w, const Observable& obs) {
    std::vector<double> vals = site_values(w.cfg, obs, w.int_lo, w.int_hi);
    double s = 0;
    for (double v : vals) s += v;
    return s / static_cast<double>(vals.size());
}

namespace {

// Static index partition; results land in stream order so the aggregate is
// independent of the worker count. Worker exceptions are rethrown here.
void run_indexed(long n, int workers, const std::function<void(long)>& body) {
    int nw = std::max(1, workers);
    if (nw == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex mu;
    auto run = [&](long b, long e) {
        try {
            for (long i = b; i < e; ++i) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    long chunk = (n + nw - 1) / nw;
    for (int t = 0; t < nw; ++t) {
        long b = t * chunk, e = std::min<long>(n, (t + 1) * chunk);
        if (b >= e) break;
        pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<double> per_window_values(const SampleSpec& spec, long n_windows, int workers,
                                      const std::function<double(const Window&)>& fn) {
    if (n_windows < 1) throw DomainError("need at least one window");
    PreparedModel pm(spec);
    std::vector<double> vals(static_cast<std::size_t>(n_windows));
    run_indexed(n_windows, workers, [&](long i) {
        vals[static_cast<std::size_t>(i)] = fn(pm.window(static_cast<std::uint64_t>(i)));
    });
    return vals;
}

namespace {

std::pair<double, double> mean_stderr(const std::vector<double>& vals) {
    double n = static_cast<double>(vals.size());
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= n;
    if (vals.size() < 2) return {mean, 0.0};
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= n - 1;
    return {mean, std::sqrt(var / n)};
}

}  // namespace

EstimateReport estimate_functional(const SampleSpec& spec, const std::string& observable,
                                   long n_windows, int workers, std::optional<double> target) {
    Observable obs = parse_observable(observable);
    auto vals = per_window_values(spec, n_windows, workers,
                                  [&](const Window& w) { return window_average(w, obs); });
    auto [mean, se] = mean_stderr(vals);
    EstimateReport rep;
    rep.observable = observable;
    rep.estimate = mean;
    rep.stderr_ = se;
    rep.n = n_windows;
    rep.target = target;
    if (target && se > 0) rep.z = (mean - *target) / se;
    return rep;
}

SkipMarkovReport verify_skip_markov(const AB& ab, int k, long chain_len, std::uint64_t seed,
                                    double sigmas) {
    if (!(ab.a > 0)) throw DomainError("skip-markov theorem needs (a,b) with a > 0");
    if (k < 1) throw DomainError("skip level must be >= 1");
    SampleSpec spec{MarkovSpec{ab, chain_len}, seed};
    Window w = sample_window(spec, 0);
    SeatProfile p = seat_decompose(w.cfg);
    BallConfig anchored = shift(w.cfg, p.anchor);  // record at the origin
    BallConfig skipped = skip(anchored, k);
    long margin = 20L * k + 64;
    long lo = skipped.window_begin() + margin;
    long hi = skipped.window_end() - 1 - margin;
    if (hi - lo < 1000) throw WindowError("too few skipped sites after margins");

    AB abk = ab_shift(ab, k);
    SkipMarkovReport rep;
    if (abk.a == 0.0) {
        rep.degenerate_all_zero = true;
        for (long x = lo; x <= hi; ++x)
            if (skipped.at(x) != 0) {
                rep.pass = false;
                break;
            }
        return rep;
    }
    Matrix2 target = markov_matrix(abk);
    long counts[2][2] = {{0, 0}, {0, 0}};
    for (long x = lo; x < hi; ++x) counts[skipped.at(x)][skipped.at(x + 1)] += 1;
    for (int r = 0; r < 2; ++r) {
        long n_from = counts[r][0] + counts[r][1];
        for (int c = 0; c < 2; ++c) {
            TransitionCheck tc;
            tc.from = r;
            tc.to = c;
            tc.n_from = n_from;
            tc.target = target(r, c);
            tc.empirical = n_from > 0 ? static_cast<double>(counts[r][c]) / n_from : 0.0;
            double se = std::sqrt(tc.target * (1 - tc.target) / std::max(1L, n_from));
            tc.z = se > 0 ? (tc.empirical - tc.target) / se : 0.0;
            if (std::abs(tc.z) > sigmas) rep.pass = false;
            rep.entries.push_back(tc);
        }
    }
    return rep;
}

std::vector<PairedCheck> verify_invariance(const SampleSpec& spec, long n_windows, int workers,
                                           double sigmas) {
    std::vector<std::vector<std::uint8_t>> patterns;
    for (int len = 1; len <= 3; ++len)
        for (int bitsv = 0; bitsv < (1 << len); ++bitsv) {
            std::vector<std::uint8_t> pat;
            for (int j = len - 1; j >= 0; --j) pat.push_back((bitsv >> j) & 1);
            patterns.push_back(pat);
        }

    std::size_t np = patterns.size();
    // Per window: frequency of each pattern in eta, in T eta, and at offset 7.
    std::vector<std::vector<double>> diff_t(np), diff_shift(np);
    PreparedModel pm(spec);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n_windows));
    run_indexed(n_windows, workers, [&](long i) {
        Window w = pm.window(static_cast<std::uint64_t>(i));
        BallConfig evolved = evolve(w.cfg, kInfCapacity);
        long lo = w.int_lo, hi = w.int_hi - 10;
        std::vector<double> row;
        for (auto& pat : patterns) {
            Observable o;
            o.kind = Observable::Kind::Pattern;
            o.pattern = pat;
            auto base = site_values(w.cfg, o, lo, hi);
            auto after = site_values(evolved, o, lo, hi);
            auto shifted = site_values(w.cfg, o, lo + 7, hi + 7);
            double fb = 0, fa = 0, fs = 0;
            for (std::size_t j = 0; j < base.size(); ++j) {
                fb += base[j];
                fa += after[j];
                fs += shifted[j];
            }
            double n = static_cast<double>(base.size());
            row.push_back(fa / n - fb / n);
            row.push_back(fs / n - fb / n);
        }
        rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    for (long i = 0; i < n_windows; ++i)
        for (std::size_t pi = 0; pi < np; ++pi) {
            diff_t[pi].push_back(rows[static_cast<std::size_t>(i)][2 * pi]);
            diff_shift[pi].push_back(rows[static_cast<std::size_t>(i)][2 * pi + 1]);
        }

    std::vector<PairedCheck> checks;
    for (std::size_t pi = 0; pi < np; ++pi) {
        std::string pstr;
        for (auto b : patterns[pi]) pstr += static_cast<char>('0' + b);
        auto [mt, st] = mean_stderr(diff_t[pi]);
        PairedCheck c1{"T:" + pstr, mt, st, st > 0 ? mt / st : 0.0, true};
        c1.pass = std::abs(c1.z) <= sigmas;
        checks.push_back(c1);
        auto [ms, ss] = mean_stderr(diff_shift[pi]);
        PairedCheck c2{"shift7:" + pstr, ms, ss, ss > 0 ? ms / ss : 0.0, true};
        c2.pass = std::abs(c2.z) <= sigmas;
        checks.push_back(c2);
    }
    return checks;
}

std::vector<SkipStatCheck> verify_skip_stat(const AlphaParams& alpha, int k,
                                            const std::string& observable, long n_windows,
                                            std::uint64_t seed, int workers, double sigmas) {
    SkipStatCoeffs coeffs = skip_stat_coeffs(alpha, k);
    AlphaParams shifted = alpha.theta_pow(k);

    SampleSpec lhs_spec{GlueSpec{alpha}, seed};
    SampleSpec rhs_spec{GlueSpec{shifted}, seed + 0x5eedULL};

    Observable f = parse_observable(observable);
    Observable skip_f = parse_observable("skip:" + std::to_string(k) + ":" + observable);
    Observable seat_f = parse_observable("seat1sum:" + observable);

    auto lhs_vals = per_window_values(lhs_spec, n_windows, workers,
                                      [&](const Window& w) { return window_average(w, skip_f); });
    auto rhs_vals = per_window_values(rhs_spec, n_windows, workers, [&](const Window& w) {
        return coeffs.c_main * window_average(w, f) + coeffs.c_seat * window_average(w, seat_f);
    });
    auto [ml, sl] = mean_stderr(lhs_vals);
    auto [mr, sr] = mean_stderr(rhs_vals);

    std::vector<SkipStatCheck> checks;
    double se = std::sqrt(sl * sl + sr * sr);
    SkipStatCheck main{"skip_stat:" + observable, ml, mr, se, se > 0 ? (ml - mr) / se : 0.0, true};
    main.pass = std::abs(main.z) <= sigmas;
    checks.push_back(main);

    // seat-event expectation under the shifted parameters, both directions
    double e_k = eps_bar(shifted);
    double e_k1 = eps_bar(alpha.theta_pow(k + 1));
    double per_sigma = (e_k - e_k1) / (2.0 * e_k);
    for (bool up : {true, false}) {
        std::string name = std::string("seat_event:1:") + (up ? "up" : "down");
        Observable so = parse_observable(name);
        auto vals = per_window_values(rhs_spec, n_windows, workers,
                                      [&](const Window& w) { return window_average(w, so); });
        auto [m, s] = mean_stderr(vals);
        SkipStatCheck c{name + "@theta^k", m, per_sigma, s, s > 0 ? (m - per_sigma) / s : 0.0, true};
        c.pass = std::abs(c.z) <= sigmas;
        checks.push_back(c);
    }
    return checks;
}

}  // namespace bbs
