#include "bbs/dynamics.hpp"

#include <algorithm>
#include <cassert>

namespace bbs {

BallConfig evolve(const BallConfig& cfg, int capacity) {
    if (capacity < 1) throw DomainError("capacity must be >= 1");
    long begin = cfg.window_begin();
    long start = cfg.boundary == Boundary::HalfLine ? std::max(begin, 1L) : begin;
    std::vector<std::uint8_t> out;
    long load = 0;
    long x = begin;
    for (; x < cfg.window_end() || load > 0; ++x) {
        long prev = load;
        if (x >= start) {
            if (cfg.at(x) == 1) {
                if (capacity == kInfCapacity || load < capacity) ++load;
            } else if (load > 0) {
                --load;
            }
        }
        out.push_back(static_cast<std::uint8_t>(cfg.at(x) + prev - load));
    }
    BallConfig res(begin, std::move(out), cfg.boundary);
    if (capacity == kInfCapacity) assert(res.ball_count() == cfg.ball_count());
    return res;
}

OffsetFormulas offset_o_all(const BallConfig& cfg, int k) {
    if (cfg.boundary != Boundary::WholeLine)
        throw DomainError("offset o_k requires a whole-line configuration in Omega_*");
    if (k < 1) throw DomainError("offset level k must be >= 1");
    BallConfig evolved = evolve(cfg, kInfCapacity);
    SeatProfile p = seat_decompose(cfg);
    SeatProfile pt = seat_decompose(evolved);
    long s0 = p.anchor;
    long s0t = pt.anchor;

    long down_sum = 0;
    for (long y = s0 + 1; y <= 0; ++y) {
        int ev = p.event(y);
        if (ev < 0 && -ev <= k) ++down_sum;
    }
    long up_sum = 0;
    for (long y = s0t + 1; y <= 0; ++y) {
        int ev = pt.event(y);
        if (ev > 0 && ev <= k) ++up_sum;
    }
    OffsetFormulas f;
    f.primary = s0 - s0t + 2 * down_sum - 2 * up_sum;
    SlotCoords sc_eta(p, k);
    SlotCoords sc_teta(pt, k);
    f.via_eta = -sc_eta.xi(s0t) - carrier_load(p, k, s0t);
    f.via_teta = sc_teta.xi(s0) - carrier_load(pt, k, s0);
    return f;
}

long offset_o(const BallConfig& cfg, int k) { return offset_o_all(cfg, k).primary; }

namespace {

std::map<long, long> shift_keys(const std::map<long, long>& m, long d) {
    std::map<long, long> out;
    for (auto& [i, c] : m) out[i + d] = c;
    return out;
}

}  // namespace

LinearizationReport verify_linearization(const BallConfig& cfg, int capacity, int k) {
    LinearizationReport rep;
    BallConfig evolved = evolve(cfg, capacity);
    SeatProfile p = seat_decompose(cfg);
    SeatProfile pt = seat_decompose(evolved);
    auto before = zeta_level(p, k);
    auto after = zeta_level(pt, k);
    long d;
    if (cfg.boundary == Boundary::HalfLine) {
        d = std::min<long>(k, capacity == kInfCapacity ? k : capacity);
    } else {
        if (capacity != kInfCapacity)
            throw DomainError("whole-line linearization is stated for T = T_inf");
        d = k + offset_o(cfg, k);
    }
    auto expected = shift_keys(before, d);
    if (expected != after) {
        rep.ok = false;
        rep.mismatches.push_back("zeta_" + std::to_string(k) + " shift by " + std::to_string(d) +
                                 " does not match");
    }
    return rep;
}

EvolutionReport evolve_report(const BallConfig& cfg, int capacity) {
    EvolutionReport rep;
    rep.before = cfg;
    rep.after = evolve(cfg, capacity);
    rep.capacity = capacity;
    if (cfg.boundary == Boundary::WholeLine && capacity == kInfCapacity) {
        SeatProfile p = seat_decompose(cfg);
        for (int k = 1; k <= std::max(p.k_max, 1); ++k) rep.offsets[k] = offset_o(cfg, k);
    }
    return rep;
}

}  // namespace bbs
