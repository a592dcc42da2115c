#pragma once

#include <map>
#include <string>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/seat.hpp"

namespace bbs {

// One-step time evolution T_l. The output window is extended to the right
// until the carrier is empty, so no ball falls off the representation.
BallConfig evolve(const BallConfig& cfg, int capacity);

// Whole-line linearization offset o_k, computed three ways; the theorem's
// displayed formula is `primary`, the two Remark forms must agree with it.
struct OffsetFormulas {
    long primary;
    long via_eta;   // -xi_k(eta, s_inf(T eta,0)) - W_k(eta, s_inf(T eta,0))
    long via_teta;  // +xi_k(T eta, s_inf(eta,0)) - W_k(T eta, s_inf(eta,0))
    bool consistent() const { return primary == via_eta && primary == via_teta; }
};

OffsetFormulas offset_o_all(const BallConfig& cfg, int k);
long offset_o(const BallConfig& cfg, int k);

struct LinearizationReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

// Half-line: zeta_k(T_l eta, i) == zeta_k(eta, i - min(k,l)).
// Whole-line (capacity inf): zeta_k(T eta, i + k + o_k) == zeta_k(eta, i).
LinearizationReport verify_linearization(const BallConfig& cfg, int capacity, int k);

struct EvolutionReport {
    BallConfig before;
    BallConfig after;
    int capacity;
    std::map<int, long> offsets;  // whole-line, capacity inf only
};

EvolutionReport evolve_report(const BallConfig& cfg, int capacity);

}  // namespace bbs
