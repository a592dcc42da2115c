#pragma once

#include <map>
#include <utility>

#include "bbs/config.hpp"

namespace bbs {

// 10-rigging: levels[k][i] = m means J^10_k(eta, i) = {1..m}, m >= 1.
struct Rigging {
    std::map<int, std::map<long, long>> levels;
    bool operator==(const Rigging& o) const { return levels == o.levels; }
};

// One 10-elimination step. Removes every maximal (10)^m block from the word
// eta(0) eta(1) ... (zeros assumed at x < 0) and renumbers. The rigging level
// records, at the output position i of the surviving left neighbour X of a
// block, the set size m (or m-1 when XY = 10).
//
// Requires a configuration with no balls at sites x <= 0 and finitely many
// balls (Omega_{<inf}).
std::pair<BallConfig, std::map<long, long>> eliminate_once(const BallConfig& cfg);

// Iterated elimination Phi_k with riggings J^10_1 .. J^10_k.
std::pair<BallConfig, Rigging> eliminate_k(const BallConfig& cfg, int k);

}  // namespace bbs
