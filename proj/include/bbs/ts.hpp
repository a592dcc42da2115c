#pragma once

#include <vector>

#include "bbs/config.hpp"

namespace bbs {

struct Soliton {
    int size = 0;
    std::vector<long> sites;  // 2*size original site indices, ascending
};

struct SolitonSet {
    std::vector<Soliton> solitons;  // sorted by size descending, then first site
    std::vector<long> records;      // record sites inside the window
};

// Soliton identification, applied excursion by excursion: repeatedly select
// the leftmost run whose subsequent run is at least as long, group equal
// prefixes of the two runs, remove, until nothing but records remains.
SolitonSet ts_decompose(const BallConfig& cfg);

}  // namespace bbs
