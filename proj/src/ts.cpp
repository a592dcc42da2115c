#include "bbs/ts.hpp"

#include <algorithm>
#include <cassert>

#include "bbs/seat.hpp"

namespace bbs {

namespace {

struct Cell {
    long site;
    std::uint8_t value;
};

// TS passes over one excursion body (the sites strictly between records).
void decompose_stretch(std::vector<Cell> cells, std::vector<Soliton>& out) {
    while (!cells.empty()) {
        // runs of equal symbols over the active sequence
        std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end)
        for (std::size_t i = 0; i < cells.size();) {
            std::size_t j = i;
            while (j < cells.size() && cells[j].value == cells[i].value) ++j;
            runs.emplace_back(i, j);
            i = j;
        }
        std::size_t pick = runs.size();
        for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
            std::size_t len = runs[r].second - runs[r].first;
            std::size_t next = runs[r + 1].second - runs[r + 1].first;
            if (next >= len) {
                pick = r;
                break;
            }
        }
        assert(pick < runs.size());
        std::size_t k = runs[pick].second - runs[pick].first;
        Soliton s;
        s.size = static_cast<int>(k);
        for (std::size_t i = runs[pick].first; i < runs[pick].first + 2 * k; ++i)
            s.sites.push_back(cells[i].site);
        std::sort(s.sites.begin(), s.sites.end());
        out.push_back(std::move(s));
        cells.erase(cells.begin() + static_cast<long>(runs[pick].first),
                    cells.begin() + static_cast<long>(runs[pick].first + 2 * k));
    }
}

}  // namespace

SolitonSet ts_decompose(const BallConfig& cfg) {
    SeatProfile p = seat_decompose(cfg);
    SolitonSet result;
    std::vector<Cell> stretch;
    for (long x = p.lo; x <= p.hi + 1; ++x) {
        if (x > p.hi || p.is_record(x)) {
            if (!stretch.empty()) {
                decompose_stretch(std::move(stretch), result.solitons);
                stretch.clear();
            }
            if (x >= cfg.window_begin() && x < cfg.window_end()) result.records.push_back(x);
        } else {
            stretch.push_back({x, static_cast<std::uint8_t>(cfg.at(x))});
        }
    }
    std::sort(result.solitons.begin(), result.solitons.end(), [](const Soliton& a, const Soliton& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.sites.front() < b.sites.front();
    });
    return result;
}

}  // namespace bbs
