#include <doctest.h>

#include <map>
#include <set>

#include "bbs/rng.hpp"
#include "bbs/seat.hpp"
#include "bbs/ts.hpp"

using namespace bbs;

namespace {

BallConfig from_word(const std::string& word, long origin, Boundary mode) {
    std::vector<std::uint8_t> bits;
    for (char c : word) bits.push_back(static_cast<std::uint8_t>(c - '0'));
    return BallConfig(origin, std::move(bits), mode);
}

std::multiset<int> sizes_of(const SolitonSet& s) {
    std::multiset<int> out;
    for (auto& g : s.solitons) out.insert(g.size);
    return out;
}

}  // namespace

TEST_CASE("worked excursion decomposes into 4,2,1,1,1") {
    SolitonSet s = ts_decompose(parse_config("0110011101011000100"));
    CHECK(sizes_of(s) == std::multiset<int>{1, 1, 1, 2, 4});
    REQUIRE(s.solitons.size() == 5);
    CHECK(s.solitons[0].sites == std::vector<long>{5, 6, 7, 12, 13, 14, 15, 18});
    CHECK(s.solitons[1].sites == std::vector<long>{1, 2, 3, 4});
    CHECK(s.solitons[2].sites == std::vector<long>{8, 9});
    CHECK(s.solitons[3].sites == std::vector<long>{10, 11});
    CHECK(s.solitons[4].sites == std::vector<long>{16, 17});
    CHECK(s.records == std::vector<long>{0});
}

TEST_CASE("vacuum has no solitons") {
    SolitonSet s = ts_decompose(parse_config("00000"));
    CHECK(s.solitons.empty());
    CHECK(s.records == std::vector<long>{0, 1, 2, 3, 4});
}

TEST_CASE("equal-length runs group greedily") {
    SolitonSet s = ts_decompose(parse_config("01100"));
    REQUIRE(s.solitons.size() == 1);
    CHECK(s.solitons[0].size == 2);
    CHECK(s.solitons[0].sites == std::vector<long>{1, 2, 3, 4});
}

TEST_CASE("soliton sizes match zeta column sums exhaustively") {
    for (std::uint32_t mask = 0; mask < (1u << 14); ++mask) {
        std::vector<std::uint8_t> bits;
        for (int i = 0; i < 14; ++i) bits.push_back((mask >> i) & 1u);
        BallConfig cfg(1, bits, Boundary::HalfLine);
        ZetaMatrix z = zeta_of(cfg);
        std::map<int, long> from_zeta;
        for (auto& [k, row] : z.levels) from_zeta[k] = z.level_total(k);
        std::map<int, long> from_ts;
        for (auto& g : ts_decompose(cfg).solitons) from_ts[g.size] += 1;
        CHECK(from_zeta == from_ts);
    }
}

TEST_CASE("soliton heads and tails carry matching seat labels") {
    Rng rng(71);
    for (int trial = 0; trial < 300; ++trial) {
        int len = 1 + static_cast<int>(rng.below(14));
        std::vector<std::uint8_t> bits;
        for (int i = 0; i < len; ++i) bits.push_back(rng.bernoulli(0.45) ? 1 : 0);
        BallConfig cfg(-static_cast<long>(rng.below(6)), bits, Boundary::WholeLine);
        SeatProfile p = seat_decompose(cfg);
        for (auto& g : ts_decompose(cfg).solitons) {
            std::vector<long> heads, tails;
            for (long x : g.sites) (cfg.at(x) ? heads : tails).push_back(x);
            REQUIRE(static_cast<int>(heads.size()) == g.size);
            REQUIRE(static_cast<int>(tails.size()) == g.size);
            for (int l = 0; l < g.size; ++l) {
                CHECK(p.event(heads[static_cast<std::size_t>(l)]) == l + 1);
                CHECK(p.event(tails[static_cast<std::size_t>(l)]) == -(l + 1));
            }
        }
    }
}

TEST_CASE("solitons and records partition the sites") {
    Rng rng(73);
    for (int trial = 0; trial < 200; ++trial) {
        int len = 1 + static_cast<int>(rng.below(16));
        std::vector<std::uint8_t> bits;
        for (int i = 0; i < len; ++i) bits.push_back(rng.bernoulli(0.5) ? 1 : 0);
        BallConfig cfg(0, bits, Boundary::WholeLine);
        SolitonSet s = ts_decompose(cfg);
        std::set<long> seen;
        for (auto& g : s.solitons) {
            CHECK(g.sites.size() == 2 * static_cast<std::size_t>(g.size));
            long ones = 0;
            for (long x : g.sites) {
                CHECK(!seen.count(x));
                seen.insert(x);
                ones += cfg.at(x);
            }
            CHECK(ones == g.size);
        }
        for (long x : s.records) {
            CHECK(!seen.count(x));
            seen.insert(x);
        }
        for (long x = cfg.window_begin(); x < cfg.window_end(); ++x) CHECK(seen.count(x));
    }
}

TEST_CASE("decomposition ignores appended zeros") {
    BallConfig a = parse_config("0110100");
    BallConfig b = parse_config("011010000000");
    auto sa = ts_decompose(a), sb = ts_decompose(b);
    REQUIRE(sa.solitons.size() == sb.solitons.size());
    for (std::size_t i = 0; i < sa.solitons.size(); ++i)
        CHECK(sa.solitons[i].sites == sb.solitons[i].sites);
}
