#include <doctest.h>

#include <set>

#include "bbs/dynamics.hpp"
#include "bbs/rng.hpp"
#include "bbs/skip.hpp"

using namespace bbs;

namespace {

const char* kFigure = "011001110101100010";

BallConfig from_word(const std::string& word, long origin, Boundary mode) {
    std::vector<std::uint8_t> bits;
    for (char c : word) bits.push_back(static_cast<std::uint8_t>(c - '0'));
    return BallConfig(origin, std::move(bits), mode);
}

BallConfig random_whole(Rng& rng, int max_len = 16) {
    int len = 1 + static_cast<int>(rng.below(max_len));
    std::vector<std::uint8_t> bits;
    for (int i = 0; i < len; ++i) bits.push_back(rng.bernoulli(0.45) ? 1 : 0);
    return BallConfig(-static_cast<long>(rng.below(8)), std::move(bits), Boundary::WholeLine);
}

}  // namespace

TEST_CASE("vacuum is a fixed point") {
    BallConfig vac = parse_config("0");
    CHECK(same_configuration(evolve(vac, kInfCapacity), vac));
    CHECK(same_configuration(evolve(vac, 1), vac));
}

TEST_CASE("a free 2-soliton moves at speed 2") {
    BallConfig one = from_word("0110", 0, Boundary::WholeLine);
    BallConfig next = evolve(one, kInfCapacity);
    CHECK(same_configuration(next, from_word("00011", 0, Boundary::WholeLine)));
    BallConfig again = evolve(next, kInfCapacity);
    CHECK(same_configuration(again, from_word("0000011", 0, Boundary::WholeLine)));
}

TEST_CASE("pointwise update equation and ball conservation") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        BallConfig cfg = random_whole(rng);
        for (int cap : {1, 2, kInfCapacity}) {
            BallConfig out = evolve(cfg, cap);
            // rebuild the load and check after(x) = before(x) + W(x-1) - W(x)
            BallConfig wide(cfg.window_begin(), cfg.bits, cfg.boundary);
            long load = 0;
            for (long x = cfg.window_begin(); x < out.window_end() + 2; ++x) {
                long prev = load;
                if (cfg.at(x) == 1) {
                    if (cap == kInfCapacity || load < cap) ++load;
                } else if (load > 0) {
                    --load;
                }
                CHECK(out.at(x) == cfg.at(x) + prev - load);
            }
            if (cap == kInfCapacity) CHECK(out.ball_count() == cfg.ball_count());
        }
    }
}

TEST_CASE("capacity-1 overflow stays in place") {
    BallConfig two = from_word("11", 1, Boundary::HalfLine);
    BallConfig out = evolve(two, 1);
    CHECK(out.at(1) == 0);
    CHECK(out.at(2) == 1);
    CHECK(out.at(3) == 1);
    CHECK(out.ball_count() == 2);
}

TEST_CASE("evolution is injective on small configurations") {
    std::set<std::string> images;
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
        std::vector<std::uint8_t> bits;
        for (int i = 0; i < 10; ++i) bits.push_back((mask >> i) & 1u);
        BallConfig cfg(1, bits, Boundary::HalfLine);
        images.insert(render_config(evolve(cfg, kInfCapacity)));
    }
    CHECK(images.size() == (1u << 10));
}

TEST_CASE("offsets vanish on the vacuum") {
    BallConfig vac = parse_config("0");
    for (int k = 1; k <= 3; ++k) {
        OffsetFormulas f = offset_o_all(vac, k);
        CHECK(f.primary == 0);
        CHECK(f.consistent());
    }
}

TEST_CASE("offset of a single ball at the origin") {
    BallConfig one = parse_config("10");
    OffsetFormulas f = offset_o_all(one, 1);
    CHECK(f.primary == -1);
    CHECK(f.consistent());
}

TEST_CASE("offset formulas agree and linearize on random configurations") {
    Rng rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        BallConfig cfg = random_whole(rng);
        for (int k = 1; k <= 4; ++k) {
            CHECK(offset_o_all(cfg, k).consistent());
            CHECK(verify_linearization(cfg, kInfCapacity, k).ok);
        }
    }
}

TEST_CASE("figure configuration linearizes with the offset") {
    BallConfig fig = parse_config(kFigure);
    for (int k = 1; k <= 4; ++k) CHECK(verify_linearization(fig, kInfCapacity, k).ok);
    BallConfig fig_half = from_word(kFigure, 0, Boundary::HalfLine);
    for (int cap : {1, 2, kInfCapacity})
        for (int k = 1; k <= 4; ++k) CHECK(verify_linearization(fig_half, cap, k).ok);
}

TEST_CASE("offset requires the whole line") {
    BallConfig h = from_word("011", 1, Boundary::HalfLine);
    CHECK_THROWS_AS(offset_o(h, 1), DomainError);
}

TEST_CASE("seat events flip under one evolution step") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        BallConfig cfg = random_whole(rng);
        BallConfig next = evolve(cfg, kInfCapacity);
        SeatProfile p = seat_decompose(cfg);
        SeatProfile pt = seat_decompose(next);
        long lo = std::min(p.lo, pt.lo), hi = std::max(p.hi, pt.hi);
        for (long x = lo; x <= hi; ++x) {
            int e = p.event(x), et = pt.event(x);
            CHECK((e < 0) == (et > 0));
            if (e < 0) CHECK(et == -e);
            if (e > 0) CHECK((et == 0 || et <= -e));
        }
    }
}

TEST_CASE("evolution report carries offsets on the whole line") {
    EvolutionReport rep = evolve_report(parse_config("10"), kInfCapacity);
    CHECK(rep.offsets.at(1) == -1);
    EvolutionReport half = evolve_report(from_word("011", 1, Boundary::HalfLine), 2);
    CHECK(half.offsets.empty());
}
