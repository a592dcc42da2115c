#include <doctest.h>

#include <map>

#include "bbs/rng.hpp"
#include "bbs/seat.hpp"

using namespace bbs;

namespace {

const char* kFigure = "011001110101100010";

BallConfig half(const std::string& word, long origin = 0) {
    std::vector<std::uint8_t> bits;
    for (char c : word) bits.push_back(static_cast<std::uint8_t>(c - '0'));
    return BallConfig(origin, std::move(bits), Boundary::HalfLine);
}

BallConfig whole(const std::string& word, long origin = 0) {
    std::vector<std::uint8_t> bits;
    for (char c : word) bits.push_back(static_cast<std::uint8_t>(c - '0'));
    return BallConfig(origin, std::move(bits), Boundary::WholeLine);
}

BallConfig random_whole(Rng& rng, int max_len = 16, double density = 0.45) {
    int len = 1 + static_cast<int>(rng.below(max_len));
    std::vector<std::uint8_t> bits;
    for (int i = 0; i < len; ++i) bits.push_back(rng.bernoulli(density) ? 1 : 0);
    return BallConfig(-static_cast<long>(rng.below(8)), std::move(bits), Boundary::WholeLine);
}

}  // namespace

TEST_CASE("infinite carrier load of the figure configuration") {
    auto w = run_carrier(half(kFigure), kInfCapacity);
    std::vector<long> expected = {0, 1, 2, 1, 0, 1, 2, 3, 2, 3, 2, 3, 4, 3, 2, 1, 2, 1};
    CHECK(w == expected);
}

TEST_CASE("carrier on the vacuum and the alternating word") {
    auto z = run_carrier(half("000000"), 3);
    CHECK(z == std::vector<long>(6, 0));
    auto alt = run_carrier(half("0101010"), 1);
    CHECK(alt == std::vector<long>{0, 1, 0, 1, 0, 1, 0});
}

TEST_CASE("seat events of the figure configuration") {
    SeatProfile p = seat_decompose(half(kFigure));
    // pick up into the smallest empty seat, drop from the smallest occupied
    CHECK(p.event(1) == 1);
    CHECK(p.event(2) == 2);
    CHECK(p.event(3) == -1);
    CHECK(p.event(4) == -2);
    CHECK(p.event(5) == 1);
    CHECK(p.event(6) == 2);
    CHECK(p.event(7) == 3);
    CHECK(p.event(8) == -1);
    CHECK(p.event(12) == 4);
    CHECK(p.event(15) == -3);
    CHECK(p.event(16) == 1);
    CHECK(p.event(17) == -1);
    CHECK(p.event(18) == -4);  // the carrier drains into the zero tail
    CHECK(p.event(19) == 0);
    CHECK(p.k_max == 4);
}

TEST_CASE("vacuum profile is all records") {
    SeatProfile p = seat_decompose(whole("000"));
    for (long x = p.lo - 3; x <= p.hi + 3; ++x) CHECK(p.is_record(x));
    CHECK(p.anchor == 0);
}

TEST_CASE("seat occupancy sums give every finite carrier") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        BallConfig cfg = random_whole(rng);
        SeatProfile p = seat_decompose(cfg);
        for (int cap : {1, 2, 3, 7}) {
            auto w = run_carrier(cfg, cap);
            for (long x = cfg.window_begin(); x < cfg.window_end(); ++x) {
                long sum = 0;
                for (int k = 1; k <= cap; ++k) sum += seat_occupancy(p, k, x);
                // the capacity-l load equals the sum of the first l seat
                // occupancies of the infinite carrier, overflow included
                CHECK(w[static_cast<std::size_t>(x - cfg.window_begin())] == sum);
                CHECK(carrier_load(p, cap, x) == sum);
            }
        }
    }
}

TEST_CASE("partial seat sums behave as the half-line lemma states") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        BallConfig cfg = random_whole(rng);
        SeatProfile p = seat_decompose(cfg);
        for (long x = p.lo; x <= p.hi; ++x) {
            int ev = p.event(x);
            if (ev > 0)
                for (int l = 1; l <= ev; ++l) CHECK(carrier_load(p, l, x) - carrier_load(p, l - 1, x) == 1);
            if (ev < 0)
                for (int l = 1; l <= -ev; ++l) CHECK(carrier_load(p, l, x) == carrier_load(p, l - 1, x));
            if (ev == 0)
                for (int l = 1; l <= p.k_max; ++l) CHECK(seat_occupancy(p, l, x) == 0);
        }
    }
}

TEST_CASE("loads at slot sites are all-full or all-empty") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        BallConfig cfg = random_whole(rng);
        SeatProfile p = seat_decompose(cfg);
        for (int k = 1; k <= 3; ++k) {
            SlotCoords sc(p, k);
            for (long i = 0; i <= sc.xi(p.hi); ++i) {
                long site = sc.s(i);
                for (int l = 1; l <= k + 1; ++l) {
                    long w = carrier_load(p, l, site);
                    if (cfg.at(site) == 1)
                        CHECK(w == l);
                    else
                        CHECK(w == 0);
                }
            }
        }
    }
}

TEST_CASE("no higher seat event sits strictly between consecutive slot sites") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        BallConfig cfg = random_whole(rng);
        SeatProfile p = seat_decompose(cfg);
        for (int k = 1; k <= 3; ++k) {
            SlotCoords sc(p, k);
            for (long i = sc.xi(p.lo - 1); i < sc.xi(p.hi); ++i)
                for (long y = sc.s(i) + 1; y < sc.s(i + 1); ++y) CHECK(std::abs(p.event(y)) <= k);
        }
    }
}

TEST_CASE("slot coordinates of the vacuum and the figure") {
    SeatProfile v = seat_decompose(whole("0"));
    SlotCoords records(v, kInfCapacity);
    for (long i = -4; i <= 4; ++i) CHECK(records.s(i) == i);

    SeatProfile p = seat_decompose(half(kFigure));
    SlotCoords s1(p, 1);
    std::vector<long> expected = {0, 2, 4, 6, 7, 12, 14, 15, 18, 19, 20};
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(s1.s(static_cast<long>(i)) == expected[i]);
    CHECK(s1.xi(0) == 0);
    // xi increments exactly at counted sites, by 0 or 1
    for (long x = 1; x <= p.hi + 2; ++x) {
        long d = s1.xi(x) - s1.xi(x - 1);
        CHECK(d >= 0);
        CHECK(d <= 1);
    }
    CHECK_THROWS_AS(slot_coords(p, 0), DomainError);
}

TEST_CASE("whole-line record anchor for a single ball at the origin") {
    SeatProfile p = seat_decompose(whole("100"));
    CHECK(p.anchor == -1);
    SlotCoords rec(p, kInfCapacity);
    CHECK(rec.s(0) == -1);
    CHECK(rec.s(1) == 2);
}

TEST_CASE("zeta of the figure configuration") {
    ZetaMatrix z = zeta_of(half(kFigure));
    // zeta_1 has its second soliton in slot 7: the seat-3/seat-4 drops at
    // sites 14, 15 and 18 are level-1 slot boundaries
    ZetaMatrix expected;
    expected.add(1, 4, 2);
    expected.add(1, 7, 1);
    expected.add(2, 0, 1);
    expected.add(4, 0, 1);
    CHECK(z == expected);
    CHECK(z.weighted_total() == 9);
}

TEST_CASE("zeta of the vacuum is empty") { CHECK(zeta_of(whole("0000")).levels.empty()); }

TEST_CASE("zeta of the alternating excursion is a single two-count entry") {
    ZetaMatrix z = zeta_of(whole("01010"));
    CHECK(z.level_total(1) == 2);
    CHECK(z.levels.size() == 1);
    CHECK(z.levels.at(1).size() == 1);
    CHECK(z.levels.at(1).at(0) == 2);
}

TEST_CASE("up-seat and down-seat zeta forms agree") {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        BallConfig cfg = random_whole(rng);
        SeatProfile p = seat_decompose(cfg);
        for (int k = 1; k <= p.k_max; ++k) {
            SlotCoords sc(p, k);
            std::map<long, long> down;
            for (long y = p.lo; y <= p.hi; ++y) {
                if (p.event(y) == -k) down[sc.slot_of(y)] += 1;
                if (p.event(y) == -(k + 1)) down[sc.slot_of(y)] -= 1;
            }
            for (auto it = down.begin(); it != down.end();)
                it = it->second == 0 ? down.erase(it) : std::next(it);
            CHECK(down == zeta_level(p, k));
        }
    }
}

TEST_CASE("reconstruction inverts zeta") {
    CHECK(same_configuration(reconstruct_from_zeta(ZetaMatrix{}, Boundary::WholeLine),
                             whole("0")));
    BallConfig fig = half(kFigure);
    CHECK(same_configuration(reconstruct_from_zeta(zeta_of(fig), Boundary::HalfLine), fig));

    Rng rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        BallConfig cfg = random_whole(rng);
        ZetaMatrix z = zeta_of(cfg);
        ZetaMatrix round = zeta_of(reconstruct_from_zeta(z, Boundary::WholeLine));
        CHECK(round == z);
    }
}

TEST_CASE("records are exactly the negative-suffix-sum sites") {
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        BallConfig cfg = random_whole(rng);
        SeatProfile p = seat_decompose(cfg);
        long running_max = -1;  // max over z <= x of sum_{y=z..x} (2 eta - 1)
        for (long x = p.lo; x <= p.hi; ++x) {
            long step = 2 * cfg.at(x) - 1;
            running_max = std::max(step, running_max + step);
            CHECK(p.is_record(x) == (running_max < 0));
        }
    }
}

TEST_CASE("reconstruction rejects bad input") {
    ZetaMatrix neg;
    neg.levels[1][0] = -1;
    CHECK_THROWS_AS(reconstruct_from_zeta(neg, Boundary::WholeLine), DomainError);
    ZetaMatrix backwards;
    backwards.levels[2][-1] = 1;
    CHECK_THROWS_AS(reconstruct_from_zeta(backwards, Boundary::HalfLine), DomainError);
    CHECK_NOTHROW(reconstruct_from_zeta(backwards, Boundary::WholeLine));
}

TEST_CASE("active word rendering") {
    CHECK(active_word(whole("0")) == "0");
    CHECK(active_word(half(kFigure)) == std::string(kFigure) + "0");  // the seat-4 drop at 18
}
