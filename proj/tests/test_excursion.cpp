#include <doctest.h>

#include "bbs/excursion.hpp"
#include "bbs/seat.hpp"

using namespace bbs;

namespace {

Excursion exc(const std::string& word) {
    std::vector<std::uint8_t> bits;
    for (char c : word) bits.push_back(static_cast<std::uint8_t>(c - '0'));
    return Excursion(std::move(bits));
}

const char* kAppendix = "0110011101011000100";

}  // namespace

TEST_CASE("excursion word validation") {
    CHECK_NOTHROW(exc("0"));
    CHECK_NOTHROW(exc("010"));
    CHECK_NOTHROW(exc("01010"));  // the walk may touch zero in the middle
    CHECK_NOTHROW(exc(kAppendix));
    CHECK_THROWS_AS(exc("0100"), DomainError);   // even length
    CHECK_THROWS_AS(exc("011"), DomainError);    // does not return to zero
    CHECK_THROWS_AS(exc("00110"), DomainError);  // dips negative at the start
    CHECK_THROWS_AS(exc("01000"), DomainError);  // dips negative in the middle
    CHECK_THROWS_AS(exc("110"), DomainError);    // must start with 0
}

TEST_CASE("enumeration is lexicographic with Catalan counts") {
    auto one = enumerate_excursions(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].str() == "0");

    auto three = enumerate_excursions(3);
    REQUIRE(three.size() == 2);
    CHECK(three[0].str() == "0");
    CHECK(three[1].str() == "010");

    auto seven = enumerate_excursions(7);
    long counts[4] = {0, 0, 0, 0};
    for (auto& e : seven) counts[(e.length() - 1) / 2] += 1;
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 1);
    CHECK(counts[2] == 2);
    CHECK(counts[3] == 5);
    for (std::size_t i = 1; i < seven.size(); ++i) CHECK(seven[i - 1] < seven[i]);

    CHECK_THROWS_AS(enumerate_excursions(4), DomainError);
    CHECK_THROWS_AS(enumerate_excursions(-1), DomainError);
}

TEST_CASE("soliton content of the worked excursions") {
    CHECK(zeta_of_excursion(exc("0")).empty());
    CHECK(zeta_of_excursion(exc("010")) == std::map<int, long>{{1, 1}});
    auto app = zeta_of_excursion(exc(kAppendix));
    CHECK(app == std::map<int, long>{{1, 3}, {2, 1}, {4, 1}});
    long weighted = 0;
    for (auto& [k, n] : app) weighted += k * n;
    CHECK(exc(kAppendix).length() == 1 + 2 * weighted);
}

TEST_CASE("length law holds for every excursion up to 13") {
    for (auto& e : enumerate_excursions(13)) {
        long weighted = 0;
        for (auto& [k, n] : zeta_of_excursion(e)) weighted += k * n;
        CHECK(e.length() == 1 + 2 * weighted);
    }
}

TEST_CASE("excursion skip drops the 1-solitons of the worked excursion") {
    Excursion a = exc(kAppendix);
    CHECK(skip_excursion(exc("0"), 1).str() == "0");
    Excursion s1 = skip_excursion(a, 1);
    // every soliton shrinks by one: content {1:3, 2:1, 4:1} becomes
    // {1:1, 3:1}, so the length drops from 19 to 1 + 2(1 + 3) = 9
    CHECK(s1.length() == 9);
    CHECK(zeta_of_excursion(s1) == std::map<int, long>{{1, 1}, {3, 1}});
}

TEST_CASE("excursion skip shifts the content") {
    for (auto& e : enumerate_excursions(13)) {
        for (int l = 1; l <= 3; ++l) {
            Excursion s = skip_excursion(e, l);
            auto base = zeta_of_excursion(e);
            std::map<int, long> expected;
            for (auto& [k, n] : base)
                if (k > l) expected[k - l] = n;
            CHECK(zeta_of_excursion(s) == expected);
            long weighted = 0;
            for (auto& [k, n] : base)
                if (k > l) weighted += (k - l) * n;
            CHECK(s.length() == 1 + 2 * weighted);
        }
    }
}

TEST_CASE("iota embeds at the origin and inverts") {
    for (auto& e : enumerate_excursions(9)) {
        BallConfig cfg = iota(e);
        CHECK(cfg.at(0) == 0);
        SeatProfile p = seat_decompose(cfg);
        CHECK(p.anchor == 0);
        SlotCoords rec(p, kInfCapacity);
        CHECK(rec.s(1) == e.length());  // next record right after the block
        CHECK(iota_inverse(cfg) == e);
    }
    CHECK_THROWS_AS(iota_inverse(parse_config("#origin=-2\n10")), DomainError);
}
