#include "bbs/excursion.hpp"

#include <algorithm>
#include <cassert>

#include "bbs/seat.hpp"
#include "bbs/skip.hpp"

namespace bbs {

bool is_excursion_word(const std::vector<std::uint8_t>& w) {
    if (w.empty() || w.size() % 2 == 0) return false;
    if (w[0] != 0) return false;
    long sum = 0;
    for (std::size_t j = 1; j < w.size(); ++j) {
        if (w[j] > 1) return false;
        sum += w[j] ? 1 : -1;
        if (sum < 0) return false;
    }
    return sum == 0;
}

Excursion::Excursion(std::vector<std::uint8_t> w) : word(std::move(w)) {
    if (!is_excursion_word(word)) throw DomainError("not a valid excursion word");
}

std::string Excursion::str() const {
    std::string s;
    for (std::uint8_t b : word) s += static_cast<char>('0' + b);
    return s;
}

BallConfig iota(const Excursion& e) { return BallConfig(0, e.word, Boundary::WholeLine); }

Excursion iota_inverse(const BallConfig& cfg) {
    if (cfg.boundary != Boundary::WholeLine) throw ModeError("iota image lives on the whole line");
    SeatProfile p = seat_decompose(cfg);
    SlotCoords records(p, kInfCapacity);
    if (p.anchor != 0) throw DomainError("configuration is not in Omega_1 (no record at 0)");
    long s1 = records.s(1);
    std::vector<std::uint8_t> w;
    for (long x = 0; x < s1; ++x) w.push_back(static_cast<std::uint8_t>(cfg.at(x)));
    for (long x = cfg.window_begin(); x < 0; ++x)
        if (cfg.at(x)) throw DomainError("configuration is not in Omega_1 (ball left of 0)");
    for (long x = s1; x < cfg.window_end(); ++x)
        if (cfg.at(x)) throw DomainError("configuration is not in Omega_1 (ball past the excursion)");
    return Excursion(std::move(w));
}

namespace {

void enumerate_words(std::vector<std::uint8_t>& w, long sum, long remaining,
                     std::vector<Excursion>& out) {
    if (remaining == 0) {
        if (sum == 0) out.push_back(Excursion(w));
        return;
    }
    // 0 before 1 keeps each length group in lexicographic order
    if (sum >= 1) {
        w.push_back(0);
        enumerate_words(w, sum - 1, remaining - 1, out);
        w.pop_back();
    }
    if (sum + 1 <= remaining - 1) {
        w.push_back(1);
        enumerate_words(w, sum + 1, remaining - 1, out);
        w.pop_back();
    }
}

}  // namespace

std::vector<Excursion> enumerate_excursions(long max_len) {
    if (max_len < 1 || max_len % 2 == 0)
        throw DomainError("excursion length cap must be a positive odd integer");
    std::vector<Excursion> out;
    for (long len = 1; len <= max_len; len += 2) {
        std::vector<std::uint8_t> w = {0};
        enumerate_words(w, 0, len - 1, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<int, long> zeta_of_excursion(const Excursion& e) {
    SeatProfile p = seat_decompose(iota(e));
    std::map<int, long> totals;
    for (int ev : p.events) {
        if (ev > 0) {
            totals[ev] += 1;
            if (ev > 1) totals[ev - 1] -= 1;
        }
    }
    for (auto it = totals.begin(); it != totals.end();)
        it = it->second == 0 ? totals.erase(it) : std::next(it);
    long weighted = 0;
    for (auto& [k, c] : totals) weighted += static_cast<long>(k) * c;
    assert(e.length() == 1 + 2 * weighted);
    return totals;
}

Excursion skip_excursion(const Excursion& e, int k) {
    return iota_inverse(skip(iota(e), k).canonical());
}

}  // namespace bbs
