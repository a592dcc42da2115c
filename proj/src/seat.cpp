#include "bbs/seat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>

namespace bbs {

namespace {

// Occupied-seat set of the sweeping carrier, seat k at bit (k-1).
class SeatSet {
  public:
    int smallest_empty() const {
        for (std::size_t w = 0;; ++w) {
            if (w >= words_.size()) return static_cast<int>(64 * w) + 1;
            if (words_[w] != ~0ULL)
                return static_cast<int>(64 * w + std::countr_one(words_[w])) + 1;
        }
    }
    int smallest_occupied() const {  // 0 when empty
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0ULL)
                return static_cast<int>(64 * w + std::countr_zero(words_[w])) + 1;
        return 0;
    }
    void set(int k, bool v) {
        std::size_t w = static_cast<std::size_t>(k - 1) / 64;
        if (w >= words_.size()) words_.resize(w + 1, 0ULL);
        std::uint64_t bit = 1ULL << ((k - 1) % 64);
        if (v)
            words_[w] |= bit;
        else
            words_[w] &= ~bit;
    }
    bool empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

  private:
    std::vector<std::uint64_t> words_;
};

}  // namespace

SeatProfile seat_decompose(const BallConfig& cfg) {
    SeatProfile p;
    p.boundary = cfg.boundary;
    long lo = cfg.boundary == Boundary::HalfLine ? std::max(cfg.window_begin(), 1L)
                                                 : cfg.window_begin();
    long end = cfg.window_end();
    p.lo = lo;
    SeatSet seats;
    long x = lo;
    for (; x < end || !seats.empty(); ++x) {
        int ev;
        if (cfg.at(x) == 1) {
            int k = seats.smallest_empty();
            seats.set(k, true);
            p.k_max = std::max(p.k_max, k);
            ev = k;
        } else {
            int k = seats.smallest_occupied();
            if (k > 0) seats.set(k, false);
            ev = -k;  // 0 stays a record
        }
        p.events.push_back(ev);
    }
    p.hi = x - 1;
    if (p.hi < p.lo) {  // empty window, keep one record for a well-formed range
        p.events.push_back(0);
        p.hi = p.lo;
    }
    if (cfg.boundary == Boundary::WholeLine) {
        if (p.lo > 0) {
            p.anchor = 0;
        } else {
            p.anchor = p.lo - 1;
            for (long y = std::min(p.hi, 0L); y >= p.lo; --y)
                if (p.event(y) == 0) {
                    p.anchor = y;
                    break;
                }
        }
    }
    return p;
}

std::vector<long> run_carrier(const BallConfig& cfg, int capacity) {
    if (capacity < 1) throw DomainError("carrier capacity must be >= 1");
    std::vector<long> out;
    out.reserve(cfg.bits.size());
    long begin = cfg.window_begin();
    long start = cfg.boundary == Boundary::HalfLine ? std::max(begin, 1L) : begin;
    long load = 0;
    for (long x = begin; x < cfg.window_end(); ++x) {
        if (x >= start) {
            if (cfg.at(x) == 1) {
                if (capacity == kInfCapacity || load < capacity) ++load;
            } else if (load > 0) {
                --load;
            }
        }
        out.push_back(load);
    }
    return out;
}

long carrier_load(const SeatProfile& p, int capacity, long x) {
    long load = 0;
    for (long y = p.lo; y <= std::min(x, p.hi); ++y) {
        int ev = p.event(y);
        if (ev > 0 && ev <= capacity)
            ++load;
        else if (ev < 0 && -ev <= capacity)
            --load;
    }
    return load;
}

int seat_occupancy(const SeatProfile& p, int k, long x) {
    int occ = 0;
    for (long y = p.lo; y <= std::min(x, p.hi); ++y) {
        int ev = p.event(y);
        if (ev == k)
            occ = 1;
        else if (ev == -k)
            occ = 0;
    }
    return occ;
}

SlotCoords::SlotCoords(const SeatProfile& p, int k) : prof_(&p), level_(k) {
    if (k < 1) throw DomainError("slot level k must be >= 1 (or infinity)");
    for (long x = p.lo; x <= p.hi; ++x) {
        int ev = p.event(x);
        bool counted = ev == 0 || (k != kInfCapacity && std::abs(ev) > k);
        if (counted) pos_.push_back(x);
    }
    count_anchor_ = count_upto(p.anchor);
}

long SlotCoords::count_upto(long x) const {
    if (x < prof_->lo) return x - (prof_->lo - 1);
    if (x > prof_->hi)
        return static_cast<long>(pos_.size()) + (x - prof_->hi);
    auto it = std::upper_bound(pos_.begin(), pos_.end(), x);
    return static_cast<long>(it - pos_.begin());
}

long SlotCoords::xi(long x) const { return count_upto(x) - count_anchor_; }

long SlotCoords::s(long i) const {
    long t = i + count_anchor_;
    if (t <= 0) return prof_->lo - 1 + t;
    if (t <= static_cast<long>(pos_.size())) return pos_[static_cast<std::size_t>(t - 1)];
    return prof_->hi + (t - static_cast<long>(pos_.size()));
}

SlotCoords slot_coords(const SeatProfile& p, int k) { return SlotCoords(p, k); }

long ZetaMatrix::level_total(int k) const {
    auto it = levels.find(k);
    if (it == levels.end()) return 0;
    long t = 0;
    for (auto& [i, c] : it->second) t += c;
    return t;
}

long ZetaMatrix::weighted_total() const {
    long t = 0;
    for (auto& [k, row] : levels)
        for (auto& [i, c] : row) t += static_cast<long>(k) * c;
    return t;
}

void ZetaMatrix::add(int k, long i, long count) {
    if (count == 0) return;
    levels[k][i] += count;
    if (levels[k][i] == 0) {
        levels[k].erase(i);
        if (levels[k].empty()) levels.erase(k);
    }
}

std::map<long, long> zeta_level(const SeatProfile& p, int k) {
    if (k < 1 || k == kInfCapacity) throw DomainError("zeta level k must be a finite k >= 1");
    SlotCoords sc(p, k);
    std::map<long, long> out;
    for (long y = p.lo; y <= p.hi; ++y) {
        int ev = p.event(y);
        if (ev == k)
            out[sc.slot_of(y)] += 1;
        else if (ev == k + 1)
            out[sc.slot_of(y)] -= 1;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

ZetaMatrix zeta_of(const SeatProfile& p) {
    ZetaMatrix z;
    z.boundary = p.boundary;
    for (int k = 1; k <= p.k_max; ++k) {
        auto row = zeta_level(p, k);
        if (!row.empty()) z.levels[k] = std::move(row);
    }
    return z;
}

ZetaMatrix zeta_of(const BallConfig& cfg) { return zeta_of(seat_decompose(cfg)); }

BallConfig reconstruct_from_zeta(const ZetaMatrix& z, Boundary mode) {
    int top = 0;
    for (auto& [k, row] : z.levels) {
        if (k < 1) throw DomainError("zeta level must be >= 1");
        for (auto& [i, m] : row) {
            if (m < 0) throw DomainError("zeta counts must be nonnegative");
            if (mode == Boundary::HalfLine && i < 0)
                throw DomainError("half-line zeta index must be >= 0");
        }
        if (!row.empty()) top = std::max(top, k);
    }
    std::vector<std::uint8_t> w = {0};
    long a_idx = 0;  // array index of the letter at site 0
    for (int k = top; k >= 1; --k) {
        const std::map<long, long>* row = nullptr;
        if (auto it = z.levels.find(k); it != z.levels.end()) row = &it->second;
        long p_lo = -a_idx;
        long p_hi = static_cast<long>(w.size()) - 1 - a_idx;
        long i_lo = p_lo, i_hi = p_hi;
        if (row && !row->empty()) {
            i_lo = std::min(i_lo, row->begin()->first);
            i_hi = std::max(i_hi, row->rbegin()->first);
        }
        auto letter = [&](long site) -> std::uint8_t {
            if (site < p_lo || site > p_hi) return 0;
            return w[static_cast<std::size_t>(site + a_idx)];
        };
        std::vector<std::uint8_t> nw;
        long new_a = -1;
        for (long i = i_lo; i <= i_hi + 1; ++i) {
            if (i == 0) new_a = static_cast<long>(nw.size());
            nw.push_back(letter(i));
            if (i > i_hi) break;
            long m = 0;
            if (row) {
                auto it = row->find(i);
                if (it != row->end()) m = it->second;
            }
            if (letter(i) == 1 && letter(i + 1) == 0) m += 1;  // every 10-pair came from a block
            for (long t = 0; t < m; ++t) {
                nw.push_back(1);
                nw.push_back(0);
            }
        }
        assert(new_a >= 0);
        w = std::move(nw);
        a_idx = new_a;
    }
    if (mode == Boundary::HalfLine) return BallConfig(0, std::move(w), Boundary::HalfLine);
    return BallConfig(-a_idx, std::move(w), Boundary::WholeLine);
}

std::string active_word(const BallConfig& cfg) {
    SeatProfile p = seat_decompose(cfg);
    long last = -1;
    for (long x = p.hi; x >= std::max(p.lo, 0L); --x)
        if (p.event(x) != 0) {
            last = x;
            break;
        }
    std::string out;
    for (long x = 0; x <= std::max(last, 0L); ++x) out += static_cast<char>('0' + cfg.at(x));
    return out;
}

}  // namespace bbs
