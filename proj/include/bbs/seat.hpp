#pragma once

#include <limits>
#include <map>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

// Capacity / seat-level value standing for "infinity".
inline constexpr int kInfCapacity = std::numeric_limits<int>::max();

// Per-site seat events produced by the carrier sweep.
//   code == 0   record (empty carrier passes a vacancy)
//   code == +k  a ball enters seat k
//   code == -k  a ball leaves seat k
//
// The profile covers the contiguous site range [lo, hi]; every site outside
// is a record (zeros with an empty carrier on both sides). For half-line
// configurations lo >= 1 and site 0 is the virtual start of the sweep.
struct SeatProfile {
    Boundary boundary = Boundary::WholeLine;
    long lo = 0;
    long hi = -1;
    std::vector<int> events;
    int k_max = 0;
    long anchor = 0;  // s_inf(eta, 0); always 0 in half-line mode

    int event(long x) const {
        if (x < lo || x > hi) return 0;
        return events[static_cast<std::size_t>(x - lo)];
    }
    bool is_record(long x) const { return event(x) == 0; }
};

SeatProfile seat_decompose(const BallConfig& cfg);

// Capacity-l carrier load over the window [window_begin, window_end).
std::vector<long> run_carrier(const BallConfig& cfg, int capacity);

// W_l(eta, x) from a seat profile (sum of seat occupancies 1..l).
long carrier_load(const SeatProfile& p, int capacity, long x);

// Seat-k occupancy indicator at site x.
int seat_occupancy(const SeatProfile& p, int k, long x);

// Slot coordinates xi_k / s_k for one level k (k >= 1 or kInfCapacity).
// A site is counted when it is a record or an (l,sigma)-seat with l >= k+1.
// Both functions extend analytically into the all-record region outside the
// computed range, so every value is finite for finite-support input.
class SlotCoords {
  public:
    SlotCoords(const SeatProfile& p, int k);

    long xi(long x) const;
    long s(long i) const;
    int level() const { return level_; }
    // Slot index of the interval (s(i), s(i+1)] containing site y.
    long slot_of(long y) const { return xi(y - 1); }

  private:
    long count_upto(long x) const;  // counted sites <= x, 0 at lo-1
    const SeatProfile* prof_;
    int level_;
    std::vector<long> pos_;  // counted sites within [lo, hi]
    long count_anchor_;
};

SlotCoords slot_coords(const SeatProfile& p, int k);

// Sparse zeta coordinates: levels[k][i] = zeta_k(eta, i) > 0.
struct ZetaMatrix {
    Boundary boundary = Boundary::WholeLine;
    std::map<int, std::map<long, long>> levels;

    bool operator==(const ZetaMatrix& o) const { return levels == o.levels; }
    long level_total(int k) const;
    long weighted_total() const;  // sum over k,i of k * zeta_k(i)
    void add(int k, long i, long count);
};

std::map<long, long> zeta_level(const SeatProfile& p, int k);
ZetaMatrix zeta_of(const BallConfig& cfg);
ZetaMatrix zeta_of(const SeatProfile& p);

// Inverse of zeta_of. Inserts solitons largest level first; lands in the
// record-anchored class (half-line: any finite support; whole-line: Omega_r,
// i.e. s_inf(eta,0) = 0).
BallConfig reconstruct_from_zeta(const ZetaMatrix& z, Boundary mode);

// Word from site 0 through the last non-record site ("0" for vacuum).
// Matches the row rendering used for skip / elimination output.
std::string active_word(const BallConfig& cfg);

}  // namespace bbs
