#pragma once

#include <map>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

// A 0/1 word e_0 .. e_2n with e_0 = 0 whose +-1 partial sums (from e_1) stay
// nonnegative until they return to 0 at the end. Embedded at sites [0, 2n]
// it is exactly the block between the record at 0 and the next record at
// 2n+1, with no interior record.
struct Excursion {
    std::vector<std::uint8_t> word;

    Excursion() : word{0} {}
    explicit Excursion(std::vector<std::uint8_t> w);
    long length() const { return static_cast<long>(word.size()); }
    bool operator==(const Excursion& o) const { return word == o.word; }
    bool operator<(const Excursion& o) const { return word < o.word; }
    std::string str() const;
};

bool is_excursion_word(const std::vector<std::uint8_t>& w);

// Embedding iota at sites [0, |e|-1] (whole-line) and its inverse on Omega_1.
BallConfig iota(const Excursion& e);
Excursion iota_inverse(const BallConfig& cfg);

// All excursions of length <= max_len (odd), lexicographic order.
std::vector<Excursion> enumerate_excursions(long max_len);

// Soliton content: k -> zeta_k(eps) = number of k-solitons in the excursion.
std::map<int, long> zeta_of_excursion(const Excursion& e);

// k-skip map for excursions, iota^{-1} . Psi_k . iota.
Excursion skip_excursion(const Excursion& e, int k);

}  // namespace bbs
