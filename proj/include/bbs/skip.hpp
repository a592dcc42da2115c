#pragma once

#include "bbs/config.hpp"
#include "bbs/seat.hpp"

namespace bbs {

// The k-skip map.
//   Half-line:  Psi_k(eta)(x) = eta(s_k(eta, x)),              x >= 0.
//   Whole-line: Psi_k(eta)(x) = eta(s_k(eta, x + xi_k(eta,0))).
BallConfig skip(const BallConfig& cfg, int k);

}  // namespace bbs
