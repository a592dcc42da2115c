#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbs/error.hpp"

namespace bbs {

enum class Boundary { HalfLine, WholeLine };

// A 0/1 ball configuration on a finite window of absolute sites.
// Sites outside the window are implicitly 0 on both sides. Half-line
// configurations additionally require zeros at every site x <= 0, so the
// carrier sweep may always be started with an empty carrier at the left
// edge of the window.
struct BallConfig {
    long origin = 0;
    std::vector<std::uint8_t> bits;
    Boundary boundary = Boundary::WholeLine;

    BallConfig() = default;
    BallConfig(long origin_, std::vector<std::uint8_t> bits_,
               Boundary boundary_ = Boundary::WholeLine);

    int at(long x) const {
        if (x < origin || x >= origin + static_cast<long>(bits.size())) return 0;
        return bits[static_cast<std::size_t>(x - origin)];
    }
    long window_begin() const { return origin; }
    long window_end() const { return origin + static_cast<long>(bits.size()); }
    long ball_count() const;
    bool is_vacuum() const { return ball_count() == 0; }

    // First/last occupied site; only valid when not vacuum.
    long first_ball() const;
    long last_ball() const;

    // Window trimmed to the support (vacuum canonicalizes to a single 0 at
    // the origin for HalfLine, at site 0 for WholeLine).
    BallConfig canonical() const;
};

bool same_configuration(const BallConfig& a, const BallConfig& b);

// Membership flags for the state spaces used throughout.
struct SpaceClass {
    bool omega_fin = false;   // finitely many balls
    bool omega_r = false;     // record-anchored: s_inf(eta,0)=0, all s_inf finite
    bool omega_star = false;  // all |s_inf(eta,i)| finite
    bool omega_1 = false;     // single excursion starting at site 0
};

// Config file format: optional "#origin=<int>" header line, then one ASCII
// 0/1 line. Default origin 0, default boundary WholeLine.
BallConfig parse_config(const std::string& text);
std::string render_config(const BallConfig& cfg);

SpaceClass classify(const BallConfig& cfg);

// Spatial shift: result(x) = cfg(x + y). WholeLine only.
BallConfig shift(const BallConfig& cfg, long y);

}  // namespace bbs
