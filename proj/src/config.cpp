#include "bbs/config.hpp"

#include <algorithm>

#include "bbs/seat.hpp"

namespace bbs {

namespace {

void check_half_line(long origin, const std::vector<std::uint8_t>& bits) {
    long end = origin + static_cast<long>(bits.size());
    for (long x = origin; x < std::min(1L, end); ++x) {
        if (bits[static_cast<std::size_t>(x - origin)] != 0)
            throw ModeError("half-line configuration has a ball at site " +
                            std::to_string(x) + " <= 0");
    }
}

}  // namespace

BallConfig::BallConfig(long origin_, std::vector<std::uint8_t> bits_, Boundary boundary_)
    : origin(origin_), bits(std::move(bits_)), boundary(boundary_) {
    for (std::uint8_t b : bits)
        if (b > 1) throw ParseError("bits must be 0/1");
    if (boundary == Boundary::HalfLine) check_half_line(origin, bits);
}

long BallConfig::ball_count() const {
    long n = 0;
    for (std::uint8_t b : bits) n += b;
    return n;
}

long BallConfig::first_ball() const {
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) return origin + static_cast<long>(i);
    throw DomainError("first_ball on vacuum configuration");
}

long BallConfig::last_ball() const {
    for (std::size_t i = bits.size(); i-- > 0;)
        if (bits[i]) return origin + static_cast<long>(i);
    throw DomainError("last_ball on vacuum configuration");
}

BallConfig BallConfig::canonical() const {
    if (is_vacuum()) {
        long o = boundary == Boundary::HalfLine ? std::max(origin, 0L) : 0;
        return BallConfig(o, {0}, boundary);
    }
    long lo = first_ball(), hi = last_ball();
    std::vector<std::uint8_t> w;
    w.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long x = lo; x <= hi; ++x) w.push_back(static_cast<std::uint8_t>(at(x)));
    return BallConfig(lo, std::move(w), boundary);
}

bool same_configuration(const BallConfig& a, const BallConfig& b) {
    if (a.boundary != b.boundary) return false;
    long lo = std::min(a.window_begin(), b.window_begin());
    long hi = std::max(a.window_end(), b.window_end());
    for (long x = lo; x < hi; ++x)
        if (a.at(x) != b.at(x)) return false;
    return true;
}

BallConfig parse_config(const std::string& text) {
    long origin = 0;
    std::size_t pos = 0;
    if (text.rfind("#origin=", 0) == 0) {
        std::size_t eol = text.find('\n');
        if (eol == std::string::npos) throw ParseError("missing bit line after #origin header");
        try {
            origin = std::stol(text.substr(8, eol - 8));
        } catch (const std::exception&) {
            throw ParseError("bad #origin header");
        }
        pos = eol + 1;
    }
    std::vector<std::uint8_t> bits;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '\n' || c == '\r') {
            if (bits.empty()) continue;
            break;
        }
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw ParseError(std::string("non-binary character '") + c + "' in configuration");
    }
    if (bits.empty()) throw ParseError("empty configuration");
    return BallConfig(origin, std::move(bits), Boundary::WholeLine);
}

std::string render_config(const BallConfig& cfg) {
    BallConfig c = cfg.canonical();
    std::string out;
    if (c.origin != 0) out += "#origin=" + std::to_string(c.origin) + "\n";
    for (std::uint8_t b : c.bits) out += static_cast<char>('0' + b);
    out += '\n';
    return out;
}

SpaceClass classify(const BallConfig& cfg) {
    SpaceClass cls;
    cls.omega_fin = true;   // finite window
    cls.omega_star = true;  // finite support: every s_inf(eta,i) is finite
    if (cfg.boundary == Boundary::HalfLine) {
        // Half-line Omega_r asks for infinitely many records, automatic here.
        cls.omega_r = true;
        cls.omega_1 = false;
        return cls;
    }
    SeatProfile p = seat_decompose(cfg);
    cls.omega_r = p.anchor == 0;
    if (cfg.is_vacuum()) {
        cls.omega_1 = true;
    } else {
        long s1 = slot_coords(p, kInfCapacity).s(1);
        cls.omega_1 = cls.omega_r && cfg.first_ball() >= 0 && cfg.last_ball() < s1;
    }
    return cls;
}

BallConfig shift(const BallConfig& cfg, long y) {
    if (cfg.boundary != Boundary::WholeLine)
        throw ModeError("shift is defined on whole-line configurations only");
    BallConfig out = cfg;
    out.origin -= y;
    return out;
}

}  // namespace bbs
