#include "bbs/skip.hpp"

namespace bbs {

BallConfig skip(const BallConfig& cfg, int k) {
    if (k < 1 || k == kInfCapacity) throw DomainError("skip level k must be a finite k >= 1");
    SeatProfile p = seat_decompose(cfg);
    SlotCoords sc(p, k);
    if (cfg.boundary == Boundary::HalfLine) {
        long jmax = sc.xi(p.hi);
        std::vector<std::uint8_t> out;
        out.reserve(static_cast<std::size_t>(jmax + 1));
        for (long j = 0; j <= jmax; ++j)
            out.push_back(static_cast<std::uint8_t>(cfg.at(sc.s(j))));
        return BallConfig(0, std::move(out), Boundary::HalfLine);
    }
    long base = sc.xi(0);
    long jlo = sc.xi(p.lo - 1) - base;
    long jhi = sc.xi(p.hi) - base;
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(jhi - jlo + 1));
    for (long j = jlo; j <= jhi; ++j)
        out.push_back(static_cast<std::uint8_t>(cfg.at(sc.s(j + base))));
    return BallConfig(jlo, std::move(out), Boundary::WholeLine);
}

}  // namespace bbs
