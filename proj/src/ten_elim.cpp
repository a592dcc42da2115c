#include "bbs/ten_elim.hpp"

#include <vector>

namespace bbs {

namespace {

std::vector<std::uint8_t> half_line_word(const BallConfig& cfg) {
    for (long x = cfg.window_begin(); x <= std::min(cfg.window_end() - 1, 0L); ++x)
        if (cfg.at(x) != 0)
            throw DomainError("10-elimination needs zeros at every site x <= 0");
    long end = cfg.is_vacuum() ? 1 : cfg.last_ball() + 3;
    std::vector<std::uint8_t> w;
    w.reserve(static_cast<std::size_t>(end));
    for (long x = 0; x < end; ++x) w.push_back(static_cast<std::uint8_t>(cfg.at(x)));
    return w;
}

}  // namespace

std::pair<BallConfig, std::map<long, long>> eliminate_once(const BallConfig& cfg) {
    std::vector<std::uint8_t> w = half_line_word(cfg);
    long n = static_cast<long>(w.size());
    std::vector<std::uint8_t> keep(w.size(), 1);
    std::map<long, long> rig;
    long removed = 0;
    for (long j = 0; j + 1 < n;) {
        if (w[j] == 1 && w[j + 1] == 0) {
            long p = j;
            long m = 0;
            while (j + 1 < n && w[j] == 1 && w[j + 1] == 0) {
                keep[j] = keep[j + 1] = 0;
                ++m;
                j += 2;
            }
            // X at p-1 survives (p >= 1 since w[0] = 0); Y at p+2m (zero tail
            // keeps it in range for blocks ending at the last ball).
            int x_val = w[p - 1];
            int y_val = p + 2 * m < n ? w[p + 2 * m] : 0;
            long value = (x_val == 1 && y_val == 0) ? m - 1 : m;
            if (value >= 1) rig[(p - 1) - removed] = value;
            removed += 2 * m;
        } else {
            ++j;
        }
    }
    std::vector<std::uint8_t> out;
    out.reserve(w.size());
    for (long j = 0; j < n; ++j)
        if (keep[j]) out.push_back(w[j]);
    return {BallConfig(0, std::move(out), Boundary::HalfLine), std::move(rig)};
}

std::pair<BallConfig, Rigging> eliminate_k(const BallConfig& cfg, int k) {
    if (k < 1) throw DomainError("elimination depth k must be >= 1");
    Rigging rig;
    BallConfig cur = cfg;
    for (int level = 1; level <= k; ++level) {
        auto [next, row] = eliminate_once(cur);
        if (!row.empty()) rig.levels[level] = std::move(row);
        cur = std::move(next);
    }
    return {std::move(cur), std::move(rig)};
}

}  // namespace bbs
