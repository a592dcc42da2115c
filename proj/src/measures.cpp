#include "bbs/measures.hpp"

#include "bbs/seat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bbs {

namespace {

void check_weight(double v) {
    if (!(v >= 0.0) || v >= 1.0) throw DomainError("alpha weights must lie in [0,1)");
}

}  // namespace

AlphaParams AlphaParams::finite(std::vector<double> alpha) {
    AlphaParams p;
    for (double v : alpha) check_weight(v);
    while (!alpha.empty() && alpha.back() == 0.0) alpha.pop_back();
    p.coeffs_ = std::move(alpha);
    return p;
}

AlphaParams AlphaParams::geometric(double a, double b) {
    check_weight(a);
    check_weight(b);
    if (a == 0.0 || b == 0.0) return finite({a});
    AlphaParams p;
    p.geom_ = true;
    p.a_ = a;
    p.b_ = b;
    return p;
}

double AlphaParams::alpha(int k) const {
    if (k < 1) throw DomainError("alpha index must be >= 1");
    if (geom_) return a_ * std::pow(b_, k - 1);
    if (k > static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(k - 1)];
}

AlphaParams AlphaParams::theta() const {
    double a1 = alpha(1);
    if (a1 >= 1.0) throw DomainError("theta undefined at alpha_1 = 1");
    if (geom_) {
        double d = (1.0 - a1) * (1.0 - a1);
        return geometric(a_ * b_ / d, b_ / d);
    }
    std::vector<double> out;
    double denom = 1.0;
    double d = (1.0 - a1) * (1.0 - a1);
    for (int k = 1; k + 1 <= support(); ++k) {
        denom *= d;
        out.push_back(alpha(k + 1) / denom);
    }
    return finite(std::move(out));
}

AlphaParams AlphaParams::theta_pow(int n) const {
    if (n < 0) throw DomainError("theta power must be >= 0");
    AlphaParams p = *this;
    for (int i = 0; i < n; ++i) p = p.theta();
    return p;
}

AlphaParams AlphaParams::cutoff(int k) const {
    if (k < 0) throw DomainError("cutoff level must be >= 0");
    std::vector<double> out;
    for (int j = 1; j <= k; ++j) out.push_back(alpha(j));
    return finite(std::move(out));
}

QParams::QParams(std::vector<double> q_) : q(std::move(q_)) {
    for (double v : q)
        if (!(v >= 0.0) || v >= 1.0) throw DomainError("q parameters must lie in [0,1)");
}

QParams q_from_alpha(const AlphaParams& alpha, int count) {
    std::vector<double> q;
    double pk = 1.0;  // prod_{l<k} (1-q_l)^{2(k-l)}
    double sk = 1.0;  // prod_{l<=k} (1-q_l)
    int limit = alpha.support() >= 0 ? std::min(count, alpha.support()) : count;
    for (int k = 1; k <= limit; ++k) {
        double qk = alpha.alpha(k) / pk;
        if (!(qk >= 0.0) || qk >= 1.0)
            throw NotInAError("alpha is not certified summable: q_" + std::to_string(k) +
                              " escapes [0,1)");
        q.push_back(qk);
        sk *= 1.0 - qk;
        pk *= sk * sk;
        if (pk <= 0.0) throw NotInAError("alpha is not certified summable: vanishing normaliser");
    }
    return QParams(std::move(q));
}

AlphaParams alpha_from_q(const QParams& q) {
    std::vector<double> out;
    double pk = 1.0, sk = 1.0;
    for (std::size_t i = 0; i < q.q.size(); ++i) {
        out.push_back(q.q[i] * pk);
        sk *= 1.0 - q.q[i];
        pk *= sk * sk;
    }
    return AlphaParams::finite(std::move(out));
}

QParams theta_tilde(const QParams& q) {
    if (q.q.empty()) return QParams(std::vector<double>{});
    return QParams(std::vector<double>(q.q.begin() + 1, q.q.end()));
}

QParams cutoff_q(const QParams& q, int k) {
    if (k < 0) throw DomainError("cutoff level must be >= 0");
    std::vector<double> out(q.q.begin(),
                            q.q.begin() + std::min<std::size_t>(q.q.size(), static_cast<std::size_t>(k)));
    return QParams(std::move(out));
}

namespace {

unsigned long long binom_u64(long n, long r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    unsigned long long acc = 1;
    for (long i = 1; i <= r; ++i) {
        unsigned long long num = static_cast<unsigned long long>(n - r + i);
        // exact: multiply then divide by i, guarding overflow
        if (acc > ~0ULL / num) throw DomainError("fermionic count overflows 64 bits");
        acc = acc * num / static_cast<unsigned long long>(i);
    }
    return acc;
}

}  // namespace

unsigned long long fermionic_count(const std::map<int, long>& content) {
    for (auto& [k, n] : content) {
        if (k < 1) throw DomainError("content level must be >= 1");
        if (n < 0) throw DomainError("content must be nonnegative");
    }
    unsigned long long total = 1;
    for (auto& [k, nk] : content) {
        if (nk == 0) continue;
        long slots = 0;
        for (auto& [l, nl] : content)
            if (l > k) slots += (l - k) * nl;
        unsigned long long f = binom_u64(2 * slots + nk, nk);
        if (f != 0 && total > ~0ULL / f) throw DomainError("fermionic count overflows 64 bits");
        total *= f;
    }
    return total;
}

double nu_weight(const AlphaParams& alpha, const std::map<int, long>& content) {
    double w = 1.0;
    for (auto& [k, n] : content) {
        if (n < 0) throw DomainError("content must be nonnegative");
        w *= std::pow(alpha.alpha(k), static_cast<double>(n));
    }
    return w;
}

double phi_q(const QParams& q, const Excursion& eps) {
    auto content = zeta_of_excursion(eps);
    int top = static_cast<int>(q.q.size());
    if (!content.empty()) top = std::max(top, content.rbegin()->first);
    double w = 1.0;
    for (int k = 1; k <= top; ++k) {
        double qk = k <= static_cast<int>(q.q.size()) ? q.q[static_cast<std::size_t>(k - 1)] : 0.0;
        long nk = 0, slot_excess = 0;
        for (auto& [l, n] : content) {
            if (l == k) nk = n;
            if (l > k) slot_excess += (l - k) * n;
        }
        if (nk > 0 && qk == 0.0) return 0.0;
        w *= std::pow(qk, static_cast<double>(nk)) *
             std::pow(1.0 - qk, static_cast<double>(1 + 2 * slot_excess));
    }
    return w;
}

namespace {

// Enumerate soliton contents with total weight sum k*n_k == m, parts listed
// in nonincreasing order so each content appears once.
void for_each_content(long m, long max_part, std::map<int, long>& acc,
                      const std::function<void(const std::map<int, long>&)>& fn) {
    if (m == 0) {
        fn(acc);
        return;
    }
    for (long k = std::min(m, max_part); k >= 1; --k) {
        acc[static_cast<int>(k)] += 1;
        for_each_content(m - k, k, acc, fn);
        acc[static_cast<int>(k)] -= 1;
        if (acc[static_cast<int>(k)] == 0) acc.erase(static_cast<int>(k));
    }
}

int q_depth_for(const AlphaParams& alpha, int depth) {
    return alpha.support() >= 0 ? alpha.support() : depth;
}

}  // namespace

std::vector<std::map<int, long>> contents_up_to(long max_total) {
    std::vector<std::map<int, long>> out;
    std::map<int, long> acc;
    for (long m = 0; m <= max_total; ++m)
        for_each_content(m, m, acc, [&](const std::map<int, long>& c) { out.push_back(c); });
    return out;
}

PartitionMean partition_and_mean(const AlphaParams& alpha, long max_len) {
    if (max_len < 1 || max_len % 2 == 0)
        throw DomainError("length cap must be a positive odd integer");
    long M = (max_len - 1) / 2;
    double Z = 0.0, S = 0.0;
    std::map<int, long> acc;
    for (long m = 0; m <= M; ++m) {
        for_each_content(m, m, acc, [&](const std::map<int, long>& content) {
            double w = static_cast<double>(fermionic_count(content)) * nu_weight(alpha, content);
            Z += w;
            S += static_cast<double>(1 + 2 * m) * w;
        });
    }
    PartitionMean pm;
    pm.Z = Z;
    pm.mean_len = S / Z;
    pm.z_tail = std::max(z_alpha_closed(alpha) - Z, 0.0);
    pm.mean_err = std::abs(eps_bar(alpha) - pm.mean_len);
    return pm;
}

double z_alpha_closed(const AlphaParams& alpha) {
    QParams q = q_from_alpha(alpha, 512);
    double z = 1.0;
    for (double qk : q.q) z /= 1.0 - qk;
    return z;
}

double mean_length_cf(const AlphaParams& alpha, int depth, double tol) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    int qd = q_depth_for(alpha, depth + 2);
    QParams q = q_from_alpha(alpha, qd);
    auto q_at = [&](int k) {
        return k <= static_cast<int>(q.q.size()) ? q.q[static_cast<std::size_t>(k - 1)] : 0.0;
    };
    // x_l = F(theta^l alpha) by backward recurrence seeded with 1
    std::vector<double> x(static_cast<std::size_t>(depth) + 1, 1.0);
    for (int j = depth - 1; j >= 0; --j)
        x[static_cast<std::size_t>(j)] =
            2.0 / (1.0 - q_at(j + 1)) - 1.0 / x[static_cast<std::size_t>(j + 1)];
    double prod = 1.0;
    for (int l = 0; l < depth; ++l) prod *= x[static_cast<std::size_t>(l)];
    // the product has converged when the trailing factors are flat at 1
    if (std::abs(x[static_cast<std::size_t>(depth - 1)] - 1.0) > tol)
        throw ConvergenceError("continued-fraction product did not flatten within depth");
    return prod;
}

double eps_bar_series(const AlphaParams& alpha, int depth) {
    int qd = q_depth_for(alpha, depth);
    QParams q = q_from_alpha(alpha, qd);
    int D = static_cast<int>(q.q.size());
    std::vector<double> e(static_cast<std::size_t>(D) + 1, 1.0);
    for (int l = D - 1; l >= 0; --l) {
        double s = 0.0;
        for (int h = l + 1; h <= D; ++h) {
            double qh = q.q[static_cast<std::size_t>(h - 1)];
            s += (h - l) * qh * e[static_cast<std::size_t>(h)] / (1.0 - qh);
        }
        e[static_cast<std::size_t>(l)] = 1.0 + 2.0 * s;
    }
    return e[0];
}

double eps_bar(const AlphaParams& alpha) { return mean_length_cf(alpha, 96, 1e-9); }

double rho_density(const AlphaParams& alpha) {
    double e = eps_bar(alpha);
    return (e - 1.0) / (2.0 * e);
}

AB make_ab(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0) || std::sqrt(a) + std::sqrt(b) >= 1.0)
        throw DomainError("(a,b) must satisfy a,b >= 0 and sqrt(a)+sqrt(b) < 1");
    return AB{a, b};
}

Matrix2 markov_matrix(const AB& ab) {
    double a = ab.a, b = ab.b;
    double disc = (1.0 - (a + b)) * (1.0 - (a + b)) - 4.0 * a * b;
    if (disc < 0.0) throw DomainError("(a,b) outside the Markov-representable region");
    double root = std::sqrt(disc);
    Matrix2 m;
    m.p[0][0] = (1.0 - a + b + root) / 2.0;
    m.p[0][1] = (1.0 + a - b - root) / 2.0;
    m.p[1][0] = (1.0 + a - b + root) / 2.0;
    m.p[1][1] = (1.0 - a + b - root) / 2.0;
    return m;
}

AB ab_shift(const AB& ab, int n) {
    if (n < 0) throw DomainError("shift count must be >= 0");
    AB cur = ab;
    for (int i = 0; i < n; ++i) {
        double d = (1.0 - cur.a) * (1.0 - cur.a);
        cur = AB{cur.a * cur.b / d, cur.b / d};
    }
    return cur;
}

AB p_prime(const Matrix2& m) { return AB{m(0, 1) * m(1, 0), m(0, 0) * m(1, 1)}; }

double stationary_one(const Matrix2& m) { return m(0, 1) / (m(0, 1) + m(1, 0)); }

AlphaParams alpha_of_ab(const AB& ab) { return AlphaParams::geometric(ab.a, ab.b); }

double rho_ab(const AB& ab) {
    double t = 1.0 + ab.a - ab.b;
    return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * ab.a / (t * t)));
}

double carrier_inf_mean_ab(const AB& ab) {
    double t = 1.0 - ab.a + ab.b;
    return rho_ab(ab) / std::sqrt(1.0 - 4.0 * ab.b / (t * t));
}

double carrier_seat_mean(const AlphaParams& alpha, int k) {
    if (k < 1) throw DomainError("seat number must be >= 1");
    double e = eps_bar(alpha);
    return (e - eps_bar(alpha.cutoff(k - 1))) / (2.0 * e);
}

double carrier_mean(const AlphaParams& alpha, int capacity) {
    if (capacity < 1) throw DomainError("capacity must be >= 1");
    double e = eps_bar(alpha);
    double total = 0.0;
    int limit = capacity == kInfCapacity ? 512 : capacity;
    for (int k = 1; k <= limit; ++k) {
        double term = (e - eps_bar(alpha.cutoff(k - 1))) / (2.0 * e);
        total += term;
        if (capacity == kInfCapacity && term < 1e-15 && k > 4) break;
    }
    return total;
}

namespace {

// Joint expectations of a site value with a skipped site value, obtained by
// composing the one-step skip identities:
//   eps(a) E_a[eta(0) f(Psi_k eta)]      = t F' + A' + Bup'
//   eps(a) E_a[eta^s_1(1) f(Psi_k eta)]  = t F' + Bs'
//   eps(a) E_a[f(Psi_k eta)]             = (2t+1) F' + Bup' + Bdown'
// with t = alpha_1/(1-alpha_1) and primes the same quantities one theta-shift
// deeper. Base case f = eta(0): A = F = (eps-1)/2, Bup = 0 (a ball at the
// origin keeps seat 1 occupied through site 1), Bdown = (eps - eps theta)/2
// (a seat-1 drop at site 1 is exactly a 10-descent at the origin).
struct JointValues {
    double A, Bup, Bdown, F;
};

JointValues joint_recursion(const AlphaParams& alpha, int steps) {
    std::vector<double> eps(static_cast<std::size_t>(steps) + 2);
    for (int j = 0; j <= steps + 1; ++j) eps[static_cast<std::size_t>(j)] = eps_bar(alpha.theta_pow(j));
    QParams q = q_from_alpha(alpha, steps + 1);
    auto q_at = [&](int j) {
        return j <= static_cast<int>(q.q.size()) ? q.q[static_cast<std::size_t>(j - 1)] : 0.0;
    };
    JointValues v;
    v.A = v.F = (eps[static_cast<std::size_t>(steps)] - 1.0) / 2.0;
    v.Bup = 0.0;
    v.Bdown = (eps[static_cast<std::size_t>(steps)] - eps[static_cast<std::size_t>(steps + 1)]) / 2.0;
    for (int j = steps - 1; j >= 0; --j) {
        double qj = q_at(j + 1);
        double t = qj / (1.0 - qj);
        JointValues n;
        n.A = t * v.F + v.A + v.Bup;
        n.Bup = t * v.F + v.Bup;
        n.Bdown = t * v.F + v.Bdown;
        n.F = (2.0 * t + 1.0) * v.F + v.Bup + v.Bdown;
        v = n;
    }
    return v;
}

}  // namespace

double joint_eta_skip_mean(const AlphaParams& alpha, int j) {
    if (j < 1) throw DomainError("skip distance must be >= 1");
    return joint_recursion(alpha, j).A / eps_bar(alpha);
}

double joint_seatdown_skip_mean(const AlphaParams& alpha, int j) {
    if (j < 1) throw DomainError("skip distance must be >= 1");
    return joint_recursion(alpha, j).Bdown / eps_bar(alpha);
}

double cor_kl_closed(const AlphaParams& alpha, int k, int l) {
    if (k < 1 || l <= k) throw DomainError("correlation needs 1 <= k < l");
    if (k == 1) return joint_eta_skip_mean(alpha, l - 1);
    SkipStatCoeffs c = skip_stat_coeffs(alpha, k - 1);
    AlphaParams sh = alpha.theta_pow(k - 1);
    return c.c_main * joint_eta_skip_mean(sh, l - k) +
           c.c_seat * joint_seatdown_skip_mean(sh, l - k);
}

SkipStatCoeffs skip_stat_coeffs(const AlphaParams& alpha, int k) {
    if (k < 1) throw DomainError("skip level must be >= 1");
    double e = eps_bar(alpha);
    double e_k = eps_bar(alpha.theta_pow(k));
    double e_k1 = eps_bar(alpha.theta_pow(k + 1));
    double e_cut = eps_bar(alpha.cutoff(k));
    if (std::abs(e_k - e_k1) < 1e-14 * e_k)
        throw DegenerateError("alpha has no content above level " + std::to_string(k) +
                              "; the seat coefficient is 0/0");
    SkipStatCoeffs c;
    c.c_main = e_k * e_cut / e;
    c.c_seat = e_k * (e - e_k * e_cut) / (e * (e_k - e_k1));
    return c;
}

}  // namespace bbs
