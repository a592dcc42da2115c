#pragma once

#include <map>
#include <vector>

#include "bbs/error.hpp"
#include "bbs/excursion.hpp"

namespace bbs {

// Excursion weight sequences alpha = (alpha_k). Two certified families:
// finite-support vectors and geometric tails alpha_k = a b^{k-1}. Membership
// in the summable class is certified through the q-parameterisation; a
// failed certification raises NotInAError at the point of use.
class AlphaParams {
  public:
    AlphaParams() = default;  // alpha == 0
    static AlphaParams finite(std::vector<double> alpha);
    static AlphaParams geometric(double a, double b);

    double alpha(int k) const;  // k >= 1
    bool is_geometric() const { return geom_; }
    double geom_a() const { return a_; }
    double geom_b() const { return b_; }
    // Levels after which alpha vanishes identically; -1 for a geometric tail.
    int support() const { return geom_ ? -1 : static_cast<int>(coeffs_.size()); }

    AlphaParams theta() const;
    AlphaParams theta_pow(int n) const;
    AlphaParams cutoff(int k) const;

  private:
    bool geom_ = false;
    double a_ = 0, b_ = 0;
    std::vector<double> coeffs_;
};

struct QParams {
    std::vector<double> q;  // q[0] = q_1
    explicit QParams(std::vector<double> q_ = {});
};

QParams q_from_alpha(const AlphaParams& alpha, int count);
AlphaParams alpha_from_q(const QParams& q);
QParams theta_tilde(const QParams& q);
QParams cutoff_q(const QParams& q, int k);

// Product-of-binomials count of excursions with soliton content n.
unsigned long long fermionic_count(const std::map<int, long>& content);

// All soliton contents with sum k*n_k <= max_total (partition enumeration).
std::vector<std::map<int, long>> contents_up_to(long max_total);

// Unnormalised weight prod_k alpha_k^{n_k}.
double nu_weight(const AlphaParams& alpha, const std::map<int, long>& content);

// Geometric-slot product measure phi_q (normalised; no partition function).
double phi_q(const QParams& q, const Excursion& eps);

// Partition function and mean excursion length by truncated content sums
// (everything of length <= max_len), with the closed-form tails reported.
struct PartitionMean {
    double Z = 1;
    double mean_len = 1;
    double z_tail = 0;     // Z_closed - Z_truncated
    double mean_err = 0;   // |mean_closed - mean_truncated|
};
PartitionMean partition_and_mean(const AlphaParams& alpha, long max_len);

double z_alpha_closed(const AlphaParams& alpha);

// Mean excursion length via the continued-fraction product.
double mean_length_cf(const AlphaParams& alpha, int depth = 40, double tol = 1e-10);
// Same quantity via the backward weighted series; independent route.
double eps_bar_series(const AlphaParams& alpha, int depth = 64);
// Preferred deterministic evaluation for targets.
double eps_bar(const AlphaParams& alpha);

double rho_density(const AlphaParams& alpha);  // (eps-1)/(2 eps)

// Two-sided Markov parameterisation.
struct AB {
    double a = 0, b = 0;
};
AB make_ab(double a, double b);  // validates a,b >= 0 and sqrt(a)+sqrt(b) < 1

struct Matrix2 {
    double p[2][2] = {{1, 0}, {1, 0}};
    double operator()(int r, int c) const { return p[r][c]; }
};

Matrix2 markov_matrix(const AB& ab);
AB ab_shift(const AB& ab, int n = 1);
AB p_prime(const Matrix2& m);          // (p01*p10, p00*p11)
double stationary_one(const Matrix2& m);
AlphaParams alpha_of_ab(const AB& ab);
double rho_ab(const AB& ab);           // ball density of the (a,b) chain
double carrier_inf_mean_ab(const AB& ab);

// E[carrier seat k occupancy at a site] = (eps - eps(C_{k-1}))/(2 eps).
double carrier_seat_mean(const AlphaParams& alpha, int k);
// E[capacity-l carrier load at a site]; capacity may be kInfCapacity.
double carrier_mean(const AlphaParams& alpha, int capacity);
// E[eta(0) Psi_j(eta)(0)] and E[eta_down_1(1) Psi_j(eta)(0)] under the glued
// invariant measure, by the one-step skip recursion.
double joint_eta_skip_mean(const AlphaParams& alpha, int j);
double joint_seatdown_skip_mean(const AlphaParams& alpha, int j);
// E[W_k(0) W_l(0)] correlation closed form, k < l.
double cor_kl_closed(const AlphaParams& alpha, int k, int l);

// Coefficients of the skip-map expectation identity:
// E_mu[f(Psi_k eta)] = c_main E_{mu_k}[f] + c_seat E_{mu_k}[(sum_s eta^s_1(1)) f],
// where mu_k is the measure with parameters theta^k alpha.
struct SkipStatCoeffs {
    double c_main = 1, c_seat = 0;
};
SkipStatCoeffs skip_stat_coeffs(const AlphaParams& alpha, int k);

}  // namespace bbs
