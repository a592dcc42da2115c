#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/measures.hpp"
#include "bbs/rng.hpp"

namespace bbs {

// Sampling models for the invariant measures: i.i.d. excursions glued around
// a size-biased, uniformly shifted central excursion, or the two-sided
// stationary Markov chain (exact for geometric alpha).
struct GlueSpec {
    AlphaParams alpha;
    int per_side = 128;
    long cap = 31;
    double max_bias = 1e-9;
    // true: size-bias the central excursion and shift the origin uniformly
    // inside it (the shift-stationary measure); false: keep the record
    // anchored at the origin (the conditioned law given s_inf(eta,0) = 0).
    bool palm = true;
};

struct MarkovSpec {
    AB ab;
    long length = 100000;
};

struct SampleSpec {
    std::variant<GlueSpec, MarkovSpec> model;
    std::uint64_t seed = 1;
};

// Exact sampler for nu_alpha restricted to excursions of length <= cap.
// Sampling is two-stage: soliton content by truncated content weights, then
// a uniform member of the content class by uniform slot compositions.
class ExcursionSampler {
  public:
    ExcursionSampler(const AlphaParams& alpha, long cap, double max_bias);
    double bias() const { return bias_; }
    Excursion sample(Rng& rng) const;
    Excursion sample_size_biased(Rng& rng) const;

  private:
    Excursion build(const std::map<int, long>& content, Rng& rng) const;
    std::vector<std::map<int, long>> contents_;
    std::vector<double> cum_, cum_sb_;
    double bias_ = 0;
};

struct Window {
    BallConfig cfg;
    long int_lo = 0, int_hi = -1;  // inclusive measurement interior
};

// Stream index makes draws independent and reproducible: (seed, stream)
// fully determines the window.
Window sample_window(const SampleSpec& spec, std::uint64_t stream);
BallConfig sample_stationary(const SampleSpec& spec, std::uint64_t stream = 0);

// Named observables:
//   density | eta0 | seat_event:K:up|down | carrier_seat:K | carrier:L
//   carrier:inf | pattern:BITS | product:K:L | seat1sum:OBS | skip:K:OBS
struct Observable {
    enum class Kind { Eta, Pattern, SeatEvent, CarrierSeat, Carrier, Product, Seat1Sum, Skip };
    Kind kind = Kind::Eta;
    int k = 0;
    int l = 0;
    bool up = true;
    std::vector<std::uint8_t> pattern;
    std::shared_ptr<Observable> inner;
};

Observable parse_observable(const std::string& name);
std::string observable_name(const Observable& obs);

// Values of the observable at window sites lo..hi (site-stationary reading).
std::vector<double> site_values(const BallConfig& cfg, const Observable& obs, long lo, long hi);
double window_average(const Window& w, const Observable& obs);

struct EstimateReport {
    std::string observable;
    double estimate = 0;
    double stderr_ = 0;
    long n = 0;  // independent windows
    std::optional<double> target;
    std::optional<double> z;
};

EstimateReport estimate_functional(const SampleSpec& spec, const std::string& observable,
                                   long n_windows, int workers = 1,
                                   std::optional<double> target = std::nullopt);

// Per-window values of an arbitrary functional, evaluated on stream-indexed
// windows (deterministic for any worker count).
std::vector<double> per_window_values(const SampleSpec& spec, long n_windows, int workers,
                                      const std::function<double(const Window&)>& fn);

struct TransitionCheck {
    long from, to;
    double empirical, target, z;
    long n_from;
};

struct SkipMarkovReport {
    bool pass = true;
    std::vector<TransitionCheck> entries;
    bool degenerate_all_zero = false;  // a_k = 0 case
};

// Thm: the record-anchored (a,b) chain, skipped k times, is the record-
// anchored (a_k, b_k) chain. Transition frequencies vs P(a_k,b_k), 4 sigma.
SkipMarkovReport verify_skip_markov(const AB& ab, int k, long chain_len, std::uint64_t seed,
                                    double sigmas = 4.0);

struct PairedCheck {
    std::string label;
    double mean_diff, stderr_, z;
    bool pass;
};

// Pattern frequencies (lengths <= 3) invariant under T and under shift.
std::vector<PairedCheck> verify_invariance(const SampleSpec& spec, long n_windows, int workers,
                                           double sigmas = 4.0);

struct SkipStatCheck {
    std::string label;
    double lhs, rhs, stderr_, z;
    bool pass;
};

// Expectation identity for f(Psi_k eta) under the glued invariant measure,
// plus the carrier-seat / correlation closed forms.
std::vector<SkipStatCheck> verify_skip_stat(const AlphaParams& alpha, int k,
                                            const std::string& observable, long n_windows,
                                            std::uint64_t seed, int workers, double sigmas = 4.0);

}  // namespace bbs
