// SPDX-License-Identifier: Apache-2.0
//
// Closed-form covertness quantities: warden detection statistics, detection
// error probability, optimal threshold, covert power budget, the log-MGF
// proxy of the warden received power and Bob's achievable rate.
#ifndef FDRIS_COVERT_HPP
#define FDRIS_COVERT_HPP

#include <vector>

#include "fdris/fdris_model.hpp"
#include "fdris/geometry.hpp"
#include "fdris/types.hpp"

namespace fdris {

struct CovertConfig {
    double noise_uncertainty = 2.0;   // multiplicative bound on warden noise, > 1
    double covert_requirement = 0.2;  // in (0,1); optimal DEP must stay >= 1 - this
    double penalty_exponent = 100.0;  // log-MGF exponent, >= 0
    std::vector<double> warden_noise_w; // nominal warden noise powers, W
    double bob_noise_w = 0.0;
    double tx_power_w = 0.0;

    void validate() const;
    int wardens() const { return int(warden_noise_w.size()); }
};

// Statistics of the complex amplitude received by one warden: mean over the
// NLoS ensemble, its variance, and the power realized by the stored draw.
struct WardenStats {
    cplx mean;              // mu_k
    double var = 0.0;       // sigma_tilde^2_k, W
    double power_det = 0.0; // received power for the concrete NLoS draw, W
};

// Detection error probability at threshold_w for received covert power
// omega_w. Threshold must lie in the assumed range
// [noise/varsigma, varsigma*noise].
double dep(double threshold_w, double omega_w, const CovertConfig& cfg, int k);

// min{omega + noise/varsigma, varsigma*noise}; minimizes dep over the range.
double optimal_threshold(double omega_w, const CovertConfig& cfg, int k);

// DEP at the optimal threshold.
double optimal_dep(double omega_w, const CovertConfig& cfg, int k);

// Largest omega keeping the optimal DEP >= 1 - covert_requirement:
// (varsigma^{2 xi} - 1) * noise / varsigma.
double covert_power_budget(const CovertConfig& cfg, int k);

WardenStats warden_stats(const cvec& reflect, const rvec& freqs_hz,
                         const ChannelRealization& chan, const RisGeometry& geom,
                         const CovertConfig& cfg, int k);

// (1/psi) ln E[e^{psi |X|^2}] for X ~ CN(mean, var). psi == 0 returns the
// limit |mean|^2 + var. Requires psi*var < 1.
double log_mgf(const WardenStats& stats, double penalty_exponent);

struct CovertRhs {
    double h_k = 0.0;   // raw reformulated budget, W (may be negative)
    double rhs_w = 0.0; // constraint right-hand side for |mu_k|^2, W
    double cap = 0.0;   // rhs normalized by tx_power * path_amp^2 * beta_los^2
};

// Reformulated covert constraint |mu_k|^2 <= rhs. When h_k <= 0 the RHS is
// the scaled epsilon floor standing in for |mu_k|^2 == 0.
CovertRhs covert_rhs(const WardenStats& stats, const CovertConfig& cfg,
                     double warden_path_amp, double beta_los, int k);

// log2(1 + tx_power |h_rb^H Diag(reflect) reflect0 h_ar|^2 / bob_noise)
double rate_bob(const cvec& reflect, const rvec& freqs_hz,
                const ChannelRealization& chan, const RisGeometry& geom,
                const CovertConfig& cfg);

// From-scratch audit of the covert constraint at a solution; returns the
// worst violation max_k(|mu_k|^2 - rhs_k) in W (negative when feasible).
double covert_violation(const cvec& reflect, const rvec& freqs_hz,
                        const ChannelRealization& chan, const RisGeometry& geom,
                        const CovertConfig& cfg);

} // namespace fdris

#endif
