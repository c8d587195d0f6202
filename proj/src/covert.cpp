// SPDX-License-Identifier: Apache-2.0
#include "fdris/covert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdris {

namespace {

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

void check_warden_index(const CovertConfig& cfg, int k)
{
    if (k < 0 || k >= cfg.wardens())
        throw std::out_of_range("warden index out of range");
}

} // namespace

void CovertConfig::validate() const
{
    if (!(noise_uncertainty > 1.0))
        throw std::invalid_argument("noise uncertainty must be > 1");
    if (!(covert_requirement > 0.0) || !(covert_requirement < 1.0))
        throw std::invalid_argument("covert requirement must lie in (0,1)");
    if (penalty_exponent < 0.0)
        throw std::invalid_argument("penalty exponent must be >= 0");
    if (warden_noise_w.empty())
        throw std::invalid_argument("at least one warden noise power required");
    for (double s : warden_noise_w)
        if (!(s > 0.0))
            throw std::invalid_argument("warden noise powers must be > 0");
    if (!(bob_noise_w > 0.0))
        throw std::invalid_argument("receiver noise power must be > 0");
    if (!(tx_power_w > 0.0))
        throw std::invalid_argument("transmit power must be > 0");
}

double dep(double threshold_w, double omega_w, const CovertConfig& cfg, int k)
{
    check_warden_index(cfg, k);
    const double vs = cfg.noise_uncertainty;
    const double noise = cfg.warden_noise_w[k];
    if (omega_w < 0.0)
        throw std::invalid_argument("dep: received power must be >= 0");
    const double lo = noise / vs;
    const double hi = vs * noise;
    const double slack = 1e-12 * noise;
    if (threshold_w < lo - slack || threshold_w > hi + slack)
        throw std::domain_error("dep: threshold outside the assumed range");
    const double floor_w = std::max(threshold_w - omega_w, lo);
    const double p = 1.0 - (std::log(threshold_w) - std::log(floor_w)) / (2.0 * std::log(vs));
    return clamp01(p);
}

double optimal_threshold(double omega_w, const CovertConfig& cfg, int k)
{
    check_warden_index(cfg, k);
    if (omega_w < 0.0)
        throw std::invalid_argument("optimal_threshold: received power must be >= 0");
    const double vs = cfg.noise_uncertainty;
    const double noise = cfg.warden_noise_w[k];
    return std::min(omega_w + noise / vs, vs * noise);
}

double optimal_dep(double omega_w, const CovertConfig& cfg, int k)
{
    check_warden_index(cfg, k);
    if (omega_w < 0.0)
        throw std::invalid_argument("optimal_dep: received power must be >= 0");
    const double vs = cfg.noise_uncertainty;
    const double noise = cfg.warden_noise_w[k];
    if (omega_w > (vs * vs - 1.0) * noise / vs)
        return 0.0;
    return clamp01(1.0 - std::log(1.0 + vs * omega_w / noise) / (2.0 * std::log(vs)));
}

double covert_power_budget(const CovertConfig& cfg, int k)
{
    check_warden_index(cfg, k);
    const double vs = cfg.noise_uncertainty;
    return (std::pow(vs, 2.0 * cfg.covert_requirement) - 1.0) * cfg.warden_noise_w[k] / vs;
}

WardenStats warden_stats(const cvec& reflect, const rvec& freqs_hz,
                         const ChannelRealization& chan, const RisGeometry& geom,
                         const CovertConfig& cfg, int k)
{
    check_warden_index(cfg, k);
    if (k >= chan.wardens())
        throw std::out_of_range("warden index out of channel range");
    const cvec los = los_ris_receiver(geom, chan.warden_geoms[k], freqs_hz);
    const double amp = chan.warden_path_amp[k];
    const double sqrt_pt = std::sqrt(cfg.tx_power_w);

    WardenStats st;
    st.mean = sqrt_pt * amp * chan.beta_los *
        effective_gain(reflect, los, chan.alice_ris, geom);
    // |reflect_l| == 1 makes ||Diag(reflect) reflect0 h_ar|| = amp0 ||h_ar||.
    st.var = cfg.tx_power_w * amp * amp * chan.beta_nlos * chan.beta_nlos *
        geom.amp0 * geom.amp0 * chan.alice_ris.squaredNorm();
    const cvec h_w = assemble_rician(amp, chan.beta_los, chan.beta_nlos,
                                     los, chan.warden_nlos[k]);
    st.power_det = cfg.tx_power_w *
        std::norm(effective_gain(reflect, h_w, chan.alice_ris, geom));
    return st;
}

double log_mgf(const WardenStats& stats, double penalty_exponent)
{
    if (penalty_exponent < 0.0)
        throw std::invalid_argument("log_mgf: penalty exponent must be >= 0");
    const double mean_sq = std::norm(stats.mean);
    if (penalty_exponent == 0.0)
        return mean_sq + stats.var;
    const double x = 1.0 - penalty_exponent * stats.var;
    if (!(x > 0.0))
        throw std::domain_error("log_mgf: requires penalty_exponent * var < 1");
    return mean_sq / x - std::log(x) / penalty_exponent;
}

CovertRhs covert_rhs(const WardenStats& stats, const CovertConfig& cfg,
                     double warden_path_amp, double beta_los, int k)
{
    check_warden_index(cfg, k);
    const double x = 1.0 - cfg.penalty_exponent * stats.var;
    if (!(x > 0.0))
        throw std::domain_error("covert_rhs: requires penalty_exponent * var < 1");
    CovertRhs out;
    out.h_k = x * (covert_power_budget(cfg, k) + std::log(x));
    const double scale = cfg.tx_power_w * warden_path_amp * warden_path_amp;
    if (out.h_k > 0.0) {
        out.rhs_w = out.h_k;
    } else {
        // numeric stand-in for forcing |mu_k|^2 to zero; exact equality is
        // generically infeasible for a unit-modulus vector
        out.rhs_w = 1e-12 * scale;
    }
    out.cap = out.rhs_w / (scale * beta_los * beta_los);
    return out;
}

double rate_bob(const cvec& reflect, const rvec& freqs_hz,
                const ChannelRealization& chan, const RisGeometry& geom,
                const CovertConfig& cfg)
{
    const cvec los = los_ris_receiver(geom, chan.bob_geom, freqs_hz);
    const cvec h_rb = assemble_rician(chan.bob_path_amp, chan.beta_los, chan.beta_nlos,
                                      los, chan.bob_nlos);
    const double snr = cfg.tx_power_w *
        std::norm(effective_gain(reflect, h_rb, chan.alice_ris, geom)) / cfg.bob_noise_w;
    return std::log2(1.0 + snr);
}

double covert_violation(const cvec& reflect, const rvec& freqs_hz,
                        const ChannelRealization& chan, const RisGeometry& geom,
                        const CovertConfig& cfg)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < chan.wardens(); ++k) {
        const WardenStats st = warden_stats(reflect, freqs_hz, chan, geom, cfg, k);
        const CovertRhs rhs = covert_rhs(st, cfg, chan.warden_path_amp[k], chan.beta_los, k);
        worst = std::max(worst, std::norm(st.mean) - rhs.rhs_w);
    }
    return worst;
}

} // namespace fdris
