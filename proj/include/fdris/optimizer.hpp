// SPDX-License-Identifier: Apache-2.0
//
// Alternating design of the reflection phases (MMSE surrogate + penalty
// dual decomposition) and the per-element modulation frequencies
// (successive convex approximation with analytic gradients and Hessians).
//
// The phase subproblem is solved in the conjugate variable v with
// v[l] = conj(reflect[l]), so that the cascaded Bob gain is v^H h_tilde
// with h_tilde = conj(h_rb) .* (reflect0 * h_ar), and each covert
// constraint is the slab |b_k^H v|^2 <= cap_k with
// b_k = conj(los_rwk) .* (reflect0 * h_ar).
#ifndef FDRIS_OPTIMIZER_HPP
#define FDRIS_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "fdris/covert.hpp"
#include "fdris/cqp.hpp"
#include "fdris/fdris_model.hpp"
#include "fdris/geometry.hpp"
#include "fdris/types.hpp"

namespace fdris {

struct SolverOptions {
    double eps_outer = 1e-3; // rate-improvement stop for the alternation, bits
    double eps_pdd = 1e-3;   // consensus residual target
    int max_outer = 100;
    int max_pdd = 100;
    int max_inner = 100;
    double rho_init = 100.0;   // initial penalty coefficient
    double rho_scale = 0.5;    // shrink factor on stalled consensus
    double inner_rel_tol = 1e-6;
    std::uint64_t seed = 0;
    MaximizeOptions qp;

    void validate() const;
};

// Receive equalizer and weight of the MMSE rate reformulation.
struct MmseAux {
    cplx equalizer = {0.0, 0.0}; // u
    double weight = 1.0;         // W = 1/E
    double mse = 1.0;            // E at the expansion point
};

MmseAux mmse_aux(const cvec& v, const cvec& h_tilde, double tx_power_w, double noise_w);

// Concave quadratic lower bound of the rate around the expansion point that
// produced aux; tight there, a minorant everywhere.
ConcaveQuadratic surrogate_quadratic(const MmseAux& aux, const cvec& h_tilde,
                                     double tx_power_w, double noise_w);

struct PddResult {
    cvec v;                       // exactly unit modulus
    double residual = 0.0;        // final consensus gap ||v - vhat||
    double rho_pen = 0.0;
    double surrogate_value = 0.0; // original quadratic at the returned v
    bool converged = false;
    int outer_iters = 0;
};

// Algorithm: inner loop alternates the ball+slab QP with the closed-form
// phase projection vhat = e^{j angle(v + rho*lambda)}; the outer loop
// updates multipliers when the consensus gap shrank by 10%, otherwise
// shrinks the penalty. Runs until the gap meets eps_pdd and every entry
// modulus is within 1e-6 of one, then renormalizes exactly.
PddResult pdd_solve(const ConcaveQuadratic& obj, const std::vector<Slab>& covert_slabs,
                    const SolverOptions& opts, const cvec& v_init);

// Everything the frequency subproblem needs at a fixed reflection state.
struct FreqContext {
    const RisGeometry* geom = nullptr;
    const ChannelRealization* chan = nullptr;
    cvec hhat;                 // Diag(reflect) * reflect0 * h_ar
    std::vector<double> caps;  // covert caps on |los_rwk^H hhat|^2
    double df_min = 0.0;
    double df_max = 0.0;
};

double bob_gain_sq(const FreqContext& ctx, const rvec& freqs_hz);    // |h_rb^H hhat|^2
double warden_gain_sq(const FreqContext& ctx, int k, const rvec& freqs_hz);

void freq_gradient(const FreqContext& ctx, const rvec& freqs_hz,
                   rvec* grad_bob, std::vector<rvec>* grad_wardens);
void freq_hessian(const FreqContext& ctx, const rvec& freqs_hz,
                  rmat* hess_bob, std::vector<rmat>* hess_wardens);

// nu >= lambda_max(H) via power iteration with a 1.1 safeguard; falls back
// to the Frobenius norm on stagnation, and to 1e-12 for a zero matrix.
double lipschitz_bound(const rmat& hess);

struct ScaResult {
    rvec freqs_hz;
    bool stepped = false; // false: subproblem infeasible or no ascent, input returned
};

ScaResult sca_freq_step(const rvec& freqs_hz, const FreqContext& ctx,
                        const SolverOptions& opts);

enum class Scheme {
    fdris,        // joint delay + modulation-frequency design
    conventional, // static panel: frequencies pinned to zero, phases only
};

struct TraceRow {
    int iter = 0;
    double rate_bpcu = 0.0;
    double pdd_residual = 0.0;
    double max_covert_violation = 0.0; // W; <= 0 when feasible
    double rho_pen = 0.0;
};

struct AlternateResult {
    BeamState state;
    double rate_bpcu = 0.0;
    std::vector<TraceRow> trace;
    bool converged = false;
    bool feasible = false;
    int iterations = 0;
    // per-warden diagnostics at the returned point
    std::vector<double> mean_power_w; // |mu_k|^2
    std::vector<double> rhs_w;        // covert constraint right-hand sides
    std::vector<double> h_k;          // raw reformulated budgets
    std::vector<double> budget_w;     // covert power budgets
    std::vector<double> log_mgf_w;    // log-MGF proxy at the solution
};

AlternateResult alternate(const ChannelRealization& chan, const RisGeometry& geom,
                          const CovertConfig& cfg, double df_min_hz, double df_max_hz,
                          const SolverOptions& opts, Scheme scheme = Scheme::fdris);

} // namespace fdris

#endif
