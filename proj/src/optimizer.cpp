// SPDX-License-Identifier: Apache-2.0
#include "fdris/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdris {

namespace {

constexpr double ln2 = 0.69314718055994530942;

cvec phase_vec(const cvec& x)
{
    cvec out(x.size());
    for (int i = 0; i < int(x.size()); ++i)
        out[i] = unit_phase(x[i]);
    return out;
}

rvec linspace(double lo, double hi, int n)
{
    rvec v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i)
        v[i] = lo + double(i) * (hi - lo) / double(n - 1);
    return v;
}

double rate_from_amp(double tx_power_w, double gain_sq, double noise_w)
{
    return std::log2(1.0 + tx_power_w * gain_sq / noise_w);
}

// 2 pi g d_l / c per element of a link
rvec freq_phase_rates(const RisGeometry& geom, const LinkGeometry& link)
{
    const int n = geom.elements();
    rvec g(n);
    for (int l = 0; l < n; ++l)
        g[l] = two_pi * geom.harmonic * link.dists_m[l] / light_speed;
    return g;
}

} // namespace

void SolverOptions::validate() const
{
    if (!(eps_outer > 0.0) || !(eps_pdd > 0.0))
        throw std::invalid_argument("solver tolerances must be > 0");
    if (max_outer < 1 || max_pdd < 1 || max_inner < 1)
        throw std::invalid_argument("iteration caps must be >= 1");
    if (!(rho_init > 0.0) || !(rho_scale > 0.0) || !(rho_scale < 1.0))
        throw std::invalid_argument("penalty parameters out of range");
}

MmseAux mmse_aux(const cvec& v, const cvec& h_tilde, double tx_power_w, double noise_w)
{
    if (v.size() != h_tilde.size())
        throw std::invalid_argument("mmse_aux: length mismatch");
    if (!(noise_w > 0.0))
        throw std::invalid_argument("mmse_aux: noise power must be > 0");
    const cplx amp = std::sqrt(tx_power_w) * v.dot(h_tilde); // sqrt(Pt) v^H h~
    MmseAux aux;
    aux.equalizer = amp / (std::norm(amp) + noise_w);
    aux.mse = std::norm(std::conj(aux.equalizer) * amp - 1.0) +
        noise_w * std::norm(aux.equalizer);
    aux.weight = 1.0 / aux.mse;
    return aux;
}

ConcaveQuadratic surrogate_quadratic(const MmseAux& aux, const cvec& h_tilde,
                                     double tx_power_w, double noise_w)
{
    const double u_sq = std::norm(aux.equalizer);
    const double w = aux.weight;
    ConcaveQuadratic obj;
    obj.quad = (tx_power_w * w * u_sq / ln2) * (h_tilde * h_tilde.adjoint());
    obj.lin = (std::sqrt(tx_power_w) * w / ln2) * std::conj(aux.equalizer) * h_tilde;
    // constant assembled from the weighted-MSE form directly
    obj.offset = (std::log(w) + 1.0 - w - w * noise_w * u_sq) / ln2;
    return obj;
}

PddResult pdd_solve(const ConcaveQuadratic& obj, const std::vector<Slab>& covert_slabs,
                    const SolverOptions& opts, const cvec& v_init)
{
    opts.validate();
    const int n = int(obj.lin.size());
    if (v_init.size() != n)
        throw std::invalid_argument("pdd_solve: init length mismatch");

    FeasibleSet set;
    set.balls.push_back({cvec::Zero(n), std::sqrt(double(n))});
    for (const auto& s : covert_slabs) {
        if (!(s.cap > 0.0))
            throw std::invalid_argument("pdd_solve: slab caps must be > 0");
        // normalize so every cap is 1; keeps feas_tol meaningful across scales
        set.slabs.push_back({s.normal / std::sqrt(s.cap), 1.0});
    }

    cvec v = project_intersection(v_init, set).x;
    cvec vhat = phase_vec(v);
    cvec lambda = cvec::Zero(n);
    double rho = opts.rho_init;

    const double lip_quad = spectral_bound(obj.quad);

    PddResult res;
    double eps_target = std::numeric_limits<double>::infinity();

    for (int outer = 0; outer < opts.max_pdd; ++outer) {
        res.outer_iters = outer + 1;
        ConcaveQuadratic pen;
        pen.quad = obj.quad;
        pen.quad.diagonal().array() += 0.5 / rho;
        pen.offset = 0.0;

        MaximizeOptions qp = opts.qp;
        qp.lip_bound = 2.0 * (lip_quad + 0.5 / rho);

        double prev_val = -std::numeric_limits<double>::infinity();
        for (int inner = 0; inner < opts.max_inner; ++inner) {
            pen.lin = obj.lin + (0.5 / rho) * (vhat - rho * lambda);
            v = maximize(pen, set, qp, &v).x;
            vhat = phase_vec(v + rho * lambda);
            const double val = obj.value(v) -
                (v - vhat + rho * lambda).squaredNorm() / (2.0 * rho);
            if (std::abs(val - prev_val) <= opts.inner_rel_tol * std::max(1e-12, std::abs(val)))
                break;
            prev_val = val;
        }

        const double gap = (v - vhat).norm();
        if (gap <= eps_target)
            lambda += (v - vhat) / rho;
        else
            rho *= opts.rho_scale;
        eps_target = 0.9 * gap;

        double mod_dev = 0.0;
        for (int l = 0; l < n; ++l)
            mod_dev = std::max(mod_dev, std::abs(std::abs(v[l]) - 1.0));

        res.residual = gap;
        res.rho_pen = rho;
        if (gap <= opts.eps_pdd && mod_dev <= 1e-6) {
            res.converged = true;
            break;
        }
    }

    res.v = phase_vec(v);
    res.surrogate_value = obj.value(res.v);
    return res;
}

double bob_gain_sq(const FreqContext& ctx, const rvec& freqs_hz)
{
    const auto& chan = *ctx.chan;
    const cvec los = los_ris_receiver(*ctx.geom, chan.bob_geom, freqs_hz);
    const cvec h_rb = assemble_rician(chan.bob_path_amp, chan.beta_los, chan.beta_nlos,
                                      los, chan.bob_nlos);
    return std::norm(h_rb.dot(ctx.hhat));
}

double warden_gain_sq(const FreqContext& ctx, int k, const rvec& freqs_hz)
{
    const cvec los = los_ris_receiver(*ctx.geom, ctx.chan->warden_geoms[k], freqs_hz);
    return std::norm(los.dot(ctx.hhat));
}

namespace {

// Shared derivative core for |h^H hhat|^2 where only the LoS part of h
// depends on the frequencies with per-element rate gamma_l. For Bob
// scale = path_amp * beta_los and h carries the NLoS part; for a warden
// scale = 1 and h is the LoS vector itself.
struct DerivParts {
    cvec los;    // frequency-dependent LoS phasor per element
    rvec gamma;  // d(phase)/d(df_l)
    cplx inner;  // hhat^H h
    double scale;
};

DerivParts deriv_parts_bob(const FreqContext& ctx, const rvec& f)
{
    const auto& chan = *ctx.chan;
    DerivParts p;
    p.los = los_ris_receiver(*ctx.geom, chan.bob_geom, f);
    p.gamma = freq_phase_rates(*ctx.geom, chan.bob_geom);
    const cvec h_rb = assemble_rician(chan.bob_path_amp, chan.beta_los, chan.beta_nlos,
                                      p.los, chan.bob_nlos);
    p.inner = ctx.hhat.dot(h_rb); // hhat^H h_rb
    p.scale = chan.bob_path_amp * chan.beta_los;
    return p;
}

DerivParts deriv_parts_warden(const FreqContext& ctx, int k, const rvec& f)
{
    DerivParts p;
    p.los = los_ris_receiver(*ctx.geom, ctx.chan->warden_geoms[k], f);
    p.gamma = freq_phase_rates(*ctx.geom, ctx.chan->warden_geoms[k]);
    p.inner = ctx.hhat.dot(p.los);
    p.scale = 1.0;
    return p;
}

rvec gradient_from_parts(const cvec& hhat, const DerivParts& p)
{
    const int n = int(hhat.size());
    rvec g(n);
    for (int l = 0; l < n; ++l) {
        const cplx d = cplx{0.0, 1.0} * p.gamma[l] * p.scale * p.los[l];
        g[l] = 2.0 * std::real(std::conj(p.inner) * std::conj(hhat[l]) * d);
    }
    return g;
}

rmat hessian_from_parts(const cvec& hhat, const DerivParts& p)
{
    const int n = int(hhat.size());
    rmat h(n, n);
    for (int m = 0; m < n; ++m) {
        for (int l = m; l < n; ++l) {
            double val;
            if (l == m) {
                val = 2.0 * p.gamma[l] * p.gamma[l] * p.scale *
                    (p.scale * std::norm(hhat[l]) -
                     std::real(std::conj(p.inner) * std::conj(hhat[l]) * p.los[l]));
            } else {
                val = 2.0 * p.gamma[m] * p.gamma[l] * p.scale * p.scale *
                    std::real(hhat[m] * std::conj(hhat[l]) * p.los[l] * std::conj(p.los[m]));
            }
            h(m, l) = val;
            h(l, m) = val;
        }
    }
    return h;
}

} // namespace

void freq_gradient(const FreqContext& ctx, const rvec& freqs_hz,
                   rvec* grad_bob, std::vector<rvec>* grad_wardens)
{
    if (grad_bob)
        *grad_bob = gradient_from_parts(ctx.hhat, deriv_parts_bob(ctx, freqs_hz));
    if (grad_wardens) {
        grad_wardens->clear();
        for (int k = 0; k < ctx.chan->wardens(); ++k)
            grad_wardens->push_back(
                gradient_from_parts(ctx.hhat, deriv_parts_warden(ctx, k, freqs_hz)));
    }
}

void freq_hessian(const FreqContext& ctx, const rvec& freqs_hz,
                  rmat* hess_bob, std::vector<rmat>* hess_wardens)
{
    if (hess_bob)
        *hess_bob = hessian_from_parts(ctx.hhat, deriv_parts_bob(ctx, freqs_hz));
    if (hess_wardens) {
        hess_wardens->clear();
        for (int k = 0; k < ctx.chan->wardens(); ++k)
            hess_wardens->push_back(
                hessian_from_parts(ctx.hhat, deriv_parts_warden(ctx, k, freqs_hz)));
    }
}

double lipschitz_bound(const rmat& hess)
{
    const int n = int(hess.rows());
    if (n == 0)
        return 1e-12;
    Rng rng(0x715cULL);
    rvec v(n);
    for (int i = 0; i < n; ++i)
        v[i] = standard_normal(rng);
    double nv = v.norm();
    double est = 0.0;
    if (nv > 0.0) {
        v /= nv;
        for (int it = 0; it < 50; ++it) {
            rvec w = hess * v;
            const double nw = w.norm();
            if (nw <= 0.0)
                break;
            est = std::abs(v.dot(w));
            v = w / nw;
        }
    }
    est = std::max(est, hess.diagonal().cwiseAbs().maxCoeff());
    if (est > 0.0)
        return 1.1 * est;
    const double fro = hess.norm();
    return fro > 0.0 ? 1.1 * fro : 1e-12;
}

ScaResult sca_freq_step(const rvec& freqs_hz, const FreqContext& ctx,
                        const SolverOptions& opts)
{
    const int n = int(freqs_hz.size());
    const int n_w = int(ctx.caps.size());

    rvec grad_bob;
    std::vector<rvec> grad_w;
    freq_gradient(ctx, freqs_hz, &grad_bob, &grad_w);
    rmat hess_bob;
    std::vector<rmat> hess_w;
    freq_hessian(ctx, freqs_hz, &hess_bob, &hess_w);

    const double nu = lipschitz_bound(hess_bob);
    const double base_gain = bob_gain_sq(ctx, freqs_hz);

    // decision variable x = f - f_p (real), objective grad^T x - nu/2 |x|^2
    ConcaveQuadratic obj;
    obj.quad = cmat::Zero(n, n);
    obj.quad.diagonal().setConstant(cplx{0.5 * nu, 0.0});
    obj.lin = cvec(n);
    for (int l = 0; l < n; ++l)
        obj.lin[l] = cplx{0.5 * grad_bob[l], 0.0};
    obj.offset = 0.0;

    FeasibleSet set;
    Box box;
    box.lo = rvec(n);
    box.hi = rvec(n);
    for (int l = 0; l < n; ++l) {
        box.lo[l] = ctx.df_min - freqs_hz[l];
        box.hi[l] = ctx.df_max - freqs_hz[l];
    }
    set.box = box;

    for (int k = 0; k < n_w; ++k) {
        const double nu_k = lipschitz_bound(hess_w[k]);
        const double slack = ctx.caps[k] - warden_gain_sq(ctx, k, freqs_hz);
        const double r_sq = grad_w[k].squaredNorm() / (nu_k * nu_k) + 2.0 * slack / nu_k;
        if (r_sq < 0.0)
            return {freqs_hz, false}; // expansion point violates the cap
        Ball ball;
        ball.center = cvec(n);
        for (int l = 0; l < n; ++l)
            ball.center[l] = cplx{-grad_w[k][l] / nu_k, 0.0};
        ball.radius = std::max(std::sqrt(r_sq), 1e-9 * (ctx.df_max - ctx.df_min + 1.0));
        set.balls.push_back(ball);
    }

    MaximizeOptions qp = opts.qp;
    qp.lip_bound = nu; // 2 * lambda_max(nu/2 I)
    const cvec warm = cvec::Zero(n);
    const MaximizeResult sol = maximize(obj, set, qp, &warm);

    rvec f_new(n);
    for (int l = 0; l < n; ++l) {
        double f = freqs_hz[l] + sol.x[l].real();
        f = std::min(std::max(f, ctx.df_min), ctx.df_max); // exact box
        f_new[l] = f;
    }

    // majorize-minimize ascent guard plus a from-scratch cap check
    if (bob_gain_sq(ctx, f_new) < base_gain * (1.0 - 1e-12))
        return {freqs_hz, false};
    for (int k = 0; k < n_w; ++k)
        if (warden_gain_sq(ctx, k, f_new) > ctx.caps[k] * (1.0 + 1e-7))
            return {freqs_hz, false};
    return {f_new, true};
}

AlternateResult alternate(const ChannelRealization& chan, const RisGeometry& geom,
                          const CovertConfig& cfg, double df_min_hz, double df_max_hz,
                          const SolverOptions& opts, Scheme scheme)
{
    opts.validate();
    cfg.validate();
    geom.validate();
    const int n = geom.elements();
    const int n_w = chan.wardens();
    if (cfg.wardens() != n_w)
        throw std::invalid_argument("alternate: warden count mismatch between config and channel");
    if (scheme == Scheme::fdris && !(df_min_hz > 0.0 && df_min_hz < df_max_hz))
        throw std::invalid_argument("alternate: need 0 < df_min < df_max");

    const cplx reflect0 = geom.reflect0();
    const cvec scaled_ar = reflect0 * chan.alice_ris;

    // covert caps are invariant in both design variables, so they are fixed
    // once per channel realization
    AlternateResult res;
    std::vector<double> caps(n_w);
    for (int k = 0; k < n_w; ++k) {
        WardenStats st;
        st.var = cfg.tx_power_w * chan.warden_path_amp[k] * chan.warden_path_amp[k] *
            chan.beta_nlos * chan.beta_nlos * geom.amp0 * geom.amp0 *
            chan.alice_ris.squaredNorm();
        const CovertRhs rhs = covert_rhs(st, cfg, chan.warden_path_amp[k], chan.beta_los, k);
        caps[k] = rhs.cap;
        res.rhs_w.push_back(rhs.rhs_w);
        res.h_k.push_back(rhs.h_k);
        res.budget_w.push_back(covert_power_budget(cfg, k));
    }

    rvec f = scheme == Scheme::fdris ? linspace(df_min_hz, df_max_hz, n)
                                     : rvec(rvec::Zero(n));

    auto make_slabs = [&](const rvec& freqs) {
        std::vector<Slab> slabs(n_w);
        for (int k = 0; k < n_w; ++k) {
            const cvec los = los_ris_receiver(geom, chan.warden_geoms[k], freqs);
            slabs[k] = Slab{los.conjugate().cwiseProduct(scaled_ar), caps[k]};
        }
        return slabs;
    };
    auto make_htilde = [&](const rvec& freqs) {
        const cvec los = los_ris_receiver(geom, chan.bob_geom, freqs);
        const cvec h_rb = assemble_rician(chan.bob_path_amp, chan.beta_los,
                                          chan.beta_nlos, los, chan.bob_nlos);
        return cvec(h_rb.conjugate().cwiseProduct(scaled_ar));
    };
    auto slab_feasible = [&](const std::vector<Slab>& slabs, const cvec& v) {
        for (const auto& s : slabs)
            if (std::norm(s.normal.dot(v)) > s.cap * (1.0 + 1e-7))
                return false;
        return true;
    };

    // warm start: phases aligned on Bob
    cvec reflect_init;
    if (scheme == Scheme::fdris) {
        const rvec delays = align_delays(geom, chan.alice_geom, chan.bob_geom, f);
        reflect_init = theta_from_delays(f, delays, geom.harmonic);
    } else {
        reflect_init = conventional_aligned_coeffs(geom, chan.alice_geom, chan.bob_geom);
    }
    cvec v = reflect_init.conjugate();

    std::vector<Slab> slabs = make_slabs(f);
    if (!slab_feasible(slabs, v)) {
        // feasibility restoration: nearest point of the ball/slab intersection
        FeasibleSet restore;
        restore.balls.push_back({cvec::Zero(n), std::sqrt(double(n))});
        for (const auto& s : slabs)
            restore.slabs.push_back({s.normal / std::sqrt(s.cap), 1.0});
        const ProjectResult pr = project_intersection(v, restore);
        if (pr.residual > 1e-6)
            throw std::runtime_error("alternate: feasibility restoration failed");
        v = pr.x;
    }

    cvec h_tilde = make_htilde(f);
    auto rate_of = [&](const cvec& vv) {
        return rate_from_amp(cfg.tx_power_w, std::norm(vv.dot(h_tilde)), cfg.bob_noise_w);
    };
    auto violation_now = [&](const cvec& vv) {
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < n_w; ++k) {
            const double mu_sq = cfg.tx_power_w * chan.warden_path_amp[k] *
                chan.warden_path_amp[k] * chan.beta_los * chan.beta_los *
                std::norm(slabs[k].normal.dot(vv));
            worst = std::max(worst, mu_sq - res.rhs_w[k]);
        }
        return worst;
    };

    double rate = rate_of(v);
    res.trace.push_back({0, rate, 0.0, violation_now(v), opts.rho_init});

    for (int p = 1; p <= opts.max_outer; ++p) {
        const MmseAux aux = mmse_aux(v, h_tilde, cfg.tx_power_w, cfg.bob_noise_w);
        const ConcaveQuadratic obj =
            surrogate_quadratic(aux, h_tilde, cfg.tx_power_w, cfg.bob_noise_w);
        const PddResult pdd = pdd_solve(obj, slabs, opts, v);

        const double cand_rate = rate_of(pdd.v);
        if (cand_rate >= rate && slab_feasible(slabs, pdd.v)) {
            v = pdd.v;
            rate = cand_rate;
        }

        if (scheme == Scheme::fdris) {
            FreqContext ctx;
            ctx.geom = &geom;
            ctx.chan = &chan;
            ctx.hhat = v.conjugate().cwiseProduct(scaled_ar);
            ctx.caps = caps;
            ctx.df_min = df_min_hz;
            ctx.df_max = df_max_hz;
            const ScaResult sca = sca_freq_step(f, ctx, opts);
            if (sca.stepped) {
                f = sca.freqs_hz;
                slabs = make_slabs(f);
                h_tilde = make_htilde(f);
                const double new_rate = rate_of(v);
                if (new_rate > rate)
                    rate = new_rate;
            }
        }

        res.trace.push_back({p, rate, pdd.residual, violation_now(v), pdd.rho_pen});
        const double gain = rate - res.trace[res.trace.size() - 2].rate_bpcu;
        if (gain <= opts.eps_outer) {
            res.converged = true;
            break;
        }
    }

    res.iterations = int(res.trace.size()) - 1;
    res.state.reflect = v.conjugate();
    res.state.freqs_hz = f;
    res.state.delays_s = scheme == Scheme::fdris
        ? delays_from_theta(res.state.reflect, f, geom.harmonic)
        : rvec(rvec::Zero(n));
    res.rate_bpcu = rate;

    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_w; ++k) {
        const WardenStats st = warden_stats(res.state.reflect, f, chan, geom, cfg, k);
        res.mean_power_w.push_back(std::norm(st.mean));
        res.log_mgf_w.push_back(log_mgf(st, cfg.penalty_exponent));
        worst = std::max(worst, std::norm(st.mean) - res.rhs_w[k]);
    }
    res.feasible = worst <= 1e-8;
    return res;
}

} // namespace fdris
