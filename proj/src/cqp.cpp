// SPDX-License-Identifier: Apache-2.0
#include "fdris/cqp.hpp"

#include <cmath>
#include <stdexcept>

namespace fdris {

double ConcaveQuadratic::value(const cvec& x) const
{
    const cplx xqx = x.dot(quad * x); // x^H Q x, real for Hermitian Q
    return -xqx.real() + 2.0 * x.dot(lin).real() + offset;
}

cvec ConcaveQuadratic::gradient(const cvec& x) const
{
    return 2.0 * (lin - quad * x);
}

int FeasibleSet::constraint_count() const
{
    return int(balls.size()) + int(slabs.size()) + (box ? 1 : 0);
}

double FeasibleSet::max_violation(const cvec& x) const
{
    double worst = 0.0;
    for (const auto& b : balls)
        worst = std::max(worst, (x - b.center).norm() - b.radius);
    for (const auto& s : slabs) {
        const double nn = s.normal.norm();
        if (nn > 0.0)
            worst = std::max(worst, (std::abs(s.normal.dot(x)) - std::sqrt(s.cap)) / nn);
    }
    if (box) {
        for (int i = 0; i < x.size(); ++i) {
            worst = std::max(worst, box->lo[i] - x[i].real());
            worst = std::max(worst, x[i].real() - box->hi[i]);
            worst = std::max(worst, std::abs(x[i].imag()));
        }
    }
    return worst;
}

cvec project_ball(const cvec& x, const cvec& center, double radius)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("project_ball: radius must be > 0");
    const cvec d = x - center;
    const double n = d.norm();
    if (n <= radius)
        return x;
    return center + (radius / n) * d;
}

cvec project_slab(const cvec& x, const cvec& normal, double cap)
{
    const double nn2 = normal.squaredNorm();
    if (!(nn2 > 0.0))
        throw std::invalid_argument("project_slab: normal must be nonzero");
    if (cap < 0.0)
        throw std::invalid_argument("project_slab: cap must be >= 0");
    const cplx inner = normal.dot(x); // normal^H x
    const double mag = std::abs(inner);
    const double root = std::sqrt(cap);
    if (mag <= root)
        return x;
    // move along normal only; phase taken as 0 when the inner product vanishes
    const cplx dir = unit_phase(inner);
    return x - ((mag - root) / nn2) * dir * normal;
}

cvec project_box(const cvec& x, const Box& box)
{
    const int n = int(x.size());
    if (box.lo.size() != n || box.hi.size() != n)
        throw std::invalid_argument("project_box: bound length mismatch");
    cvec out(n);
    for (int i = 0; i < n; ++i) {
        double v = x[i].real();
        v = std::min(std::max(v, box.lo[i]), box.hi[i]);
        out[i] = cplx{v, 0.0};
    }
    return out;
}

ProjectResult project_intersection(const cvec& x, const FeasibleSet& set,
                                   const ProjectOptions& opts)
{
    ProjectResult res;
    const int n_sets = set.constraint_count();
    if (n_sets == 0) {
        res.x = x;
        res.converged = true;
        return res;
    }
    if (n_sets == 1) {
        if (!set.balls.empty())
            res.x = project_ball(x, set.balls[0].center, set.balls[0].radius);
        else if (!set.slabs.empty())
            res.x = project_slab(x, set.slabs[0].normal, set.slabs[0].cap);
        else
            res.x = project_box(x, *set.box);
        res.converged = true;
        res.sweeps = 1;
        res.residual = set.max_violation(res.x);
        return res;
    }

    // Dykstra with one correction term per constituent set.
    std::vector<cvec> corr(n_sets, cvec::Zero(x.size()));
    cvec z = x;
    const double scale = std::max(1.0, x.norm());
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        const cvec z_before = z;
        int idx = 0;
        for (const auto& b : set.balls) {
            const cvec w = z + corr[idx];
            z = project_ball(w, b.center, b.radius);
            corr[idx] = w - z;
            ++idx;
        }
        for (const auto& s : set.slabs) {
            const cvec w = z + corr[idx];
            z = project_slab(w, s.normal, s.cap);
            corr[idx] = w - z;
            ++idx;
        }
        if (set.box) {
            const cvec w = z + corr[idx];
            z = project_box(w, *set.box);
            corr[idx] = w - z;
        }
        res.sweeps = sweep + 1;
        const double moved = (z - z_before).norm();
        const double viol = set.max_violation(z);
        if (viol <= opts.feas_tol && moved <= 1e-14 * scale) {
            res.converged = true;
            break;
        }
    }
    res.x = z;
    res.residual = set.max_violation(z);
    if (res.residual <= opts.feas_tol)
        res.converged = true;
    return res;
}

double spectral_bound(const cmat& m)
{
    const int n = int(m.rows());
    if (n == 0)
        return 0.0;
    Rng rng(0x5eedULL);
    cvec v(n);
    for (int i = 0; i < n; ++i)
        v[i] = complex_normal(rng);
    double nv = v.norm();
    if (nv == 0.0)
        return 0.0;
    v /= nv;
    double est = 0.0;
    for (int it = 0; it < 50; ++it) {
        cvec w = m * v;
        const double nw = w.norm();
        if (nw <= 0.0)
            break;
        est = std::abs(v.dot(w).real());
        v = w / nw;
    }
    est = std::max(est, m.diagonal().real().maxCoeff());
    return 1.05 * est;
}

MaximizeResult maximize(const ConcaveQuadratic& obj, const FeasibleSet& set,
                        const MaximizeOptions& opts, const cvec* warm_start)
{
    const int n = int(obj.lin.size());
    if (obj.quad.rows() != n || obj.quad.cols() != n)
        throw std::invalid_argument("maximize: dimension mismatch");

    ProjectOptions proj = opts.project;
    proj.feas_tol = std::min(proj.feas_tol, opts.feas_tol);

    auto project = [&](const cvec& x) { return project_intersection(x, set, proj).x; };

    cvec x0 = warm_start ? *warm_start : cvec(cvec::Zero(n));
    cvec x = project(x0);

    double lip = opts.lip_bound;
    if (!(lip > 0.0))
        lip = 2.0 * spectral_bound(obj.quad);
    lip = std::max(lip, 1e-12);
    const double step = 1.0 / lip;
    const double tol = opts.opt_tol * (1.0 + 2.0 * obj.lin.norm());

    MaximizeResult res;
    double f_x = obj.value(x);
    cvec y = x;
    double momentum_t = 1.0;

    cvec best = x;
    double f_best = f_x;

    for (int it = 0; it < opts.max_iters; ++it) {
        res.iters = it + 1;
        cvec x_new = project(y + step * obj.gradient(y));
        double f_new = obj.value(x_new);
        if (f_new + 1e-14 * (1.0 + std::abs(f_x)) < f_x) {
            // momentum overshoot; restart from the last iterate
            momentum_t = 1.0;
            y = x;
            x_new = project(y + step * obj.gradient(y));
            f_new = obj.value(x_new);
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum_t * momentum_t));
        y = x_new + ((momentum_t - 1.0) / t_next) * (x_new - x);
        momentum_t = t_next;

        res.pg_norm = (x_new - x).norm() / step;
        x = x_new;
        f_x = f_new;
        if (f_x > f_best) {
            f_best = f_x;
            best = x;
        }
        if (res.pg_norm <= tol) {
            // confirm with a plain (momentum-free) step
            const cvec xp = project(x + step * obj.gradient(x));
            res.pg_norm = (xp - x).norm() / step;
            if (res.pg_norm <= tol) {
                res.converged = true;
                break;
            }
        }
    }
    res.x = f_best > f_x ? best : x;
    res.value = std::max(f_best, f_x);
    return res;
}

} // namespace fdris
