// SPDX-License-Identifier: Apache-2.0
//
// Self-contained solver for concave quadratics over the intersection of
// norm balls, rank-one slab constraints and a per-coordinate box:
// accelerated projected gradient with Dykstra alternating projections.
// Every constituent set has a closed-form projection, which keeps the
// engine dependency-free.
#ifndef FDRIS_CQP_HPP
#define FDRIS_CQP_HPP

#include <optional>
#include <vector>

#include "fdris/types.hpp"

namespace fdris {

// f(x) = -x^H Q x + 2 Re(x^H q) + offset with Q Hermitian PSD.
struct ConcaveQuadratic {
    cmat quad;
    cvec lin;
    double offset = 0.0;

    double value(const cvec& x) const;
    cvec gradient(const cvec& x) const; // 2 (q - Q x)
};

struct Ball {
    cvec center;
    double radius = 0.0;
};

// { x : |normal^H x|^2 <= cap }
struct Slab {
    cvec normal;
    double cap = 0.0;
};

// Per-coordinate bounds on Re(x); Im(x) is pinned to zero. Used by the
// real-valued frequency subproblem.
struct Box {
    rvec lo;
    rvec hi;
};

struct FeasibleSet {
    std::vector<Ball> balls;
    std::vector<Slab> slabs;
    std::optional<Box> box;

    int constraint_count() const;
    // Worst constraint violation measured as a Euclidean distance scale.
    double max_violation(const cvec& x) const;
};

cvec project_ball(const cvec& x, const cvec& center, double radius);
cvec project_slab(const cvec& x, const cvec& normal, double cap);
cvec project_box(const cvec& x, const Box& box);

struct ProjectOptions {
    int max_sweeps = 200;
    double feas_tol = 1e-9;
};

struct ProjectResult {
    cvec x;
    double residual = 0.0; // max constraint violation at exit
    bool converged = false;
    int sweeps = 0;
};

// Dykstra alternating projections onto the intersection. With a single
// constituent set this is the exact closed-form projection.
ProjectResult project_intersection(const cvec& x, const FeasibleSet& set,
                                   const ProjectOptions& opts = {});

struct MaximizeOptions {
    double opt_tol = 1e-7;  // projected-gradient norm, relative to ||lin||
    double feas_tol = 1e-9;
    int max_iters = 5000;
    ProjectOptions project;
    // Known bound on the gradient Lipschitz constant 2*lambda_max(Q);
    // 0 means estimate by power iteration.
    double lip_bound = 0.0;
};

struct MaximizeResult {
    cvec x;
    double value = 0.0;
    double pg_norm = 0.0;
    bool converged = false;
    int iters = 0;
};

// Nesterov-accelerated projected gradient ascent with monotone restart.
MaximizeResult maximize(const ConcaveQuadratic& obj, const FeasibleSet& set,
                        const MaximizeOptions& opts = {},
                        const cvec* warm_start = nullptr);

// Power-iteration upper estimate of lambda_max for Hermitian PSD matrices,
// inflated by the 1.05 safeguard.
double spectral_bound(const cmat& m);

} // namespace fdris

#endif
