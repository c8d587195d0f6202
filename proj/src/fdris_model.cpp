// SPDX-License-Identifier: Apache-2.0
#include "fdris/fdris_model.hpp"

#include <cmath>
#include <stdexcept>

namespace fdris {

namespace {

// Per-element phase pieces of the beampattern. phi1 carries both geometric
// offsets, phi3 the distance term of the outgoing link.
struct PatternPhases {
    rvec phi1;
    rvec phi3;
};

PatternPhases pattern_phases(const RisGeometry& geom, const LinkGeometry& in_link,
                             const LinkGeometry& out_link, const rvec& freqs_hz)
{
    const int n = geom.elements();
    if (in_link.offsets_m.size() != n || out_link.offsets_m.size() != n || freqs_hz.size() != n)
        throw std::invalid_argument("pattern phases: length mismatch");
    PatternPhases p;
    p.phi1.resize(n);
    p.phi3.resize(n);
    for (int l = 0; l < n; ++l) {
        p.phi1[l] = two_pi * geom.carrier_hz *
            (in_link.offsets_m[l] + out_link.offsets_m[l]) / light_speed;
        p.phi3[l] = two_pi * geom.harmonic * freqs_hz[l] * out_link.dists_m[l] / light_speed;
    }
    return p;
}

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

} // namespace

cplx fourier_coefficient(double phase_slope, double period_s, int order,
                         double amp0, double phase0)
{
    if (!(period_s > 0.0))
        throw std::invalid_argument("fourier_coefficient: period must be > 0");
    const cplx base = amp0 * cplx{std::cos(phase0), std::sin(phase0)};
    const double x = phase_slope * period_s - two_pi * order;
    if (std::abs(x) < 1e-9)
        return base; // limit at the selected harmonic
    const cplx num = cplx{0.0, 1.0} * base * (1.0 - std::exp(cplx{0.0, x}));
    return num / x;
}

cvec theta_from_delays(const rvec& freqs_hz, const rvec& delays_s, int harmonic)
{
    if (freqs_hz.size() != delays_s.size())
        throw std::invalid_argument("theta_from_delays: length mismatch");
    const int n = int(freqs_hz.size());
    cvec v(n);
    for (int l = 0; l < n; ++l) {
        const double f = freqs_hz[l];
        const double k = delays_s[l];
        if (!(f > 0.0))
            throw std::invalid_argument("theta_from_delays: frequency must be > 0");
        if (k < 0.0 || k > 1.0 / f)
            throw std::invalid_argument("theta_from_delays: delay outside [0, 1/f]");
        const double ph = -two_pi * harmonic * f * k;
        v[l] = cplx{std::cos(ph), std::sin(ph)};
    }
    return v;
}

rvec delays_from_theta(const cvec& reflect, const rvec& freqs_hz, int harmonic, double mod_tol)
{
    if (reflect.size() != freqs_hz.size())
        throw std::invalid_argument("delays_from_theta: length mismatch");
    const int n = int(reflect.size());
    rvec delays(n);
    for (int l = 0; l < n; ++l) {
        if (std::abs(std::abs(reflect[l]) - 1.0) > mod_tol)
            throw std::invalid_argument("delays_from_theta: entry is not unit modulus");
        const double f = freqs_hz[l];
        if (!(f > 0.0))
            throw std::invalid_argument("delays_from_theta: frequency must be > 0");
        delays[l] = positive_mod(-std::arg(reflect[l]), two_pi) / (two_pi * harmonic * f);
    }
    return delays;
}

cplx effective_gain(const cvec& reflect, const cvec& h_rx, const cvec& h_ar,
                    const RisGeometry& geom)
{
    if (reflect.size() != h_rx.size() || reflect.size() != h_ar.size())
        throw std::invalid_argument("effective_gain: length mismatch");
    cplx acc{0.0, 0.0};
    for (int l = 0; l < int(reflect.size()); ++l)
        acc += std::conj(h_rx[l]) * reflect[l] * h_ar[l];
    return acc * geom.reflect0();
}

double beampattern_fdris(const RisGeometry& geom, const SphericalPosition& alice,
                         const SphericalPosition& probe, const BeamState& state)
{
    const int n = geom.elements();
    if (state.freqs_hz.size() != n || state.delays_s.size() != n)
        throw std::invalid_argument("beampattern_fdris: state length mismatch");
    const PatternPhases p = pattern_phases(geom, element_offsets(geom, alice),
                                           element_offsets(geom, probe), state.freqs_hz);
    cplx acc{0.0, 0.0};
    for (int l = 0; l < n; ++l) {
        const double phi2 = geom.phase0 -
            two_pi * geom.harmonic * state.freqs_hz[l] * state.delays_s[l];
        const double ph = -(p.phi1[l] - phi2 + p.phi3[l]);
        acc += cplx{std::cos(ph), std::sin(ph)};
    }
    return clamp01(std::norm(acc) / (double(n) * double(n)));
}

double beampattern_conventional(const RisGeometry& geom, const SphericalPosition& alice,
                                const SphericalPosition& probe, const cvec& reflect_coeffs)
{
    const int n = geom.elements();
    if (reflect_coeffs.size() != n)
        throw std::invalid_argument("beampattern_conventional: length mismatch");
    // phi1 only: a static panel has no distance term anywhere.
    const LinkGeometry in = element_offsets(geom, alice);
    const LinkGeometry out = element_offsets(geom, probe);
    cplx acc{0.0, 0.0};
    for (int l = 0; l < n; ++l) {
        const double phi1 = two_pi * geom.carrier_hz *
            (in.offsets_m[l] + out.offsets_m[l]) / light_speed;
        acc += cplx{std::cos(-phi1), std::sin(-phi1)} * reflect_coeffs[l];
    }
    return clamp01(std::norm(acc) / (double(n) * double(n)));
}

rvec align_delays(const RisGeometry& geom, const LinkGeometry& in_link,
                  const LinkGeometry& out_link, const rvec& freqs_hz)
{
    const PatternPhases p = pattern_phases(geom, in_link, out_link, freqs_hz);
    const int n = geom.elements();
    rvec delays(n);
    for (int l = 0; l < n; ++l) {
        const double f = freqs_hz[l];
        if (!(f > 0.0))
            throw std::invalid_argument("align_delays: frequency must be > 0");
        // phi2 = phi0 - 2 pi g f k must equal phi1 + phi3 mod 2 pi
        const double want = geom.phase0 - p.phi1[l] - p.phi3[l];
        delays[l] = positive_mod(want, two_pi) / (two_pi * geom.harmonic * f);
    }
    return delays;
}

rvec align_delays(const RisGeometry& geom, const SphericalPosition& alice,
                  const SphericalPosition& target, const rvec& freqs_hz)
{
    return align_delays(geom, element_offsets(geom, alice),
                        element_offsets(geom, target), freqs_hz);
}

cvec conventional_aligned_coeffs(const RisGeometry& geom, const LinkGeometry& in_link,
                                 const LinkGeometry& out_link)
{
    const int n = geom.elements();
    if (in_link.offsets_m.size() != n || out_link.offsets_m.size() != n)
        throw std::invalid_argument("conventional_aligned_coeffs: length mismatch");
    cvec u(n);
    for (int l = 0; l < n; ++l) {
        const double phi1 = two_pi * geom.carrier_hz *
            (in_link.offsets_m[l] + out_link.offsets_m[l]) / light_speed;
        u[l] = cplx{std::cos(phi1), std::sin(phi1)};
    }
    return u;
}

cvec conventional_aligned_coeffs(const RisGeometry& geom, const SphericalPosition& alice,
                                 const SphericalPosition& target)
{
    return conventional_aligned_coeffs(geom, element_offsets(geom, alice),
                                       element_offsets(geom, target));
}

} // namespace fdris
