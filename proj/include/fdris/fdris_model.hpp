// SPDX-License-Identifier: Apache-2.0
//
// Reflection physics of the time-modulated panel: harmonic selection,
// delay<->phase conversion, cascaded gain and beampatterns.
//
// Phase convention used throughout the library: BeamState::reflect stores
// the diagonal of the reflection matrix, reflect[l] = e^{-j 2 pi g df_l
// delay_l}, and the cascaded gain of a receive channel h_rx is
//   effective_gain = sum_l conj(h_rx[l]) * reflect[l] * reflect0 * h_ar[l],
// i.e. h_rx^H Diag(reflect) (amp0 e^{j phase0} I) h_ar. The optimizer
// internally works on the conjugate vector (see optimizer.hpp).
#ifndef FDRIS_MODEL_HPP
#define FDRIS_MODEL_HPP

#include "fdris/geometry.hpp"
#include "fdris/types.hpp"

namespace fdris {

// Decision variables of the panel: unit-modulus reflection phases, the
// per-element modulation frequencies and the time delays realizing them.
struct BeamState {
    cvec reflect;  // unit modulus
    rvec freqs_hz;
    rvec delays_s;
};

// Fourier coefficient of the sawtooth-phase reflection waveform at the
// given harmonic order. The removable singularity slope*period == 2*pi*order
// is handled by its limit amp0*e^{j phase0}.
cplx fourier_coefficient(double phase_slope, double period_s, int order,
                         double amp0, double phase0);

// reflect[l] = e^{-j 2 pi g f_l k_l}; requires 0 <= k_l <= 1/f_l.
cvec theta_from_delays(const rvec& freqs_hz, const rvec& delays_s, int harmonic);

// Inverse map; result lies in [0, 1/(g f_l)). Entries must be unit modulus
// within mod_tol.
rvec delays_from_theta(const cvec& reflect, const rvec& freqs_hz, int harmonic,
                       double mod_tol = 1e-6);

// h_rx^H Diag(reflect) reflect0 h_ar
cplx effective_gain(const cvec& reflect, const cvec& h_rx, const cvec& h_ar,
                    const RisGeometry& geom);

// Normalized gain in [0,1] of the time-modulated panel at a probe point.
double beampattern_fdris(const RisGeometry& geom, const SphericalPosition& alice,
                         const SphericalPosition& probe, const BeamState& state);

// Normalized gain of a conventional panel with static reflection
// coefficients; has no distance dependence at all.
double beampattern_conventional(const RisGeometry& geom, const SphericalPosition& alice,
                                const SphericalPosition& probe, const cvec& reflect_coeffs);

// Delays satisfying the phase alignment condition at the target, each in
// [0, 1/(g f_l)); the beampattern then evaluates to 1 at the target.
rvec align_delays(const RisGeometry& geom, const SphericalPosition& alice,
                  const SphericalPosition& target, const rvec& freqs_hz);
rvec align_delays(const RisGeometry& geom, const LinkGeometry& in_link,
                  const LinkGeometry& out_link, const rvec& freqs_hz);

// Static coefficients that align a conventional panel on the target angle.
cvec conventional_aligned_coeffs(const RisGeometry& geom, const SphericalPosition& alice,
                                 const SphericalPosition& target);
cvec conventional_aligned_coeffs(const RisGeometry& geom, const LinkGeometry& in_link,
                                 const LinkGeometry& out_link);

} // namespace fdris

#endif
