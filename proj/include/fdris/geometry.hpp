// SPDX-License-Identifier: Apache-2.0
//
// Panel geometry, large-scale path loss, LoS steering vectors and Rician
// channel realizations for a time-modulated reflecting surface.
#ifndef FDRIS_GEOMETRY_HPP
#define FDRIS_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "fdris/types.hpp"

namespace fdris {

// Point relative to the panel reference element. Angles in radians; config
// files carry degrees and convert on load.
struct SphericalPosition {
    double azimuth_rad = 0.0;
    double elevation_rad = 0.0;
    double range_m = 0.0;

    void validate() const;
};

// Uniform planar panel of num_y x num_z elements. Element (iy, iz) with
// 1-based indices flattens to l = (iz-1)*num_y + iy; every vector in this
// library uses that order.
struct RisGeometry {
    int num_y = 1;
    int num_z = 1;
    double spacing_m = 0.0;
    double carrier_hz = 0.0;
    int harmonic = 1;    // retained harmonic order
    double amp0 = 1.0;   // initial reflection amplitude
    double phase0 = 0.0; // initial reflection phase, radians

    int elements() const { return num_y * num_z; }
    cplx reflect0() const; // amp0 * e^{j phase0}

    static double half_wavelength_spacing(double carrier_hz);
    void validate() const;
};

// Per-element geometry of one panel->endpoint link.
struct LinkGeometry {
    rvec offsets_m; // per-element geometric offset
    rvec dists_m;   // base_dist_m + offsets_m
    double base_dist_m = 0.0;
};

// One draw of all links. The frequency-independent Alice->panel channel is
// stored fully realized; the panel->receiver links keep geometry and NLoS
// draw separate because their LoS parts depend on the modulation
// frequencies. Warden NLoS draws feed oracles and Monte Carlo only, never
// the optimizer.
struct ChannelRealization {
    LinkGeometry alice_geom;
    cvec alice_ris;
    LinkGeometry bob_geom;
    cvec bob_nlos;
    double bob_path_amp = 0.0;
    std::vector<LinkGeometry> warden_geoms;
    std::vector<cvec> warden_nlos;
    std::vector<double> warden_path_amp;
    double beta_los = 1.0;  // sqrt(beta/(beta+1))
    double beta_nlos = 0.0; // sqrt(1/(beta+1)); beta_los^2+beta_nlos^2 == 1

    int wardens() const { return int(warden_geoms.size()); }
};

// Offset of element l is (iz-1)*d*cos(az) + (iy-1)*d*sin(az)*cos(el).
LinkGeometry element_offsets(const RisGeometry& geom, const SphericalPosition& pos);

// Amplitude path loss; the squared value in dB is -45 - 20*log10(dist).
double path_loss_amplitude(double dist_m);

// Entry l is e^{-j 2 pi fc * offset_l / c}; independent of the modulation
// frequencies, first entry exactly 1.
cvec los_alice_ris(const RisGeometry& geom, const SphericalPosition& alice);

// Entry l is e^{+j 2 pi (fc*offset_l + g*df_l*dist_l)/c}. Serves both Bob
// and the wardens through the respective link geometry. All-zero freqs
// reproduce a conventional (not time-modulated) panel, which drops the
// distance term.
cvec los_ris_receiver(const RisGeometry& geom, const LinkGeometry& link, const rvec& freqs_hz);

// path_amp * (beta_los*los + beta_nlos*nlos)
cvec assemble_rician(double path_amp, double beta_los, double beta_nlos,
                     const cvec& los, const cvec& nlos);

// i.i.d. CN(0,1) entries; deterministic given the generator state / seed.
cvec sample_nlos(Rng& rng, int n);
cvec sample_nlos(std::uint64_t seed, int n);

ChannelRealization make_channel(const RisGeometry& geom,
                                const SphericalPosition& alice,
                                const SphericalPosition& bob,
                                const std::vector<SphericalPosition>& wardens,
                                double rician_beta_db,
                                std::uint64_t seed);

} // namespace fdris

#endif
