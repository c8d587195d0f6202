// SPDX-License-Identifier: Apache-2.0
#include "fdris/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace fdris {

void SphericalPosition::validate() const
{
    if (!(range_m > 0.0))
        throw std::invalid_argument("position range must be > 0 m");
    if (!std::isfinite(azimuth_rad) || !std::isfinite(elevation_rad))
        throw std::invalid_argument("position angles must be finite");
}

cplx RisGeometry::reflect0() const
{
    return amp0 * cplx{std::cos(phase0), std::sin(phase0)};
}

double RisGeometry::half_wavelength_spacing(double carrier_hz)
{
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("carrier frequency must be > 0 Hz");
    return light_speed / (2.0 * carrier_hz);
}

void RisGeometry::validate() const
{
    if (num_y < 1 || num_z < 1)
        throw std::invalid_argument("element counts must be >= 1");
    if (!(spacing_m > 0.0))
        throw std::invalid_argument("element spacing must be > 0 m");
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("carrier frequency must be > 0 Hz");
    if (harmonic < 1)
        throw std::invalid_argument("harmonic order must be >= 1");
    if (!(amp0 > 0.0))
        throw std::invalid_argument("initial amplitude must be > 0");
}

LinkGeometry element_offsets(const RisGeometry& geom, const SphericalPosition& pos)
{
    geom.validate();
    pos.validate();
    const int n = geom.elements();
    LinkGeometry link;
    link.offsets_m.resize(n);
    link.dists_m.resize(n);
    link.base_dist_m = pos.range_m;
    const double cz = std::cos(pos.azimuth_rad);
    const double sy = std::sin(pos.azimuth_rad) * std::cos(pos.elevation_rad);
    for (int iz = 1; iz <= geom.num_z; ++iz) {
        for (int iy = 1; iy <= geom.num_y; ++iy) {
            const int l = (iz - 1) * geom.num_y + (iy - 1);
            const double off = (iz - 1) * geom.spacing_m * cz + (iy - 1) * geom.spacing_m * sy;
            link.offsets_m[l] = off;
            link.dists_m[l] = pos.range_m + off;
        }
    }
    return link;
}

double path_loss_amplitude(double dist_m)
{
    if (!(dist_m > 0.0))
        throw std::invalid_argument("path loss distance must be > 0 m");
    const double power_db = -45.0 - 20.0 * std::log10(dist_m);
    return std::sqrt(std::pow(10.0, power_db / 10.0));
}

cvec los_alice_ris(const RisGeometry& geom, const SphericalPosition& alice)
{
    const LinkGeometry link = element_offsets(geom, alice);
    const int n = geom.elements();
    cvec v(n);
    for (int l = 0; l < n; ++l) {
        const double ph = -two_pi * geom.carrier_hz * link.offsets_m[l] / light_speed;
        v[l] = cplx{std::cos(ph), std::sin(ph)};
    }
    return v;
}

cvec los_ris_receiver(const RisGeometry& geom, const LinkGeometry& link, const rvec& freqs_hz)
{
    const int n = geom.elements();
    if (link.offsets_m.size() != n || freqs_hz.size() != n)
        throw std::invalid_argument("los_ris_receiver: length mismatch");
    cvec v(n);
    for (int l = 0; l < n; ++l) {
        const double f = freqs_hz[l];
        if (!(f >= 0.0) || !std::isfinite(f))
            throw std::invalid_argument("los_ris_receiver: modulation frequency must be finite and >= 0");
        const double ph = two_pi *
            (geom.carrier_hz * link.offsets_m[l] + geom.harmonic * f * link.dists_m[l]) / light_speed;
        v[l] = cplx{std::cos(ph), std::sin(ph)};
    }
    return v;
}

cvec assemble_rician(double path_amp, double beta_los, double beta_nlos,
                     const cvec& los, const cvec& nlos)
{
    if (los.size() != nlos.size())
        throw std::invalid_argument("assemble_rician: length mismatch");
    return path_amp * (beta_los * los + beta_nlos * nlos);
}

cvec sample_nlos(Rng& rng, int n)
{
    if (n < 1)
        throw std::invalid_argument("sample_nlos: n must be >= 1");
    cvec v(n);
    for (int i = 0; i < n; ++i)
        v[i] = complex_normal(rng);
    return v;
}

cvec sample_nlos(std::uint64_t seed, int n)
{
    Rng rng(seed);
    return sample_nlos(rng, n);
}

ChannelRealization make_channel(const RisGeometry& geom,
                                const SphericalPosition& alice,
                                const SphericalPosition& bob,
                                const std::vector<SphericalPosition>& wardens,
                                double rician_beta_db,
                                std::uint64_t seed)
{
    geom.validate();
    const int n = geom.elements();
    const double beta = db_to_linear(rician_beta_db);
    if (!(beta > 0.0))
        throw std::invalid_argument("Rician factor must be > 0");

    ChannelRealization chan;
    chan.beta_los = std::sqrt(beta / (beta + 1.0));
    chan.beta_nlos = std::sqrt(1.0 / (beta + 1.0));

    Rng rng(seed);
    chan.alice_geom = element_offsets(geom, alice);
    const cvec alice_los = los_alice_ris(geom, alice);
    const cvec alice_nlos = sample_nlos(rng, n);
    chan.alice_ris = assemble_rician(path_loss_amplitude(alice.range_m),
                                     chan.beta_los, chan.beta_nlos, alice_los, alice_nlos);

    chan.bob_geom = element_offsets(geom, bob);
    chan.bob_nlos = sample_nlos(rng, n);
    chan.bob_path_amp = path_loss_amplitude(bob.range_m);

    chan.warden_geoms.reserve(wardens.size());
    for (const auto& w : wardens) {
        chan.warden_geoms.push_back(element_offsets(geom, w));
        chan.warden_nlos.push_back(sample_nlos(rng, n));
        chan.warden_path_amp.push_back(path_loss_amplitude(w.range_m));
    }
    return chan;
}

} // namespace fdris
