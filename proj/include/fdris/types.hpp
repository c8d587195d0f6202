// SPDX-License-Identifier: Apache-2.0
#ifndef FDRIS_TYPES_HPP
#define FDRIS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace fdris {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;
using cmat = Eigen::MatrixXcd;
using rmat = Eigen::MatrixXd;

inline constexpr double light_speed = 299792458.0; // m/s, exact
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53-bit resolution. Draws are built directly on the
// generator words so the stream does not depend on standard-library
// distribution internals.
inline double uniform01(Rng& rng)
{
    return double(rng() >> 11) * 0x1.0p-53;
}

// One N(0,1) draw (Box-Muller).
double standard_normal(Rng& rng);

// One CN(0,1) draw: real and imaginary parts independent N(0, 1/2).
cplx complex_normal(Rng& rng);

// mod(a, m) with result in [0, m).
double positive_mod(double a, double m);

// z/|z|, mapping 0 to 1.
cplx unit_phase(cplx z);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);
double db_to_linear(double db);
double deg_to_rad(double deg);
double rad_to_deg(double rad);

// Stream-split helper: derives an independent child seed from (seed, index).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

} // namespace fdris

#endif
