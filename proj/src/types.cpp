// SPDX-License-Identifier: Apache-2.0
#include "fdris/types.hpp"

#include <cmath>

namespace fdris {

double standard_normal(Rng& rng)
{
    double u1 = 1.0 - uniform01(rng); // (0, 1]
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

cplx complex_normal(Rng& rng)
{
    // |z|^2 ~ Exp(1), phase uniform.
    double u1 = 1.0 - uniform01(rng);
    double u2 = uniform01(rng);
    double r = std::sqrt(-std::log(u1));
    return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

double positive_mod(double a, double m)
{
    double r = std::fmod(a, m);
    if (r < 0.0)
        r += m;
    return r;
}

cplx unit_phase(cplx z)
{
    double a = std::abs(z);
    if (a == 0.0)
        return {1.0, 0.0};
    return z / a;
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double deg_to_rad(double deg) { return deg * pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / pi; }

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 over the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace fdris
