// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration: JSON loading with unit conversions, plus the
// built-in case1/case2/case3 presets.
#ifndef FDRIS_SCENARIO_HPP
#define FDRIS_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdris/covert.hpp"
#include "fdris/geometry.hpp"

namespace fdris {

struct Scenario {
    std::string name;
    RisGeometry ris;
    SphericalPosition alice;
    SphericalPosition bob;
    std::vector<SphericalPosition> willies;
    CovertConfig covert;
    double rician_beta_db = 15.0;
    double df_min_hz = 0.0;
    double df_max_hz = 0.0;
    int n_mc = 20;
    std::uint64_t seed = 1;

    void validate() const;
    // square panel resize helper for element-count sweeps
    void set_elements(int total);
};

// Load from a JSON file; angles in degrees, powers in dBm, distances in m,
// frequencies in Hz. Throws with a field-path diagnostic on any violation;
// never returns partial state.
Scenario load_scenario(const std::string& path);

// Resolve a CLI argument: an existing file path is loaded, otherwise the
// name must be one of the presets.
Scenario resolve_scenario(const std::string& file_or_preset);

bool is_preset(const std::string& name);
Scenario scenario_preset(const std::string& name); // case1 | case2 | case3

} // namespace fdris

#endif
