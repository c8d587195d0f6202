// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo orchestration, sweeps, beampattern rasters and file emission.
// Outputs are byte-deterministic for a fixed (scenario, seed, options).
#ifndef FDRIS_EXPERIMENT_HPP
#define FDRIS_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "fdris/optimizer.hpp"
#include "fdris/scenario.hpp"

namespace fdris {

struct RunOptions {
    Scheme scheme = Scheme::fdris;
    int threads = 0; // 0: hardware concurrency
    std::string out_dir; // empty: no files written
    SolverOptions solver;
    std::optional<int> n_mc;            // override scenario value
    std::optional<std::uint64_t> seed;  // override scenario value
};

struct DrawResult {
    int draw = 0;
    double rate_bpcu = 0.0;
    bool feasible = false;
    int iterations = 0;
    AlternateResult detail;
};

struct RunSummary {
    double mean_rate = 0.0;
    double std_rate = 0.0;
    double feasible_fraction = 0.0;
    std::vector<DrawResult> draws;
};

// One optimizer run per Monte Carlo channel draw; emits draws.csv,
// summary.json and per-draw trace/metrics files when out_dir is set.
RunSummary run_optimize(const Scenario& scn, const RunOptions& opts);

// Same pipeline with the conventional static panel.
RunSummary run_conventional_baseline(const Scenario& scn, RunOptions opts);

struct GridAxis {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    int count() const;
    double at(int i) const;
};

// Parses "theta=0:180:1,dist=5:80:0.5" style grid specs.
GridAxis parse_axis(const std::string& spec);

struct BeampatternRow {
    double theta_deg, phi_deg, dist_m, gain_linear, gain_db;
};

// Rasterizes the Bob-aligned beampattern over theta x dist (fixed phi) or
// theta x phi (fixed dist), writes csv_path and optionally an SVG heatmap.
std::vector<BeampatternRow> run_beampattern(const Scenario& scn, Scheme scheme,
                                            const GridAxis& theta, const GridAxis& second,
                                            bool second_is_dist, double fixed_value,
                                            const std::string& csv_path,
                                            const std::string& svg_path = "");

enum class SweepParam { elements, covert_requirement, df_max };

struct SweepRow {
    double param_value = 0.0;
    std::string scheme;
    double mean_rate = 0.0;
    double std_rate = 0.0;
};

std::vector<SweepRow> run_sweep(const Scenario& scn, SweepParam param,
                                const std::vector<double>& values, const RunOptions& opts,
                                bool include_baseline, const std::string& csv_path);

// Optimal threshold / DEP curve over an omega grid; emits tau,omega,dep.
void write_dep_curve(const CovertConfig& cfg, const GridAxis& omega_grid,
                     const std::string& csv_path);

std::string format_double(double v);

} // namespace fdris

#endif
