// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: beampattern rasters, covert-rate optimization
// runs, parameter sweeps and DEP curves.
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdris/experiment.hpp"

namespace {

using namespace fdris;

std::map<std::string, GridAxis> parse_grid(const std::string& spec)
{
    std::map<std::string, GridAxis> axes;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        if (comma == std::string::npos)
            comma = spec.size();
        const std::string part = spec.substr(pos, comma - pos);
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid part '" + part + "' must be name=start:stop:step");
        axes[part.substr(0, eq)] = parse_axis(part.substr(eq + 1));
        pos = comma + 1;
    }
    return axes;
}

std::vector<double> parse_values(const std::string& csv)
{
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto comma = csv.find(',', pos);
        if (comma == std::string::npos)
            comma = csv.size();
        vals.push_back(std::stod(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (vals.empty())
        throw std::invalid_argument("empty value list");
    return vals;
}

int cmd_beampattern(const std::string& scenario, const std::string& grid_spec,
                    double fixed_phi, double fixed_dist, bool have_phi, bool have_dist,
                    const std::string& mode, const std::string& out,
                    const std::string& svg)
{
    const Scenario scn = resolve_scenario(scenario);
    const auto axes = parse_grid(grid_spec);
    if (!axes.count("theta"))
        throw std::invalid_argument("grid must contain a theta axis");
    const bool grid_dist = axes.count("dist") > 0;
    const bool grid_phi = axes.count("phi") > 0;
    if (grid_dist == grid_phi)
        throw std::invalid_argument("grid must contain exactly one of dist or phi");
    double fixed = 0.0;
    if (grid_dist) {
        if (!have_phi)
            throw std::invalid_argument("theta x dist grid needs --phi for the fixed elevation");
        fixed = fixed_phi;
    } else {
        if (!have_dist)
            throw std::invalid_argument("theta x phi grid needs --dist for the fixed distance");
        fixed = fixed_dist;
    }
    const Scheme scheme = mode == "conventional" ? Scheme::conventional : Scheme::fdris;
    run_beampattern(scn, scheme, axes.at("theta"),
                    grid_dist ? axes.at("dist") : axes.at("phi"), grid_dist, fixed, out, svg);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"frequency-diverse RIS covert communication simulator"};
    app.require_subcommand(1);

    // beampattern
    std::string bp_scenario, bp_grid, bp_out, bp_svg, bp_mode = "fdris";
    double bp_phi = 0.0, bp_dist = 0.0;
    auto* bp = app.add_subcommand("beampattern", "rasterize the Bob-aligned beampattern");
    bp->add_option("--scenario", bp_scenario, "scenario file or preset")->required();
    bp->add_option("--grid", bp_grid, "e.g. theta=0:180:1,dist=5:80:0.5")->required();
    auto* bp_phi_opt = bp->add_option("--phi", bp_phi, "fixed elevation in degrees");
    auto* bp_dist_opt = bp->add_option("--dist", bp_dist, "fixed distance in meters");
    bp->add_option("--mode", bp_mode, "fdris|conventional")
        ->check(CLI::IsMember({"fdris", "conventional"}));
    bp->add_option("--out", bp_out, "output CSV")->required();
    bp->add_option("--svg", bp_svg, "optional SVG heatmap");

    // optimize
    std::string op_scenario, op_out_dir, op_baseline;
    std::uint64_t op_seed = 0;
    int op_mc = 0, op_threads = 0;
    bool op_have_seed = false;
    auto* op = app.add_subcommand("optimize", "run the covert-rate optimizer over channel draws");
    op->add_option("--scenario", op_scenario, "scenario file or preset")->required();
    op->add_option("--baseline", op_baseline, "run the named baseline instead (conventional)")
        ->check(CLI::IsMember({"conventional"}));
    auto* op_seed_opt = op->add_option("--seed", op_seed, "override scenario seed");
    op->add_option("--mc", op_mc, "override number of channel draws");
    op->add_option("--threads", op_threads, "worker threads (default: hardware)");
    op->add_option("--out-dir", op_out_dir, "output directory")->required();

    // sweep
    std::string sw_scenario, sw_param, sw_values, sw_out;
    int sw_mc = 0, sw_threads = 0;
    bool sw_baseline = false;
    auto* sw = app.add_subcommand("sweep", "sweep L, xi or dfmax and record mean rates");
    sw->add_option("--scenario", sw_scenario, "scenario file or preset")->required();
    sw->add_option("--param", sw_param, "L|xi|dfmax")
        ->required()
        ->check(CLI::IsMember({"L", "xi", "dfmax"}));
    sw->add_option("--values", sw_values, "comma-separated values")->required();
    sw->add_flag("--baseline", sw_baseline, "also run the conventional baseline");
    sw->add_option("--mc", sw_mc, "override number of channel draws");
    sw->add_option("--threads", sw_threads, "worker threads");
    sw->add_option("--out", sw_out, "output CSV")->required();

    // dep
    double dep_varsigma = 2.0, dep_sigma_dbm = -110.0;
    std::string dep_grid, dep_out;
    auto* dp = app.add_subcommand("dep", "optimal detection threshold / DEP curve");
    dp->add_option("--varsigma", dep_varsigma, "noise uncertainty factor (> 1)");
    dp->add_option("--sigma2-dbm", dep_sigma_dbm, "nominal warden noise power in dBm");
    dp->add_option("--omega-grid", dep_grid, "start:stop:step in W")->required();
    dp->add_option("--out", dep_out, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bp->parsed())
            return cmd_beampattern(bp_scenario, bp_grid, bp_phi, bp_dist,
                                   bp_phi_opt->count() > 0, bp_dist_opt->count() > 0,
                                   bp_mode, bp_out, bp_svg);
        if (op->parsed()) {
            op_have_seed = op_seed_opt->count() > 0;
            const Scenario scn = resolve_scenario(op_scenario);
            RunOptions opts;
            opts.scheme = op_baseline == "conventional" ? Scheme::conventional : Scheme::fdris;
            opts.threads = op_threads;
            opts.out_dir = op_out_dir;
            if (op_mc > 0)
                opts.n_mc = op_mc;
            if (op_have_seed)
                opts.seed = op_seed;
            const RunSummary sum = run_optimize(scn, opts);
            std::printf("mean_rate=%s std_rate=%s feasible_fraction=%s\n",
                        format_double(sum.mean_rate).c_str(),
                        format_double(sum.std_rate).c_str(),
                        format_double(sum.feasible_fraction).c_str());
            return sum.feasible_fraction < 1.0 ? 2 : 0;
        }
        if (sw->parsed()) {
            const Scenario scn = resolve_scenario(sw_scenario);
            RunOptions opts;
            opts.threads = sw_threads;
            if (sw_mc > 0)
                opts.n_mc = sw_mc;
            SweepParam param = SweepParam::elements;
            if (sw_param == "xi")
                param = SweepParam::covert_requirement;
            else if (sw_param == "dfmax")
                param = SweepParam::df_max;
            run_sweep(scn, param, parse_values(sw_values), opts, sw_baseline, sw_out);
            std::printf("wrote %s\n", sw_out.c_str());
            return 0;
        }
        if (dp->parsed()) {
            CovertConfig cfg;
            cfg.noise_uncertainty = dep_varsigma;
            cfg.covert_requirement = 0.5; // unused by the curve itself
            cfg.penalty_exponent = 100.0;
            cfg.warden_noise_w = {dbm_to_watt(dep_sigma_dbm)};
            cfg.bob_noise_w = cfg.warden_noise_w[0];
            cfg.tx_power_w = 1.0;
            write_dep_curve(cfg, parse_axis(dep_grid), dep_out);
            std::printf("wrote %s\n", dep_out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
