// SPDX-License-Identifier: Apache-2.0
#include "fdris/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace fdris {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary); // '\n' endings on all platforms
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace)
{
    auto out = open_out(path);
    out << "iter,rate_bpcu,pdd_residual,max_covert_violation,rho_pen\n";
    for (const auto& r : trace)
        out << r.iter << ',' << format_double(r.rate_bpcu) << ','
            << format_double(r.pdd_residual) << ','
            << format_double(r.max_covert_violation) << ','
            << format_double(r.rho_pen) << '\n';
}

void write_metrics_json(const std::string& path, const AlternateResult& res)
{
    json j;
    j["rate_bpcu"] = res.rate_bpcu;
    j["omega_tilde"] = res.log_mgf_w;
    j["h_k"] = res.h_k;
    j["budget"] = res.budget_w;
    j["feasible"] = res.feasible;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

int resolve_threads(int requested, int tasks)
{
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1)
        hw = 1;
    int t = requested > 0 ? requested : hw;
    return std::max(1, std::min(t, tasks));
}

std::string zero_pad(int v, int width)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*d", width, v);
    return buf;
}

} // namespace

RunSummary run_optimize(const Scenario& scn, const RunOptions& opts)
{
    scn.validate();
    const int n_mc = opts.n_mc.value_or(scn.n_mc);
    const std::uint64_t seed = opts.seed.value_or(scn.seed);
    if (n_mc < 1)
        throw std::invalid_argument("run_optimize: n_mc must be >= 1");

    RunSummary sum;
    sum.draws.resize(n_mc);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_mc)
                return;
            const ChannelRealization chan = make_channel(
                scn.ris, scn.alice, scn.bob, scn.willies, scn.rician_beta_db,
                split_seed(seed, std::uint64_t(i)));
            AlternateResult res = alternate(chan, scn.ris, scn.covert,
                                            scn.df_min_hz, scn.df_max_hz,
                                            opts.solver, opts.scheme);
            DrawResult& d = sum.draws[i];
            d.draw = i;
            d.rate_bpcu = res.rate_bpcu;
            d.feasible = res.feasible;
            d.iterations = res.iterations;
            d.detail = std::move(res);
        }
    };

    const int n_threads = resolve_threads(opts.threads, n_mc);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    double mean = 0.0, feas = 0.0;
    for (const auto& d : sum.draws) {
        mean += d.rate_bpcu;
        feas += d.feasible ? 1.0 : 0.0;
    }
    mean /= n_mc;
    double var = 0.0;
    for (const auto& d : sum.draws)
        var += (d.rate_bpcu - mean) * (d.rate_bpcu - mean);
    sum.mean_rate = mean;
    sum.std_rate = n_mc > 1 ? std::sqrt(var / (n_mc - 1)) : 0.0;
    sum.feasible_fraction = feas / n_mc;

    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        const fs::path dir(opts.out_dir);
        {
            auto out = open_out((dir / "draws.csv").string());
            out << "draw,rate_bpcu,feasible,iterations\n";
            for (const auto& d : sum.draws)
                out << d.draw << ',' << format_double(d.rate_bpcu) << ','
                    << (d.feasible ? 1 : 0) << ',' << d.iterations << '\n';
        }
        {
            json j;
            j["mean_rate"] = sum.mean_rate;
            j["std_rate"] = sum.std_rate;
            j["feasible_fraction"] = sum.feasible_fraction;
            auto out = open_out((dir / "summary.json").string());
            out << j.dump(2) << '\n';
        }
        for (const auto& d : sum.draws) {
            const std::string tag = zero_pad(d.draw, 3);
            write_trace_csv((dir / ("trace_" + tag + ".csv")).string(), d.detail.trace);
            write_metrics_json((dir / ("metrics_" + tag + ".json")).string(), d.detail);
        }
    }
    return sum;
}

RunSummary run_conventional_baseline(const Scenario& scn, RunOptions opts)
{
    opts.scheme = Scheme::conventional;
    return run_optimize(scn, opts);
}

int GridAxis::count() const
{
    if (!(step > 0.0) || stop < start)
        throw std::invalid_argument("grid axis: need start <= stop and step > 0");
    return int(std::floor((stop - start) / step + 1e-9)) + 1;
}

double GridAxis::at(int i) const { return start + i * step; }

GridAxis parse_axis(const std::string& spec)
{
    GridAxis ax;
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid axis '" + spec + "' must be start:stop:step");
    try {
        ax.start = std::stod(spec.substr(0, c1));
        ax.stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        ax.step = std::stod(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("grid axis '" + spec + "' has a malformed number");
    }
    (void)ax.count();
    return ax;
}

namespace {

void write_svg_heatmap(const std::string& path, const GridAxis& xa, const GridAxis& ya,
                       const std::vector<std::vector<double>>& gain_db,
                       const std::string& x_label, const std::string& y_label)
{
    const int nx = xa.count();
    const int ny = ya.count();
    const double cell = 6.0;
    const double margin = 40.0;
    const double w = margin * 2 + nx * cell;
    const double h = margin * 2 + ny * cell;
    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            double v = gain_db[iy][ix];
            v = std::max(-60.0, std::min(0.0, v));
            const double t = (v + 60.0) / 60.0; // 0..1
            const int r = int(255 * t);
            const int g = int(40 + 120 * t);
            const int b = int(255 * (1.0 - t));
            out << "<rect x=\"" << margin + ix * cell << "\" y=\""
                << margin + (ny - 1 - iy) * cell << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ',' << g << ','
                << b << ")\"/>\n";
        }
    }
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"12\" y=\"" << h / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 12 "
        << h / 2 << ")\">" << y_label << "</text>\n";
    out << "</svg>\n";
}

} // namespace

std::vector<BeampatternRow> run_beampattern(const Scenario& scn, Scheme scheme,
                                            const GridAxis& theta, const GridAxis& second,
                                            bool second_is_dist, double fixed_value,
                                            const std::string& csv_path,
                                            const std::string& svg_path)
{
    scn.validate();
    const int n = scn.ris.elements();

    // Bob-aligned state; modulation frequencies follow the linear ramp
    rvec freqs(n);
    for (int l = 0; l < n; ++l)
        freqs[l] = n == 1 ? scn.df_min_hz
                          : scn.df_min_hz + l * (scn.df_max_hz - scn.df_min_hz) / (n - 1);
    BeamState state;
    state.freqs_hz = freqs;
    state.delays_s = align_delays(scn.ris, scn.alice, scn.bob, freqs);
    state.reflect = theta_from_delays(freqs, state.delays_s, scn.ris.harmonic);
    const cvec conv = conventional_aligned_coeffs(scn.ris, scn.alice, scn.bob);

    const int nt = theta.count();
    const int ns = second.count();
    std::vector<BeampatternRow> rows;
    rows.reserve(size_t(nt) * ns);
    std::vector<std::vector<double>> db(ns, std::vector<double>(nt));

    for (int it = 0; it < nt; ++it) {
        for (int is = 0; is < ns; ++is) {
            SphericalPosition probe;
            probe.azimuth_rad = deg_to_rad(theta.at(it));
            if (second_is_dist) {
                probe.elevation_rad = deg_to_rad(fixed_value);
                probe.range_m = second.at(is);
            } else {
                probe.elevation_rad = deg_to_rad(second.at(is));
                probe.range_m = fixed_value;
            }
            const double gain = scheme == Scheme::fdris
                ? beampattern_fdris(scn.ris, scn.alice, probe, state)
                : beampattern_conventional(scn.ris, scn.alice, probe, conv);
            BeampatternRow row;
            row.theta_deg = theta.at(it);
            row.phi_deg = rad_to_deg(probe.elevation_rad);
            row.dist_m = probe.range_m;
            row.gain_linear = gain;
            row.gain_db = gain > 0.0 ? 10.0 * std::log10(gain) : -400.0;
            rows.push_back(row);
            db[is][it] = row.gain_db;
        }
    }

    if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        out << "theta_deg,phi_deg,dist_m,gain_linear,gain_db\n";
        for (const auto& r : rows)
            out << format_double(r.theta_deg) << ',' << format_double(r.phi_deg) << ','
                << format_double(r.dist_m) << ',' << format_double(r.gain_linear) << ','
                << format_double(r.gain_db) << '\n';
    }
    if (!svg_path.empty())
        write_svg_heatmap(svg_path, theta, second, db, "azimuth [deg]",
                          second_is_dist ? "distance [m]" : "elevation [deg]");
    return rows;
}

std::vector<SweepRow> run_sweep(const Scenario& scn, SweepParam param,
                                const std::vector<double>& values, const RunOptions& opts,
                                bool include_baseline, const std::string& csv_path)
{
    if (values.empty())
        throw std::invalid_argument("run_sweep: need at least one value");
    std::vector<SweepRow> rows;
    for (const double v : values) {
        Scenario s = scn;
        switch (param) {
        case SweepParam::elements:
            s.set_elements(int(std::lround(v)));
            break;
        case SweepParam::covert_requirement:
            s.covert.covert_requirement = v;
            break;
        case SweepParam::df_max:
            s.df_max_hz = v;
            break;
        }
        s.validate();
        const RunSummary fd = run_optimize(s, opts);
        rows.push_back({v, "fdris", fd.mean_rate, fd.std_rate});
        if (include_baseline) {
            const RunSummary cv = run_conventional_baseline(s, opts);
            rows.push_back({v, "conventional", cv.mean_rate, cv.std_rate});
        }
    }
    if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        out << "param_value,scheme,mean_rate,std_rate\n";
        for (const auto& r : rows)
            out << format_double(r.param_value) << ',' << r.scheme << ','
                << format_double(r.mean_rate) << ',' << format_double(r.std_rate) << '\n';
    }
    return rows;
}

void write_dep_curve(const CovertConfig& cfg, const GridAxis& omega_grid,
                     const std::string& csv_path)
{
    cfg.validate();
    auto out = open_out(csv_path);
    out << "tau,omega,dep\n";
    const int n = omega_grid.count();
    for (int i = 0; i < n; ++i) {
        const double omega = omega_grid.at(i);
        const double tau = optimal_threshold(omega, cfg, 0);
        out << format_double(tau) << ',' << format_double(omega) << ','
            << format_double(optimal_dep(omega, cfg, 0)) << '\n';
    }
}

} // namespace fdris
