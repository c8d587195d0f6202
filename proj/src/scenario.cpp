// SPDX-License-Identifier: Apache-2.0
#include "fdris/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fdris {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw std::invalid_argument("scenario: field '" + where + "': " + what);
}

double get_number(const json& j, const std::string& where)
{
    if (!j.is_number())
        fail(where, "expected a number");
    return j.get<double>();
}

double get_number(const json& parent, const char* key, const std::string& where)
{
    if (!parent.contains(key))
        fail(where, "missing");
    return get_number(parent.at(key), where);
}

int get_int(const json& parent, const char* key, const std::string& where)
{
    if (!parent.contains(key))
        fail(where, "missing");
    const json& j = parent.at(key);
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    return j.get<int>();
}

SphericalPosition parse_position(const json& j, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object {theta_deg, phi_deg, dist_m}");
    SphericalPosition p;
    p.azimuth_rad = deg_to_rad(get_number(j, "theta_deg", where + ".theta_deg"));
    p.elevation_rad = deg_to_rad(get_number(j, "phi_deg", where + ".phi_deg"));
    p.range_m = get_number(j, "dist_m", where + ".dist_m");
    return p;
}

SphericalPosition position_deg(double theta_deg, double phi_deg, double dist_m)
{
    return {deg_to_rad(theta_deg), deg_to_rad(phi_deg), dist_m};
}

} // namespace

void Scenario::validate() const
{
    ris.validate();
    alice.validate();
    bob.validate();
    if (willies.empty())
        throw std::invalid_argument("scenario: at least one warden required");
    for (const auto& w : willies)
        w.validate();
    covert.validate();
    if (covert.wardens() != int(willies.size()))
        throw std::invalid_argument("scenario: warden noise list length must match positions");
    if (!(df_min_hz > 0.0) || !(df_min_hz < df_max_hz))
        throw std::invalid_argument("scenario: need 0 < df_min < df_max");
    if (n_mc < 1)
        throw std::invalid_argument("scenario: n_mc must be >= 1");
    if (!(db_to_linear(rician_beta_db) > 0.0))
        throw std::invalid_argument("scenario: bad Rician factor");
}

void Scenario::set_elements(int total)
{
    const int side = int(std::lround(std::sqrt(double(total))));
    if (side < 1 || side * side != total)
        throw std::invalid_argument("scenario: element count must be a perfect square");
    ris.num_y = side;
    ris.num_z = side;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("scenario: cannot open '" + path + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("scenario: " + path + ": " + e.what());
    }
    if (!root.is_object())
        throw std::invalid_argument("scenario: top level must be an object");

    Scenario s;
    s.name = root.value("name", std::filesystem::path(path).stem().string());

    if (!root.contains("ris") || !root.at("ris").is_object())
        fail("ris", "missing object");
    const json& ris = root.at("ris");
    s.ris.num_y = get_int(ris, "l_y", "ris.l_y");
    s.ris.num_z = get_int(ris, "l_z", "ris.l_z");
    s.ris.carrier_hz = get_number(ris, "carrier_hz", "ris.carrier_hz");
    s.ris.spacing_m = ris.contains("spacing_m")
        ? get_number(ris, "spacing_m", "ris.spacing_m")
        : RisGeometry::half_wavelength_spacing(s.ris.carrier_hz);
    s.ris.harmonic = ris.contains("harmonic") ? get_int(ris, "harmonic", "ris.harmonic") : 1;
    s.ris.amp0 = ris.contains("amp0") ? get_number(ris, "amp0", "ris.amp0") : 1.0;
    s.ris.phase0 = ris.contains("phi0_rad") ? get_number(ris, "phi0_rad", "ris.phi0_rad") : 0.0;

    if (!root.contains("alice"))
        fail("alice", "missing");
    s.alice = parse_position(root.at("alice"), "alice");
    if (!root.contains("bob"))
        fail("bob", "missing");
    s.bob = parse_position(root.at("bob"), "bob");

    if (!root.contains("willies") || !root.at("willies").is_array() || root.at("willies").empty())
        fail("willies", "expected a non-empty array");
    int idx = 0;
    for (const auto& w : root.at("willies"))
        s.willies.push_back(parse_position(w, "willies[" + std::to_string(idx++) + "]"));

    if (!root.contains("covert") || !root.at("covert").is_object())
        fail("covert", "missing object");
    const json& cov = root.at("covert");
    s.covert.noise_uncertainty = cov.contains("varsigma")
        ? get_number(cov, "varsigma", "covert.varsigma") : 2.0;
    s.covert.covert_requirement = get_number(cov, "xi", "covert.xi");
    s.covert.penalty_exponent = cov.contains("psi")
        ? get_number(cov, "psi", "covert.psi") : 100.0;
    s.covert.bob_noise_w = dbm_to_watt(get_number(cov, "noise_b_dbm", "covert.noise_b_dbm"));
    s.covert.tx_power_w = dbm_to_watt(get_number(cov, "tx_power_dbm", "covert.tx_power_dbm"));
    if (!cov.contains("noise_w_dbm"))
        fail("covert.noise_w_dbm", "missing");
    const json& nw = cov.at("noise_w_dbm");
    if (nw.is_number()) {
        s.covert.warden_noise_w.assign(s.willies.size(), dbm_to_watt(nw.get<double>()));
    } else if (nw.is_array()) {
        for (const auto& v : nw)
            s.covert.warden_noise_w.push_back(dbm_to_watt(get_number(v, "covert.noise_w_dbm[]")));
    } else {
        fail("covert.noise_w_dbm", "expected number or array");
    }

    s.rician_beta_db = root.contains("rician_beta_db")
        ? get_number(root, "rician_beta_db", "rician_beta_db") : 15.0;

    if (!root.contains("freq_bounds_hz") || !root.at("freq_bounds_hz").is_object())
        fail("freq_bounds_hz", "missing object {min, max}");
    s.df_min_hz = get_number(root.at("freq_bounds_hz"), "min", "freq_bounds_hz.min");
    s.df_max_hz = get_number(root.at("freq_bounds_hz"), "max", "freq_bounds_hz.max");

    s.n_mc = root.contains("n_mc") ? get_int(root, "n_mc", "n_mc") : 20;
    if (root.contains("seed")) {
        const json& sd = root.at("seed");
        if (!sd.is_number_unsigned() && !sd.is_number_integer())
            fail("seed", "expected an integer");
        s.seed = sd.get<std::uint64_t>();
    }

    s.validate();
    return s;
}

bool is_preset(const std::string& name)
{
    return name == "case1" || name == "case2" || name == "case3";
}

Scenario scenario_preset(const std::string& name)
{
    Scenario s;
    s.name = name;
    s.ris.num_y = 6;
    s.ris.num_z = 6;
    s.ris.carrier_hz = 28e9;
    s.ris.spacing_m = RisGeometry::half_wavelength_spacing(s.ris.carrier_hz);
    s.ris.harmonic = 1;
    s.ris.amp0 = 1.0;
    s.ris.phase0 = 0.0;

    s.alice = position_deg(70.0, 10.0, 70.0);
    s.bob = position_deg(120.0, 30.0, 20.0);

    if (name == "case1") {
        s.willies = {position_deg(85.0, 50.0, 45.0), position_deg(90.0, 15.0, 20.0),
                     position_deg(100.0, 45.0, 55.0), position_deg(145.0, 60.0, 30.0)};
    } else if (name == "case2") {
        s.willies = {position_deg(115.0, 30.0, 45.0), position_deg(110.0, 25.0, 20.0),
                     position_deg(110.0, 35.0, 55.0), position_deg(125.0, 40.0, 30.0)};
    } else if (name == "case3") {
        s.willies = {position_deg(120.0, 30.0, 15.0), position_deg(110.0, 25.0, 20.0),
                     position_deg(110.0, 35.0, 55.0), position_deg(125.0, 40.0, 30.0)};
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }

    s.covert.noise_uncertainty = 2.0; // 3 dB noise uncertainty default
    s.covert.covert_requirement = 0.2;
    s.covert.penalty_exponent = 100.0;
    s.covert.warden_noise_w.assign(4, dbm_to_watt(-110.0));
    s.covert.bob_noise_w = dbm_to_watt(-110.0);
    s.covert.tx_power_w = dbm_to_watt(15.0);

    s.rician_beta_db = 15.0;
    s.df_min_hz = 10e6;
    s.df_max_hz = 30e6;
    s.n_mc = 20;
    s.seed = 1;
    s.validate();
    return s;
}

Scenario resolve_scenario(const std::string& file_or_preset)
{
    if (std::filesystem::exists(file_or_preset))
        return load_scenario(file_or_preset);
    if (is_preset(file_or_preset))
        return scenario_preset(file_or_preset);
    throw std::invalid_argument("scenario '" + file_or_preset +
                                "' is neither a file nor a preset (case1|case2|case3)");
}

} // namespace fdris
