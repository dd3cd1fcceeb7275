#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace owwe {

/* One internal interface: the speed that applies below top_depth. */
struct Layer {
    double top_depth = 0.0; // m, strictly inside (0, z_max)
    double speed = 0.0;     // m/s
};

/**
 * Stratified velocity profile on [0, z_max]. The speed above the first
 * interface equals c_sup (the medium continues into the upper half-space
 * with the same speed, so the top of the domain reflects nothing). Across
 * each interface the profile ramps linearly over a band of width delta
 * centred on the interface depth; delta = 0 means a sharp jump.
 */
struct VelocityModel {
    std::vector<Layer> layers; // ordered by top_depth
    double delta = 0.0;        // transition band width, m
    double rho = 1000.0;       // kg/m^3, constant
    double z_max = 0.0;        // m
    double c_sup = 0.0;        // m/s, speed above the first interface
    double c_inf = 0.0;        // m/s, speed below z_max

    double min_speed() const;
    double max_speed() const;
};

/* Speed at depth z; linear inside transition bands, constant elsewhere. */
double evaluate_speed(const VelocityModel& model, double z);

struct Grid {
    double dx = 0.0; // m
    double dz = 0.0; // m
    int nx = 0;      // power of two
    int nz = 0;
    double dt = 0.0; // s
    int nt = 0;      // power of two
};

struct ShotGeometry {
    double source_x = 0.0;       // m, source sits at z = 0
    double receiver_depth = 0.0; // m, must land on a grid level
    double peak_frequency = 25.0; // Hz, Ricker nu*
};

struct RunConfig {
    int epsilon = 0;                 // transmission in rhs (0) or propagator (1)
    int multiples = 0;               // N; terms up to j = 2N+1
    double omega_max = 0.0;          // rad/s, frequency window cutoff
    bool include_transmission = true;
    double angle_cutoff = 85.0;      // deg, taper reaches zero here
    double taper_width = 5.0;        // deg
    double eta = 2.0 * pi * 0.5;     // rad/s, imaginary frequency shift
};

/**
 * Everything derived from a validated (model, grid, shot, run) quadruple:
 * per-cell speeds, interface levels, source column and receiver row. Cell l
 * (1..nz) spans [(l-1)dz, l dz] and carries the speed at its midpoint;
 * interface symbols live on the levels between cells.
 */
struct RunPlan {
    VelocityModel model;
    Grid grid;
    ShotGeometry shot;
    RunConfig run;

    std::vector<double> cell_speed;    // size nz, cell 1..nz at index l-1
    std::vector<int> interface_levels; // levels l in 1..nz-1 where speed jumps
    int source_index = 0;              // column of the shot
    int receiver_level = 0;            // row of the receivers
    double source_x_snapped = 0.0;     // source_index * dx

    double speed_at_source() const { return cell_speed.front(); }
};

/* Checks every cross-field invariant; throws config_error listing all violations. */
RunPlan validate(const RunConfig& run, const Grid& grid,
                 const VelocityModel& model, const ShotGeometry& shot);

/**
 * Flat sectioned key = value config file; see docs/README for the key list.
 * Unknown sections or keys are errors.
 */
struct Config {
    VelocityModel model;
    Grid grid;
    ShotGeometry shot;
    RunConfig run;

    /* Canonical text: sorted sections/keys, normalized numbers. */
    std::string canonical() const;
    /* FNV-1a 64 of the canonical text, as 16 hex chars. */
    std::string hash() const;

    RunPlan validate() const { return owwe::validate(run, grid, model, shot); }
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

/* Applies "section.key = value" to an existing config (CLI overrides). */
void override_config(Config& cfg, const std::string& dotted_key, const std::string& value);

std::uint64_t fnv1a64(const std::string& s);

} // namespace owwe
