#include "model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace owwe {

double VelocityModel::min_speed() const {
    double m = c_sup;
    for (const auto& l : layers) m = std::min(m, l.speed);
    return m;
}

double VelocityModel::max_speed() const {
    double m = c_sup;
    for (const auto& l : layers) m = std::max(m, l.speed);
    return m;
}

double evaluate_speed(const VelocityModel& model, double z) {
    if (z < 0.0 || z > model.z_max)
        throw std::domain_error("evaluate_speed: z = " + std::to_string(z) +
                                " outside [0, " + std::to_string(model.z_max) + "]");
    double c = model.c_sup;
    for (const auto& layer : model.layers) {
        const double lo = layer.top_depth - 0.5 * model.delta;
        const double hi = layer.top_depth + 0.5 * model.delta;
        if (z <= lo) break;
        if (z >= hi || model.delta == 0.0) {
            c = layer.speed; // fully below this interface band
        } else {
            c = c + (layer.speed - c) * (z - lo) / (hi - lo);
            break;
        }
    }
    return c;
}

namespace {

bool power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

class Violations {
public:
    void add(const std::string& field, const std::string& what) {
        msgs_.push_back(field + ": " + what);
    }
    void raise_if_any() const {
        if (msgs_.empty()) return;
        std::string all = "invalid configuration:";
        for (const auto& m : msgs_) all += "\n  - " + m;
        throw config_error(all);
    }

private:
    std::vector<std::string> msgs_;
};

} // namespace

RunPlan validate(const RunConfig& run, const Grid& grid,
                 const VelocityModel& model, const ShotGeometry& shot) {
    Violations v;

    /* model */
    if (model.z_max <= 0.0) v.add("model.z_max", "must be > 0");
    if (model.c_sup <= 0.0) v.add("model.c_sup", "must be > 0");
    if (model.c_inf <= 0.0) v.add("model.c_inf", "must be > 0");
    if (model.rho <= 0.0) v.add("model.rho", "must be > 0");
    if (model.delta < 0.0) v.add("model.delta", "must be >= 0");
    double prev_top = 0.0;
    double min_thickness = model.z_max;
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const auto& l = model.layers[i];
        if (l.speed <= 0.0)
            v.add("model.layers[" + std::to_string(i) + "].speed", "must be > 0");
        if (!(l.top_depth > 0.0 && l.top_depth < model.z_max))
            v.add("model.layers[" + std::to_string(i) + "].top_depth",
                  "must lie strictly inside (0, z_max)");
        if (i > 0 && !(l.top_depth > model.layers[i - 1].top_depth))
            v.add("model.layers[" + std::to_string(i) + "].top_depth",
                  "top depths must be strictly increasing");
        min_thickness = std::min(min_thickness, l.top_depth - prev_top);
        prev_top = l.top_depth;
    }
    if (!model.layers.empty())
        min_thickness = std::min(min_thickness, model.z_max - model.layers.back().top_depth);
    if (model.delta > min_thickness)
        v.add("model.delta", "must not exceed the minimum layer thickness (" +
                                 std::to_string(min_thickness) + ")");

    /* grid */
    if (grid.dx <= 0.0) v.add("grid.dx", "must be > 0");
    if (grid.dz <= 0.0) v.add("grid.dz", "must be > 0");
    if (grid.dt <= 0.0) v.add("grid.dt", "must be > 0");
    if (!power_of_two(grid.nx)) v.add("grid.nx", "must be a power of two (FFT-matched)");
    if (!power_of_two(grid.nt)) v.add("grid.nt", "must be a power of two (FFT-matched)");
    if (grid.nz <= 0) v.add("grid.nz", "must be > 0");
    if (grid.nz > 0 && grid.dz > 0.0 && model.z_max > 0.0 &&
        std::abs(grid.nz * grid.dz - model.z_max) > 1e-6 * model.z_max)
        v.add("grid.nz", "nz*dz must equal model.z_max (" + std::to_string(grid.nz * grid.dz) +
                             " vs " + std::to_string(model.z_max) + ")");
    if (model.delta > 0.0 && grid.dz > 0.0 &&
        std::abs(model.delta - grid.dz) > 1e-9 * grid.dz)
        v.add("grid.dz", "dz must equal model.delta when delta > 0 (" +
                             std::to_string(grid.dz) + " vs " + std::to_string(model.delta) + ")");

    /* shot */
    if (!(shot.source_x >= 0.0 && shot.source_x < grid.nx * grid.dx))
        v.add("shot.source_x", "must lie in [0, nx*dx)");
    if (!(shot.receiver_depth >= 0.0 && shot.receiver_depth <= model.z_max))
        v.add("shot.receiver_depth", "must lie in [0, z_max]");
    if (shot.peak_frequency <= 0.0) v.add("shot.peak_frequency", "must be > 0");
    if (grid.dz > 0.0) {
        const double lr = shot.receiver_depth / grid.dz;
        if (std::abs(lr - std::round(lr)) > 1e-6)
            v.add("shot.receiver_depth", "must land on a grid level (multiple of dz)");
    }

    /* run */
    if (run.epsilon != 0 && run.epsilon != 1) v.add("run.epsilon", "must be 0 or 1");
    if (run.multiples < 0) v.add("run.multiples", "must be >= 0");
    if (run.omega_max <= 0.0) v.add("run.f_max", "must be > 0");
    if (!(run.angle_cutoff > 0.0 && run.angle_cutoff < 90.0))
        v.add("run.angle_cutoff", "must lie in (0, 90) degrees");
    if (run.taper_width < 0.0 || run.taper_width >= run.angle_cutoff)
        v.add("run.taper_width", "must lie in [0, angle_cutoff)");
    if (run.eta < 0.0) v.add("run.eta", "must be >= 0");

    v.raise_if_any();

    RunPlan plan;
    plan.model = model;
    plan.grid = grid;
    plan.shot = shot;
    plan.run = run;
    plan.cell_speed.resize(grid.nz);
    for (int l = 1; l <= grid.nz; ++l)
        plan.cell_speed[l - 1] = evaluate_speed(model, (l - 0.5) * grid.dz);
    for (int l = 1; l < grid.nz; ++l)
        if (plan.cell_speed[l] != plan.cell_speed[l - 1]) plan.interface_levels.push_back(l);
    plan.source_index = static_cast<int>(std::lround(shot.source_x / grid.dx));
    plan.source_index = std::clamp(plan.source_index, 0, grid.nx - 1);
    plan.source_x_snapped = plan.source_index * grid.dx;
    plan.receiver_level = static_cast<int>(std::lround(shot.receiver_depth / grid.dz));
    return plan;
}

/* ---------------- config file parsing ---------------- */

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error("[" + section + "] " + key + ": not a number: '" + v + "'");
    }
}

int parse_int(const std::string& section, const std::string& key, const std::string& v) {
    const double x = parse_number(section, key, v);
    if (x != std::floor(x))
        throw config_error("[" + section + "] " + key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw config_error("[" + section + "] " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<Layer> parse_layers(const std::string& v) {
    std::vector<Layer> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw config_error("[model] layers: expected 'depth:speed', got '" + item + "'");
        Layer l;
        l.top_depth = parse_number("model", "layers", trim(item.substr(0, colon)));
        l.speed = parse_number("model", "layers", trim(item.substr(colon + 1)));
        out.push_back(l);
    }
    return out;
}

std::string format_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void apply_key(Config& cfg, const std::string& section, const std::string& key,
               const std::string& value, bool& c_inf_set) {
    auto& m = cfg.model;
    auto& g = cfg.grid;
    auto& s = cfg.shot;
    auto& r = cfg.run;
    if (section == "model") {
        if (key == "layers") m.layers = parse_layers(value);
        else if (key == "c_sup") m.c_sup = parse_number(section, key, value);
        else if (key == "c_inf") { m.c_inf = parse_number(section, key, value); c_inf_set = true; }
        else if (key == "delta") m.delta = parse_number(section, key, value);
        else if (key == "rho") m.rho = parse_number(section, key, value);
        else if (key == "z_max") m.z_max = parse_number(section, key, value);
        else throw config_error("[model] unknown key '" + key + "'");
    } else if (section == "grid") {
        if (key == "dx") g.dx = parse_number(section, key, value);
        else if (key == "dz") g.dz = parse_number(section, key, value);
        else if (key == "nx") g.nx = parse_int(section, key, value);
        else if (key == "nz") g.nz = parse_int(section, key, value);
        else if (key == "dt") g.dt = parse_number(section, key, value);
        else if (key == "nt") g.nt = parse_int(section, key, value);
        else throw config_error("[grid] unknown key '" + key + "'");
    } else if (section == "shot") {
        if (key == "source_x") s.source_x = parse_number(section, key, value);
        else if (key == "receiver_depth") s.receiver_depth = parse_number(section, key, value);
        else if (key == "peak_frequency") s.peak_frequency = parse_number(section, key, value);
        else throw config_error("[shot] unknown key '" + key + "'");
    } else if (section == "run") {
        if (key == "epsilon") r.epsilon = parse_int(section, key, value);
        else if (key == "multiples") r.multiples = parse_int(section, key, value);
        else if (key == "f_max") r.omega_max = 2.0 * pi * parse_number(section, key, value);
        else if (key == "transmission") r.include_transmission = parse_bool(section, key, value);
        else if (key == "angle_cutoff") r.angle_cutoff = parse_number(section, key, value);
        else if (key == "taper_width") r.taper_width = parse_number(section, key, value);
        else if (key == "eta") r.eta = 2.0 * pi * parse_number(section, key, value);
        else throw config_error("[run] unknown key '" + key + "'");
    } else {
        throw config_error("unknown section [" + section + "]");
    }
}

} // namespace

Config parse_config_text(const std::string& text) {
    Config cfg;
    bool c_inf_set = false;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw config_error("line " + std::to_string(lineno) + ": key outside any section");
        apply_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), c_inf_set);
    }
    if (!c_inf_set)
        cfg.model.c_inf = cfg.model.layers.empty() ? cfg.model.c_sup : cfg.model.layers.back().speed;
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void override_config(Config& cfg, const std::string& dotted_key, const std::string& value) {
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw config_error("override key must look like section.key: '" + dotted_key + "'");
    bool c_inf_set = true; // overrides never re-derive c_inf
    apply_key(cfg, dotted_key.substr(0, dot), dotted_key.substr(dot + 1), value, c_inf_set);
}

std::string Config::canonical() const {
    std::ostringstream o;
    o << "[grid]\n";
    o << "dt = " << format_num(grid.dt) << "\n";
    o << "dx = " << format_num(grid.dx) << "\n";
    o << "dz = " << format_num(grid.dz) << "\n";
    o << "nt = " << grid.nt << "\n";
    o << "nx = " << grid.nx << "\n";
    o << "nz = " << grid.nz << "\n";
    o << "[model]\n";
    o << "c_inf = " << format_num(model.c_inf) << "\n";
    o << "c_sup = " << format_num(model.c_sup) << "\n";
    o << "delta = " << format_num(model.delta) << "\n";
    o << "layers =";
    for (std::size_t i = 0; i < model.layers.size(); ++i)
        o << (i ? "," : " ") << format_num(model.layers[i].top_depth) << ":"
          << format_num(model.layers[i].speed);
    o << "\n";
    o << "rho = " << format_num(model.rho) << "\n";
    o << "z_max = " << format_num(model.z_max) << "\n";
    o << "[run]\n";
    o << "angle_cutoff = " << format_num(run.angle_cutoff) << "\n";
    o << "epsilon = " << run.epsilon << "\n";
    o << "eta = " << format_num(run.eta / (2.0 * pi)) << "\n";
    o << "f_max = " << format_num(run.omega_max / (2.0 * pi)) << "\n";
    o << "multiples = " << run.multiples << "\n";
    o << "taper_width = " << format_num(run.taper_width) << "\n";
    o << "transmission = " << (run.include_transmission ? "true" : "false") << "\n";
    o << "[shot]\n";
    o << "peak_frequency = " << format_num(shot.peak_frequency) << "\n";
    o << "receiver_depth = " << format_num(shot.receiver_depth) << "\n";
    o << "source_x = " << format_num(shot.source_x) << "\n";
    return o.str();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string Config::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

} // namespace owwe
