// Command-line front end; talks to the solver exclusively through the C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "owwe/owwe.h"

namespace {

struct ConfigDeleter {
    void operator()(owwe_config* c) const { owwe_config_free(c); }
};
struct ResultDeleter {
    void operator()(owwe_result* r) const { owwe_result_free(r); }
};
struct QcurveDeleter {
    void operator()(owwe_qcurve* q) const { owwe_qcurve_free(q); }
};

using ConfigPtr = std::unique_ptr<owwe_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<owwe_result, ResultDeleter>;
using QcurvePtr = std::unique_ptr<owwe_qcurve, QcurveDeleter>;

int report(owwe_status st) {
    if (st != OWWE_OK) std::cerr << "owwe: error: " << owwe_last_error() << "\n";
    return st == OWWE_ERR_USAGE ? OWWE_ERR_CONFIG : static_cast<int>(st);
}

ConfigPtr load_with_overrides(const std::string& path, const std::vector<std::string>& sets,
                              owwe_status& st) {
    owwe_config* raw = nullptr;
    st = owwe_config_load(path.c_str(), &raw);
    ConfigPtr cfg(raw);
    if (st != OWWE_OK) return cfg;
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            st = owwe_config_override(cfg.get(), kv.c_str(), "");
            return cfg;
        }
        st = owwe_config_override(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (st != OWWE_OK) return cfg;
    }
    return cfg;
}

struct QStats {
    double min_err_near_shot = 0.0; // min |q-1| within the near-shot band
    double half_width = 0.0;        // contiguous |x-xs| with |q-1| < 5%
    int defined = 0;
};

QStats qcurve_stats(const owwe_qcurve* q, double near_fraction = 0.1) {
    QStats s;
    const size_t n = owwe_qcurve_size(q);
    const double* v = owwe_qcurve_values(q);
    const unsigned char* def = owwe_qcurve_defined(q);
    const double dx = owwe_qcurve_dx(q);
    const double xs = owwe_qcurve_shot_x(q);
    const double aperture = n * dx;
    const double near_band = near_fraction * aperture;

    double min_err = 1e300;
    for (size_t j = 0; j < n; ++j) {
        if (!def[j]) continue;
        ++s.defined;
        const double off = std::abs(j * dx - xs);
        if (off <= near_band) min_err = std::min(min_err, std::abs(v[j] - 1.0));
    }
    s.min_err_near_shot = min_err < 1e300 ? min_err : std::nan("");

    /* march outward from the shot until |q-1| crosses 5% on either side */
    const long js = std::lround(xs / dx);
    double w = 0.0;
    for (long d = 0;; ++d) {
        const long a = js - d, b = js + d;
        if (a < 0 || b >= static_cast<long>(n)) break;
        bool ok = true;
        for (long j : {a, b})
            if (def[j] && std::abs(v[j] - 1.0) >= 0.05) ok = false;
        if (!ok) break;
        w = d * dx;
    }
    s.half_width = w;
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-way wave-equation modeling for stratified acoustic media"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", csv_out;
    std::vector<std::string> sets;
    int epsilon = -1, multiples = -1, workers = 0;
    bool no_transmission = false;
    std::string snapshot_list, contrast_list;
    std::string full_path, oneway_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "config file")->required();
        cmd->add_option("--out", out_dir, "output root directory");
        cmd->add_option("--set", sets, "override, e.g. --set run.epsilon=1")->take_all();
    };

    CLI::App* oneway = app.add_subcommand("oneway", "run the one-way Bremmer-series engine");
    add_common(oneway);
    oneway->add_option("--epsilon", epsilon, "0: transmission in rhs, 1: in propagator")
        ->check(CLI::Range(0, 1));
    oneway->add_option("--multiples", multiples, "number of multiples N");
    oneway->add_flag("--no-transmission", no_transmission, "force t0 = 0, keep r0");
    oneway->add_option("--workers", workers, "frequency worker pool size");
    oneway->add_option("--snapshot-times", snapshot_list, "comma-separated times, seconds");

    CLI::App* fullwave = app.add_subcommand("fullwave", "run the finite-difference reference");
    add_common(fullwave);

    CLI::App* qcurve = app.add_subcommand("qcurve", "Q(x) from a full-wave / one-way pair");
    qcurve->add_option("fullwave", full_path, "full-wave .owwf section")->required();
    qcurve->add_option("oneway", oneway_path, "one-way .owwf section")->required();
    qcurve->add_option("--out", csv_out, "output CSV path");

    CLI::App* sweep = app.add_subcommand("sweep", "Q curves across velocity contrasts");
    add_common(sweep);
    sweep->add_option("--contrasts", contrast_list, "comma-separated lower-layer speeds, m/s")
        ->required();
    sweep->add_option("--epsilon", epsilon, "0 or 1")->check(CLI::Range(0, 1));
    sweep->add_option("--workers", workers, "frequency worker pool size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : OWWE_ERR_CONFIG;
    }

    owwe_status st = OWWE_OK;

    if (oneway->parsed()) {
        ConfigPtr cfg = load_with_overrides(config_path, sets, st);
        if (st != OWWE_OK) return report(st);
        std::vector<double> snap_times;
        if (!snapshot_list.empty()) {
            std::stringstream ss(snapshot_list);
            std::string item;
            while (std::getline(ss, item, ',')) snap_times.push_back(std::stod(item));
        }
        owwe_oneway_opts opts{};
        opts.epsilon = epsilon;
        opts.multiples = multiples;
        opts.no_transmission = no_transmission ? 1 : 0;
        opts.workers = workers;
        opts.snapshot_times = snap_times.empty() ? nullptr : snap_times.data();
        opts.n_snapshot_times = snap_times.size();
        owwe_result* raw = nullptr;
        st = owwe_run_oneway(cfg.get(), &opts, out_dir.c_str(), &raw);
        ResultPtr res(raw);
        if (st != OWWE_OK) return report(st);
        std::cout << "seismogram: " << owwe_result_seismogram_path(res.get()) << "\n";
        std::cout << "multiples tables: " << owwe_result_multiple_count(res.get()) << "\n";
        std::cout << "run dir: " << owwe_result_dir(res.get()) << "\n";
        return 0;
    }

    if (fullwave->parsed()) {
        ConfigPtr cfg = load_with_overrides(config_path, sets, st);
        if (st != OWWE_OK) return report(st);
        owwe_result* raw = nullptr;
        st = owwe_run_fullwave(cfg.get(), out_dir.c_str(), &raw);
        ResultPtr res(raw);
        if (st != OWWE_OK) return report(st);
        std::cout << "seismogram: " << owwe_result_seismogram_path(res.get()) << "\n";
        std::cout << "run dir: " << owwe_result_dir(res.get()) << "\n";
        return 0;
    }

    if (qcurve->parsed()) {
        owwe_qcurve* raw = nullptr;
        st = owwe_qcurve_compute(full_path.c_str(), oneway_path.c_str(), &raw);
        QcurvePtr q(raw);
        if (st != OWWE_OK) return report(st);
        if (!csv_out.empty()) {
            st = owwe_qcurve_write_csv(q.get(), csv_out.c_str());
            if (st != OWWE_OK) return report(st);
            std::cout << "qcurve: " << csv_out << "\n";
        }
        const QStats stats = qcurve_stats(q.get());
        std::printf("defined bins: %d\n", stats.defined);
        std::printf("near-shot min |Q-1|: %.4f\n", stats.min_err_near_shot);
        std::printf("|Q-1| < 5%% half-width: %.0f m\n", stats.half_width);
        return 0;
    }

    if (sweep->parsed()) {
        std::vector<double> contrasts;
        {
            std::stringstream ss(contrast_list);
            std::string item;
            while (std::getline(ss, item, ',')) contrasts.push_back(std::stod(item));
        }
        std::filesystem::create_directories(out_dir);
        std::ofstream summary(std::filesystem::path(out_dir) / "sweep_summary.csv");
        summary << "# contrast_speed,min_err_near_shot,half_width_m\n";
        std::printf("%12s %18s %14s\n", "contrast", "min |Q-1| (near)", "half-width m");
        for (double c2 : contrasts) {
            ConfigPtr cfg = load_with_overrides(config_path, sets, st);
            if (st != OWWE_OK) return report(st);
            /* replace the speed below the single interface of the base model */
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", c2);
            double depth = 0.0;
            {
                /* the base model must be a two-layer model; recover the
                 * interface depth from the canonical config via a probe run
                 * is overkill, so require --set model.layers for exotic
                 * bases and read the depth from the config file here */
                std::ifstream f(config_path);
                std::string line;
                while (std::getline(f, line)) {
                    const auto pos = line.find("layers");
                    if (pos == std::string::npos) continue;
                    const auto eq = line.find('=');
                    const auto colon = line.find(':', eq);
                    if (eq != std::string::npos && colon != std::string::npos) {
                        depth = std::stod(line.substr(eq + 1, colon - eq - 1));
                        break;
                    }
                }
            }
            if (depth <= 0.0) {
                std::cerr << "owwe: sweep needs a two-layer base config (one layers entry)\n";
                return OWWE_ERR_CONFIG;
            }
            std::snprintf(buf, sizeof buf, "%.0f:%.17g", depth, c2);
            st = owwe_config_override(cfg.get(), "model.layers", buf);
            if (st != OWWE_OK) return report(st);
            std::snprintf(buf, sizeof buf, "%.17g", c2);
            st = owwe_config_override(cfg.get(), "model.c_inf", buf);
            if (st != OWWE_OK) return report(st);

            owwe_oneway_opts opts{};
            opts.epsilon = epsilon;
            opts.multiples = 0;
            opts.no_transmission = 0;
            opts.workers = workers;
            owwe_result *ow_raw = nullptr, *fw_raw = nullptr;
            st = owwe_run_oneway(cfg.get(), &opts, out_dir.c_str(), &ow_raw);
            ResultPtr ow(ow_raw);
            if (st != OWWE_OK) return report(st);
            st = owwe_run_fullwave(cfg.get(), out_dir.c_str(), &fw_raw);
            ResultPtr fw(fw_raw);
            if (st != OWWE_OK) return report(st);

            owwe_qcurve* q_raw = nullptr;
            st = owwe_qcurve_compute(owwe_result_seismogram_path(fw.get()),
                                     owwe_result_seismogram_path(ow.get()), &q_raw);
            QcurvePtr q(q_raw);
            if (st != OWWE_OK) return report(st);
            char name[64];
            std::snprintf(name, sizeof name, "qcurve_%.0f.csv", c2);
            const std::string qpath = (std::filesystem::path(out_dir) / name).string();
            st = owwe_qcurve_write_csv(q.get(), qpath.c_str());
            if (st != OWWE_OK) return report(st);

            const QStats stats = qcurve_stats(q.get());
            std::printf("%12.0f %18.4f %14.0f\n", c2, stats.min_err_near_shot, stats.half_width);
            summary << c2 << ',' << stats.min_err_near_shot << ',' << stats.half_width << '\n';
        }
        return 0;
    }

    return 0;
}
