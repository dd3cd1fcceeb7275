#include "products.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "analysis.hpp"

namespace owwe {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string run_directory(const std::string& out_root, const Config& cfg,
                          const std::string& kind, const std::vector<double>& snapshot_times) {
    std::string keyed = kind + "\n" + cfg.canonical();
    for (double t : snapshot_times) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "snap %.9g\n", t);
        keyed += buf;
    }
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(keyed)));
    return (fs::path(out_root) / ("run_" + std::string(hash))).string();
}

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory " + dir + ": " + ec.message());
}

void write_manifest(const std::string& path, const Config& cfg, const std::string& kind,
                    const ordered_json& outputs, const ordered_json& extra) {
    ordered_json m;
    m["format"] = "owwe-manifest-1";
    m["kind"] = kind;
    m["config_hash"] = cfg.hash();
    m["config"] = cfg.canonical();
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    m["outputs"] = outputs;
    std::ofstream f(path);
    if (!f) throw io_error("cannot write manifest: " + path);
    f << m.dump(2) << "\n";
}

} // namespace

RunProducts write_oneway_products(const Config& cfg, const std::string& out_root,
                                  const OnewayOptions& opt) {
    const RunPlan plan = cfg.validate();
    RunProducts prod;
    prod.dir = run_directory(out_root, cfg, "oneway", opt.snapshot_times);
    ensure_dir(prod.dir);

    const OnewayRun run = run_oneway(plan, opt);

    prod.seismogram_path = (fs::path(prod.dir) / "seismogram.owwf").string();
    write_section(prod.seismogram_path, run.recorded);

    ordered_json outputs = ordered_json::array();
    outputs.push_back({{"kind", "seismogram"}, {"path", "seismogram.owwf"}});
    for (std::size_t m = 0; m < run.per_multiple.size(); ++m) {
        const std::string name = "multiple_" + std::to_string(m) + ".owwf";
        const std::string path = (fs::path(prod.dir) / name).string();
        write_section(path, run.per_multiple[m]);
        prod.multiple_paths.push_back(path);
        outputs.push_back({{"kind", "multiple"}, {"m", m}, {"path", name}});
    }
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%.6f.owwf", opt.snapshot_times[i]);
        const std::string path = (fs::path(prod.dir) / name).string();
        write_section(path, run.snapshots[i]);
        prod.snapshot_paths.push_back(path);
        outputs.push_back({{"kind", "snapshot"}, {"time", opt.snapshot_times[i]}, {"path", name}});
    }

    ordered_json extra;
    extra["epsilon"] = plan.run.epsilon;
    extra["multiples"] = plan.run.multiples;
    extra["transmission"] = plan.run.include_transmission;
    extra["floored_bins"] = run.floored_bins;
    ordered_json notices = ordered_json::array();
    if (run.s_minus_discarded) notices.push_back("source S- component discarded");
    extra["notices"] = notices;

    prod.manifest_path = (fs::path(prod.dir) / "manifest.json").string();
    write_manifest(prod.manifest_path, cfg, "oneway", outputs, extra);
    return prod;
}

RunProducts write_fullwave_products(const Config& cfg, const std::string& out_root) {
    const RunPlan plan = cfg.validate();
    RunProducts prod;
    prod.dir = run_directory(out_root, cfg, "fullwave");
    ensure_dir(prod.dir);

    const Seismogram s = run_fullwave(plan);
    prod.seismogram_path = (fs::path(prod.dir) / "fullwave.owwf").string();
    write_section(prod.seismogram_path, s);

    ordered_json outputs = ordered_json::array();
    outputs.push_back({{"kind", "seismogram"}, {"path", "fullwave.owwf"}});
    ordered_json extra;
    extra["notices"] = ordered_json::array();

    prod.manifest_path = (fs::path(prod.dir) / "manifest.json").string();
    write_manifest(prod.manifest_path, cfg, "fullwave", outputs, extra);
    return prod;
}

} // namespace owwe
