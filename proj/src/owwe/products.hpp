#pragma once

#include <string>
#include <vector>

#include "model.hpp"
#include "runner.hpp"

namespace owwe {

/* Files written by one run, with the hash-named directory they live in. */
struct RunProducts {
    std::string dir;
    std::string seismogram_path;
    std::vector<std::string> multiple_paths;
    std::vector<std::string> snapshot_paths;
    std::string manifest_path;
};

/* Directory <out_root>/run_<hash(kind + canonical config [+ snapshots])>. */
std::string run_directory(const std::string& out_root, const Config& cfg,
                          const std::string& kind, const std::vector<double>& snapshot_times = {});

/* Runs the one-way engine on the validated config and writes seismogram,
 * per-multiple sections, snapshots, and manifest.json. */
RunProducts write_oneway_products(const Config& cfg, const std::string& out_root,
                                  const OnewayOptions& opt);

RunProducts write_fullwave_products(const Config& cfg, const std::string& out_root);

} // namespace owwe
