#pragma once

#include <string>
#include <vector>

#include "analysis.hpp"
#include "bremmer.hpp"
#include "common.hpp"
#include "model.hpp"

namespace owwe {

struct OnewayOptions {
    int workers = 1;                     // frequency-bin worker pool size
    bool capture_terms = false;          // keep Bremmer term buffers (tests)
    std::vector<double> snapshot_times;  // wavefield snapshots to synthesize
    bool quiet = false;                  // suppress notices on stderr
};

struct OnewayRun {
    Seismogram recorded;                     // sum over multiples
    std::vector<Seismogram> per_multiple;    // one block per m
    std::vector<Seismogram> snapshots;       // (z, x) grids, one per time
    std::vector<SeriesTerm> terms_at_probe;  // capture_terms: bin of max source power
    long floored_bins = 0;
    bool s_minus_discarded = false;
};

/* Source spectrum q_hat(omega) over the window: dt-scaled DFT of the
 * damped injection-rate samples ricker_rate(t) e^{-eta t} / rho. */
std::vector<cdouble> source_spectrum(const RunPlan& plan);

/* Full one-way pipeline: decompose, sweep every window bin, recompose. */
OnewayRun run_oneway(const RunPlan& plan, const OnewayOptions& opt = {});

/* Reference solution on the same grid and geometry. */
struct FdOptions;
Seismogram run_fullwave(const RunPlan& plan);
Seismogram run_fullwave(const RunPlan& plan, const FdOptions& opt);

/* Worker count from the environment (OWWE_WORKERS), else the given value. */
int resolve_workers(int requested);

} // namespace owwe
