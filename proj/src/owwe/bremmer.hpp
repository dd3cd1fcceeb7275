#pragma once

#include <span>
#include <vector>

#include "common.hpp"
#include "model.hpp"
#include "oneway.hpp"

namespace owwe {

/**
 * Working state of the depth sweeps for one temporal frequency. TEMP is the
 * marching row over kx; TAB holds the current pass's down- and up-going
 * fields at every level; per_multiple collects what the receivers record,
 * one row per multiple index m.
 */
struct BremmerAccumulator {
    std::vector<cdouble> temp;                      // nx
    Array2D<cdouble> tab_down;                      // (nz+1) x nx
    Array2D<cdouble> tab_up;                        // (nz+1) x nx
    std::vector<std::vector<cdouble>> per_multiple; // [m][nx]
};

/* One Bremmer term for epsilon = 1 capture: index j carries either a
 * down-going or an up-going field, never both. */
struct SeriesTerm {
    int index = 0;
    Array2D<cdouble> down; // (nz+1) x nx
    Array2D<cdouble> up;   // (nz+1) x nx
};

struct SweepOptions {
    bool capture_terms = false;    // epsilon = 1 only: keep all V^(j) buffers
    bool accumulate_field = false; // keep sum over m of (down + up) per level
};

struct OmegaSweepResult {
    std::vector<std::vector<cdouble>> recorded; // [m][nx] at the receiver level
    std::vector<SeriesTerm> terms;              // when capture_terms
    Array2D<cdouble> field;                     // when accumulate_field
    long floored_bins = 0;                      // glancing-floor hits in the symbols
};

/**
 * Down-going source component S+ over kx for one frequency: the decomposed
 * point source q_hat * e^{-i kx xs} / (2 gamma0 dx), evaluated with the
 * speed of the topmost cell. Bins below the glancing floor come back zero
 * and are counted in *floored.
 */
std::vector<cdouble> decompose_source_plus(const RunPlan& plan, double omega, cdouble q_hat,
                                           long* floored = nullptr);

/* V+^(0) over (level, kx): the propagated source before any coupling. */
Array2D<cdouble> first_term_downgoing(const RunPlan& plan, double omega,
                                      std::span<const cdouble> s_plus, int epsilon,
                                      bool include_transmission);

/**
 * Full multi-multiple sweep for one frequency: for every m in 0..N runs one
 * down and one up pass, applying the reflection symbols at interface levels
 * and the transmission either inside the propagator (epsilon = 1) or as an
 * Id +- dz*t0 right-hand-side coupling (epsilon = 0). The m-th recorded row
 * gathers the fields with 2m (down) and 2m+1 (up) reflection events; at the
 * surface only the up-going part is recorded.
 */
OmegaSweepResult sweep_omega(const RunPlan& plan, double omega, std::span<const cdouble> s_plus,
                             const SweepOptions& opt = {});

/* Sum of recorded rows for m <= truncation (fixed left-to-right order). */
std::vector<cdouble> assemble_recorded_spectrum(const OmegaSweepResult& sweep, int truncation);

} // namespace owwe
