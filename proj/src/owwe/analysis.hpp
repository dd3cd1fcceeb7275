#pragma once

#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace owwe {

enum class Provenance { OneWay, FullWave, Snapshot };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

/* Time-by-offset pressure record at one receiver depth. */
struct Seismogram {
    Array2D<double> values; // nt x nx, row = one time sample across offsets
    double dt = 0.0;
    double dx = 0.0;
    double receiver_depth = 0.0;
    double shot_x = 0.0;
    Provenance provenance = Provenance::OneWay;

    int nt() const { return static_cast<int>(values.rows()); }
    int nx() const { return static_cast<int>(values.cols()); }
};

/* max_t |p(t, x)| per trace, with parabolic refinement of the peak. */
std::vector<double> amplitude_vs_offset(const Seismogram& s);

/* Refined (time, |amplitude|) of the largest |p| sample of one trace. */
struct TracePeak {
    double time = 0.0;
    double amplitude = 0.0;
};
TracePeak trace_peak(const Seismogram& s, int trace, int first_sample = 0, int last_sample = -1);

/**
 * Q(x) = max_t |p_fullwave| / max_t |p_oneway| per offset. Bins where either
 * peak falls under 1e-6 of its section's global maximum are flagged
 * undefined rather than zeroed.
 */
struct QCurve {
    std::vector<double> q;
    std::vector<bool> defined;
    double dx = 0.0;
    double shot_x = 0.0;
};

QCurve q_metric(const Seismogram& full, const Seismogram& oneway);

/* Binary grid file: 64-byte text header then row-major little-endian f32. */
void write_section(const std::string& path, const Seismogram& s);
Seismogram read_section(const std::string& path);

/* Same payload as CSV: nt rows, first column is time. */
void write_section_csv(const std::string& path, const Seismogram& s);

void write_qcurve_csv(const std::string& path, const QCurve& q);

} // namespace owwe
