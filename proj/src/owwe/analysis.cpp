#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace owwe {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::OneWay: return "one_way";
        case Provenance::FullWave: return "full_wave";
        case Provenance::Snapshot: return "snapshot";
    }
    return "one_way";
}

Provenance provenance_from_name(const std::string& s) {
    if (s == "one_way") return Provenance::OneWay;
    if (s == "full_wave") return Provenance::FullWave;
    if (s == "snapshot") return Provenance::Snapshot;
    throw io_error("unknown provenance tag '" + s + "'");
}

TracePeak trace_peak(const Seismogram& s, int trace, int first_sample, int last_sample) {
    const int nt = s.nt();
    if (last_sample < 0 || last_sample >= nt) last_sample = nt - 1;
    first_sample = std::max(first_sample, 0);
    int best = first_sample;
    double best_abs = 0.0;
    for (int n = first_sample; n <= last_sample; ++n) {
        const double a = std::abs(s.values(n, trace));
        if (a > best_abs) {
            best_abs = a;
            best = n;
        }
    }
    TracePeak p;
    if (best_abs == 0.0) return p;
    p.time = best * s.dt;
    p.amplitude = best_abs;
    if (best > first_sample && best < last_sample) {
        /* parabola through the signed samples around the extremum */
        const double ym = s.values(best - 1, trace);
        const double y0 = s.values(best, trace);
        const double yp = s.values(best + 1, trace);
        const double denom = ym - 2.0 * y0 + yp;
        if (denom != 0.0) {
            const double shift = 0.5 * (ym - yp) / denom;
            if (std::abs(shift) <= 1.0) {
                p.time = (best + shift) * s.dt;
                p.amplitude = std::abs(y0 - 0.25 * (ym - yp) * shift);
            }
        }
    }
    return p;
}

std::vector<double> amplitude_vs_offset(const Seismogram& s) {
    std::vector<double> out(s.nx());
    for (int j = 0; j < s.nx(); ++j) out[j] = trace_peak(s, j).amplitude;
    return out;
}

QCurve q_metric(const Seismogram& full, const Seismogram& oneway) {
    if (full.nx() != oneway.nx() || std::abs(full.dx - oneway.dx) > 1e-9 ||
        std::abs(full.receiver_depth - oneway.receiver_depth) > 1e-9)
        throw numeric_error("q_metric: seismogram grids do not match");
    const auto a_full = amplitude_vs_offset(full);
    const auto a_one = amplitude_vs_offset(oneway);
    const double peak_full = *std::max_element(a_full.begin(), a_full.end());
    const double peak_one = *std::max_element(a_one.begin(), a_one.end());
    const double floor_full = 1e-6 * peak_full;
    const double floor_one = 1e-6 * peak_one;

    QCurve q;
    q.dx = full.dx;
    q.shot_x = full.shot_x;
    q.q.assign(full.nx(), 0.0);
    q.defined.assign(full.nx(), false);
    for (int j = 0; j < full.nx(); ++j) {
        if (a_full[j] <= floor_full || a_one[j] <= floor_one) continue;
        q.q[j] = a_full[j] / a_one[j];
        q.defined[j] = true;
    }
    return q;
}

/* ---------------- file formats ---------------- */

namespace {
constexpr std::size_t header_bytes = 64;
constexpr const char* magic = "OWWF1";
} // namespace

void write_section(const std::string& path, const Seismogram& s) {
    char header[header_bytes];
    std::memset(header, 0, sizeof header);
    const int n = std::snprintf(header, sizeof header, "%s %d %d %.9g %.9g %.9g %.9g %s", magic,
                                s.nt(), s.nx(), s.dt, s.dx, s.receiver_depth, s.shot_x,
                                provenance_name(s.provenance).c_str());
    if (n < 0 || n >= static_cast<int>(header_bytes))
        throw io_error("section header does not fit in 64 bytes");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path);
    f.write(header, header_bytes);
    std::vector<float> row(s.nx());
    for (int r = 0; r < s.nt(); ++r) {
        const double* src = s.values.row(r);
        for (int j = 0; j < s.nx(); ++j) row[j] = static_cast<float>(src[j]);
        f.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!f) throw io_error("write failed: " + path);
}

Seismogram read_section(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for reading: " + path);
    char header[header_bytes + 1];
    f.read(header, header_bytes);
    if (!f) throw io_error("truncated header: " + path);
    header[header_bytes] = '\0';
    std::istringstream h(header);
    std::string tag, prov;
    int nt = 0, nx = 0;
    double dt = 0, dx = 0, depth = 0, shot_x = 0;
    h >> tag >> nt >> nx >> dt >> dx >> depth >> shot_x >> prov;
    if (tag != magic) throw io_error("bad magic in " + path + " (got '" + tag + "')");
    if (!h || nt <= 0 || nx <= 0 || dt <= 0 || dx <= 0)
        throw io_error("malformed header in " + path);

    Seismogram s;
    s.dt = dt;
    s.dx = dx;
    s.receiver_depth = depth;
    s.shot_x = shot_x;
    s.provenance = provenance_from_name(prov);
    s.values = Array2D<double>(nt, nx);
    std::vector<float> row(nx);
    for (int r = 0; r < nt; ++r) {
        f.read(reinterpret_cast<char*>(row.data()),
               static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!f) throw io_error("truncated payload in " + path);
        double* dst = s.values.row(r);
        for (int j = 0; j < nx; ++j) dst[j] = row[j];
    }
    return s;
}

void write_section_csv(const std::string& path, const Seismogram& s) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open for writing: " + path);
    for (int r = 0; r < s.nt(); ++r) {
        f << r * s.dt;
        const double* row = s.values.row(r);
        for (int j = 0; j < s.nx(); ++j) f << ',' << static_cast<float>(row[j]);
        f << '\n';
    }
    if (!f) throw io_error("write failed: " + path);
}

void write_qcurve_csv(const std::string& path, const QCurve& q) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << "# x,q,defined (shot_x = " << q.shot_x << ")\n";
    for (std::size_t j = 0; j < q.q.size(); ++j)
        f << j * q.dx << ',' << q.q[j] << ',' << (q.defined[j] ? 1 : 0) << '\n';
    if (!f) throw io_error("write failed: " + path);
}

} // namespace owwe
