#include "spectral.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

namespace owwe {

double ricker_rate(double t, double peak_frequency) {
    const double a = pi * peak_frequency;
    const double u = t - 1.0 / peak_frequency;
    return -2.0 * a * a * u * std::exp(-a * a * u * u);
}

double ricker_source(double t, double peak_frequency) {
    const double a = pi * peak_frequency;
    const double u = t - 1.0 / peak_frequency;
    const double a2 = a * a;
    return (4.0 * a2 * a2 * u * u - 2.0 * a2) * std::exp(-a2 * u * u);
}

FrequencyWindow make_window(int nt, double dt, double omega_max) {
    FrequencyWindow w;
    w.nt = nt;
    w.d_omega = 2.0 * pi / (nt * dt);
    w.first = 1;
    const int half = nt / 2 - 1; // keep a strictly one-sided spectrum
    int last = static_cast<int>(std::floor(omega_max / w.d_omega + 1e-9));
    w.last = std::min(last, half);
    return w;
}

namespace {

/* FFTW plans keyed by (n, sign); creation is not thread-safe, execution is. */
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cdouble> a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run_dft(std::span<const cdouble> in, std::span<cdouble> out, int sign) {
    const int n = static_cast<int>(in.size());
    if (out.size() != in.size()) throw numeric_error("dft: size mismatch");
    if (!(n > 0 && std::has_single_bit(static_cast<unsigned>(n))))
        throw numeric_error("dft: length must be a power of two, got " + std::to_string(n));
    fftw_plan p = cache().get(n, sign);
    /* fftw_execute_dft does not modify the input for out-of-place c2c plans */
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

void dft_forward(std::span<const cdouble> in, std::span<cdouble> out) {
    run_dft(in, out, FFTW_FORWARD);
}

void dft_inverse(std::span<const cdouble> in, std::span<cdouble> out) {
    run_dft(in, out, FFTW_BACKWARD);
    const double s = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= s;
}

void dft_forward_inplace(std::span<cdouble> buf) {
    std::vector<cdouble> tmp(buf.begin(), buf.end());
    dft_forward(tmp, buf);
}

void dft_inverse_inplace(std::span<cdouble> buf) {
    std::vector<cdouble> tmp(buf.begin(), buf.end());
    dft_inverse(tmp, buf);
}

std::vector<cdouble> forward_time_transform(const TimeSignal& signal) {
    std::vector<cdouble> in(signal.samples.begin(), signal.samples.end());
    std::vector<cdouble> out(in.size());
    dft_forward(in, out);
    return out;
}

TimeSignal inverse_time_transform(std::span<const cdouble> spectrum, double dt) {
    std::vector<cdouble> out(spectrum.size());
    dft_inverse(spectrum, out);
    TimeSignal s;
    s.dt = dt;
    s.samples.resize(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) s.samples[i] = out[i].real();
    return s;
}

std::vector<cdouble> spatial_transform(std::span<const cdouble> row) {
    std::vector<cdouble> out(row.size());
    dft_forward(row, out);
    return out;
}

std::vector<cdouble> spatial_transform_inverse(std::span<const cdouble> row) {
    std::vector<cdouble> out(row.size());
    dft_inverse(row, out);
    return out;
}

double kx_of_bin(int k, int nx, double dx) {
    const int signed_k = (k <= nx / 2 - 1) ? k : k - nx;
    return 2.0 * pi * signed_k / (nx * dx);
}

} // namespace owwe
