#pragma once

#include <span>
#include <vector>

#include "common.hpp"

namespace owwe {

/* Injection rate q(t) = d/dt exp(-a^2 (t-t*)^2), a = pi*nu, t* = 1/nu. */
double ricker_rate(double t, double peak_frequency);

/* Source S(t) = d^2/dt^2 exp(-a^2 (t-t*)^2); peak value -2 a^2 at t*. */
double ricker_source(double t, double peak_frequency);

struct TimeSignal {
    std::vector<double> samples;
    double dt = 0.0;
};

/* Window bins m with 0 < omega_m <= omega_max; DC always excluded. */
struct FrequencyWindow {
    int first = 1;
    int last = 0; // inclusive; empty when last < first
    int nt = 0;
    double d_omega = 0.0;

    int count() const { return last >= first ? last - first + 1 : 0; }
    double omega(int bin) const { return bin * d_omega; }
};

FrequencyWindow make_window(int nt, double dt, double omega_max);

/**
 * Power-of-two complex DFTs, forward kernel e^{-i 2 pi j k / n}, inverse
 * normalized by 1/n so the round trip is the identity. Pure functions over
 * their buffers; plan creation is internally serialized, so concurrent use
 * on distinct buffers is fine.
 */
void dft_forward(std::span<const cdouble> in, std::span<cdouble> out);
void dft_inverse(std::span<const cdouble> in, std::span<cdouble> out);
void dft_forward_inplace(std::span<cdouble> buf);
void dft_inverse_inplace(std::span<cdouble> buf);

std::vector<cdouble> forward_time_transform(const TimeSignal& signal);
TimeSignal inverse_time_transform(std::span<const cdouble> spectrum, double dt);

std::vector<cdouble> spatial_transform(std::span<const cdouble> row);
std::vector<cdouble> spatial_transform_inverse(std::span<const cdouble> row);

/* kx for FFT bin k on an nx*dx aperture: 2 pi * signed_freq / (nx dx). */
double kx_of_bin(int k, int nx, double dx);

} // namespace owwe
