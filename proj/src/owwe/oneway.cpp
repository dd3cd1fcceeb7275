#include "oneway.hpp"

#include <cmath>

namespace owwe {

SlownessSample classify_and_slowness(double c, double kx, double omega, double eta) {
    if (omega <= 0.0) throw numeric_error("classify_and_slowness: omega must be > 0");
    if (c <= 0.0) throw numeric_error("classify_and_slowness: c must be > 0");
    SlownessSample s;
    s.c = c;
    s.kx = kx;
    s.omega = omega;
    s.sin_theta = std::abs(kx) * c / omega;

    const double sin2 = s.sin_theta * s.sin_theta;
    if (sin2 < 1.0 - glancing_tol) s.region = Region::Hyperbolic;
    else if (sin2 > 1.0 + glancing_tol) s.region = Region::Elliptic;
    else s.region = Region::Glancing;

    const cdouble omega_c(omega, -eta);
    s.omega_c = omega_c;
    const cdouble w = 1.0 / (c * c) - kx * kx / (omega_c * omega_c);
    cdouble g = std::sqrt(w); // principal branch: Re >= 0
    if (g.imag() > 0.0) g = -g; // decay branch for evanescent components
    s.gamma0 = g;
    return s;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

EigenDecomposition EigenDecomposition::make(const SlownessSample& s, double rho) {
    EigenDecomposition d;
    const cdouble g = s.gamma0;
    d.P0 = {{{rho, rho}, {g, -g}}};
    const cdouble half_rho = 0.5 / rho;
    const cdouble half_g = 0.5 / g;
    d.P0_inv = {{{half_rho, half_g}, {half_rho, -half_g}}};
    d.M0_down = g;
    d.M0_up = -g;
    return d;
}

Mat2 l_sharp_symbol(const SlownessSample& s, double rho) {
    const cdouble l21 = 1.0 / (rho * s.c * s.c) - s.kx * s.kx / (s.omega * s.omega * rho);
    return {{{cdouble(0.0), cdouble(rho)}, {l21, cdouble(0.0)}}};
}

std::array<cdouble, 2> decompose(const std::array<cdouble, 2>& U, const SlownessSample& s,
                                 double rho, bool* flagged) {
    if (s.below_floor()) {
        if (flagged) *flagged = true;
        return {cdouble(0.0), cdouble(0.0)};
    }
    const cdouble a = 0.5 / rho * U[0];
    const cdouble b = 0.5 / s.gamma0 * U[1];
    return {a + b, a - b};
}

std::array<cdouble, 2> compose(const std::array<cdouble, 2>& V, const SlownessSample& s,
                               double rho) {
    return {rho * (V[0] + V[1]), s.gamma0 * (V[0] - V[1])};
}

InterfaceSymbols interface_symbols(const SlownessSample& above, const SlownessSample& below) {
    InterfaceSymbols out;
    if (above.below_floor() || below.below_floor()) {
        out.floored = true;
        return out;
    }
    out.t0_dz = -0.5 * std::log(below.gamma0 / above.gamma0);
    out.r0_dz = -out.t0_dz;
    return out;
}

double angle_taper(const SlownessSample& s, double cutoff_deg, double width_deg) {
    const double hi = cutoff_deg * pi / 180.0;
    const double lo = hi - width_deg * pi / 180.0;
    if (s.sin_theta >= 1.0) return 0.0; // glancing and evanescent
    const double theta = std::asin(s.sin_theta);
    if (theta <= lo) return 1.0;
    if (theta >= hi) return 0.0;
    return 0.5 * (1.0 + std::cos(pi * (theta - lo) / (hi - lo)));
}

cdouble phase_step_factor(const SlownessSample& s, double dz, double cutoff_deg,
                          double width_deg) {
    const cdouble arg = cdouble(0.0, -1.0) * dz * s.omega_c * s.gamma0;
    return std::exp(arg) * angle_taper(s, cutoff_deg, width_deg);
}

cdouble propagator_step_factor(const SlownessSample& s, double dz, Direction dir, int epsilon,
                               cdouble t0_dz_at_step, double cutoff_deg, double width_deg) {
    cdouble f = phase_step_factor(s, dz, cutoff_deg, width_deg);
    if (epsilon == 1) {
        const cdouble sign = (dir == Direction::Down) ? t0_dz_at_step : -t0_dz_at_step;
        f *= std::exp(sign);
    }
    return f;
}

} // namespace owwe
