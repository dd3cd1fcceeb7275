#pragma once

#include <array>

#include "common.hpp"

namespace owwe {

enum class Region { Hyperbolic, Elliptic, Glancing };

/* sin^2(theta) closer than this to 1 counts as glancing; at the boundary
 * |gamma0| = 1e-4 / c, which is also the floor used before any division. */
constexpr double glancing_tol = 1e-8;
constexpr double gamma_floor_scale = 1e-4; // floor is gamma_floor_scale / c

/**
 * Vertical slowness gamma0 = sqrt(1/c^2 - kx^2/omega^2) with the branch
 * fixed so that exp(-i dz omega gamma0) never grows: real positive in the
 * hyperbolic region, negative imaginary part in the elliptic one. The
 * region tag is decided at the real frequency; gamma0 itself is evaluated
 * at omega - i*eta so a Laplace shift threads through every factor.
 */
struct SlownessSample {
    cdouble gamma0{};
    Region region = Region::Hyperbolic;
    double c = 0.0;
    double kx = 0.0;
    double omega = 0.0;     // real frequency, used for region and taper
    cdouble omega_c{};      // omega - i*eta, used in every factor
    double sin_theta = 0.0; // kx * c / omega

    bool below_floor() const { return std::abs(gamma0) < gamma_floor_scale / c; }
};

SlownessSample classify_and_slowness(double c, double kx, double omega, double eta = 0.0);

using Mat2 = std::array<std::array<cdouble, 2>, 2>;

Mat2 mat_mul(const Mat2& a, const Mat2& b);

/* P0 = [[rho, rho], [gamma0, -gamma0]] and friends; see l_sharp_symbol. */
struct EigenDecomposition {
    Mat2 P0;
    Mat2 P0_inv;
    cdouble M0_down; // gamma0
    cdouble M0_up;   // -gamma0

    static EigenDecomposition make(const SlownessSample& s, double rho);
};

/* Symbol of the reduced first-order system, [[0, rho], [1/(rho c^2) - kx^2/(omega^2 rho), 0]]. */
Mat2 l_sharp_symbol(const SlownessSample& s, double rho);

/* (V+, V-) from (pressure, vertical velocity); components zero when gamma0
 * sits below the glancing floor, with *flagged set. */
std::array<cdouble, 2> decompose(const std::array<cdouble, 2>& U, const SlownessSample& s,
                                 double rho, bool* flagged = nullptr);
std::array<cdouble, 2> compose(const std::array<cdouble, 2>& V, const SlownessSample& s,
                               double rho);

/**
 * Discrete transmission and reflection strengths of one interface,
 * premultiplied by dz: t0_dz = -(1/2) log(gamma_below / gamma_above) and
 * r0_dz = -t0_dz. Both vanish when the two sides agree; both are zero
 * (and flagged) when either side sits below the glancing floor.
 */
struct InterfaceSymbols {
    cdouble t0_dz{};
    cdouble r0_dz{};
    bool floored = false;
};

InterfaceSymbols interface_symbols(const SlownessSample& above, const SlownessSample& below);

/**
 * Cosine taper over the propagation angle theta = asin(kx c / omega):
 * 1 below cutoff - width, 0 above cutoff (evanescent components included).
 */
double angle_taper(const SlownessSample& s, double cutoff_deg, double width_deg);

enum class Direction { Down, Up };

/**
 * One depth step of the wavenumber-domain propagator: the phase factor
 * exp(-i dz omega gamma0), the transmission exponential exp(+-t0_dz) when
 * epsilon = 1, and the angular taper.
 */
cdouble propagator_step_factor(const SlownessSample& s, double dz, Direction dir, int epsilon,
                               cdouble t0_dz_at_step, double cutoff_deg, double width_deg);

/* Phase-and-taper part only (shared by both epsilon variants). */
cdouble phase_step_factor(const SlownessSample& s, double dz, double cutoff_deg, double width_deg);

} // namespace owwe
