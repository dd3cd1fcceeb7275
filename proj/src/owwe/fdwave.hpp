#pragma once

#include <functional>
#include <vector>

#include "analysis.hpp"
#include "common.hpp"
#include "model.hpp"

namespace owwe {

struct FdOptions {
    int sponge_width = 50;        // cells per side
    double sponge_alpha = 0.006;  // Cerjan coefficient; damping exp(-(alpha d)^2)
    double cfl_fraction = 0.45;   // dt as a fraction of the stability bound
    double dt_override = 0.0;     // > 0 forces dt (still CFL-checked)
    double record_dt = 0.0;       // trace sampling; 0 means grid.dt
    double source_depth = 0.0;    // shots sit at z = 0 unless moved here
    int oversample = 1;           // solve at dx/f, dz/f; record on the config grid
};

/* Stability bound of the 2nd-order-time / 4th-order-space update. */
double fd_stable_dt(double c_max, double dx, double dz);

/**
 * Explicit solver for (1/c^2) p_tt - lap(p) = S(t) delta(x - xs) delta(z)
 * on the model extended into its surrounding half-spaces, with Cerjan
 * sponge borders on all four sides and zero initial data.
 */
class FdSolver {
public:
    FdSolver(const VelocityModel& model, const Grid& grid, const ShotGeometry& shot,
             const FdOptions& opt = {});

    double dt() const { return dt_; }
    double time() const { return steps_done_ * dt_; }

    /* One leapfrog update; source_value = S(t) at the current time. */
    void step(double source_value);

    /* Interior pressure at (column j, level l), the current time slice. */
    double pressure(int j, int l) const { return p_curr_(pad_ + l, pad_ + j); }

    /* Conserved leapfrog energy (decays only through the sponge). */
    double discrete_energy() const;

    /* Runs the source through grid.nt record samples and returns the trace
     * block at the receiver depth. */
    Seismogram run_and_record(const std::function<double(double)>& source);

private:
    void apply_sponge(Array2D<double>& p) const;

    Grid grid_;            // refined by oversample
    ShotGeometry shot_;
    FdOptions opt_;
    int record_stride_ = 1;
    int pad_ = 0;          // sponge + stencil halo
    int full_nx_ = 0, full_nz_ = 0;
    int src_i_ = 0, src_l_ = 0; // padded indices of the shot cell
    double dt_ = 0.0;
    long steps_done_ = 0;
    Array2D<double> c2_;      // c^2 per padded cell
    Array2D<double> damp_;    // per-step sponge multiplier
    Array2D<double> p_prev_, p_curr_, p_next_;
};

} // namespace owwe
