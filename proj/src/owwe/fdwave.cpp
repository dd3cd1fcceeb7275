#include "fdwave.hpp"

#include <algorithm>
#include <cmath>

namespace owwe {

double fd_stable_dt(double c_max, double dx, double dz) {
    /* max |symbol| of the 4th-order second derivative is (16/3)/h^2 */
    const double lam = (16.0 / 3.0) * (1.0 / (dx * dx) + 1.0 / (dz * dz));
    return 2.0 / (c_max * std::sqrt(lam));
}

FdSolver::FdSolver(const VelocityModel& model, const Grid& grid, const ShotGeometry& shot,
                   const FdOptions& opt)
    : grid_(grid), shot_(shot), opt_(opt) {
    const int f = std::max(1, opt.oversample);
    grid_.nx *= f;
    grid_.nz *= f;
    grid_.dx /= f;
    grid_.dz /= f;
    record_stride_ = f;
    /* keep the physical sponge footprint */
    opt_.sponge_width = opt.sponge_width * f;
    const double c_max = model.max_speed();
    const double bound = fd_stable_dt(c_max, grid_.dx, grid_.dz);
    const double record_dt = opt.record_dt > 0.0 ? opt.record_dt : grid_.dt;

    if (opt.dt_override > 0.0) {
        dt_ = opt.dt_override;
    } else {
        const int n_sub = std::max(1, static_cast<int>(std::ceil(record_dt / (opt.cfl_fraction * bound))));
        dt_ = record_dt / n_sub;
    }
    if (dt_ > 0.9 * bound)
        throw numeric_error("FD stability violated: dt = " + std::to_string(dt_) +
                            " s exceeds 0.9 of the scheme bound; use dt <= " +
                            std::to_string(0.9 * bound) + " s");

    pad_ = opt_.sponge_width + 2;
    full_nx_ = grid_.nx + 2 * pad_;
    full_nz_ = (grid_.nz + 1) + 2 * pad_;
    c2_ = Array2D<double>(full_nz_, full_nx_);
    damp_ = Array2D<double>(full_nz_, full_nx_, 1.0);
    p_prev_ = Array2D<double>(full_nz_, full_nx_);
    p_curr_ = Array2D<double>(full_nz_, full_nx_);
    p_next_ = Array2D<double>(full_nz_, full_nx_);

    for (int r = 0; r < full_nz_; ++r) {
        const double z = (r - pad_) * grid_.dz;
        double c;
        if (z <= 0.0) c = model.c_sup;
        else if (z >= model.z_max) c = model.c_inf;
        else c = evaluate_speed(model, z);
        for (int j = 0; j < full_nx_; ++j) c2_(r, j) = c * c;
    }

    /* Cerjan profile exp(-(alpha d)^2) with d in base-grid cells; the
     * per-step factor is scaled so absorption per unit time does not
     * depend on dt or oversampling */
    const int w = opt_.sponge_width;
    const double dt_ref = opt.cfl_fraction * fd_stable_dt(c_max, grid_.dx * f, grid_.dz * f);
    const double time_scale = dt_ / dt_ref;
    for (int r = 0; r < full_nz_; ++r) {
        for (int j = 0; j < full_nx_; ++j) {
            const int dl = pad_ - j, dr = j - (full_nx_ - 1 - pad_);
            const int dtp = pad_ - r, db = r - (full_nz_ - 1 - pad_);
            const int d = std::max({dl, dr, dtp, db, 0});
            if (d > 0) {
                const double dd = std::min(d, w) / static_cast<double>(f);
                const double profile = (opt_.sponge_alpha * dd) * (opt_.sponge_alpha * dd);
                damp_(r, j) = std::exp(-profile * time_scale);
            }
        }
    }

    src_i_ = pad_ + static_cast<int>(std::lround(shot_.source_x / grid_.dx));
    src_l_ = pad_ + static_cast<int>(std::lround(opt.source_depth / grid_.dz));
}

void FdSolver::step(double source_value) {
    const double dt2 = dt_ * dt_;
    const double ax = 1.0 / (12.0 * grid_.dx * grid_.dx);
    const double az = 1.0 / (12.0 * grid_.dz * grid_.dz);
    const int rows = full_nz_, cols = full_nx_;
    for (int r = 2; r < rows - 2; ++r) {
        const double* pm2 = p_curr_.row(r - 2);
        const double* pm1 = p_curr_.row(r - 1);
        const double* p0 = p_curr_.row(r);
        const double* pp1 = p_curr_.row(r + 1);
        const double* pp2 = p_curr_.row(r + 2);
        const double* prevr = p_prev_.row(r);
        const double* c2r = c2_.row(r);
        double* nextr = p_next_.row(r);
        for (int j = 2; j < cols - 2; ++j) {
            const double lap =
                ax * (-p0[j - 2] + 16.0 * p0[j - 1] - 30.0 * p0[j] + 16.0 * p0[j + 1] - p0[j + 2]) +
                az * (-pm2[j] + 16.0 * pm1[j] - 30.0 * p0[j] + 16.0 * pp1[j] - pp2[j]);
            nextr[j] = 2.0 * p0[j] - prevr[j] + dt2 * c2r[j] * lap;
        }
    }
    p_next_(src_l_, src_i_) +=
        dt2 * c2_(src_l_, src_i_) * source_value / (grid_.dx * grid_.dz);

    apply_sponge(p_next_);
    apply_sponge(p_curr_);

    std::swap(p_prev_, p_curr_);
    std::swap(p_curr_, p_next_);
    ++steps_done_;
}

void FdSolver::apply_sponge(Array2D<double>& p) const {
    for (int r = 0; r < full_nz_; ++r) {
        double* pr = p.row(r);
        const double* dr = damp_.row(r);
        for (int j = 0; j < full_nx_; ++j) pr[j] *= dr[j];
    }
}

double FdSolver::discrete_energy() const {
    /* E = 1/2 sum (p_curr - p_prev)^2 / (c^2 dt^2) - 1/2 <L p_curr, p_prev>,
     * the invariant of the leapfrog update between the two stored slices */
    const double ax = 1.0 / (12.0 * grid_.dx * grid_.dx);
    const double az = 1.0 / (12.0 * grid_.dz * grid_.dz);
    double kin = 0.0, cross = 0.0;
    for (int r = 2; r < full_nz_ - 2; ++r) {
        const double* pm2 = p_curr_.row(r - 2);
        const double* pm1 = p_curr_.row(r - 1);
        const double* p0 = p_curr_.row(r);
        const double* pp1 = p_curr_.row(r + 1);
        const double* pp2 = p_curr_.row(r + 2);
        const double* prevr = p_prev_.row(r);
        const double* c2r = c2_.row(r);
        for (int j = 2; j < full_nx_ - 2; ++j) {
            const double d = p0[j] - prevr[j];
            kin += d * d / (c2r[j] * dt_ * dt_);
            const double lap =
                ax * (-p0[j - 2] + 16.0 * p0[j - 1] - 30.0 * p0[j] + 16.0 * p0[j + 1] - p0[j + 2]) +
                az * (-pm2[j] + 16.0 * pm1[j] - 30.0 * p0[j] + 16.0 * pp1[j] - pp2[j]);
            cross += lap * prevr[j];
        }
    }
    return 0.5 * kin - 0.5 * cross;
}

Seismogram FdSolver::run_and_record(const std::function<double(double)>& source) {
    const double record_dt = opt_.record_dt > 0.0 ? opt_.record_dt : grid_.dt;
    const int n_sub = static_cast<int>(std::lround(record_dt / dt_));
    if (n_sub < 1 || std::abs(n_sub * dt_ - record_dt) > 1e-9 * record_dt)
        throw numeric_error("FD dt does not divide the record sampling interval");

    const double lr = shot_.receiver_depth / grid_.dz;
    if (std::abs(lr - std::round(lr)) > 1e-6)
        throw numeric_error("receiver depth is off-grid: " + std::to_string(shot_.receiver_depth));
    const int rec_row = pad_ + static_cast<int>(std::lround(lr));

    const int nx_out = grid_.nx / record_stride_;
    Seismogram s;
    s.dt = record_dt;
    s.dx = grid_.dx * record_stride_;
    s.receiver_depth = shot_.receiver_depth;
    s.shot_x = std::lround(shot_.source_x / s.dx) * s.dx;
    s.provenance = Provenance::FullWave;
    s.values = Array2D<double>(grid_.nt, nx_out);

    for (int n = 0; n < grid_.nt; ++n) {
        const double* row = p_curr_.row(rec_row);
        double* out = s.values.row(n);
        for (int j = 0; j < nx_out; ++j) out[j] = row[pad_ + j * record_stride_];
        if (n + 1 < grid_.nt)
            for (int k = 0; k < n_sub; ++k) step(source(time()));
    }
    return s;
}

} // namespace owwe
