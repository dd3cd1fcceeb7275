#include "runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "fdwave.hpp"
#include "spectral.hpp"

namespace owwe {

std::vector<cdouble> source_spectrum(const RunPlan& plan) {
    const auto& g = plan.grid;
    TimeSignal q;
    q.dt = g.dt;
    q.samples.resize(g.nt);
    for (int n = 0; n < g.nt; ++n) {
        const double t = n * g.dt;
        q.samples[n] = ricker_rate(t, plan.shot.peak_frequency) / plan.model.rho *
                       std::exp(-plan.run.eta * t);
    }
    auto spec = forward_time_transform(q);
    for (auto& v : spec) v *= g.dt; // continuum normalization
    return spec;
}

int resolve_workers(int requested) {
    if (const char* env = std::getenv("OWWE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return requested > 0 ? requested : 1;
}

namespace {

/* One (nt x nx) real block from per-bin kx-spectra: inverse space DFT per
 * bin, Hermitian fill over negative frequencies, inverse time DFT per
 * trace, and the e^{+eta t} Laplace compensation. */
Seismogram synthesize_block(const RunPlan& plan, const FrequencyWindow& win,
                            const Array2D<cdouble>& spectra, Provenance prov) {
    const auto& g = plan.grid;
    Array2D<cdouble> traces(g.nt, g.nx); // [omega bin][x] while filling
    for (int b = 0; b < win.count(); ++b) {
        const auto out = spatial_transform_inverse(
            std::span<const cdouble>(spectra.row(b), static_cast<std::size_t>(g.nx)));
        const int m = win.first + b;
        for (int j = 0; j < g.nx; ++j) {
            traces(m, j) = out[j];
            traces(g.nt - m, j) = std::conj(out[j]);
        }
    }
    if (plan.run.eta > 0.0 && win.count() >= 3) {
        /* With the Laplace shift the damped record keeps a nonzero mean; a
         * zeroed DC bin would come back as a spurious e^{eta t} ramp. The
         * damped spectrum is analytic through omega = 0, so fill the bin by
         * quadratic extrapolation from the first three window bins. */
        for (int j = 0; j < g.nx; ++j) {
            const cdouble f1 = traces(win.first, j);
            const cdouble f2 = traces(win.first + 1, j);
            const cdouble f3 = traces(win.first + 2, j);
            traces(0, j) = (3.0 * f1 - 3.0 * f2 + f3).real();
        }
    }

    Seismogram s;
    s.dt = g.dt;
    s.dx = g.dx;
    s.receiver_depth = plan.shot.receiver_depth;
    s.shot_x = plan.source_x_snapped;
    s.provenance = prov;
    s.values = Array2D<double>(g.nt, g.nx);

    std::vector<cdouble> col(g.nt), synth(g.nt);
    for (int j = 0; j < g.nx; ++j) {
        for (int n = 0; n < g.nt; ++n) col[n] = traces(n, j);
        dft_inverse(col, synth);
        for (int n = 0; n < g.nt; ++n) {
            /* dft_inverse carries 1/nt; the remaining 1/dt completes the
             * (2 pi)^-1 d-omega sum, then undo the Laplace damping */
            const double t = n * g.dt;
            s.values(n, j) = synth[n].real() / g.dt * std::exp(plan.run.eta * t);
        }
    }
    return s;
}

} // namespace

OnewayRun run_oneway(const RunPlan& plan, const OnewayOptions& opt) {
    const auto& g = plan.grid;
    const auto& r = plan.run;
    const FrequencyWindow win = make_window(g.nt, g.dt, r.omega_max);
    const auto q_hat = source_spectrum(plan);

    OnewayRun out;
    out.s_minus_discarded = true; // S- of the surface source is never propagated
    if (!opt.quiet)
        std::cerr << "owwe: up-going source component S- discarded "
                     "(receivers see no field above the source plane)\n";

    const int n_mult = r.multiples;
    const int nb = win.count();
    std::vector<Array2D<cdouble>> rec(n_mult + 1);
    for (auto& a : rec) a = Array2D<cdouble>(std::max(nb, 1), g.nx);

    const bool want_field = !opt.snapshot_times.empty();
    /* field spectra for snapshots: [bin][level][kx], kept only when asked */
    std::vector<Array2D<cdouble>> field_bins;
    if (want_field) field_bins.resize(nb);

    /* probe bin for term capture: strongest |q_hat| inside the window */
    int probe_bin = win.first;
    for (int m = win.first; m <= win.last; ++m)
        if (std::abs(q_hat[m]) > std::abs(q_hat[probe_bin])) probe_bin = m;

    std::atomic<long> floored{0};
    const int workers = resolve_workers(opt.workers);
    std::vector<SeriesTerm> probe_terms;

    auto process_bin = [&](int b) {
        const int m_bin = win.first + b;
        const double omega = win.omega(m_bin);
        long local_floored = 0;
        const auto s_plus = decompose_source_plus(plan, omega, q_hat[m_bin], &local_floored);
        SweepOptions sopt;
        sopt.accumulate_field = want_field;
        sopt.capture_terms = opt.capture_terms && m_bin == probe_bin && r.epsilon == 1;
        auto sweep = sweep_omega(plan, omega, s_plus, sopt);
        for (int m = 0; m <= n_mult; ++m)
            std::copy(sweep.recorded[m].begin(), sweep.recorded[m].end(), rec[m].row(b));
        if (want_field) field_bins[b] = std::move(sweep.field);
        if (sopt.capture_terms) probe_terms = std::move(sweep.terms);
        floored += local_floored + sweep.floored_bins;
    };

    if (workers <= 1 || nb <= 1) {
        for (int b = 0; b < nb; ++b) process_bin(b);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int b = next.fetch_add(1); b < nb; b = next.fetch_add(1)) process_bin(b);
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min(workers, nb);
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    out.floored_bins = floored.load();
    out.terms_at_probe = std::move(probe_terms);

    /* composition: pressure = rho * (V+ + V-), per multiple and summed */
    const double rho = plan.model.rho;
    Array2D<cdouble> total(std::max(nb, 1), g.nx);
    out.per_multiple.reserve(n_mult + 1);
    for (int m = 0; m <= n_mult; ++m) {
        Array2D<cdouble> scaled(std::max(nb, 1), g.nx);
        for (int b = 0; b < nb; ++b)
            for (int j = 0; j < g.nx; ++j) {
                const cdouble v = rho * rec[m](b, j);
                scaled(b, j) = v;
                total(b, j) += v;
            }
        out.per_multiple.push_back(synthesize_block(plan, win, scaled, Provenance::OneWay));
    }
    out.recorded = synthesize_block(plan, win, total, Provenance::OneWay);

    /* snapshots: evaluate the (x, z) field at the requested times */
    for (double t_snap : opt.snapshot_times) {
        Seismogram snap;
        snap.dt = g.dz; // rows are depth levels here
        snap.dx = g.dx;
        snap.receiver_depth = t_snap; // aux slot: the snapshot time
        snap.shot_x = plan.source_x_snapped;
        snap.provenance = Provenance::Snapshot;
        snap.values = Array2D<double>(g.nz + 1, g.nx);
        std::vector<cdouble> row(g.nx);
        for (int b = 0; b < nb; ++b) {
            const int m_bin = win.first + b;
            const double omega = win.omega(m_bin);
            const cdouble wgt =
                2.0 / (g.nt * g.dt) * std::exp(cdouble(plan.run.eta * t_snap, omega * t_snap));
            for (int l = 0; l <= g.nz; ++l) {
                const auto space = spatial_transform_inverse(std::span<const cdouble>(
                    field_bins[b].row(l), static_cast<std::size_t>(g.nx)));
                for (int j = 0; j < g.nx; ++j)
                    snap.values(l, j) += (rho * wgt * space[j]).real();
            }
        }
        out.snapshots.push_back(std::move(snap));
    }
    return out;
}

Seismogram run_fullwave(const RunPlan& plan) { return run_fullwave(plan, FdOptions{}); }

Seismogram run_fullwave(const RunPlan& plan, const FdOptions& opt) {
    FdSolver fd(plan.model, plan.grid, plan.shot, opt);
    const double nu = plan.shot.peak_frequency;
    return fd.run_and_record([nu](double t) { return ricker_source(t, nu); });
}

} // namespace owwe
