#include "bremmer.hpp"

#include <algorithm>
#include <cmath>

#include "spectral.hpp"

namespace owwe {

namespace {

/* Per-frequency lookup tables: one slowness/step row per distinct cell
 * speed, plus symbol rows at the interface levels. */
struct OmegaTables {
    std::vector<int> cell_uid;                       // nz
    std::vector<std::vector<SlownessSample>> sample; // [uid][kx]
    std::vector<std::vector<cdouble>> step;          // [uid][kx] phase * taper

    struct InterfaceRow {
        int level = 0;
        std::vector<cdouble> t0, r0;      // dz-scaled symbols
        std::vector<cdouble> tau_down;    // e^{+t0} (eps=1) or 1 + t0 (eps=0)
        std::vector<cdouble> tau_up;      // e^{-t0} (eps=1) or 1 - t0 (eps=0)
    };
    std::vector<InterfaceRow> interfaces;
    std::vector<int> interface_at_level; // (nz+1), index into interfaces or -1
    long floored_bins = 0;
};

OmegaTables build_tables(const RunPlan& plan, double omega, int epsilon,
                         bool include_transmission) {
    const auto& g = plan.grid;
    const auto& r = plan.run;
    OmegaTables t;
    t.cell_uid.resize(g.nz);

    std::vector<double> uniq;
    for (int i = 0; i < g.nz; ++i) {
        const double c = plan.cell_speed[i];
        auto it = std::find(uniq.begin(), uniq.end(), c);
        if (it == uniq.end()) {
            uniq.push_back(c);
            t.cell_uid[i] = static_cast<int>(uniq.size()) - 1;
        } else {
            t.cell_uid[i] = static_cast<int>(it - uniq.begin());
        }
    }

    t.sample.resize(uniq.size());
    t.step.resize(uniq.size());
    for (std::size_t u = 0; u < uniq.size(); ++u) {
        t.sample[u].resize(g.nx);
        t.step[u].resize(g.nx);
        for (int k = 0; k < g.nx; ++k) {
            const double kx = kx_of_bin(k, g.nx, g.dx);
            const SlownessSample s = classify_and_slowness(uniq[u], kx, omega, r.eta);
            t.sample[u][k] = s;
            t.step[u][k] = phase_step_factor(s, g.dz, r.angle_cutoff, r.taper_width);
        }
    }

    t.interface_at_level.assign(g.nz + 1, -1);
    for (int level : plan.interface_levels) {
        OmegaTables::InterfaceRow row;
        row.level = level;
        row.t0.resize(g.nx);
        row.r0.resize(g.nx);
        row.tau_down.resize(g.nx);
        row.tau_up.resize(g.nx);
        const auto& above = t.sample[t.cell_uid[level - 1]];
        const auto& below = t.sample[t.cell_uid[level]];
        for (int k = 0; k < g.nx; ++k) {
            const InterfaceSymbols sym = interface_symbols(above[k], below[k]);
            if (sym.floored) ++t.floored_bins;
            row.t0[k] = sym.t0_dz;
            row.r0[k] = sym.r0_dz;
            if (!include_transmission) {
                row.tau_down[k] = 1.0;
                row.tau_up[k] = 1.0;
            } else if (epsilon == 1) {
                row.tau_down[k] = std::exp(sym.t0_dz);
                row.tau_up[k] = std::exp(-sym.t0_dz);
            } else {
                row.tau_down[k] = 1.0 + sym.t0_dz;
                row.tau_up[k] = 1.0 - sym.t0_dz;
            }
        }
        t.interface_at_level[level] = static_cast<int>(t.interfaces.size());
        t.interfaces.push_back(std::move(row));
    }
    return t;
}

} // namespace

std::vector<cdouble> decompose_source_plus(const RunPlan& plan, double omega, cdouble q_hat,
                                           long* floored) {
    const auto& g = plan.grid;
    std::vector<cdouble> s_plus(g.nx);
    const double c0 = plan.speed_at_source();
    for (int k = 0; k < g.nx; ++k) {
        const double kx = kx_of_bin(k, g.nx, g.dx);
        const SlownessSample s = classify_and_slowness(c0, kx, omega, plan.run.eta);
        if (s.below_floor()) {
            if (floored) ++(*floored);
            continue;
        }
        const cdouble phase = std::exp(cdouble(0.0, -kx * plan.source_x_snapped));
        s_plus[k] = q_hat * phase / (2.0 * s.gamma0 * g.dx);
    }
    return s_plus;
}

Array2D<cdouble> first_term_downgoing(const RunPlan& plan, double omega,
                                      std::span<const cdouble> s_plus, int epsilon,
                                      bool include_transmission) {
    const auto& g = plan.grid;
    const OmegaTables t = build_tables(plan, omega, epsilon, include_transmission);
    Array2D<cdouble> field(g.nz + 1, g.nx);
    std::vector<cdouble> temp(s_plus.begin(), s_plus.end());
    std::copy(temp.begin(), temp.end(), field.row(0));
    for (int l = 1; l <= g.nz; ++l) {
        const int j = t.interface_at_level[l - 1];
        if (j >= 0 && epsilon == 1 && include_transmission) {
            const auto& tau = t.interfaces[j].tau_down;
            for (int k = 0; k < g.nx; ++k) temp[k] *= tau[k];
        }
        const auto& step = t.step[t.cell_uid[l - 1]];
        for (int k = 0; k < g.nx; ++k) temp[k] *= step[k];
        std::copy(temp.begin(), temp.end(), field.row(l));
    }
    return field;
}

OmegaSweepResult sweep_omega(const RunPlan& plan, double omega, std::span<const cdouble> s_plus,
                             const SweepOptions& opt) {
    const auto& g = plan.grid;
    const auto& r = plan.run;
    const int n_mult = r.multiples;
    const int l_rec = plan.receiver_level;
    const OmegaTables t = build_tables(plan, omega, r.epsilon, r.include_transmission);

    OmegaSweepResult out;
    out.floored_bins = t.floored_bins;
    out.recorded.assign(n_mult + 1, std::vector<cdouble>(g.nx));
    if (opt.accumulate_field) out.field = Array2D<cdouble>(g.nz + 1, g.nx);

    BremmerAccumulator acc;
    acc.temp.assign(g.nx, cdouble{});
    acc.tab_down = Array2D<cdouble>(g.nz + 1, g.nx);
    acc.tab_up = Array2D<cdouble>(g.nz + 1, g.nx);

    for (int m = 0; m <= n_mult; ++m) {
        /* down pass: V+ with 2m reflection events */
        if (m == 0) std::copy(s_plus.begin(), s_plus.end(), acc.temp.begin());
        else std::fill(acc.temp.begin(), acc.temp.end(), cdouble{});
        std::copy(acc.temp.begin(), acc.temp.end(), acc.tab_down.row(0));
        for (int l = 1; l <= g.nz; ++l) {
            const int j = t.interface_at_level[l - 1];
            if (j >= 0) {
                const auto& row = t.interfaces[j];
                const cdouble* up_prev = acc.tab_up.row(l - 1);
                for (int k = 0; k < g.nx; ++k) {
                    cdouble v = acc.temp[k] * row.tau_down[k];
                    if (m >= 1) v += row.r0[k] * up_prev[k];
                    acc.temp[k] = v;
                }
            }
            const auto& step = t.step[t.cell_uid[l - 1]];
            for (int k = 0; k < g.nx; ++k) acc.temp[k] *= step[k];
            std::copy(acc.temp.begin(), acc.temp.end(), acc.tab_down.row(l));
        }

        if (opt.capture_terms) {
            SeriesTerm term;
            term.index = 2 * m;
            term.down = acc.tab_down;
            term.up = Array2D<cdouble>(g.nz + 1, g.nx);
            out.terms.push_back(std::move(term));
        }

        /* up pass: V- with 2m+1 reflection events */
        std::fill(acc.temp.begin(), acc.temp.end(), cdouble{});
        std::fill(acc.tab_up.row(g.nz), acc.tab_up.row(g.nz) + g.nx, cdouble{});
        for (int l = g.nz - 1; l >= 0; --l) {
            const int j = t.interface_at_level[l + 1];
            if (j >= 0) {
                const auto& row = t.interfaces[j];
                const cdouble* down_cur = acc.tab_down.row(l + 1);
                for (int k = 0; k < g.nx; ++k)
                    acc.temp[k] = acc.temp[k] * row.tau_up[k] - row.r0[k] * down_cur[k];
            }
            const auto& step = t.step[t.cell_uid[l]];
            for (int k = 0; k < g.nx; ++k) acc.temp[k] *= step[k];
            std::copy(acc.temp.begin(), acc.temp.end(), acc.tab_up.row(l));
        }

        if (opt.capture_terms) {
            SeriesTerm term;
            term.index = 2 * m + 1;
            term.down = Array2D<cdouble>(g.nz + 1, g.nx);
            term.up = acc.tab_up;
            out.terms.push_back(std::move(term));
        }

        /* record: down-going contributions only below the surface */
        auto& rec = out.recorded[m];
        const cdouble* up_rec = acc.tab_up.row(l_rec);
        if (l_rec > 0) {
            const cdouble* down_rec = acc.tab_down.row(l_rec);
            for (int k = 0; k < g.nx; ++k) rec[k] = down_rec[k] + up_rec[k];
        } else {
            for (int k = 0; k < g.nx; ++k) rec[k] = up_rec[k];
        }

        if (opt.accumulate_field) {
            for (int l = 0; l <= g.nz; ++l) {
                const cdouble* d = acc.tab_down.row(l);
                const cdouble* u = acc.tab_up.row(l);
                cdouble* f = out.field.row(l);
                for (int k = 0; k < g.nx; ++k) f[k] += d[k] + u[k];
            }
        }
    }
    return out;
}

std::vector<cdouble> assemble_recorded_spectrum(const OmegaSweepResult& sweep, int truncation) {
    const int n_mult = static_cast<int>(sweep.recorded.size()) - 1;
    const int last = std::min(truncation, n_mult);
    std::vector<cdouble> sum(sweep.recorded.empty() ? 0 : sweep.recorded[0].size());
    for (int m = 0; m <= last; ++m)
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += sweep.recorded[m][k];
    return sum;
}

} // namespace owwe
