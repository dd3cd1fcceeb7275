#include "owwe/owwe.h"

#include <cstring>
#include <string>
#include <vector>

#include "owwe/analysis.hpp"
#include "owwe/model.hpp"
#include "owwe/products.hpp"

using namespace owwe;

struct owwe_config {
    Config cfg;
};

struct owwe_result {
    RunProducts prod;
};

struct owwe_section {
    Seismogram s;
    std::string provenance;
};

struct owwe_qcurve {
    QCurve q;
    std::vector<unsigned char> defined_bytes;
};

namespace {

thread_local std::string g_last_error;

owwe_status fail(owwe_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

template <typename F>
owwe_status guarded(F&& f) {
    try {
        f();
        return OWWE_OK;
    } catch (const config_error& e) {
        return fail(OWWE_ERR_CONFIG, e.what());
    } catch (const io_error& e) {
        return fail(OWWE_ERR_IO, e.what());
    } catch (const numeric_error& e) {
        return fail(OWWE_ERR_NUMERIC, e.what());
    } catch (const std::domain_error& e) {
        return fail(OWWE_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(OWWE_ERR_NUMERIC, e.what());
    }
}

/* Fold the per-run option overrides into a copy of the config so the run
 * directory hash reflects the physics actually computed. */
Config effective_config(const Config& base, const owwe_oneway_opts* opts) {
    Config cfg = base;
    if (opts) {
        if (opts->epsilon >= 0) cfg.run.epsilon = opts->epsilon;
        if (opts->multiples >= 0) cfg.run.multiples = opts->multiples;
        if (opts->no_transmission) cfg.run.include_transmission = false;
    }
    return cfg;
}

} // namespace

extern "C" {

const char* owwe_version(void) { return "0.1.0"; }

const char* owwe_last_error(void) { return g_last_error.c_str(); }

owwe_status owwe_config_load(const char* path, owwe_config** out) {
    if (!path || !out) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] { *out = new owwe_config{load_config(path)}; });
}

owwe_status owwe_config_parse(const char* text, owwe_config** out) {
    if (!text || !out) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] { *out = new owwe_config{parse_config_text(text)}; });
}

owwe_status owwe_config_override(owwe_config* cfg, const char* dotted_key, const char* value) {
    if (!cfg || !dotted_key || !value) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] { override_config(cfg->cfg, dotted_key, value); });
}

owwe_status owwe_config_hash(const owwe_config* cfg, char buf[17]) {
    if (!cfg || !buf) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] {
        const std::string h = cfg->cfg.hash();
        std::memcpy(buf, h.c_str(), 17);
    });
}

void owwe_config_free(owwe_config* cfg) { delete cfg; }

owwe_status owwe_run_oneway(const owwe_config* cfg, const owwe_oneway_opts* opts,
                            const char* out_dir, owwe_result** out) {
    if (!cfg || !out_dir || !out) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] {
        const Config eff = effective_config(cfg->cfg, opts);
        OnewayOptions o;
        if (opts) {
            o.workers = opts->workers;
            if (opts->snapshot_times && opts->n_snapshot_times)
                o.snapshot_times.assign(opts->snapshot_times,
                                        opts->snapshot_times + opts->n_snapshot_times);
        }
        *out = new owwe_result{write_oneway_products(eff, out_dir, o)};
    });
}

owwe_status owwe_run_fullwave(const owwe_config* cfg, const char* out_dir, owwe_result** out) {
    if (!cfg || !out_dir || !out) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] { *out = new owwe_result{write_fullwave_products(cfg->cfg, out_dir)}; });
}

const char* owwe_result_dir(const owwe_result* r) { return r ? r->prod.dir.c_str() : ""; }

const char* owwe_result_seismogram_path(const owwe_result* r) {
    return r ? r->prod.seismogram_path.c_str() : "";
}

size_t owwe_result_multiple_count(const owwe_result* r) {
    return r ? r->prod.multiple_paths.size() : 0;
}

const char* owwe_result_multiple_path(const owwe_result* r, size_t m) {
    if (!r || m >= r->prod.multiple_paths.size()) return "";
    return r->prod.multiple_paths[m].c_str();
}

void owwe_result_free(owwe_result* r) { delete r; }

owwe_status owwe_section_read(const char* path, owwe_section** out) {
    if (!path || !out) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] {
        auto* s = new owwe_section{read_section(path), ""};
        s->provenance = provenance_name(s->s.provenance);
        *out = s;
    });
}

size_t owwe_section_rows(const owwe_section* s) { return s ? s->s.values.rows() : 0; }
size_t owwe_section_cols(const owwe_section* s) { return s ? s->s.values.cols() : 0; }
double owwe_section_drow(const owwe_section* s) { return s ? s->s.dt : 0.0; }
double owwe_section_dcol(const owwe_section* s) { return s ? s->s.dx : 0.0; }
double owwe_section_depth(const owwe_section* s) { return s ? s->s.receiver_depth : 0.0; }
double owwe_section_shot_x(const owwe_section* s) { return s ? s->s.shot_x : 0.0; }
const char* owwe_section_provenance(const owwe_section* s) {
    return s ? s->provenance.c_str() : "";
}

owwe_status owwe_section_values(const owwe_section* s, double* buf, size_t cap) {
    if (!s || !buf) return fail(OWWE_ERR_USAGE, "null argument");
    const size_t n = s->s.values.size();
    if (cap < n) return fail(OWWE_ERR_USAGE, "buffer too small");
    std::memcpy(buf, s->s.values.data(), n * sizeof(double));
    return OWWE_OK;
}

owwe_status owwe_section_write_csv(const owwe_section* s, const char* path) {
    if (!s || !path) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] { write_section_csv(path, s->s); });
}

void owwe_section_free(owwe_section* s) { delete s; }

owwe_status owwe_qcurve_compute(const char* fullwave_path, const char* oneway_path,
                                owwe_qcurve** out) {
    if (!fullwave_path || !oneway_path || !out) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] {
        const Seismogram full = read_section(fullwave_path);
        const Seismogram one = read_section(oneway_path);
        auto* q = new owwe_qcurve{q_metric(full, one), {}};
        q->defined_bytes.resize(q->q.defined.size());
        for (std::size_t i = 0; i < q->q.defined.size(); ++i)
            q->defined_bytes[i] = q->q.defined[i] ? 1 : 0;
        *out = q;
    });
}

size_t owwe_qcurve_size(const owwe_qcurve* q) { return q ? q->q.q.size() : 0; }
const double* owwe_qcurve_values(const owwe_qcurve* q) { return q ? q->q.q.data() : nullptr; }
const unsigned char* owwe_qcurve_defined(const owwe_qcurve* q) {
    return q ? q->defined_bytes.data() : nullptr;
}
double owwe_qcurve_dx(const owwe_qcurve* q) { return q ? q->q.dx : 0.0; }
double owwe_qcurve_shot_x(const owwe_qcurve* q) { return q ? q->q.shot_x : 0.0; }

owwe_status owwe_qcurve_write_csv(const owwe_qcurve* q, const char* path) {
    if (!q || !path) return fail(OWWE_ERR_USAGE, "null argument");
    return guarded([&] { write_qcurve_csv(path, q->q); });
}

void owwe_qcurve_free(owwe_qcurve* q) { delete q; }

} /* extern "C" */
