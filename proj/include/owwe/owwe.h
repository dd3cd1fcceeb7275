/*
 * owwe - one-way wave-equation modeling for 2D stratified acoustic media.
 *
 * C interface to the solver library: load a config, run the one-way
 * (Bremmer-series) engine or the full-wave finite-difference reference on
 * it, and compare the two through Q(x) amplitude-ratio curves. All handles
 * are opaque; every call that can fail returns an owwe_status, and
 * owwe_last_error() describes the most recent failure on this thread.
 */
#ifndef OWWE_H
#define OWWE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum owwe_status {
    OWWE_OK = 0,
    OWWE_ERR_CONFIG = 2,  /* bad config file, key, value, or invariant */
    OWWE_ERR_NUMERIC = 3, /* CFL violation, NaN, or other numeric failure */
    OWWE_ERR_IO = 4,      /* file read/write problems */
    OWWE_ERR_USAGE = 5    /* null handle or bad argument */
} owwe_status;

typedef struct owwe_config owwe_config;
typedef struct owwe_result owwe_result;
typedef struct owwe_section owwe_section;
typedef struct owwe_qcurve owwe_qcurve;

const char* owwe_version(void);
const char* owwe_last_error(void);

/* ---- configuration ---- */

owwe_status owwe_config_load(const char* path, owwe_config** out);
owwe_status owwe_config_parse(const char* text, owwe_config** out);

/* Override one value, e.g. ("run.epsilon", "1") or ("model.layers",
 * "500:2400"). Fails on unknown keys. */
owwe_status owwe_config_override(owwe_config* cfg, const char* dotted_key, const char* value);

/* 16 hex chars + NUL identifying the effective config; run directories are
 * named run_<hash>. */
owwe_status owwe_config_hash(const owwe_config* cfg, char buf[17]);

void owwe_config_free(owwe_config* cfg);

/* ---- simulation runs ---- */

typedef struct owwe_oneway_opts {
    int epsilon;             /* 0 or 1; -1 keeps the config value */
    int multiples;           /* N; -1 keeps the config value */
    int no_transmission;     /* nonzero forces t0 = 0 (r0 kept) */
    int workers;             /* frequency worker pool; 0 = 1, env OWWE_WORKERS wins */
    const double* snapshot_times; /* optional wavefield snapshots */
    size_t n_snapshot_times;
} owwe_oneway_opts;

/* Runs the Bremmer-series engine and writes seismogram.owwf, one
 * multiple_<m>.owwf per m, optional snapshots, and manifest.json under
 * <out_dir>/run_<hash>/. Pass opts = NULL for config defaults. */
owwe_status owwe_run_oneway(const owwe_config* cfg, const owwe_oneway_opts* opts,
                            const char* out_dir, owwe_result** out);

/* Runs the finite-difference reference and writes fullwave.owwf plus
 * manifest.json under <out_dir>/run_<hash>/. */
owwe_status owwe_run_fullwave(const owwe_config* cfg, const char* out_dir, owwe_result** out);

const char* owwe_result_dir(const owwe_result* r);
const char* owwe_result_seismogram_path(const owwe_result* r);
size_t owwe_result_multiple_count(const owwe_result* r); /* 0 for full-wave runs */
const char* owwe_result_multiple_path(const owwe_result* r, size_t m);
void owwe_result_free(owwe_result* r);

/* ---- section files ---- */

owwe_status owwe_section_read(const char* path, owwe_section** out);
size_t owwe_section_rows(const owwe_section* s);
size_t owwe_section_cols(const owwe_section* s);
double owwe_section_drow(const owwe_section* s);
double owwe_section_dcol(const owwe_section* s);
double owwe_section_depth(const owwe_section* s);
double owwe_section_shot_x(const owwe_section* s);
const char* owwe_section_provenance(const owwe_section* s);
/* Row-major rows*cols block, row = one time sample across offsets. */
owwe_status owwe_section_values(const owwe_section* s, double* buf, size_t cap);
owwe_status owwe_section_write_csv(const owwe_section* s, const char* path);
void owwe_section_free(owwe_section* s);

/* ---- Q(x) amplitude comparison ---- */

owwe_status owwe_qcurve_compute(const char* fullwave_path, const char* oneway_path,
                                owwe_qcurve** out);
size_t owwe_qcurve_size(const owwe_qcurve* q);
const double* owwe_qcurve_values(const owwe_qcurve* q);
/* 1 where both peaks clear the noise floor, else 0 (and q undefined). */
const unsigned char* owwe_qcurve_defined(const owwe_qcurve* q);
double owwe_qcurve_dx(const owwe_qcurve* q);
double owwe_qcurve_shot_x(const owwe_qcurve* q);
owwe_status owwe_qcurve_write_csv(const owwe_qcurve* q, const char* path);
void owwe_qcurve_free(owwe_qcurve* q);

#ifdef __cplusplus
}
#endif

#endif /* OWWE_H */
