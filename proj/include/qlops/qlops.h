/* qlops — benchmarking toolkit for fault-tolerant quantum computing
 * configurations.  C API of the shared library: opaque handles, status
 * codes, and plain-old-data views.  All strings returned through
 * `char**` are heap-allocated and must be released with
 * qlops_string_free(); `const char*` results stay owned by the handle
 * they came from.
 */
#ifndef QLOPS_QLOPS_H
#define QLOPS_QLOPS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qlops_status {
    QLOPS_OK = 0,
    QLOPS_ERR_IO = 1,
    QLOPS_ERR_PARSE = 2,
    QLOPS_ERR_VALIDATION = 3,
    QLOPS_ERR_DOMAIN = 4,
    QLOPS_ERR_INFEASIBLE = 5,
    QLOPS_ERR_BAD_ARG = 6,
    QLOPS_ERR_UNKNOWN = 7
} qlops_status;

/* Process exit code convention: 0 success, 1 validation/usage problems,
 * 2 infeasible scenario. */
int qlops_status_exit_code(qlops_status status);

/* Message for the most recent failure on this thread. */
const char* qlops_last_error(void);

void qlops_string_free(char* text);

/* ---- configuration ---------------------------------------------------- */

typedef struct qlops_config qlops_config;

/* Loads the nested key-value text format or its JSON rendering. */
qlops_status qlops_config_load(const char* path, qlops_config** out);
void qlops_config_free(qlops_config* config);

size_t qlops_config_warning_count(const qlops_config* config);
const char* qlops_config_warning(const qlops_config* config, size_t index);

/* Canonical JSON rendering of a loaded configuration. */
qlops_status qlops_config_to_json(const qlops_config* config, char** json_out);

/* ---- scenario evaluation ---------------------------------------------- */

typedef struct qlops_results qlops_results;

typedef struct qlops_scenario_view {
    const char* name;
    const char* platform;
    const char* code_label;
    long k;
    int distance;
    double p0;
    double t_r;
    double t_sec;
    long cycles;
    long long physical_qubits;
    double qlops;
    double density;
    int parallel_decoder;
    int boundary;      /* ceil(t_r/t_sec) sat on an integer boundary */
    double qlops_alt;  /* the other ceiling reading when boundary != 0 */
    int has_factory;
    int proto_d_x, proto_d_z, proto_d_m;
    double factory_p_out;
    double factory_p_accept;
    double factory_cycles;
    long long factory_unit_qubits;
    long long factory_units;
    long long factory_total_qubits;
} qlops_scenario_view;

/* Evaluates every scenario, or only `scenario` when non-NULL. */
qlops_status qlops_eval(const qlops_config* config, const char* scenario, qlops_results** out);
void qlops_results_free(qlops_results* results);

size_t qlops_results_count(const qlops_results* results);
qlops_status qlops_results_get(const qlops_results* results, size_t index,
                               qlops_scenario_view* out);

/* Writes report documents into out_dir.  format: "csv", "md", "plotdata". */
qlops_status qlops_results_emit(const qlops_results* results, const char* format,
                                const char* out_dir);

/* ---- calibration fits -------------------------------------------------- */

typedef struct qlops_fit_view {
    double intercept;
    double slope;
    int d_min;
    int d_max;
    size_t samples;
    double max_abs_residual;
} qlops_fit_view;

/* Fits ln(p0) ~ intercept + slope*d from CSV columns (d, p_L, k). */
qlops_status qlops_fit_csv(const char* samples_path, qlops_fit_view* out);

/* ---- factory sizing and case studies ----------------------------------- */

/* Factory plans of every scenario that references `code_id`. */
qlops_status qlops_factory_report(const qlops_config* config, const char* code_id,
                                  char** text_out);

qlops_status qlops_case_study_report(const qlops_config* config, char** text_out);

/* ---- direct metric entry points ---------------------------------------- */

qlops_status qlops_p0_from_pl(double p_l, long k, int d, double* out);
qlops_status qlops_metric(long k, double t_r, double t_sec, int d, double* out);
qlops_status qlops_metric_correlated(long k, double t_sec, long rounds_per_op, double* out);
qlops_status qlops_distillation_unit_qubits(int d_x, int d_z, int d_m, long long* out);
qlops_status qlops_distillation_units_needed(long k, double t_unit, double t_logical,
                                             long long* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QLOPS_QLOPS_H */
