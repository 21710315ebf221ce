/* waistband.h - C API of the elastic-waistband planning toolkit.
 *
 * Every object is an opaque handle created by a wb_*_create/from/plan
 * function and released with the matching wb_*_free. Calls return a
 * wb_status; on failure wb_last_error() holds a thread-local message for
 * the failing call. Lengths are mm, forces N, torque N*m.
 */
#ifndef WAISTBAND_H
#define WAISTBAND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WB_API __declspec(dllexport)
#else
#define WB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wb_status {
    WB_OK = 0,
    WB_ERR_ARGUMENT = 1,   /* null handle or out pointer */
    WB_ERR_DOMAIN = 2,     /* value outside an operation's domain */
    WB_ERR_REGION = 3,     /* extension beyond the linear region */
    WB_ERR_CONFIG = 4,     /* invariant or required field violated */
    WB_ERR_INFEASIBLE = 5, /* no plan or control setting satisfies the limits */
    WB_ERR_PARSE = 6,      /* spec text failed to parse or validate */
    WB_ERR_VALIDATION = 7, /* cycle rejected by pre-run validation */
    WB_ERR_IO = 8,         /* file could not be read or written */
} wb_status;

WB_API const char* wb_status_name(wb_status status);

/* Message for the last failing call on this thread; empty if none. */
WB_API const char* wb_last_error(void);

WB_API const char* wb_version(void);

/* Frees strings returned through char** out parameters. */
WB_API void wb_string_free(char* text);

/* ---------- elastic band ---------- */

typedef struct wb_band wb_band;

/* Fields <= 0 mean "not provided" for the optional entries. */
typedef struct wb_band_params {
    double rest_length_mm;
    double stiffness_n_per_m;
    double break_force_n;
    double proportional_limit_mm;   /* optional */
    double fracture_extension_mm;   /* optional */
    double cross_section_area_mm2;  /* optional */
    double young_modulus_n_per_mm2; /* optional */
    double end_slope_factor;        /* optional, default 3 */
} wb_band_params;

WB_API wb_status wb_band_create(const wb_band_params* params, wb_band** out);
WB_API wb_status wb_band_from_json(const char* text, size_t length, wb_band** out);
WB_API void wb_band_free(wb_band* band);

WB_API wb_status wb_band_get(const wb_band* band, wb_band_params* out);

WB_API wb_status wb_elongation_percent(double final_length_mm, double original_length_mm,
                                       double* out_percent);
WB_API wb_status wb_stiffness_from_measurement(double force_n, double extension_mm,
                                               double* out_n_per_m);
WB_API wb_status wb_hooke_force(const wb_band* band, double extension_mm, double* out_n);
WB_API wb_status wb_extension_from_force_young(const wb_band* band, double force_n,
                                               double* out_mm);

typedef enum wb_region {
    WB_REGION_LINEAR = 0,
    WB_REGION_NONLINEAR = 1,
    WB_REGION_FRACTURED = 2,
} wb_region;

WB_API const char* wb_region_name(wb_region region);

WB_API wb_status wb_curve_force(const wb_band* band, double extension_mm, double* out_force_n,
                                wb_region* out_region);
WB_API wb_status wb_max_safe_extension(const wb_band* band, double force_limit_n,
                                       double* out_mm);

/* ---------- wheel geometry ---------- */

typedef struct wb_wheel_config {
    int wheel_count;
    double min_spacing_mm;
    double max_spacing_mm;
    double elongation_at_min;
    double elongation_at_max;
} wb_wheel_config;

WB_API wb_status wb_envelope_for_config(const wb_wheel_config* config, double* out_min_mm,
                                        double* out_max_mm);
WB_API wb_status wb_interpolated_elongation(const wb_wheel_config* config, double spacing_mm,
                                            double* out_factor);
WB_API wb_status wb_required_spacing(const wb_wheel_config* config, double target_boundary_mm,
                                     double* out_mm);

typedef struct wb_machine wb_machine;

WB_API wb_status wb_machine_from_json(const char* text, size_t length, wb_machine** out);
WB_API void wb_machine_free(wb_machine* machine);

WB_API wb_status wb_machine_servo(const wb_machine* machine, double* out_torque_nm,
                                  double* out_rod_radius_mm);
WB_API size_t wb_machine_config_count(const wb_machine* machine);
WB_API wb_status wb_machine_config(const wb_machine* machine, size_t index,
                                   wb_wheel_config* out);

/* Combined range over all configs: overall min and max boundary, with the
 * wheel count that produced each bound. */
WB_API wb_status wb_machine_envelope(const wb_machine* machine, double* out_min_mm,
                                     double* out_max_mm, int* out_min_wheels,
                                     int* out_max_wheels);

/* ---------- plans ---------- */

typedef struct wb_plan wb_plan;

WB_API wb_status wb_machine_plan(const wb_machine* machine, double target_boundary_mm,
                                 wb_plan** out);
/* Straight pull to a stretched length; no wheel config involved. */
WB_API wb_status wb_pull_plan(double pull_to_mm, wb_plan** out);
WB_API void wb_plan_free(wb_plan* plan);

/* 0 when the plan is a straight pull. */
WB_API int wb_plan_wheel_count(const wb_plan* plan);
WB_API double wb_plan_spacing_mm(const wb_plan* plan);
WB_API double wb_plan_effective_elongation(const wb_plan* plan);
WB_API double wb_plan_target_boundary_mm(const wb_plan* plan);

/* ---------- force limits ---------- */

typedef struct wb_control wb_control;

WB_API wb_status wb_full_torque_force(const wb_machine* machine, double* out_n);
WB_API wb_status wb_limited_torque(const wb_machine* machine, double control_fraction,
                                   double* out_nm);
WB_API wb_status wb_limited_force(const wb_machine* machine, double control_fraction,
                                  double* out_n);

WB_API wb_status wb_control_create(const wb_machine* machine, double control_fraction,
                                   wb_control** out);
WB_API wb_status wb_control_for_force(const wb_machine* machine, double safety_force_n,
                                      wb_control** out);
/* Largest granule multiple whose limited force stays at or below
 * break_force_n; granularity is a fraction, at most 0.01. */
WB_API wb_status wb_max_control_percent(const wb_machine* machine, double break_force_n,
                                        double granularity, wb_control** out);
WB_API void wb_control_free(wb_control* control);

WB_API double wb_control_fraction(const wb_control* control);
WB_API double wb_control_safety_force_n(const wb_control* control);

/* ---------- validation and simulation ---------- */

typedef struct wb_findings wb_findings;

WB_API wb_status wb_validate_cycle(const wb_band* band, const wb_plan* plan,
                                   const wb_control* limit, wb_findings** out);
WB_API size_t wb_findings_count(const wb_findings* findings);
WB_API const char* wb_findings_code(const wb_findings* findings, size_t index);
WB_API const char* wb_findings_message(const wb_findings* findings, size_t index);
WB_API void wb_findings_free(wb_findings* findings);

typedef struct wb_sim_params {
    uint32_t time_step_ms;
    double wheel_speed_mm_s;
    double sensor_noise_n;
    double max_sim_time_s;
    uint64_t rng_seed;
} wb_sim_params;

WB_API wb_status wb_machine_sim_defaults(const wb_machine* machine, wb_sim_params* out);

typedef enum wb_command {
    WB_COMMAND_ADVANCING = 0,
    WB_COMMAND_HOLDING = 1,
    WB_COMMAND_STOPPED = 2,
} wb_command;

typedef enum wb_outcome {
    WB_OUTCOME_REACHED_TARGET = 0,
    WB_OUTCOME_OVERLOAD_STOP = 1,
    WB_OUTCOME_FRACTURED = 2,
    WB_OUTCOME_TIMEOUT = 3,
} wb_outcome;

WB_API const char* wb_outcome_name(wb_outcome outcome);

typedef struct wb_trace wb_trace;

typedef struct wb_trace_sample {
    double time_ms;
    double spacing_mm;
    double extension_mm;
    double sensed_force_n;
    wb_command commanded;
} wb_trace_sample;

/* start_spacing_mm < 0 starts at the zero-extension spacing. */
WB_API wb_status wb_simulate_cycle(const wb_band* band, const wb_plan* plan,
                                   const wb_control* limit, const wb_sim_params* params,
                                   double start_spacing_mm, wb_trace** out);
WB_API void wb_trace_free(wb_trace* trace);

WB_API size_t wb_trace_sample_count(const wb_trace* trace);
WB_API wb_status wb_trace_get_sample(const wb_trace* trace, size_t index,
                                     wb_trace_sample* out);
WB_API wb_outcome wb_trace_outcome(const wb_trace* trace);
WB_API double wb_trace_peak_force_n(const wb_trace* trace);
WB_API double wb_trace_final_spacing_mm(const wb_trace* trace);
WB_API double wb_trace_duration_ms(const wb_trace* trace);

WB_API wb_status wb_trace_to_csv(const wb_trace* trace, char** out_text);
WB_API wb_status wb_trace_write_csv(const wb_trace* trace, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* WAISTBAND_H */
