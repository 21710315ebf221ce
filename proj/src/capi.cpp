#include "waistband.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "waistband/elastic.hpp"
#include "waistband/errors.hpp"
#include "waistband/force.hpp"
#include "waistband/geometry.hpp"
#include "waistband/sim.hpp"
#include "waistband/spec_io.hpp"

namespace wb = waistband;

struct wb_band {
    wb::ForceDeformationCurve curve;
    wb_band_params params;  // as supplied, for wb_band_get
};

struct wb_machine {
    wb::MachineSpec spec;
};

struct wb_plan {
    wb::WheelPlan plan;
};

struct wb_control {
    wb::ControlSetting setting;
};

struct wb_findings {
    std::vector<wb::Finding> items;
};

struct wb_trace {
    wb::StretchTrace trace;
};

namespace {

thread_local std::string g_last_error;

wb_status fail(wb_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs fn, translating library exceptions into status codes.
template <typename Fn>
wb_status wrap(Fn&& fn) {
    try {
        return fn();
    } catch (const wb::domain_error& e) {
        return fail(WB_ERR_DOMAIN, e.what());
    } catch (const wb::region_error& e) {
        return fail(WB_ERR_REGION, e.what());
    } catch (const wb::config_error& e) {
        return fail(WB_ERR_CONFIG, e.what());
    } catch (const wb::infeasible_error& e) {
        return fail(WB_ERR_INFEASIBLE, e.what());
    } catch (const wb::parse_error& e) {
        return fail(WB_ERR_PARSE, e.what());
    } catch (const wb::validation_error& e) {
        return fail(WB_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(WB_ERR_ARGUMENT, e.what());
    }
}

wb_status require(bool ok, const char* what) {
    return ok ? WB_OK : fail(WB_ERR_ARGUMENT, what);
}

std::optional<double> opt_field(double value) {
    if (value > 0.0) return value;
    return std::nullopt;
}

wb::BandParams to_band_params(const wb_band_params& p) {
    wb::BandParams params;
    params.rest_length_mm = p.rest_length_mm;
    params.stiffness_n_per_m = p.stiffness_n_per_m;
    params.break_force_n = p.break_force_n;
    params.proportional_limit_mm = opt_field(p.proportional_limit_mm);
    params.fracture_extension_mm = opt_field(p.fracture_extension_mm);
    params.cross_section_area_mm2 = opt_field(p.cross_section_area_mm2);
    params.young_modulus_n_per_mm2 = opt_field(p.young_modulus_n_per_mm2);
    return params;
}

wb_band* new_band(const wb::BandParams& params, double end_slope_factor) {
    wb::ElasticBand band = wb::make_band(params);
    wb_band_params out{};
    out.rest_length_mm = band.rest_length_mm;
    out.stiffness_n_per_m = band.stiffness_n_per_m;
    out.break_force_n = band.break_force_n;
    out.proportional_limit_mm = band.proportional_limit_mm;
    out.fracture_extension_mm = band.fracture_extension_mm;
    out.cross_section_area_mm2 = band.cross_section_area_mm2.value_or(0.0);
    out.young_modulus_n_per_mm2 = band.young_modulus_n_per_mm2.value_or(0.0);
    out.end_slope_factor = end_slope_factor;
    return new wb_band{wb::ForceDeformationCurve(std::move(band), end_slope_factor), out};
}

wb::WheelConfig to_config(const wb_wheel_config& c) {
    return wb::make_wheel_config(c.wheel_count, c.min_spacing_mm, c.max_spacing_mm,
                                 c.elongation_at_min, c.elongation_at_max);
}

char* dup_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* wb_status_name(wb_status status) {
    switch (status) {
        case WB_OK: return "ok";
        case WB_ERR_ARGUMENT: return "argument";
        case WB_ERR_DOMAIN: return "domain";
        case WB_ERR_REGION: return "region";
        case WB_ERR_CONFIG: return "config";
        case WB_ERR_INFEASIBLE: return "infeasible";
        case WB_ERR_PARSE: return "parse";
        case WB_ERR_VALIDATION: return "validation";
        case WB_ERR_IO: return "io";
    }
    return "unknown";
}

const char* wb_last_error(void) { return g_last_error.c_str(); }

const char* wb_version(void) { return "0.1.0"; }

void wb_string_free(char* text) { delete[] text; }

/* ---------- elastic band ---------- */

wb_status wb_band_create(const wb_band_params* params, wb_band** out) {
    if (wb_status s = require(params && out, "wb_band_create: null argument")) return s;
    return wrap([&] {
        const double slope = params->end_slope_factor > 0.0 ? params->end_slope_factor : 3.0;
        *out = new_band(to_band_params(*params), slope);
        return WB_OK;
    });
}

wb_status wb_band_from_json(const char* text, size_t length, wb_band** out) {
    if (wb_status s = require(text && out, "wb_band_from_json: null argument")) return s;
    return wrap([&] {
        const wb::BandSpec spec = wb::parse_band_spec(std::string_view(text, length));
        *out = new_band(spec.band, spec.end_slope_factor);
        return WB_OK;
    });
}

void wb_band_free(wb_band* band) { delete band; }

wb_status wb_band_get(const wb_band* band, wb_band_params* out) {
    if (wb_status s = require(band && out, "wb_band_get: null argument")) return s;
    *out = band->params;
    return WB_OK;
}

wb_status wb_elongation_percent(double final_length_mm, double original_length_mm,
                                double* out_percent) {
    if (wb_status s = require(out_percent != nullptr, "wb_elongation_percent: null out"))
        return s;
    return wrap([&] {
        *out_percent = wb::elongation_percent(final_length_mm, original_length_mm);
        return WB_OK;
    });
}

wb_status wb_stiffness_from_measurement(double force_n, double extension_mm,
                                        double* out_n_per_m) {
    if (wb_status s = require(out_n_per_m != nullptr, "wb_stiffness_from_measurement: null out"))
        return s;
    return wrap([&] {
        *out_n_per_m = wb::stiffness_from_measurement(force_n, extension_mm);
        return WB_OK;
    });
}

wb_status wb_hooke_force(const wb_band* band, double extension_mm, double* out_n) {
    if (wb_status s = require(band && out_n, "wb_hooke_force: null argument")) return s;
    return wrap([&] {
        *out_n = wb::hooke_force(band->curve.band(), extension_mm);
        return WB_OK;
    });
}

wb_status wb_extension_from_force_young(const wb_band* band, double force_n, double* out_mm) {
    if (wb_status s = require(band && out_mm, "wb_extension_from_force_young: null argument"))
        return s;
    return wrap([&] {
        *out_mm = wb::extension_from_force_young(band->curve.band(), force_n);
        return WB_OK;
    });
}

const char* wb_region_name(wb_region region) {
    return wb::region_name(static_cast<wb::Region>(region));
}

wb_status wb_curve_force(const wb_band* band, double extension_mm, double* out_force_n,
                         wb_region* out_region) {
    if (wb_status s = require(band && out_force_n, "wb_curve_force: null argument")) return s;
    return wrap([&] {
        const wb::CurveSample sample = band->curve.force_at(extension_mm);
        *out_force_n = sample.force_n;
        if (out_region) *out_region = static_cast<wb_region>(sample.region);
        return WB_OK;
    });
}

wb_status wb_max_safe_extension(const wb_band* band, double force_limit_n, double* out_mm) {
    if (wb_status s = require(band && out_mm, "wb_max_safe_extension: null argument")) return s;
    return wrap([&] {
        *out_mm = wb::max_safe_extension(band->curve, force_limit_n);
        return WB_OK;
    });
}

/* ---------- wheel geometry ---------- */

wb_status wb_envelope_for_config(const wb_wheel_config* config, double* out_min_mm,
                                 double* out_max_mm) {
    if (wb_status s =
            require(config && out_min_mm && out_max_mm, "wb_envelope_for_config: null argument"))
        return s;
    return wrap([&] {
        const wb::MachineEnvelope envelope = wb::envelope_for_config(to_config(*config));
        *out_min_mm = envelope.min_boundary_mm;
        *out_max_mm = envelope.max_boundary_mm;
        return WB_OK;
    });
}

wb_status wb_interpolated_elongation(const wb_wheel_config* config, double spacing_mm,
                                     double* out_factor) {
    if (wb_status s =
            require(config && out_factor, "wb_interpolated_elongation: null argument"))
        return s;
    return wrap([&] {
        *out_factor = wb::interpolated_elongation(to_config(*config), spacing_mm);
        return WB_OK;
    });
}

wb_status wb_required_spacing(const wb_wheel_config* config, double target_boundary_mm,
                              double* out_mm) {
    if (wb_status s = require(config && out_mm, "wb_required_spacing: null argument")) return s;
    return wrap([&] {
        *out_mm = wb::required_spacing(to_config(*config), target_boundary_mm);
        return WB_OK;
    });
}

wb_status wb_machine_from_json(const char* text, size_t length, wb_machine** out) {
    if (wb_status s = require(text && out, "wb_machine_from_json: null argument")) return s;
    return wrap([&] {
        *out = new wb_machine{wb::parse_machine_spec(std::string_view(text, length))};
        return WB_OK;
    });
}

void wb_machine_free(wb_machine* machine) { delete machine; }

wb_status wb_machine_servo(const wb_machine* machine, double* out_torque_nm,
                           double* out_rod_radius_mm) {
    if (wb_status s = require(machine != nullptr, "wb_machine_servo: null machine")) return s;
    if (out_torque_nm) *out_torque_nm = machine->spec.servo.rated_torque_nm;
    if (out_rod_radius_mm) *out_rod_radius_mm = machine->spec.servo.rod_radius_mm;
    return WB_OK;
}

size_t wb_machine_config_count(const wb_machine* machine) {
    return machine ? machine->spec.configs.size() : 0;
}

wb_status wb_machine_config(const wb_machine* machine, size_t index, wb_wheel_config* out) {
    if (wb_status s = require(machine && out, "wb_machine_config: null argument")) return s;
    if (index >= machine->spec.configs.size())
        return fail(WB_ERR_ARGUMENT, "wb_machine_config: index out of range");
    const wb::WheelConfig& c = machine->spec.configs[index];
    *out = {c.wheel_count, c.min_spacing_mm, c.max_spacing_mm, c.elongation_at_min,
            c.elongation_at_max};
    return WB_OK;
}

wb_status wb_machine_envelope(const wb_machine* machine, double* out_min_mm, double* out_max_mm,
                              int* out_min_wheels, int* out_max_wheels) {
    if (wb_status s = require(machine && out_min_mm && out_max_mm,
                              "wb_machine_envelope: null argument"))
        return s;
    return wrap([&] {
        bool first = true;
        wb::MachineEnvelope combined;
        for (const wb::WheelConfig& config : machine->spec.configs) {
            const wb::MachineEnvelope envelope = wb::envelope_for_config(config);
            if (first || envelope.min_boundary_mm < combined.min_boundary_mm) {
                combined.min_boundary_mm = envelope.min_boundary_mm;
                combined.min_source_wheels = config.wheel_count;
            }
            if (first || envelope.max_boundary_mm > combined.max_boundary_mm) {
                combined.max_boundary_mm = envelope.max_boundary_mm;
                combined.max_source_wheels = config.wheel_count;
            }
            first = false;
        }
        *out_min_mm = combined.min_boundary_mm;
        *out_max_mm = combined.max_boundary_mm;
        if (out_min_wheels) *out_min_wheels = combined.min_source_wheels;
        if (out_max_wheels) *out_max_wheels = combined.max_source_wheels;
        return WB_OK;
    });
}

/* ---------- plans ---------- */

wb_status wb_machine_plan(const wb_machine* machine, double target_boundary_mm, wb_plan** out) {
    if (wb_status s = require(machine && out, "wb_machine_plan: null argument")) return s;
    return wrap([&] {
        *out = new wb_plan{wb::select_config(machine->spec.configs, target_boundary_mm)};
        return WB_OK;
    });
}

wb_status wb_pull_plan(double pull_to_mm, wb_plan** out) {
    if (wb_status s = require(out != nullptr, "wb_pull_plan: null out")) return s;
    return wrap([&] {
        *out = new wb_plan{wb::make_pull_plan(pull_to_mm)};
        return WB_OK;
    });
}

void wb_plan_free(wb_plan* plan) { delete plan; }

int wb_plan_wheel_count(const wb_plan* plan) {
    if (!plan || !plan->plan.config) return 0;
    return plan->plan.config->wheel_count;
}

double wb_plan_spacing_mm(const wb_plan* plan) { return plan ? plan->plan.spacing_mm : 0.0; }

double wb_plan_effective_elongation(const wb_plan* plan) {
    return plan ? plan->plan.effective_elongation : 0.0;
}

double wb_plan_target_boundary_mm(const wb_plan* plan) {
    return plan ? plan->plan.target_boundary_mm() : 0.0;
}

/* ---------- force limits ---------- */

wb_status wb_full_torque_force(const wb_machine* machine, double* out_n) {
    if (wb_status s = require(machine && out_n, "wb_full_torque_force: null argument")) return s;
    return wrap([&] {
        *out_n = wb::full_torque_force(machine->spec.servo);
        return WB_OK;
    });
}

wb_status wb_limited_torque(const wb_machine* machine, double control_fraction, double* out_nm) {
    if (wb_status s = require(machine && out_nm, "wb_limited_torque: null argument")) return s;
    return wrap([&] {
        *out_nm = wb::limited_torque(machine->spec.servo, control_fraction);
        return WB_OK;
    });
}

wb_status wb_limited_force(const wb_machine* machine, double control_fraction, double* out_n) {
    if (wb_status s = require(machine && out_n, "wb_limited_force: null argument")) return s;
    return wrap([&] {
        *out_n = wb::limited_force(machine->spec.servo, control_fraction);
        return WB_OK;
    });
}

wb_status wb_control_create(const wb_machine* machine, double control_fraction,
                            wb_control** out) {
    if (wb_status s = require(machine && out, "wb_control_create: null argument")) return s;
    return wrap([&] {
        *out = new wb_control{wb::make_control(machine->spec.servo, control_fraction)};
        return WB_OK;
    });
}

wb_status wb_control_for_force(const wb_machine* machine, double safety_force_n,
                               wb_control** out) {
    if (wb_status s = require(machine && out, "wb_control_for_force: null argument")) return s;
    return wrap([&] {
        *out = new wb_control{wb::control_for_force(machine->spec.servo, safety_force_n)};
        return WB_OK;
    });
}

wb_status wb_max_control_percent(const wb_machine* machine, double break_force_n,
                                 double granularity, wb_control** out) {
    if (wb_status s = require(machine && out, "wb_max_control_percent: null argument")) return s;
    return wrap([&] {
        *out = new wb_control{
            wb::max_control_percent(machine->spec.servo, break_force_n, granularity)};
        return WB_OK;
    });
}

void wb_control_free(wb_control* control) { delete control; }

double wb_control_fraction(const wb_control* control) {
    return control ? control->setting.control_fraction : 0.0;
}

double wb_control_safety_force_n(const wb_control* control) {
    return control ? control->setting.safety_force_n : 0.0;
}

/* ---------- validation and simulation ---------- */

wb_status wb_validate_cycle(const wb_band* band, const wb_plan* plan, const wb_control* limit,
                            wb_findings** out) {
    if (wb_status s = require(band && plan && limit && out, "wb_validate_cycle: null argument"))
        return s;
    return wrap([&] {
        *out = new wb_findings{wb::validate_cycle(band->curve, plan->plan, limit->setting)};
        return WB_OK;
    });
}

size_t wb_findings_count(const wb_findings* findings) {
    return findings ? findings->items.size() : 0;
}

const char* wb_findings_code(const wb_findings* findings, size_t index) {
    if (!findings || index >= findings->items.size()) return "";
    return findings->items[index].code.c_str();
}

const char* wb_findings_message(const wb_findings* findings, size_t index) {
    if (!findings || index >= findings->items.size()) return "";
    return findings->items[index].message.c_str();
}

void wb_findings_free(wb_findings* findings) { delete findings; }

wb_status wb_machine_sim_defaults(const wb_machine* machine, wb_sim_params* out) {
    if (wb_status s = require(machine && out, "wb_machine_sim_defaults: null argument"))
        return s;
    const wb::SimParams& d = machine->spec.sim_defaults;
    *out = {d.time_step_ms, d.wheel_speed_mm_s, d.sensor_noise_n, d.max_sim_time_s, d.rng_seed};
    return WB_OK;
}

const char* wb_outcome_name(wb_outcome outcome) {
    return wb::outcome_name(static_cast<wb::Outcome>(outcome));
}

wb_status wb_simulate_cycle(const wb_band* band, const wb_plan* plan, const wb_control* limit,
                            const wb_sim_params* params, double start_spacing_mm,
                            wb_trace** out) {
    if (wb_status s = require(band && plan && limit && params && out,
                              "wb_simulate_cycle: null argument"))
        return s;
    return wrap([&] {
        const wb::SimParams sim_params{params->time_step_ms, params->wheel_speed_mm_s,
                                       params->sensor_noise_n, params->max_sim_time_s,
                                       params->rng_seed};
        const double start = start_spacing_mm < 0.0
                                 ? wb::zero_extension_spacing(band->curve.band(), plan->plan)
                                 : start_spacing_mm;
        *out = new wb_trace{
            wb::simulate_cycle(band->curve, plan->plan, limit->setting, sim_params, start)};
        return WB_OK;
    });
}

void wb_trace_free(wb_trace* trace) { delete trace; }

size_t wb_trace_sample_count(const wb_trace* trace) {
    return trace ? trace->trace.samples.size() : 0;
}

wb_status wb_trace_get_sample(const wb_trace* trace, size_t index, wb_trace_sample* out) {
    if (wb_status s = require(trace && out, "wb_trace_get_sample: null argument")) return s;
    if (index >= trace->trace.samples.size())
        return fail(WB_ERR_ARGUMENT, "wb_trace_get_sample: index out of range");
    const wb::TraceSample& sample = trace->trace.samples[index];
    *out = {sample.time_ms, sample.spacing_mm, sample.extension_mm, sample.sensed_force_n,
            static_cast<wb_command>(sample.commanded)};
    return WB_OK;
}

wb_outcome wb_trace_outcome(const wb_trace* trace) {
    return trace ? static_cast<wb_outcome>(trace->trace.outcome) : WB_OUTCOME_TIMEOUT;
}

double wb_trace_peak_force_n(const wb_trace* trace) {
    return trace ? trace->trace.peak_force_n : 0.0;
}

double wb_trace_final_spacing_mm(const wb_trace* trace) {
    return trace ? trace->trace.final_spacing_mm : 0.0;
}

double wb_trace_duration_ms(const wb_trace* trace) {
    if (!trace || trace->trace.samples.empty()) return 0.0;
    return trace->trace.samples.back().time_ms;
}

wb_status wb_trace_to_csv(const wb_trace* trace, char** out_text) {
    if (wb_status s = require(trace && out_text, "wb_trace_to_csv: null argument")) return s;
    return wrap([&] {
        *out_text = dup_string(wb::trace_to_csv(trace->trace));
        return WB_OK;
    });
}

wb_status wb_trace_write_csv(const wb_trace* trace, const char* path) {
    if (wb_status s = require(trace && path, "wb_trace_write_csv: null argument")) return s;
    std::ofstream file(path, std::ios::binary);
    if (!file) return fail(WB_ERR_IO, "wb_trace_write_csv: cannot open output file");
    file << wb::trace_to_csv(trace->trace);
    file.flush();
    if (!file) return fail(WB_ERR_IO, "wb_trace_write_csv: write failed");
    return WB_OK;
}

}  // extern "C"
