// waistband-cli: planning, limit derivation and cycle simulation for the
// elastic-waistband stretch machine, driven by JSON spec files.
//
// Exit codes: 0 ok, 2 input error, 3 infeasible plan, 4 infeasible limit,
// 5 validation findings.
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "waistband.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasiblePlan = 3;
constexpr int kExitInfeasibleLimit = 4;
constexpr int kExitFindings = 5;

struct cli_error {
    int code;
    std::string message;
};

int exit_for(wb_status status, int infeasible_exit) {
    switch (status) {
        case WB_OK: return kExitOk;
        case WB_ERR_INFEASIBLE: return infeasible_exit;
        case WB_ERR_VALIDATION: return kExitFindings;
        default: return kExitInput;
    }
}

// Throws cli_error carrying wb_last_error() when the call failed.
void check(wb_status status, int infeasible_exit = kExitInfeasiblePlan) {
    if (status != WB_OK) throw cli_error{exit_for(status, infeasible_exit), wb_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw cli_error{kExitInput, "cannot open " + path};
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

template <typename T>
using handle = std::unique_ptr<T, void (*)(T*)>;

handle<wb_machine> load_machine(const std::string& path) {
    const std::string text = read_file(path);
    wb_machine* machine = nullptr;
    check(wb_machine_from_json(text.data(), text.size(), &machine));
    return {machine, wb_machine_free};
}

handle<wb_band> load_band(const std::string& path) {
    const std::string text = read_file(path);
    wb_band* band = nullptr;
    check(wb_band_from_json(text.data(), text.size(), &band));
    return {band, wb_band_free};
}

// Numbers are displayed rounded to one decimal unless --full-precision.
std::string fmt(double value, bool full) {
    char buf[64];
    std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.1f", value);
    return buf;
}

struct OutputOpts {
    bool json = false;
    bool full = false;
};

void add_output_flags(CLI::App* cmd, OutputOpts& out) {
    cmd->add_flag("--json", out.json, "emit machine-readable JSON instead of text");
    cmd->add_flag("--full-precision", out.full, "print text numbers at full precision");
}

// One result line in text mode; JSON always carries full precision.
void line(const OutputOpts& out, const char* label, double value, const char* unit) {
    if (out.json) return;
    std::printf("%s: %s %s\n", label, fmt(value, out.full).c_str(), unit);
}

void emit(const OutputOpts& out, const json& doc) {
    if (out.json) std::printf("%s\n", doc.dump(2).c_str());
}

json plan_to_json(const wb_plan* plan) {
    return {{"wheel_count", wb_plan_wheel_count(plan)},
            {"spacing_mm", wb_plan_spacing_mm(plan)},
            {"effective_elongation", wb_plan_effective_elongation(plan)},
            {"target_boundary_mm", wb_plan_target_boundary_mm(plan)}};
}

void print_plan(const OutputOpts& out, const wb_plan* plan) {
    if (out.json) return;
    if (wb_plan_wheel_count(plan) == 0) {
        std::printf("plan: straight pull to %s mm\n",
                    fmt(wb_plan_spacing_mm(plan), out.full).c_str());
        return;
    }
    std::printf("plan: %d wheels, spacing %s mm, elongation factor %s, boundary %s mm\n",
                wb_plan_wheel_count(plan), fmt(wb_plan_spacing_mm(plan), out.full).c_str(),
                fmt(wb_plan_effective_elongation(plan), out.full).c_str(),
                fmt(wb_plan_target_boundary_mm(plan), out.full).c_str());
}

/* ---------- band-props ---------- */

struct BandPropsOpts {
    OutputOpts out;
    std::string band_file;
    double rest_length = 0, stiffness = 0, break_force = 0;
    double prop_limit = 0, fracture = 0, area = 0, young = 0, end_slope = 0;
    double final_length = 0, measured_force = 0, measured_extension = 0;
    std::vector<double> at_extension;
    double force_limit = 0, applied_force = 0;
    CLI::Option* has_final = nullptr;
    CLI::Option* has_force = nullptr;
    CLI::Option* has_extension = nullptr;
    CLI::Option* has_force_limit = nullptr;
    CLI::Option* has_applied = nullptr;
};

CLI::App* add_band_props(CLI::App& app, BandPropsOpts& o) {
    CLI::App* cmd = app.add_subcommand(
        "band-props", "band properties: elongation, stiffness and the force curve");
    cmd->add_option("--band", o.band_file, "band spec JSON file");
    cmd->add_option("--rest-length-mm", o.rest_length, "unstretched band length");
    cmd->add_option("--stiffness-n-per-m", o.stiffness, "linear-region stiffness");
    cmd->add_option("--break-force-n", o.break_force, "fracture tension");
    cmd->add_option("--proportional-limit-mm", o.prop_limit, "end of the linear region");
    cmd->add_option("--fracture-extension-mm", o.fracture, "extension at the break force");
    cmd->add_option("--cross-section-area-mm2", o.area, "band cross-section area");
    cmd->add_option("--young-modulus-n-per-mm2", o.young, "elastic modulus");
    cmd->add_option("--end-slope-factor", o.end_slope,
                    "curve end slope as a multiple of the stiffness (default 3)");
    o.has_final =
        cmd->add_option("--final-length-mm", o.final_length, "stretched length measured");
    o.has_force =
        cmd->add_option("--measured-force-n", o.measured_force, "force at the measured stretch");
    o.has_extension = cmd->add_option("--measured-extension-mm", o.measured_extension,
                                      "extension at the measured force (default: final - rest)");
    cmd->add_option("--at-extension-mm", o.at_extension,
                    "evaluate the force curve at these extensions");
    o.has_force_limit = cmd->add_option("--force-limit-n", o.force_limit,
                                        "report the largest extension whose force stays below");
    o.has_applied = cmd->add_option("--applied-force-n", o.applied_force,
                                    "report the elastic-modulus extension for this force");
    add_output_flags(cmd, o.out);
    return cmd;
}

int cmd_band_props(const BandPropsOpts& o) {
    json doc;
    bool computed = false;
    bool stiffness_printed = false;

    handle<wb_band> band{nullptr, wb_band_free};
    wb_band_params params{};
    const bool inline_flags = o.rest_length > 0 || o.stiffness > 0 || o.break_force > 0 ||
                              o.prop_limit > 0 || o.fracture > 0 || o.area > 0 || o.young > 0 ||
                              o.end_slope > 0;
    if (!o.band_file.empty() && inline_flags)
        throw cli_error{kExitInput, "band-props: use either --band or inline band flags"};
    if (!o.band_file.empty()) {
        band = load_band(o.band_file);
        check(wb_band_get(band.get(), &params));
    } else {
        params = {o.rest_length, o.stiffness,  o.break_force, o.prop_limit,
                  o.fracture,    o.area,       o.young,       o.end_slope};
    }

    // Elongation needs the rest length plus the measured final length.
    if (*o.has_final) {
        if (params.rest_length_mm <= 0)
            throw cli_error{kExitInput,
                            "band-props: --final-length-mm needs a rest length "
                            "(--rest-length-mm or --band)"};
        double percent = 0;
        check(wb_elongation_percent(o.final_length, params.rest_length_mm, &percent));
        line(o.out, "elongation", percent, "%");
        doc["elongation_percent"] = percent;
        computed = true;
    }

    // Stiffness from one measurement; the extension defaults to final - rest.
    if (*o.has_force) {
        double extension = o.measured_extension;
        if (!*o.has_extension) {
            if (!*o.has_final || params.rest_length_mm <= 0)
                throw cli_error{kExitInput,
                                "band-props: --measured-force-n needs --measured-extension-mm "
                                "or both --final-length-mm and a rest length"};
            extension = o.final_length - params.rest_length_mm;
        }
        double stiffness = 0;
        check(wb_stiffness_from_measurement(o.measured_force, extension, &stiffness));
        line(o.out, "stiffness", stiffness, "N/m");
        doc["stiffness_n_per_m"] = stiffness;
        computed = true;
        stiffness_printed = true;
        // A band defined by a measurement instead of an explicit stiffness.
        if (params.stiffness_n_per_m <= 0) params.stiffness_n_per_m = stiffness;
    }

    if (!band && params.rest_length_mm > 0 && params.stiffness_n_per_m > 0 &&
        params.break_force_n > 0) {
        wb_band* raw = nullptr;
        check(wb_band_create(&params, &raw));
        band.reset(raw);
        check(wb_band_get(band.get(), &params));
    }

    if (band) {
        line(o.out, "rest length", params.rest_length_mm, "mm");
        if (!stiffness_printed) line(o.out, "stiffness", params.stiffness_n_per_m, "N/m");
        line(o.out, "break force", params.break_force_n, "N");
        line(o.out, "proportional limit", params.proportional_limit_mm, "mm");
        line(o.out, "fracture extension", params.fracture_extension_mm, "mm");
        doc["band"] = {{"rest_length_mm", params.rest_length_mm},
                       {"stiffness_n_per_m", params.stiffness_n_per_m},
                       {"break_force_n", params.break_force_n},
                       {"proportional_limit_mm", params.proportional_limit_mm},
                       {"fracture_extension_mm", params.fracture_extension_mm},
                       {"end_slope_factor", params.end_slope_factor}};
        if (params.cross_section_area_mm2 > 0)
            doc["band"]["cross_section_area_mm2"] = params.cross_section_area_mm2;
        if (params.young_modulus_n_per_mm2 > 0)
            doc["band"]["young_modulus_n_per_mm2"] = params.young_modulus_n_per_mm2;
        computed = true;
    }

    if (!o.at_extension.empty()) {
        if (!band)
            throw cli_error{kExitInput,
                            "band-props: --at-extension-mm needs a full band "
                            "(rest length, stiffness and break force)"};
        doc["curve"] = json::array();
        for (double extension : o.at_extension) {
            double force = 0;
            wb_region region = WB_REGION_LINEAR;
            check(wb_curve_force(band.get(), extension, &force, &region));
            if (!o.out.json)
                std::printf("force at %s mm: %s N (%s)\n", fmt(extension, o.out.full).c_str(),
                            fmt(force, o.out.full).c_str(), wb_region_name(region));
            doc["curve"].push_back({{"extension_mm", extension},
                                    {"force_n", force},
                                    {"region", wb_region_name(region)}});
        }
        computed = true;
    }

    if (*o.has_force_limit) {
        if (!band)
            throw cli_error{kExitInput,
                            "band-props: --force-limit-n needs a full band "
                            "(rest length, stiffness and break force)"};
        double extension = 0;
        check(wb_max_safe_extension(band.get(), o.force_limit, &extension));
        line(o.out, "max safe extension", extension, "mm");
        doc["max_safe_extension_mm"] = extension;
        computed = true;
    }

    if (*o.has_applied) {
        if (!band)
            throw cli_error{kExitInput,
                            "band-props: --applied-force-n needs a full band "
                            "(rest length, stiffness and break force)"};
        double extension = 0;
        check(wb_extension_from_force_young(band.get(), o.applied_force, &extension));
        line(o.out, "extension from applied force", extension, "mm");
        doc["extension_from_young_mm"] = extension;
        computed = true;
    }

    if (!computed)
        throw cli_error{kExitInput,
                        "band-props: nothing to compute; pass --band, inline band flags or a "
                        "measurement"};
    emit(o.out, doc);
    return kExitOk;
}

/* ---------- plan ---------- */

struct PlanOpts {
    OutputOpts out;
    std::string machine_file;
    double target_boundary = 0;
    CLI::Option* has_target = nullptr;
};

CLI::App* add_plan(CLI::App& app, PlanOpts& o) {
    CLI::App* cmd = app.add_subcommand(
        "plan", "pick a wheel configuration and spacing for a target boundary");
    cmd->add_option("--machine", o.machine_file, "machine spec JSON file")->required();
    o.has_target = cmd->add_option("--target-boundary-mm", o.target_boundary,
                                   "stretched rounded boundary to plan for");
    add_output_flags(cmd, o.out);
    return cmd;
}

int cmd_plan(const PlanOpts& o) {
    const handle<wb_machine> machine = load_machine(o.machine_file);

    double env_min = 0, env_max = 0;
    int min_wheels = 0, max_wheels = 0;
    check(wb_machine_envelope(machine.get(), &env_min, &env_max, &min_wheels, &max_wheels));
    json doc;
    doc["envelope"] = {{"min_boundary_mm", env_min},
                       {"max_boundary_mm", env_max},
                       {"min_source_wheels", min_wheels},
                       {"max_source_wheels", max_wheels}};
    if (!o.out.json)
        std::printf("envelope: [%s, %s] mm (min from %d wheels, max from %d wheels)\n",
                    fmt(env_min, o.out.full).c_str(), fmt(env_max, o.out.full).c_str(),
                    min_wheels, max_wheels);

    if (!*o.has_target) {
        emit(o.out, doc);
        return kExitOk;
    }

    wb_plan* raw = nullptr;
    const wb_status status = wb_machine_plan(machine.get(), o.target_boundary, &raw);
    if (status != WB_OK) {
        // The envelope report above still stands; the error says why.
        doc["error"] = wb_last_error();
        emit(o.out, doc);
        std::fprintf(stderr, "error: %s\n", wb_last_error());
        return exit_for(status, kExitInfeasiblePlan);
    }
    const handle<wb_plan> plan{raw, wb_plan_free};
    print_plan(o.out, plan.get());
    doc["plan"] = plan_to_json(plan.get());
    emit(o.out, doc);
    return kExitOk;
}

/* ---------- limits ---------- */

struct LimitsOpts {
    OutputOpts out;
    std::string machine_file;
    std::string band_file;
    double break_force = 0;
    double granularity_pct = 1.0;
    double control_percent = 0;
    double safety_force = 0;
    double stretch_to = 0;
    CLI::Option* has_break = nullptr;
    CLI::Option* has_control = nullptr;
    CLI::Option* has_safety = nullptr;
    CLI::Option* has_stretch = nullptr;
};

CLI::App* add_limits(CLI::App& app, LimitsOpts& o) {
    CLI::App* cmd = app.add_subcommand(
        "limits", "derive the torque control percentage that protects the band");
    cmd->add_option("--machine", o.machine_file, "machine spec JSON file")->required();
    cmd->add_option("--band", o.band_file, "band spec JSON file (supplies the break force)");
    o.has_break =
        cmd->add_option("--break-force-n", o.break_force, "break force override");
    cmd->add_option("--granularity-pct", o.granularity_pct,
                    "control percentage step, at most 1 (default 1)");
    o.has_control = cmd->add_option("--control-percent", o.control_percent,
                                    "report the force cap for this control percentage");
    o.has_safety = cmd->add_option("--safety-force-n", o.safety_force,
                                   "report the control fraction capping at this force");
    o.has_stretch = cmd->add_option("--stretch-to-mm", o.stretch_to,
                                    "stretched length; reports the applied-force safety chain");
    add_output_flags(cmd, o.out);
    return cmd;
}

int cmd_limits(const LimitsOpts& o) {
    const handle<wb_machine> machine = load_machine(o.machine_file);
    handle<wb_band> band{nullptr, wb_band_free};
    if (!o.band_file.empty()) band = load_band(o.band_file);

    json doc;
    double full_force = 0;
    check(wb_full_torque_force(machine.get(), &full_force));
    line(o.out, "full-torque force", full_force, "N");
    doc["full_torque_force_n"] = full_force;

    double break_force = o.break_force;
    if (!*o.has_break && band) {
        wb_band_params params{};
        check(wb_band_get(band.get(), &params));
        break_force = params.break_force_n;
    }

    double limited = 0;
    bool have_limit = false;
    if (break_force > 0) {
        wb_control* raw = nullptr;
        check(wb_max_control_percent(machine.get(), break_force, o.granularity_pct / 100.0,
                                     &raw),
              kExitInfeasibleLimit);
        const handle<wb_control> control{raw, wb_control_free};
        limited = wb_control_safety_force_n(control.get());
        have_limit = true;
        line(o.out, "max control", wb_control_fraction(control.get()) * 100.0, "%");
        line(o.out, "limited force", limited, "N");
        doc["break_force_n"] = break_force;
        doc["max_control_percent"] = wb_control_fraction(control.get()) * 100.0;
        doc["limited_force_n"] = limited;
    }

    if (*o.has_control) {
        wb_control* raw = nullptr;
        check(wb_control_create(machine.get(), o.control_percent / 100.0, &raw),
              kExitInfeasibleLimit);
        const handle<wb_control> control{raw, wb_control_free};
        line(o.out, "force at control percent", wb_control_safety_force_n(control.get()), "N");
        doc["control_percent"] = o.control_percent;
        doc["control_force_n"] = wb_control_safety_force_n(control.get());
    }

    if (*o.has_safety) {
        wb_control* raw = nullptr;
        check(wb_control_for_force(machine.get(), o.safety_force, &raw), kExitInfeasibleLimit);
        const handle<wb_control> control{raw, wb_control_free};
        line(o.out, "control for force", wb_control_fraction(control.get()) * 100.0, "%");
        doc["safety_force_n"] = o.safety_force;
        doc["control_for_force_percent"] = wb_control_fraction(control.get()) * 100.0;
    }

    // Applied-force chain: stretch the band, read the curve force and show
    // applied <= limited <= break.
    if (*o.has_stretch) {
        if (!band)
            throw cli_error{kExitInput, "limits: --stretch-to-mm needs --band"};
        wb_band_params params{};
        check(wb_band_get(band.get(), &params));
        if (o.stretch_to < params.rest_length_mm)
            throw cli_error{kExitInput,
                            "limits: --stretch-to-mm is shorter than the band rest length"};
        double applied = 0;
        wb_region region = WB_REGION_LINEAR;
        check(wb_curve_force(band.get(), o.stretch_to - params.rest_length_mm, &applied,
                             &region));
        line(o.out, "applied force", applied, "N");
        doc["stretch_to_mm"] = o.stretch_to;
        doc["applied_force_n"] = applied;
        if (have_limit) {
            const bool ok = applied <= limited && limited <= break_force;
            if (!o.out.json)
                std::printf("safety chain: applied %s N <= limited %s N <= break %s N: %s\n",
                            fmt(applied, o.out.full).c_str(), fmt(limited, o.out.full).c_str(),
                            fmt(break_force, o.out.full).c_str(), ok ? "ok" : "violated");
            doc["chain_ok"] = ok;
        }
    }

    if (!have_limit && !*o.has_control && !*o.has_safety && !*o.has_stretch)
        throw cli_error{kExitInput,
                        "limits: nothing to derive; pass --band or --break-force-n"};
    emit(o.out, doc);
    return kExitOk;
}

/* ---------- simulate ---------- */

struct SimulateOpts {
    OutputOpts out;
    std::string machine_file;
    std::string band_file;
    std::string out_path;
    double target_boundary = 0;
    double pull_to = 0;
    double limit_percent = 0;
    double limit_force = 0;
    double granularity_pct = 1.0;
    std::uint64_t seed = 0;
    double noise = 0;
    std::uint32_t time_step = 0;
    double speed = 0;
    double max_time = 0;
    double start_spacing = -1.0;
    bool force_run = false;
    CLI::Option* has_target = nullptr;
    CLI::Option* has_pull = nullptr;
    CLI::Option* has_limit_pct = nullptr;
    CLI::Option* has_limit_force = nullptr;
    CLI::Option* has_seed = nullptr;
    CLI::Option* has_noise = nullptr;
    CLI::Option* has_time_step = nullptr;
    CLI::Option* has_speed = nullptr;
    CLI::Option* has_max_time = nullptr;
};

CLI::App* add_simulate(CLI::App& app, SimulateOpts& o) {
    CLI::App* cmd = app.add_subcommand(
        "simulate", "run one stretch cycle and write its trace as CSV");
    cmd->add_option("--machine", o.machine_file, "machine spec JSON file")->required();
    cmd->add_option("--band", o.band_file, "band spec JSON file")->required();
    o.has_target = cmd->add_option("--target-boundary-mm", o.target_boundary,
                                   "plan a wheel configuration for this boundary");
    o.has_pull = cmd->add_option("--pull-to-mm", o.pull_to,
                                 "straight pull to this stretched length instead");
    o.has_limit_pct = cmd->add_option("--limit-percent", o.limit_percent,
                                      "control percentage for the force limit");
    o.has_limit_force = cmd->add_option("--limit-force,--limit-force-n", o.limit_force,
                                        "force limit in newtons");
    cmd->add_option("--granularity-pct", o.granularity_pct,
                    "granularity for the default derived limit (default 1)");
    o.has_seed = cmd->add_option("--seed", o.seed, "noise RNG seed");
    o.has_noise = cmd->add_option("--noise-n", o.noise, "sensor noise amplitude");
    o.has_time_step = cmd->add_option("--time-step-ms", o.time_step, "control period");
    o.has_speed = cmd->add_option("--speed-mm-s", o.speed, "wheel spacing speed");
    o.has_max_time = cmd->add_option("--max-time-s", o.max_time, "watchdog timeout");
    cmd->add_option("--start-spacing-mm", o.start_spacing,
                    "initial spacing (default: the zero-extension spacing)");
    cmd->add_option("--out", o.out_path, "write the CSV trace to this path");
    cmd->add_flag("--force", o.force_run, "simulate even when validation reports findings");
    add_output_flags(cmd, o.out);
    return cmd;
}

int cmd_simulate(const SimulateOpts& o) {
    if (static_cast<bool>(*o.has_target) == static_cast<bool>(*o.has_pull))
        throw cli_error{kExitInput,
                        "simulate: pass exactly one of --target-boundary-mm and --pull-to-mm"};
    if (*o.has_limit_pct && *o.has_limit_force)
        throw cli_error{kExitInput,
                        "simulate: pass at most one of --limit-percent and --limit-force"};

    const handle<wb_machine> machine = load_machine(o.machine_file);
    const handle<wb_band> band = load_band(o.band_file);
    json doc;

    wb_plan* raw_plan = nullptr;
    if (*o.has_target)
        check(wb_machine_plan(machine.get(), o.target_boundary, &raw_plan),
              kExitInfeasiblePlan);
    else
        check(wb_pull_plan(o.pull_to, &raw_plan));
    const handle<wb_plan> plan{raw_plan, wb_plan_free};
    print_plan(o.out, plan.get());
    doc["plan"] = plan_to_json(plan.get());

    // Default limit: the largest control percentage the band tolerates.
    wb_control* raw_control = nullptr;
    if (*o.has_limit_pct) {
        check(wb_control_create(machine.get(), o.limit_percent / 100.0, &raw_control),
              kExitInfeasibleLimit);
    } else if (*o.has_limit_force) {
        check(wb_control_for_force(machine.get(), o.limit_force, &raw_control),
              kExitInfeasibleLimit);
    } else {
        wb_band_params params{};
        check(wb_band_get(band.get(), &params));
        check(wb_max_control_percent(machine.get(), params.break_force_n,
                                     o.granularity_pct / 100.0, &raw_control),
              kExitInfeasibleLimit);
    }
    const handle<wb_control> limit{raw_control, wb_control_free};
    if (!o.out.json)
        std::printf("limit: %s %% -> %s N\n",
                    fmt(wb_control_fraction(limit.get()) * 100.0, o.out.full).c_str(),
                    fmt(wb_control_safety_force_n(limit.get()), o.out.full).c_str());
    doc["limit"] = {{"control_percent", wb_control_fraction(limit.get()) * 100.0},
                    {"safety_force_n", wb_control_safety_force_n(limit.get())}};

    wb_sim_params params{};
    check(wb_machine_sim_defaults(machine.get(), &params));
    if (*o.has_seed) params.rng_seed = o.seed;
    if (*o.has_noise) params.sensor_noise_n = o.noise;
    if (*o.has_time_step) params.time_step_ms = o.time_step;
    if (*o.has_speed) params.wheel_speed_mm_s = o.speed;
    if (*o.has_max_time) params.max_sim_time_s = o.max_time;
    doc["params"] = {{"time_step_ms", params.time_step_ms},
                     {"wheel_speed_mm_s", params.wheel_speed_mm_s},
                     {"sensor_noise_n", params.sensor_noise_n},
                     {"max_sim_time_s", params.max_sim_time_s},
                     {"rng_seed", params.rng_seed}};

    wb_findings* raw_findings = nullptr;
    check(wb_validate_cycle(band.get(), plan.get(), limit.get(), &raw_findings));
    const handle<wb_findings> findings{raw_findings, wb_findings_free};
    doc["findings"] = json::array();
    for (size_t i = 0; i < wb_findings_count(findings.get()); ++i) {
        doc["findings"].push_back({{"code", wb_findings_code(findings.get(), i)},
                                   {"message", wb_findings_message(findings.get(), i)}});
        std::fprintf(stderr, "finding: %s: %s\n", wb_findings_code(findings.get(), i),
                     wb_findings_message(findings.get(), i));
    }
    if (wb_findings_count(findings.get()) > 0 && !o.force_run) {
        doc["error"] = "validation findings; rerun with --force to simulate anyway";
        emit(o.out, doc);
        std::fprintf(stderr, "error: validation findings; rerun with --force\n");
        return kExitFindings;
    }

    wb_trace* raw_trace = nullptr;
    check(wb_simulate_cycle(band.get(), plan.get(), limit.get(), &params, o.start_spacing,
                            &raw_trace));
    const handle<wb_trace> trace{raw_trace, wb_trace_free};

    if (!o.out_path.empty()) check(wb_trace_write_csv(trace.get(), o.out_path.c_str()));

    if (!o.out.json) {
        std::printf("outcome: %s\n", wb_outcome_name(wb_trace_outcome(trace.get())));
        std::printf("duration: %s ms (%zu samples)\n",
                    fmt(wb_trace_duration_ms(trace.get()), o.out.full).c_str(),
                    wb_trace_sample_count(trace.get()));
        line(o.out, "peak force", wb_trace_peak_force_n(trace.get()), "N");
        line(o.out, "final spacing", wb_trace_final_spacing_mm(trace.get()), "mm");
        if (!o.out_path.empty()) std::printf("trace: %s\n", o.out_path.c_str());
    }
    doc["outcome"] = wb_outcome_name(wb_trace_outcome(trace.get()));
    doc["duration_ms"] = wb_trace_duration_ms(trace.get());
    doc["sample_count"] = wb_trace_sample_count(trace.get());
    doc["peak_force_n"] = wb_trace_peak_force_n(trace.get());
    doc["final_spacing_mm"] = wb_trace_final_spacing_mm(trace.get());
    if (!o.out_path.empty()) doc["trace_path"] = o.out_path;
    emit(o.out, doc);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planning and simulation toolkit for the elastic-waistband stretch machine"};
    app.set_version_flag("--version", wb_version());
    app.require_subcommand(1);

    BandPropsOpts band_props_opts;
    PlanOpts plan_opts;
    LimitsOpts limits_opts;
    SimulateOpts simulate_opts;
    CLI::App* band_props = add_band_props(app, band_props_opts);
    CLI::App* plan = add_plan(app, plan_opts);
    CLI::App* limits = add_limits(app, limits_opts);
    CLI::App* simulate = add_simulate(app, simulate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (band_props->parsed()) return cmd_band_props(band_props_opts);
        if (plan->parsed()) return cmd_plan(plan_opts);
        if (limits->parsed()) return cmd_limits(limits_opts);
        if (simulate->parsed()) return cmd_simulate(simulate_opts);
    } catch (const cli_error& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    }
    return kExitOk;
}
