#include "waistband/spec_io.hpp"

#include <set>
#include <string>

#include <json.hpp>

#include "waistband/errors.hpp"

namespace waistband {

namespace {

using nlohmann::json;

json parse_root(std::string_view text, const std::string& what) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(what + ": " + e.what());
    }
    if (!root.is_object()) throw parse_error(what + ": top level must be a JSON object");
    return root;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key))
            throw parse_error(path + key + ": unknown field");
    }
}

double require_number(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw parse_error(path + key + ": missing required field");
    const json& value = obj.at(key);
    if (!value.is_number()) throw parse_error(path + key + ": must be a number");
    return value.get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& path,
                                      const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    const json& value = obj.at(key);
    if (!value.is_number()) throw parse_error(path + key + ": must be a number");
    return value.get<double>();
}

long require_integer(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw parse_error(path + key + ": missing required field");
    const json& value = obj.at(key);
    if (!value.is_number_integer()) throw parse_error(path + key + ": must be an integer");
    return value.get<long>();
}

SimParams parse_sim_defaults(const json& obj, const std::string& path) {
    reject_unknown_keys(obj,
                        {"time_step_ms", "wheel_speed_mm_s", "sensor_noise_amplitude_n",
                         "max_sim_time_s", "rng_seed"},
                        path);
    SimParams params;
    if (obj.contains("time_step_ms")) {
        const long step = require_integer(obj, path, "time_step_ms");
        if (step < 1) throw parse_error(path + "time_step_ms: must be >= 1");
        params.time_step_ms = static_cast<std::uint32_t>(step);
    }
    if (auto v = optional_number(obj, path, "wheel_speed_mm_s")) {
        if (!(*v > 0.0)) throw parse_error(path + "wheel_speed_mm_s: must be > 0");
        params.wheel_speed_mm_s = *v;
    }
    if (auto v = optional_number(obj, path, "sensor_noise_amplitude_n")) {
        if (*v < 0.0) throw parse_error(path + "sensor_noise_amplitude_n: must be >= 0");
        params.sensor_noise_n = *v;
    }
    if (auto v = optional_number(obj, path, "max_sim_time_s")) {
        if (!(*v > 0.0)) throw parse_error(path + "max_sim_time_s: must be > 0");
        params.max_sim_time_s = *v;
    }
    if (obj.contains("rng_seed")) {
        const json& seed = obj.at("rng_seed");
        if (!seed.is_number_unsigned() && !seed.is_number_integer())
            throw parse_error(path + "rng_seed: must be a non-negative integer");
        const long long raw = seed.get<long long>();
        if (raw < 0) throw parse_error(path + "rng_seed: must be a non-negative integer");
        params.rng_seed = static_cast<std::uint64_t>(raw);
    }
    return params;
}

}  // namespace

MachineSpec parse_machine_spec(std::string_view json_text) {
    const json root = parse_root(json_text, "machine spec");
    reject_unknown_keys(root, {"servo", "configs", "defaults"}, "");

    if (!root.contains("servo")) throw parse_error("servo: missing required field");
    const json& servo = root.at("servo");
    if (!servo.is_object()) throw parse_error("servo: must be an object");
    reject_unknown_keys(servo, {"rated_torque_nm", "rod_radius_mm"}, "servo.");

    MachineSpec spec;
    // Field checks run in declaration order (function arguments would not).
    const double rated_torque = require_number(servo, "servo.", "rated_torque_nm");
    const double rod_radius = require_number(servo, "servo.", "rod_radius_mm");
    try {
        spec.servo = make_servo(rated_torque, rod_radius);
    } catch (const config_error& e) {
        throw parse_error(e.what());  // make_servo messages already name the field
    }

    if (!root.contains("configs")) throw parse_error("configs: missing required field");
    const json& configs = root.at("configs");
    if (!configs.is_array() || configs.empty() || configs.size() > 2)
        throw parse_error("configs: must be an array of one or two wheel configs");

    for (size_t i = 0; i < configs.size(); ++i) {
        const std::string path = "configs[" + std::to_string(i) + "].";
        const json& entry = configs.at(i);
        if (!entry.is_object())
            throw parse_error("configs[" + std::to_string(i) + "]: must be an object");
        reject_unknown_keys(entry,
                            {"wheel_count", "min_spacing_mm", "max_spacing_mm",
                             "elongation_factor_at_min", "elongation_factor_at_max"},
                            path);
        const int wheel_count = static_cast<int>(require_integer(entry, path, "wheel_count"));
        const double min_spacing = require_number(entry, path, "min_spacing_mm");
        const double max_spacing = require_number(entry, path, "max_spacing_mm");
        const double at_min = require_number(entry, path, "elongation_factor_at_min");
        const double at_max = require_number(entry, path, "elongation_factor_at_max");
        try {
            spec.configs.push_back(
                make_wheel_config(wheel_count, min_spacing, max_spacing, at_min, at_max));
        } catch (const config_error& e) {
            throw parse_error("configs[" + std::to_string(i) + "]: " + e.what());
        }
    }
    if (spec.configs.size() == 2 && spec.configs[0].wheel_count == spec.configs[1].wheel_count)
        throw parse_error("configs: wheel counts must be distinct");

    if (root.contains("defaults")) {
        const json& defaults = root.at("defaults");
        if (!defaults.is_object()) throw parse_error("defaults: must be an object");
        spec.sim_defaults = parse_sim_defaults(defaults, "defaults.");
    }
    return spec;
}

BandSpec parse_band_spec(std::string_view json_text) {
    const json root = parse_root(json_text, "band spec");
    reject_unknown_keys(root,
                        {"rest_length_mm", "stiffness_n_per_m", "break_force_n",
                         "proportional_limit_extension_mm", "fracture_extension_mm",
                         "cross_section_area_mm2", "young_modulus_n_per_mm2",
                         "end_slope_factor"},
                        "");

    BandSpec spec;
    spec.band.rest_length_mm = require_number(root, "", "rest_length_mm");
    spec.band.stiffness_n_per_m = require_number(root, "", "stiffness_n_per_m");
    spec.band.break_force_n = require_number(root, "", "break_force_n");
    spec.band.proportional_limit_mm =
        optional_number(root, "", "proportional_limit_extension_mm");
    spec.band.fracture_extension_mm = optional_number(root, "", "fracture_extension_mm");
    spec.band.cross_section_area_mm2 = optional_number(root, "", "cross_section_area_mm2");
    spec.band.young_modulus_n_per_mm2 = optional_number(root, "", "young_modulus_n_per_mm2");
    if (auto v = optional_number(root, "", "end_slope_factor")) spec.end_slope_factor = *v;

    // Surface invariant violations with the parse, not on first use.
    try {
        ForceDeformationCurve(make_band(spec.band), spec.end_slope_factor);
    } catch (const config_error& e) {
        throw parse_error(e.what());
    }
    return spec;
}

}  // namespace waistband
