#include "waistband/geometry.hpp"

#include <cmath>
#include <string>

#include "waistband/errors.hpp"

namespace waistband {

namespace {

constexpr double kBoundaryTolMm = 1e-6;
constexpr int kBisectionMaxIter = 200;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Boundary produced at a given spacing: spacing times the interpolated factor.
double boundary_at(const WheelConfig& config, double spacing_mm) {
    return spacing_mm * interpolated_elongation(config, spacing_mm);
}

}  // namespace

WheelConfig make_wheel_config(int wheel_count, double min_spacing_mm, double max_spacing_mm,
                              double elongation_at_min, double elongation_at_max) {
    if (wheel_count != 2 && wheel_count != 3)
        throw config_error("wheel config: wheel_count must be 2 or 3");
    if (!(min_spacing_mm > 0.0))
        throw config_error("wheel config: min_spacing_mm must be > 0");
    if (!(min_spacing_mm <= max_spacing_mm))
        throw config_error("wheel config: min_spacing_mm must not exceed max_spacing_mm");
    if (!(elongation_at_min > 1.0) || !(elongation_at_max > 1.0))
        throw config_error("wheel config: elongation factors must be > 1");
    if (!(elongation_at_min >= elongation_at_max))
        throw config_error(
            "wheel config: elongation_factor_at_min must be >= elongation_factor_at_max");

    if (min_spacing_mm == max_spacing_mm) {
        if (elongation_at_min != elongation_at_max)
            throw config_error(
                "wheel config: a single-spacing config needs equal elongation factors");
    } else {
        // The boundary product spacing * E(spacing) must grow with spacing or
        // the inverse is ill-defined; its slope is smallest at max spacing.
        const double factor_slope =
            (elongation_at_max - elongation_at_min) / (max_spacing_mm - min_spacing_mm);
        if (!(elongation_at_max + max_spacing_mm * factor_slope > 0.0))
            throw config_error(
                "wheel config: elongation factor falls too fast for the boundary to grow "
                "with spacing");
    }

    return {wheel_count, min_spacing_mm, max_spacing_mm, elongation_at_min, elongation_at_max};
}

MachineEnvelope envelope_for_config(const WheelConfig& config) {
    MachineEnvelope envelope;
    envelope.min_boundary_mm = config.min_spacing_mm * config.elongation_at_min;
    envelope.max_boundary_mm = config.max_spacing_mm * config.elongation_at_max;
    envelope.min_source_wheels = config.wheel_count;
    envelope.max_source_wheels = config.wheel_count;
    return envelope;
}

MachineEnvelope combined_envelope(const WheelConfig& three_wheel, const WheelConfig& two_wheel) {
    if (three_wheel.wheel_count != 3)
        throw config_error("combined_envelope: first config must have wheel_count 3, got " +
                           std::to_string(three_wheel.wheel_count));
    if (two_wheel.wheel_count != 2)
        throw config_error("combined_envelope: second config must have wheel_count 2, got " +
                           std::to_string(two_wheel.wheel_count));

    MachineEnvelope envelope;
    envelope.max_boundary_mm = three_wheel.max_spacing_mm * three_wheel.elongation_at_max;
    envelope.min_boundary_mm = two_wheel.min_spacing_mm * two_wheel.elongation_at_min;
    envelope.max_source_wheels = 3;
    envelope.min_source_wheels = 2;
    if (!(envelope.min_boundary_mm <= envelope.max_boundary_mm))
        throw config_error("combined_envelope: 2-wheel minimum " + fmt(envelope.min_boundary_mm) +
                           " mm exceeds 3-wheel maximum " + fmt(envelope.max_boundary_mm) + " mm");
    return envelope;
}

double interpolated_elongation(const WheelConfig& config, double spacing_mm) {
    if (spacing_mm < config.min_spacing_mm || spacing_mm > config.max_spacing_mm)
        throw domain_error("interpolated_elongation: spacing " + fmt(spacing_mm) +
                           " mm outside [" + fmt(config.min_spacing_mm) + ", " +
                           fmt(config.max_spacing_mm) + "] mm");
    if (config.min_spacing_mm == config.max_spacing_mm) return config.elongation_at_min;
    const double t =
        (spacing_mm - config.min_spacing_mm) / (config.max_spacing_mm - config.min_spacing_mm);
    return config.elongation_at_min + t * (config.elongation_at_max - config.elongation_at_min);
}

double required_spacing(const WheelConfig& config, double target_boundary_mm) {
    const MachineEnvelope envelope = envelope_for_config(config);
    if (target_boundary_mm < envelope.min_boundary_mm)
        throw domain_error("required_spacing: target " + fmt(target_boundary_mm) +
                           " mm below the minimum boundary " + fmt(envelope.min_boundary_mm) +
                           " mm");
    if (target_boundary_mm > envelope.max_boundary_mm)
        throw domain_error("required_spacing: target " + fmt(target_boundary_mm) +
                           " mm above the maximum boundary " + fmt(envelope.max_boundary_mm) +
                           " mm");

    if (target_boundary_mm == envelope.min_boundary_mm) return config.min_spacing_mm;
    if (target_boundary_mm == envelope.max_boundary_mm) return config.max_spacing_mm;

    double lo = config.min_spacing_mm;
    double hi = config.max_spacing_mm;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < kBisectionMaxIter; ++i) {
        mid = 0.5 * (lo + hi);
        const double b = boundary_at(config, mid);
        if (std::abs(b - target_boundary_mm) <= kBoundaryTolMm) return mid;
        (b < target_boundary_mm ? lo : hi) = mid;
    }
    return mid;
}

WheelPlan select_config(std::span<const WheelConfig> configs, double target_boundary_mm) {
    if (configs.empty())
        throw config_error("select_config: no wheel configs given");
    if (!(target_boundary_mm > 0.0))
        throw domain_error("select_config: target boundary must be > 0");

    const WheelConfig* chosen = nullptr;
    double overall_min = 0.0;
    double overall_max = 0.0;
    bool first = true;
    for (const WheelConfig& config : configs) {
        const MachineEnvelope envelope = envelope_for_config(config);
        if (first) {
            overall_min = envelope.min_boundary_mm;
            overall_max = envelope.max_boundary_mm;
            first = false;
        } else {
            overall_min = std::min(overall_min, envelope.min_boundary_mm);
            overall_max = std::max(overall_max, envelope.max_boundary_mm);
        }
        const bool feasible = target_boundary_mm >= envelope.min_boundary_mm &&
                              target_boundary_mm <= envelope.max_boundary_mm;
        if (!feasible) continue;
        // Tie-break: prefer the 2-wheel arrangement (fewer contact points).
        if (chosen == nullptr || config.wheel_count < chosen->wheel_count) chosen = &config;
    }

    if (chosen == nullptr)
        throw infeasible_error("select_config: target " + fmt(target_boundary_mm) +
                               " mm outside the machine envelope [" + fmt(overall_min) + ", " +
                               fmt(overall_max) + "] mm");

    WheelPlan plan;
    plan.config = *chosen;
    plan.spacing_mm = required_spacing(*chosen, target_boundary_mm);
    plan.effective_elongation = interpolated_elongation(*chosen, plan.spacing_mm);
    return plan;
}

WheelPlan make_pull_plan(double pull_to_mm) {
    if (!(pull_to_mm > 0.0))
        throw domain_error("pull plan: pulled length must be > 0");
    WheelPlan plan;
    plan.spacing_mm = pull_to_mm;
    plan.effective_elongation = 1.0;
    return plan;
}

}  // namespace waistband
