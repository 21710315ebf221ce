#ifndef WAISTBAND_GEOMETRY_HPP
#define WAISTBAND_GEOMETRY_HPP

#include <optional>
#include <span>

namespace waistband {

/// Spacing range and elongation factors of one rolling-wheel arrangement.
/// The elongation factor converts wheel spacing into the stretched rounded
/// boundary of the mounted band loop; it shrinks as the spacing grows.
struct WheelConfig {
    int wheel_count = 0;        // 2 or 3
    double min_spacing_mm = 0.0;
    double max_spacing_mm = 0.0;
    double elongation_at_min = 0.0;
    double elongation_at_max = 0.0;
};

/// Validates and returns the config. Beyond the field invariants this
/// requires spacing * interpolated elongation to be strictly increasing
/// over the whole range, which the endpoint factors alone do not imply.
WheelConfig make_wheel_config(int wheel_count, double min_spacing_mm, double max_spacing_mm,
                              double elongation_at_min, double elongation_at_max);

/// Acceptable range of the stretched rounded boundary, plus which wheel
/// count produced each bound.
struct MachineEnvelope {
    double min_boundary_mm = 0.0;
    double max_boundary_mm = 0.0;
    int min_source_wheels = 0;
    int max_source_wheels = 0;
};

struct WheelPlan {
    // Unset for a direct pull (straight stretch, unit elongation factor).
    std::optional<WheelConfig> config;
    double spacing_mm = 0.0;
    double effective_elongation = 1.0;

    double target_boundary_mm() const { return spacing_mm * effective_elongation; }
};

/// Boundary range a single config can produce:
/// [min_spacing * elongation_at_min, max_spacing * elongation_at_max].
MachineEnvelope envelope_for_config(const WheelConfig& config);

/// Combined machine range: the 3-wheel max and the 2-wheel min.
MachineEnvelope combined_envelope(const WheelConfig& three_wheel, const WheelConfig& two_wheel);

/// Elongation factor at an intermediate spacing, linear between the two
/// published endpoint factors.
double interpolated_elongation(const WheelConfig& config, double spacing_mm);

/// Spacing whose boundary product equals target_boundary_mm, found by
/// bisection; round-trip error <= 0.01 mm.
double required_spacing(const WheelConfig& config, double target_boundary_mm);

/// Picks a feasible config for the target boundary and solves its spacing.
/// When both configs fit, the 2-wheel one wins (fewer contact points).
/// Throws infeasible_error naming the combined envelope when none fits.
WheelPlan select_config(std::span<const WheelConfig> configs, double target_boundary_mm);

/// Plan for a straight pull to the given stretched length: no wheel
/// config, unit elongation factor, spacing equal to the pulled length.
WheelPlan make_pull_plan(double pull_to_mm);

}  // namespace waistband

#endif
