#ifndef WAISTBAND_SIM_HPP
#define WAISTBAND_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "waistband/elastic.hpp"
#include "waistband/force.hpp"
#include "waistband/geometry.hpp"

namespace waistband {

struct SimParams {
    std::uint32_t time_step_ms = 1;
    double wheel_speed_mm_s = 100.0;
    double sensor_noise_n = 0.0;   // uniform, zero mean, this amplitude
    double max_sim_time_s = 60.0;  // watchdog
    std::uint64_t rng_seed = 0;
};

enum class Command {
    advancing,
    holding,
    stopped,
};

enum class Outcome {
    reached_target,
    overload_stop,
    fractured,
    timeout,
};

const char* command_name(Command command);
const char* outcome_name(Outcome outcome);

struct TraceSample {
    double time_ms = 0.0;
    double spacing_mm = 0.0;
    double extension_mm = 0.0;
    double sensed_force_n = 0.0;
    Command commanded = Command::advancing;
};

/// Time series of one simulated stretch cycle.
struct StretchTrace {
    std::vector<TraceSample> samples;
    Outcome outcome = Outcome::reached_target;
    double final_spacing_mm = 0.0;
    double peak_force_n = 0.0;  // max sensed force over the samples
};

struct Finding {
    std::string code;
    std::string message;
};

/// Pre-run design check of one cycle. Findings are emitted when the target
/// force reaches the control limit, the limit exceeds the break force, or
/// the target extension passes the fracture point; an empty list means the
/// cycle is safe under the noise-free model.
std::vector<Finding> validate_cycle(const ForceDeformationCurve& curve, const WheelPlan& plan,
                                    const ControlSetting& limit);

/// Spacing at which the band loop is just taut (zero extension), clamped
/// to the plan spacing. The usual simulation starting point.
double zero_extension_spacing(const ElasticBand& band, const WheelPlan& plan);

/// Runs one stretch cycle: spacing advances at wheel_speed until the plan
/// spacing is reached, the sensed force hits the control limit, the band
/// fractures, or the watchdog fires. Identical inputs (seed included)
/// produce identical traces. A plan whose target lies past the fracture
/// point with a limit above the break force is rejected up front.
StretchTrace simulate_cycle(const ForceDeformationCurve& curve, const WheelPlan& plan,
                            const ControlSetting& limit, const SimParams& params,
                            double start_spacing_mm);

/// CSV export: header time_ms,spacing_mm,extension_mm,sensed_force_n,
/// commanded,outcome_marker; one row per sample; the final row carries the
/// outcome; numbers rendered with 6 significant digits.
std::string trace_to_csv(const StretchTrace& trace);
void write_trace_csv(const StretchTrace& trace, std::ostream& out);

}  // namespace waistband

#endif
