#include "waistband/sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "waistband/errors.hpp"

namespace waistband {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void validate_sim_params(const SimParams& params) {
    if (params.time_step_ms == 0)
        throw config_error("sim params: time_step_ms must be >= 1");
    if (!(params.wheel_speed_mm_s > 0.0))
        throw config_error("sim params: wheel_speed_mm_s must be > 0");
    if (!(params.max_sim_time_s > 0.0))
        throw config_error("sim params: max_sim_time_s must be > 0");
    if (params.sensor_noise_n < 0.0)
        throw config_error("sim params: sensor_noise_amplitude_n must be >= 0");
}

// Zero-mean uniform noise built from raw mt19937_64 output so traces are
// bit-identical across platforms (std distributions are not).
class SensorNoise {
public:
    SensorNoise(std::uint64_t seed, double amplitude_n)
        : rng_(seed), amplitude_n_(amplitude_n) {}

    double next() {
        if (amplitude_n_ == 0.0) return 0.0;
        const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // [0, 1)
        return amplitude_n_ * (2.0 * unit - 1.0);
    }

private:
    std::mt19937_64 rng_;
    double amplitude_n_;
};

double extension_at(double spacing_mm, const WheelPlan& plan, const ElasticBand& band) {
    return std::max(0.0, spacing_mm * plan.effective_elongation - band.rest_length_mm);
}

}  // namespace

const char* command_name(Command command) {
    switch (command) {
        case Command::advancing: return "advancing";
        case Command::holding: return "holding";
        case Command::stopped: return "stopped";
    }
    return "unknown";
}

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::reached_target: return "reached_target";
        case Outcome::overload_stop: return "overload_stop";
        case Outcome::fractured: return "fractured";
        case Outcome::timeout: return "timeout";
    }
    return "unknown";
}

std::vector<Finding> validate_cycle(const ForceDeformationCurve& curve, const WheelPlan& plan,
                                    const ControlSetting& limit) {
    const ElasticBand& band = curve.band();
    std::vector<Finding> findings;

    if (limit.safety_force_n > band.break_force_n)
        findings.push_back({"limit-exceeds-break",
                            "control limit " + fmt(limit.safety_force_n) +
                                " N exceeds the break force " + fmt(band.break_force_n) +
                                " N (margin " +
                                fmt(limit.safety_force_n - band.break_force_n) + " N)"});

    const double target_extension = extension_at(plan.spacing_mm, plan, band);
    if (target_extension > band.fracture_extension_mm)
        findings.push_back({"target-beyond-fracture",
                            "target extension " + fmt(target_extension) +
                                " mm exceeds the fracture extension " +
                                fmt(band.fracture_extension_mm) + " mm (margin " +
                                fmt(target_extension - band.fracture_extension_mm) + " mm)"});

    const double target_force = curve.force_at(target_extension).force_n;
    if (target_force >= limit.safety_force_n)
        findings.push_back({"target-force-reaches-limit",
                            "force at the target, " + fmt(target_force) +
                                " N, reaches the control limit " + fmt(limit.safety_force_n) +
                                " N; the cycle cannot finish"});

    return findings;
}

double zero_extension_spacing(const ElasticBand& band, const WheelPlan& plan) {
    return std::min(plan.spacing_mm, band.rest_length_mm / plan.effective_elongation);
}

StretchTrace simulate_cycle(const ForceDeformationCurve& curve, const WheelPlan& plan,
                            const ControlSetting& limit, const SimParams& params,
                            double start_spacing_mm) {
    validate_sim_params(params);
    const ElasticBand& band = curve.band();
    if (start_spacing_mm < 0.0)
        throw domain_error("simulate_cycle: start spacing must be >= 0");
    if (plan.spacing_mm < start_spacing_mm)
        throw domain_error("simulate_cycle: plan spacing " + fmt(plan.spacing_mm) +
                           " mm is below the start spacing " + fmt(start_spacing_mm) + " mm");

    // A target past the fracture point with a limit that cannot catch it is a
    // design failure; reject it here instead of mid-run.
    const double target_extension = extension_at(plan.spacing_mm, plan, band);
    if (target_extension > band.fracture_extension_mm &&
        limit.safety_force_n > band.break_force_n)
        throw validation_error("simulate_cycle: target extension " + fmt(target_extension) +
                               " mm exceeds the fracture extension " +
                               fmt(band.fracture_extension_mm) +
                               " mm and the control limit " + fmt(limit.safety_force_n) +
                               " N is above the break force " + fmt(band.break_force_n) + " N");

    const double step_mm = params.wheel_speed_mm_s * params.time_step_ms / 1000.0;
    const double max_time_ms = params.max_sim_time_s * 1000.0;
    SensorNoise noise(params.rng_seed, params.sensor_noise_n);

    StretchTrace trace;
    double spacing = start_spacing_mm;
    std::uint64_t step = 0;

    while (true) {
        const double time_ms = static_cast<double>(step * params.time_step_ms);
        const double extension = extension_at(spacing, plan, band);
        const double true_force = curve.force_at(extension).force_n;
        const double sensed_force = true_force + noise.next();

        TraceSample sample{time_ms, spacing, extension, sensed_force, Command::advancing};

        if (extension > band.fracture_extension_mm) {
            sample.commanded = Command::stopped;
            trace.samples.push_back(sample);
            trace.outcome = Outcome::fractured;
            break;
        }
        if (sensed_force >= limit.safety_force_n) {
            sample.commanded = Command::stopped;
            trace.samples.push_back(sample);
            trace.outcome = Outcome::overload_stop;
            break;
        }
        if (spacing >= plan.spacing_mm - 1e-9) {
            sample.commanded = Command::holding;
            trace.samples.push_back(sample);
            trace.outcome = Outcome::reached_target;
            break;
        }
        if (time_ms >= max_time_ms) {
            sample.commanded = Command::stopped;
            trace.samples.push_back(sample);
            trace.outcome = Outcome::timeout;
            break;
        }

        trace.samples.push_back(sample);
        spacing = std::min(spacing + step_mm, plan.spacing_mm);
        ++step;
    }

    trace.final_spacing_mm = trace.samples.back().spacing_mm;
    trace.peak_force_n = trace.samples.front().sensed_force_n;
    for (const TraceSample& s : trace.samples)
        trace.peak_force_n = std::max(trace.peak_force_n, s.sensed_force_n);
    return trace;
}

std::string trace_to_csv(const StretchTrace& trace) {
    std::string csv = "time_ms,spacing_mm,extension_mm,sensed_force_n,commanded,outcome_marker\n";
    char buf[160];
    for (size_t i = 0; i < trace.samples.size(); ++i) {
        const TraceSample& s = trace.samples[i];
        const bool last = i + 1 == trace.samples.size();
        std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%.6g,%s,%s\n", s.time_ms, s.spacing_mm,
                      s.extension_mm, s.sensed_force_n, command_name(s.commanded),
                      last ? outcome_name(trace.outcome) : "");
        csv += buf;
    }
    return csv;
}

void write_trace_csv(const StretchTrace& trace, std::ostream& out) { out << trace_to_csv(trace); }

}  // namespace waistband
