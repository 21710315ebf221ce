#include "waistband/force.hpp"

#include <cmath>
#include <string>

#include "waistband/errors.hpp"
#include "waistband/units.hpp"

namespace waistband {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void validate_servo(const ServoSpec& servo) {
    if (!(servo.rated_torque_nm > 0.0))
        throw config_error("servo: rated_torque_nm must be > 0");
    if (!(servo.rod_radius_mm > 0.0))
        throw config_error("servo: rod_radius_mm must be > 0");
}

void validate_fraction(double control_fraction) {
    if (!(control_fraction > 0.0) || control_fraction > 1.0)
        throw domain_error("control fraction must be in (0, 1], got " + fmt(control_fraction));
}

}  // namespace

ServoSpec make_servo(double rated_torque_nm, double rod_radius_mm) {
    ServoSpec servo{rated_torque_nm, rod_radius_mm};
    validate_servo(servo);
    return servo;
}

double full_torque_force(const ServoSpec& servo) {
    validate_servo(servo);
    return servo.rated_torque_nm / mm_to_m(servo.rod_radius_mm);
}

double limited_torque(const ServoSpec& servo, double control_fraction) {
    validate_servo(servo);
    validate_fraction(control_fraction);
    return servo.rated_torque_nm * control_fraction;
}

double limited_force(const ServoSpec& servo, double control_fraction) {
    validate_servo(servo);
    validate_fraction(control_fraction);
    return servo.rated_torque_nm * control_fraction / mm_to_m(servo.rod_radius_mm);
}

ControlSetting make_control(const ServoSpec& servo, double control_fraction) {
    return {control_fraction, limited_force(servo, control_fraction)};
}

ControlSetting make_control_checked(const ServoSpec& servo, double control_fraction,
                                    double safety_force_n) {
    const double implied = limited_force(servo, control_fraction);
    if (std::abs(implied - safety_force_n) > 1e-9)
        throw config_error("control setting: safety force " + fmt(safety_force_n) +
                           " N does not match the torque relation (expected " + fmt(implied) +
                           " N)");
    return {control_fraction, safety_force_n};
}

ControlSetting control_for_force(const ServoSpec& servo, double safety_force_n) {
    validate_servo(servo);
    if (!(safety_force_n > 0.0))
        throw domain_error("control setting: safety force must be > 0");
    const double fraction = safety_force_n * mm_to_m(servo.rod_radius_mm) / servo.rated_torque_nm;
    if (fraction > 1.0)
        throw domain_error("control setting: safety force " + fmt(safety_force_n) +
                           " N exceeds the full-torque force " + fmt(full_torque_force(servo)) +
                           " N");
    return {fraction, safety_force_n};
}

ControlSetting max_control_percent(const ServoSpec& servo, double break_force_n,
                                   double granularity) {
    validate_servo(servo);
    if (!(break_force_n > 0.0))
        throw domain_error("max_control_percent: break force must be > 0");
    if (!(granularity > 0.0) || granularity > 0.01)
        throw domain_error("max_control_percent: granularity must be in (0, 0.01]");

    const double fraction_cap =
        break_force_n * mm_to_m(servo.rod_radius_mm) / servo.rated_torque_nm;
    const long max_granules = static_cast<long>(std::floor(1.0 / granularity + 1e-9));
    long n = static_cast<long>(std::floor(fraction_cap / granularity + 1e-9));
    n = std::min(n, max_granules);

    const double tol = 1e-12 * std::max(1.0, break_force_n);
    while (n >= 1 && limited_force(servo, n * granularity) > break_force_n + tol) --n;
    while (n + 1 <= max_granules &&
           limited_force(servo, (n + 1) * granularity) <= break_force_n + tol)
        ++n;

    if (n < 1)
        throw infeasible_error("max_control_percent: even one granule of " +
                               fmt(granularity * 100.0) + " % delivers " +
                               fmt(limited_force(servo, granularity)) +
                               " N, above the break force " + fmt(break_force_n) + " N");

    return make_control(servo, n * granularity);
}

}  // namespace waistband
