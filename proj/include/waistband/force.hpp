#ifndef WAISTBAND_FORCE_HPP
#define WAISTBAND_FORCE_HPP

namespace waistband {

/// Servo motor rating and the rod it pulls through.
struct ServoSpec {
    double rated_torque_nm = 0.0;
    double rod_radius_mm = 0.0;
};

ServoSpec make_servo(double rated_torque_nm, double rod_radius_mm);

/// Fraction of rated torque the controller may deliver and the band
/// tension that fraction caps the machine at.
struct ControlSetting {
    double control_fraction = 0.0;  // in (0, 1]
    double safety_force_n = 0.0;    // = rated_torque * fraction / rod_radius
};

/// Force at the rod when the servo delivers its full rated torque.
double full_torque_force(const ServoSpec& servo);

/// Torque cap under a control fraction in (0, 1].
double limited_torque(const ServoSpec& servo, double control_fraction);

/// Force cap under a control fraction in (0, 1].
double limited_force(const ServoSpec& servo, double control_fraction);

/// Control setting for a given fraction; the safety force is derived.
ControlSetting make_control(const ServoSpec& servo, double control_fraction);

/// Validates an externally supplied (fraction, force) pair: the force must
/// match the torque relation within 1e-9 N.
ControlSetting make_control_checked(const ServoSpec& servo, double control_fraction,
                                    double safety_force_n);

/// Control setting whose safety force equals the given force exactly.
ControlSetting control_for_force(const ServoSpec& servo, double safety_force_n);

/// Largest control fraction that is a multiple of `granularity` (at most
/// integer percent) and keeps the limited force at or below break_force_n.
/// Throws infeasible_error when even one granule exceeds it.
ControlSetting max_control_percent(const ServoSpec& servo, double break_force_n,
                                   double granularity = 0.01);

}  // namespace waistband

#endif
