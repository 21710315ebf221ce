#ifndef WAISTBAND_UNITS_HPP
#define WAISTBAND_UNITS_HPP

namespace waistband {

// Lengths are carried in mm, forces in N, stiffness in N/m and torque in
// N*m throughout the library; conversions happen inside the operations
// that mix the two length scales instead of at the call sites.

constexpr double mm_to_m(double mm) { return mm / 1000.0; }
constexpr double m_to_mm(double m) { return m * 1000.0; }

// Stiffness k is N/m, extensions are mm.
constexpr double spring_force_n(double stiffness_n_per_m, double extension_mm) {
    return stiffness_n_per_m * mm_to_m(extension_mm);
}

}  // namespace waistband

#endif
