#include "waistband/elastic.hpp"

#include <cmath>
#include <string>

#include "waistband/errors.hpp"
#include "waistband/units.hpp"

namespace waistband {

namespace {

constexpr double kForceTolN = 1e-9;
constexpr double kBisectionTolN = 1e-6;
constexpr int kBisectionMaxIter = 200;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void validate_band(const ElasticBand& band) {
    if (!(band.rest_length_mm > 0.0))
        throw config_error("band: rest_length_mm must be > 0");
    if (!(band.stiffness_n_per_m > 0.0))
        throw config_error("band: stiffness_n_per_m must be > 0");
    if (!(band.break_force_n > 0.0))
        throw config_error("band: break_force_n must be > 0");
    if (!(band.proportional_limit_mm > 0.0))
        throw config_error("band: proportional_limit_mm must be > 0");
    if (!(band.proportional_limit_mm <= band.fracture_extension_mm))
        throw config_error("band: proportional_limit_mm must not exceed fracture_extension_mm");
    if (band.young_modulus_n_per_mm2.has_value()) {
        if (!band.cross_section_area_mm2.has_value())
            throw config_error("band: young_modulus_n_per_mm2 requires cross_section_area_mm2");
        if (!(*band.young_modulus_n_per_mm2 > 0.0))
            throw config_error("band: young_modulus_n_per_mm2 must be > 0");
    }
    if (band.cross_section_area_mm2.has_value() && !(*band.cross_section_area_mm2 > 0.0))
        throw config_error("band: cross_section_area_mm2 must be > 0");

    const double knot_force = spring_force_n(band.stiffness_n_per_m, band.proportional_limit_mm);
    if (band.proportional_limit_mm < band.fracture_extension_mm) {
        // The nonlinear segment must climb from the Hooke force to break_force.
        if (!(knot_force < band.break_force_n))
            throw config_error("band: Hooke force at the proportional limit (" + fmt(knot_force) +
                               " N) must stay below break_force_n (" + fmt(band.break_force_n) +
                               " N)");
    } else {
        // Pure-linear band: the line has to hit break_force at the fracture point.
        const double tol = kForceTolN * std::max(1.0, band.break_force_n);
        if (std::abs(knot_force - band.break_force_n) > tol)
            throw config_error(
                "band: a pure-linear band requires fracture_extension_mm = "
                "1000 * break_force_n / stiffness_n_per_m (force at fracture is " +
                fmt(knot_force) + " N, break force is " + fmt(band.break_force_n) + " N)");
    }
}

}  // namespace

ElasticBand make_band(const BandParams& params) {
    ElasticBand band;
    band.rest_length_mm = params.rest_length_mm;
    band.stiffness_n_per_m = params.stiffness_n_per_m;
    band.break_force_n = params.break_force_n;
    band.cross_section_area_mm2 = params.cross_section_area_mm2;
    band.young_modulus_n_per_mm2 = params.young_modulus_n_per_mm2;

    if (!(params.stiffness_n_per_m > 0.0))
        throw config_error("band: stiffness_n_per_m must be > 0");
    if (!(params.break_force_n > 0.0))
        throw config_error("band: break_force_n must be > 0");
    if (params.fracture_extension_mm && !(*params.fracture_extension_mm > 0.0))
        throw config_error("band: fracture_extension_mm must be > 0");
    if (params.proportional_limit_mm && !(*params.proportional_limit_mm > 0.0))
        throw config_error("band: proportional_limit_mm must be > 0");

    // Unspecified curve knots default to the pure-linear band: fracture where
    // the Hooke line meets the break force, proportional limit right at it.
    const double linear_fracture_mm =
        m_to_mm(params.break_force_n / params.stiffness_n_per_m);
    band.fracture_extension_mm = params.fracture_extension_mm.value_or(linear_fracture_mm);
    band.proportional_limit_mm =
        params.proportional_limit_mm.value_or(band.fracture_extension_mm);

    validate_band(band);
    return band;
}

const char* region_name(Region region) {
    switch (region) {
        case Region::linear: return "linear";
        case Region::nonlinear: return "nonlinear";
        case Region::fractured: return "fractured";
    }
    return "unknown";
}

ForceDeformationCurve::ForceDeformationCurve(ElasticBand band, double end_slope_factor)
    : band_(std::move(band)), end_slope_factor_(end_slope_factor) {
    validate_band(band_);
    if (!(end_slope_factor_ > 0.0))
        throw config_error("curve: end_slope_factor must be > 0");

    knot_force_n_ = spring_force_n(band_.stiffness_n_per_m, band_.proportional_limit_mm);

    if (band_.proportional_limit_mm < band_.fracture_extension_mm) {
        const double span_mm = band_.fracture_extension_mm - band_.proportional_limit_mm;
        const double secant = (band_.break_force_n - knot_force_n_) / span_mm;  // N/mm
        const double hooke_slope = band_.stiffness_n_per_m / 1000.0;            // N/mm
        // Slopes at most 3x the secant keep the cubic monotone for any input.
        start_slope_n_per_mm_ = std::min(hooke_slope, 3.0 * secant);
        end_slope_n_per_mm_ = std::min(end_slope_factor_ * hooke_slope, 3.0 * secant);
    }
}

CurveSample ForceDeformationCurve::force_at(double extension_mm) const {
    if (extension_mm < 0.0)
        throw domain_error("curve_force: extension must be >= 0");

    if (extension_mm <= band_.proportional_limit_mm)
        return {spring_force_n(band_.stiffness_n_per_m, extension_mm), Region::linear};

    if (extension_mm > band_.fracture_extension_mm)
        return {band_.break_force_n, Region::fractured};

    const double span = band_.fracture_extension_mm - band_.proportional_limit_mm;
    const double t = (extension_mm - band_.proportional_limit_mm) / span;
    const double h00 = (2.0 * t - 3.0) * t * t + 1.0;
    const double h10 = ((t - 2.0) * t + 1.0) * t;
    const double h01 = (3.0 - 2.0 * t) * t * t;
    const double h11 = (t - 1.0) * t * t;
    const double force = h00 * knot_force_n_ + h10 * span * start_slope_n_per_mm_ +
                         h01 * band_.break_force_n + h11 * span * end_slope_n_per_mm_;
    return {force, Region::nonlinear};
}

double elongation_percent(double final_length_mm, double original_length_mm) {
    if (!(original_length_mm > 0.0))
        throw domain_error("elongation_percent: original length must be > 0");
    if (final_length_mm < 0.0)
        throw domain_error("elongation_percent: final length must be >= 0");
    return (final_length_mm - original_length_mm) / original_length_mm * 100.0;
}

double stiffness_from_measurement(double force_n, double extension_mm) {
    if (!(extension_mm > 0.0))
        throw domain_error("stiffness_from_measurement: extension must be > 0");
    if (force_n < 0.0)
        throw domain_error("stiffness_from_measurement: force must be >= 0");
    return force_n / mm_to_m(extension_mm);
}

double hooke_force(const ElasticBand& band, double extension_mm) {
    if (extension_mm < 0.0)
        throw domain_error("hooke_force: extension must be >= 0");
    if (extension_mm > band.proportional_limit_mm)
        throw region_error("hooke_force: extension " + fmt(extension_mm) +
                           " mm is beyond the proportional limit " +
                           fmt(band.proportional_limit_mm) + " mm; use curve_force");
    return spring_force_n(band.stiffness_n_per_m, extension_mm);
}

double extension_from_force_young(const ElasticBand& band, double force_n) {
    if (!band.young_modulus_n_per_mm2.has_value() || !band.cross_section_area_mm2.has_value())
        throw config_error(
            "extension_from_force_young: band needs young_modulus_n_per_mm2 and "
            "cross_section_area_mm2");
    if (force_n < 0.0)
        throw domain_error("extension_from_force_young: force must be >= 0");
    const double stiffness_n = *band.young_modulus_n_per_mm2 * *band.cross_section_area_mm2;
    return force_n / stiffness_n * band.rest_length_mm;
}

CurveSample curve_force(const ForceDeformationCurve& curve, double extension_mm) {
    return curve.force_at(extension_mm);
}

double max_safe_extension(const ForceDeformationCurve& curve, double force_limit_n) {
    const double break_force = curve.band().break_force_n;
    if (force_limit_n < 0.0)
        throw domain_error("max_safe_extension: force limit must be >= 0");
    if (force_limit_n > break_force)
        throw domain_error("max_safe_extension: force limit " + fmt(force_limit_n) +
                           " N exceeds the break force " + fmt(break_force) + " N");
    if (force_limit_n == 0.0) return 0.0;
    if (force_limit_n == break_force) return curve.band().fracture_extension_mm;

    double lo = 0.0;
    double hi = curve.band().fracture_extension_mm;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < kBisectionMaxIter; ++i) {
        mid = 0.5 * (lo + hi);
        const double f = curve.force_at(mid).force_n;
        if (std::abs(f - force_limit_n) <= kBisectionTolN) return mid;
        (f < force_limit_n ? lo : hi) = mid;
    }
    return mid;
}

}  // namespace waistband
