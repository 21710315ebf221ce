#ifndef WAISTBAND_ELASTIC_HPP
#define WAISTBAND_ELASTIC_HPP

#include <optional>

namespace waistband {

/// Material and geometric properties of one elastic band. The band is a
/// sewn loop; rest_length_mm is its unstretched half-circumference.
struct ElasticBand {
    double rest_length_mm = 0.0;
    double stiffness_n_per_m = 0.0;   // slope of the linear (Hooke) region
    double break_force_n = 0.0;       // tension at which the band fractures
    double proportional_limit_mm = 0.0;  // extension up to which the law is linear
    double fracture_extension_mm = 0.0;  // extension at which force = break_force
    std::optional<double> cross_section_area_mm2;
    std::optional<double> young_modulus_n_per_mm2;
};

/// Raw construction inputs for make_band(). Optional fields left unset are
/// filled with the pure-linear defaults: fracture at break_force/stiffness
/// and the proportional limit at the fracture point.
struct BandParams {
    double rest_length_mm = 0.0;
    double stiffness_n_per_m = 0.0;
    double break_force_n = 0.0;
    std::optional<double> proportional_limit_mm;
    std::optional<double> fracture_extension_mm;
    std::optional<double> cross_section_area_mm2;
    std::optional<double> young_modulus_n_per_mm2;
};

/// Validates params, fills defaults and returns the band.
/// Throws config_error when an invariant is violated.
ElasticBand make_band(const BandParams& params);

enum class Region {
    linear,
    nonlinear,
    fractured,
};

const char* region_name(Region region);

struct CurveSample {
    double force_n = 0.0;
    Region region = Region::linear;
};

/// Piecewise extension -> force law: Hooke line up to the proportional
/// limit, a monotone cubic Hermite segment up to the fracture point, and
/// a fractured plateau past it. The segment starts with the Hooke slope
/// and ends with end_slope_factor times it (slopes are limited to the
/// monotone range when the configured values would produce a dip).
class ForceDeformationCurve {
public:
    explicit ForceDeformationCurve(ElasticBand band, double end_slope_factor = 3.0);

    const ElasticBand& band() const { return band_; }
    double end_slope_factor() const { return end_slope_factor_; }

    /// Force and region at extension_mm >= 0. Total: extensions past the
    /// fracture point report (break_force, fractured) instead of throwing.
    CurveSample force_at(double extension_mm) const;

private:
    ElasticBand band_;
    double end_slope_factor_;
    // Hermite data for the nonlinear segment, extensions in mm, slopes in N/mm.
    double knot_force_n_ = 0.0;
    double start_slope_n_per_mm_ = 0.0;
    double end_slope_n_per_mm_ = 0.0;
};

/// Percentage length change of a stretched (or compressed) band.
double elongation_percent(double final_length_mm, double original_length_mm);

/// Linear-region stiffness k = F / ds from one force/extension measurement.
double stiffness_from_measurement(double force_n, double extension_mm);

/// Hooke force k*x inside the linear region; region_error outside it.
double hooke_force(const ElasticBand& band, double extension_mm);

/// Extension implied by the elastic-modulus law dL = (1/Y)(F/A)L0.
/// Requires young_modulus and cross_section_area to be present.
double extension_from_force_young(const ElasticBand& band, double force_n);

/// Force and region at the given extension (total over extension >= 0).
CurveSample curve_force(const ForceDeformationCurve& curve, double extension_mm);

/// Unique extension whose curve force equals force_limit_n, found by
/// bisection; the round-trip error through curve_force is <= 1e-6 N.
double max_safe_extension(const ForceDeformationCurve& curve, double force_limit_n);

}  // namespace waistband

#endif
