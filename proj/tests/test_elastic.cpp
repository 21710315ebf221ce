#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "waistband/elastic.hpp"
#include "waistband/errors.hpp"
#include "waistband/units.hpp"

namespace wb = waistband;

namespace {

// The measured band: 420 mm rest length stretched to 610 mm by 22.82 N.
constexpr double kRestMm = 420.0;
constexpr double kMeasuredForceN = 22.82;
constexpr double kMeasuredExtensionMm = 190.0;
constexpr double kBreakForceN = 31.0;
const double kStiffness = 22.82 / 0.19;  // 120.10526315789474 N/m

wb::ElasticBand linear_band() {
    wb::BandParams params;
    params.rest_length_mm = kRestMm;
    params.stiffness_n_per_m = kStiffness;
    params.break_force_n = kBreakForceN;
    return wb::make_band(params);
}

// A band with an explicit nonlinear segment: Hooke up to 190 mm, cubic up
// to the fracture point at 258 mm where the force reaches 31 N.
wb::ElasticBand nonlinear_band() {
    wb::BandParams params;
    params.rest_length_mm = kRestMm;
    params.stiffness_n_per_m = 120.0;
    params.break_force_n = kBreakForceN;
    params.proportional_limit_mm = 190.0;
    params.fracture_extension_mm = 258.0;
    return wb::make_band(params);
}

// Independent oracle: the same Hermite segment written as a cubic Bezier
// and evaluated by De Casteljau subdivision.
double bezier_segment(double x0, double f0, double m0, double x1, double f1, double m1,
                      double x) {
    const double span = x1 - x0;
    const double t = (x - x0) / span;
    double b0 = f0;
    double b1 = f0 + span * m0 / 3.0;
    double b2 = f1 - span * m1 / 3.0;
    double b3 = f1;
    b0 = b0 + t * (b1 - b0);
    b1 = b1 + t * (b2 - b1);
    b2 = b2 + t * (b3 - b2);
    b0 = b0 + t * (b1 - b0);
    b1 = b1 + t * (b2 - b1);
    return b0 + t * (b1 - b0);
}

}  // namespace

TEST_CASE("elongation percent reproduces the measured stretch") {
    CHECK(wb::elongation_percent(610.0, 420.0) ==
          doctest::Approx(45.23809523809524).epsilon(1e-12));
    CHECK(wb::elongation_percent(420.0, 420.0) == 0.0);
    CHECK(wb::elongation_percent(380.0, 400.0) == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK_THROWS_AS(wb::elongation_percent(500.0, 0.0), wb::domain_error);
    CHECK_THROWS_AS(wb::elongation_percent(500.0, -10.0), wb::domain_error);
    CHECK_THROWS_AS(wb::elongation_percent(-1.0, 400.0), wb::domain_error);
}

TEST_CASE("elongation percent is proportional to the added length") {
    testutil::Rand rand(101);
    for (int i = 0; i < 200; ++i) {
        const double original = rand.in(1.0, 2000.0);
        const double added = rand.in(0.0, 3.0 * original);
        const double percent = wb::elongation_percent(original + added, original);
        CHECK(percent == doctest::Approx(added / original * 100.0).epsilon(1e-9));
        // Doubling the added length doubles the percentage.
        CHECK(wb::elongation_percent(original + 2.0 * added, original) ==
              doctest::Approx(2.0 * percent).epsilon(1e-9));
    }
}

TEST_CASE("stiffness from one force measurement") {
    CHECK(wb::stiffness_from_measurement(kMeasuredForceN, kMeasuredExtensionMm) ==
          doctest::Approx(120.10526315789474).epsilon(1e-12));
    CHECK_THROWS_AS(wb::stiffness_from_measurement(10.0, 0.0), wb::domain_error);
    CHECK_THROWS_AS(wb::stiffness_from_measurement(10.0, -5.0), wb::domain_error);
    CHECK_THROWS_AS(wb::stiffness_from_measurement(-1.0, 100.0), wb::domain_error);
}

TEST_CASE("stiffness and spring force round-trip") {
    testutil::Rand rand(102);
    for (int i = 0; i < 200; ++i) {
        const double stiffness = rand.in(1.0, 5000.0);
        const double extension = rand.in(0.01, 800.0);
        const double force = wb::spring_force_n(stiffness, extension);
        CHECK(wb::stiffness_from_measurement(force, extension) ==
              doctest::Approx(stiffness).epsilon(1e-9));
    }
}

TEST_CASE("hooke force covers exactly the linear region") {
    const wb::ElasticBand band = linear_band();
    CHECK(wb::hooke_force(band, 0.0) == 0.0);
    CHECK(wb::hooke_force(band, kMeasuredExtensionMm) ==
          doctest::Approx(kMeasuredForceN).epsilon(1e-12));
    CHECK_THROWS_AS(wb::hooke_force(band, -1.0), wb::domain_error);
    CHECK_THROWS_AS(wb::hooke_force(band, band.proportional_limit_mm + 1.0), wb::region_error);
}

TEST_CASE("make_band fills the pure-linear defaults") {
    const wb::ElasticBand band = linear_band();
    // The Hooke line meets the break force at break / stiffness.
    CHECK(band.fracture_extension_mm == doctest::Approx(258.1069237510955).epsilon(1e-12));
    CHECK(band.proportional_limit_mm == band.fracture_extension_mm);
}

TEST_CASE("make_band rejects inconsistent parameters") {
    wb::BandParams params;
    params.rest_length_mm = kRestMm;
    params.stiffness_n_per_m = kStiffness;
    params.break_force_n = kBreakForceN;

    SUBCASE("nonpositive required fields") {
        params.rest_length_mm = 0.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
        params.rest_length_mm = kRestMm;
        params.stiffness_n_per_m = 0.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
        params.stiffness_n_per_m = kStiffness;
        params.break_force_n = -1.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
    }
    SUBCASE("nonpositive optional fields are rejected, not defaulted") {
        params.proportional_limit_mm = 0.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
        params.proportional_limit_mm.reset();
        params.fracture_extension_mm = -2.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
    }
    SUBCASE("proportional limit past the fracture point") {
        params.proportional_limit_mm = 260.0;
        params.fracture_extension_mm = 200.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
    }
    SUBCASE("explicit fracture point off the Hooke line on a pure-linear band") {
        params.fracture_extension_mm = 250.0;  // line reaches 31 N at 258.107 mm
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
    }
    SUBCASE("hooke force at the proportional limit must stay below break") {
        params.proportional_limit_mm = 270.0;  // 32.43 N, above 31 N
        params.fracture_extension_mm = 280.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
    }
    SUBCASE("young modulus requires the cross-section area") {
        params.young_modulus_n_per_mm2 = 5.0;
        CHECK_THROWS_AS(wb::make_band(params), wb::config_error);
    }
}

TEST_CASE("force curve: linear, nonlinear and fractured regions") {
    const wb::ForceDeformationCurve curve(nonlinear_band());

    SUBCASE("linear region follows the Hooke line") {
        const wb::CurveSample at_zero = curve.force_at(0.0);
        CHECK(at_zero.force_n == 0.0);
        CHECK(at_zero.region == wb::Region::linear);
        const wb::CurveSample sample = curve.force_at(100.0);
        CHECK(sample.force_n == doctest::Approx(12.0).epsilon(1e-12));
        CHECK(sample.region == wb::Region::linear);
        CHECK(curve.force_at(190.0).region == wb::Region::linear);
    }
    SUBCASE("midpoint of the cubic segment") {
        const wb::CurveSample sample = curve.force_at(224.0);
        CHECK(sample.force_n == doctest::Approx(24.86).epsilon(1e-12));
        CHECK(sample.region == wb::Region::nonlinear);
    }
    SUBCASE("the segment ends exactly at the break force") {
        const wb::CurveSample sample = curve.force_at(258.0);
        CHECK(sample.force_n == doctest::Approx(31.0).epsilon(1e-12));
        CHECK(sample.region == wb::Region::nonlinear);
    }
    SUBCASE("past the fracture point the band is broken") {
        const wb::CurveSample sample = curve.force_at(258.0 + 1e-9);
        CHECK(sample.force_n == doctest::Approx(31.0).epsilon(1e-12));
        CHECK(sample.region == wb::Region::fractured);
        CHECK(curve.force_at(1000.0).region == wb::Region::fractured);
    }
    SUBCASE("continuous at the knot") {
        const double left = curve.force_at(std::nextafter(190.0, 0.0)).force_n;
        const double right = curve.force_at(std::nextafter(190.0, 300.0)).force_n;
        CHECK(std::abs(left - right) <= 1e-9);
    }
    SUBCASE("negative extension is out of domain") {
        CHECK_THROWS_AS(curve.force_at(-0.5), wb::domain_error);
    }
}

TEST_CASE("force curve matches an independent Bezier evaluation") {
    const wb::ForceDeformationCurve curve(nonlinear_band());
    const wb::ElasticBand& band = curve.band();
    const double knot = wb::spring_force_n(band.stiffness_n_per_m, band.proportional_limit_mm);
    const double span = band.fracture_extension_mm - band.proportional_limit_mm;
    const double secant = (band.break_force_n - knot) / span;
    const double hooke_slope = band.stiffness_n_per_m / 1000.0;
    const double m0 = std::min(hooke_slope, 3.0 * secant);
    const double m1 = std::min(curve.end_slope_factor() * hooke_slope, 3.0 * secant);

    for (int i = 0; i <= 500; ++i) {
        const double x =
            band.proportional_limit_mm + span * static_cast<double>(i) / 500.0;
        const double expected = bezier_segment(band.proportional_limit_mm, knot, m0,
                                               band.fracture_extension_mm, band.break_force_n,
                                               m1, x);
        CHECK(curve.force_at(x).force_n == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("fuzzed curves stay monotone and hit both knots") {
    testutil::Rand rand(103);
    for (int i = 0; i < 200; ++i) {
        wb::BandParams params;
        params.rest_length_mm = rand.in(100.0, 1000.0);
        params.stiffness_n_per_m = rand.in(20.0, 500.0);
        const double prop = rand.in(10.0, 400.0);
        params.proportional_limit_mm = prop;
        params.fracture_extension_mm = prop * rand.in(1.01, 3.0);
        const double knot = wb::spring_force_n(params.stiffness_n_per_m, prop);
        params.break_force_n = knot * rand.in(1.05, 5.0);
        const double end_slope_factor = rand.in(0.1, 20.0);

        const wb::ForceDeformationCurve curve(wb::make_band(params), end_slope_factor);
        const double fracture = *params.fracture_extension_mm;

        double previous = 0.0;
        for (int j = 0; j <= 400; ++j) {
            const double x = fracture * 1.05 * static_cast<double>(j) / 400.0;
            const double force = curve.force_at(x).force_n;
            CHECK(force >= previous - 1e-9);  // monotone within rounding
            CHECK(force <= params.break_force_n + 1e-9);
            previous = force;
        }
        CHECK(curve.force_at(prop).force_n == doctest::Approx(knot).epsilon(1e-9));
        CHECK(curve.force_at(fracture).force_n ==
              doctest::Approx(params.break_force_n).epsilon(1e-9));
    }
}

TEST_CASE("max safe extension inverts the curve") {
    const wb::ForceDeformationCurve curve(nonlinear_band());

    SUBCASE("exact endpoints") {
        CHECK(wb::max_safe_extension(curve, 0.0) == 0.0);
        CHECK(wb::max_safe_extension(curve, 31.0) == 258.0);
    }
    SUBCASE("midpoint of the cubic") {
        CHECK(wb::max_safe_extension(curve, 24.86) == doctest::Approx(224.0).epsilon(1e-6));
    }
    SUBCASE("out-of-range limits") {
        CHECK_THROWS_AS(wb::max_safe_extension(curve, -1.0), wb::domain_error);
        CHECK_THROWS_AS(wb::max_safe_extension(curve, 31.5), wb::domain_error);
    }
    SUBCASE("round-trips within the bisection tolerance") {
        testutil::Rand rand(104);
        for (int i = 0; i < 200; ++i) {
            const double limit = rand.in(1e-6, 31.0);
            const double extension = wb::max_safe_extension(curve, limit);
            CHECK(std::abs(curve.force_at(extension).force_n - limit) <= 1e-6);
        }
    }
}

TEST_CASE("extension from the elastic-modulus law") {
    wb::BandParams params;
    params.rest_length_mm = kRestMm;
    params.stiffness_n_per_m = kStiffness;
    params.break_force_n = kBreakForceN;
    params.cross_section_area_mm2 = 10.0;
    // Young modulus chosen so Y * A equals stiffness * rest length: the
    // modulus law and the Hooke line then describe the same band.
    params.young_modulus_n_per_mm2 = kStiffness * wb::mm_to_m(kRestMm) / 10.0;
    const wb::ElasticBand band = wb::make_band(params);

    CHECK(wb::extension_from_force_young(band, kMeasuredForceN) ==
          doctest::Approx(190.0).epsilon(1e-12));
    CHECK(wb::extension_from_force_young(band, 0.0) == 0.0);
    CHECK_THROWS_AS(wb::extension_from_force_young(band, -1.0), wb::domain_error);

    SUBCASE("agrees with the Hooke line when Y*A matches the stiffness") {
        testutil::Rand rand(105);
        for (int i = 0; i < 100; ++i) {
            const double extension = rand.in(0.0, band.proportional_limit_mm);
            const double force = wb::hooke_force(band, extension);
            CHECK(wb::extension_from_force_young(band, force) ==
                  doctest::Approx(extension).epsilon(1e-9));
        }
    }
    SUBCASE("requires the modulus fields") {
        const wb::ElasticBand bare = linear_band();
        CHECK_THROWS_AS(wb::extension_from_force_young(bare, 10.0), wb::config_error);
    }
}
