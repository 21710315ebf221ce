#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "waistband/errors.hpp"
#include "waistband/geometry.hpp"

namespace wb = waistband;

namespace {

// The machine's two published arrangements: both run spacings of
// 300-750 mm; the factors shrink as the wheels move apart.
wb::WheelConfig three_wheel() { return wb::make_wheel_config(3, 300.0, 750.0, 2.72, 2.25); }
wb::WheelConfig two_wheel() { return wb::make_wheel_config(2, 300.0, 750.0, 2.5, 2.15); }

// Random config whose boundary product is increasing by construction: the
// factor slope is kept below elongation_at_max / max_spacing.
wb::WheelConfig random_config(testutil::Rand& rand) {
    const int wheel_count = rand.int_in(2, 3);
    const double min_spacing = rand.in(50.0, 800.0);
    const double max_spacing = min_spacing * rand.in(1.05, 4.0);
    const double at_max = rand.in(1.05, 4.0);
    const double max_slope = at_max / max_spacing;
    const double slope = rand.in(0.0, 0.9 * max_slope);
    const double at_min = at_max + slope * (max_spacing - min_spacing);
    return wb::make_wheel_config(wheel_count, min_spacing, max_spacing, at_min, at_max);
}

double boundary(const wb::WheelConfig& config, double spacing) {
    return spacing * wb::interpolated_elongation(config, spacing);
}

}  // namespace

TEST_CASE("wheel config invariants") {
    CHECK_THROWS_AS(wb::make_wheel_config(4, 300, 750, 2.72, 2.25), wb::config_error);
    CHECK_THROWS_AS(wb::make_wheel_config(3, 0, 750, 2.72, 2.25), wb::config_error);
    CHECK_THROWS_AS(wb::make_wheel_config(3, 800, 750, 2.72, 2.25), wb::config_error);
    CHECK_THROWS_AS(wb::make_wheel_config(3, 300, 750, 0.9, 0.8), wb::config_error);
    // The factor must shrink (or stay flat) as the spacing grows.
    CHECK_THROWS_AS(wb::make_wheel_config(3, 300, 750, 2.25, 2.72), wb::config_error);
    // A factor falling fast enough to shrink the boundary is rejected:
    // here the product at 100 mm is 300 mm but at 200 mm only 320 mm ... and
    // dips in between (smallest slope at max spacing is negative).
    CHECK_THROWS_AS(wb::make_wheel_config(2, 100, 200, 3.0, 1.6), wb::config_error);
    // Single-spacing configs need one consistent factor.
    CHECK_THROWS_AS(wb::make_wheel_config(2, 300, 300, 2.5, 2.4), wb::config_error);
    CHECK_NOTHROW(wb::make_wheel_config(2, 300, 300, 2.5, 2.5));
}

TEST_CASE("per-config envelopes multiply spacing by the endpoint factors") {
    const wb::MachineEnvelope three = wb::envelope_for_config(three_wheel());
    CHECK(three.min_boundary_mm == doctest::Approx(816.0).epsilon(1e-12));
    CHECK(three.max_boundary_mm == doctest::Approx(1687.5).epsilon(1e-12));
    CHECK(three.min_source_wheels == 3);
    CHECK(three.max_source_wheels == 3);

    const wb::MachineEnvelope two = wb::envelope_for_config(two_wheel());
    CHECK(two.min_boundary_mm == 750.0);  // 300 * 2.5 is exact
    CHECK(two.max_boundary_mm == doctest::Approx(1612.5).epsilon(1e-12));
}

TEST_CASE("combined envelope spans the 2-wheel minimum to the 3-wheel maximum") {
    const wb::MachineEnvelope combined = wb::combined_envelope(three_wheel(), two_wheel());
    CHECK(combined.min_boundary_mm == 750.0);
    CHECK(combined.max_boundary_mm == doctest::Approx(1687.5).epsilon(1e-12));
    CHECK(combined.min_source_wheels == 2);
    CHECK(combined.max_source_wheels == 3);

    SUBCASE("argument order is enforced") {
        CHECK_THROWS_AS(wb::combined_envelope(two_wheel(), three_wheel()), wb::config_error);
    }
    SUBCASE("disjoint ranges are rejected") {
        const wb::WheelConfig narrow_three = wb::make_wheel_config(3, 300, 400, 2.72, 2.7);
        const wb::WheelConfig high_two = wb::make_wheel_config(2, 700, 750, 2.5, 2.4);
        CHECK_THROWS_AS(wb::combined_envelope(narrow_three, high_two), wb::config_error);
    }
}

TEST_CASE("elongation factor interpolates linearly between the endpoints") {
    const wb::WheelConfig config = three_wheel();
    CHECK(wb::interpolated_elongation(config, 300.0) == 2.72);
    CHECK(wb::interpolated_elongation(config, 750.0) == 2.25);
    CHECK(wb::interpolated_elongation(config, 525.0) == doctest::Approx(2.485).epsilon(1e-12));
    CHECK_THROWS_AS(wb::interpolated_elongation(config, 299.0), wb::domain_error);
    CHECK_THROWS_AS(wb::interpolated_elongation(config, 751.0), wb::domain_error);

    const wb::WheelConfig fixed = wb::make_wheel_config(2, 400, 400, 2.2, 2.2);
    CHECK(wb::interpolated_elongation(fixed, 400.0) == 2.2);
}

TEST_CASE("required spacing inverts the boundary product") {
    const wb::WheelConfig config = three_wheel();
    const wb::MachineEnvelope envelope = wb::envelope_for_config(config);

    SUBCASE("frozen interior solution") {
        CHECK(wb::required_spacing(config, 1300.0) ==
              doctest::Approx(522.6149438801681).epsilon(1e-9));
        CHECK(wb::required_spacing(two_wheel(), 800.0) ==
              doctest::Approx(322.22836776143936).epsilon(1e-9));
    }
    SUBCASE("envelope endpoints map to the spacing endpoints exactly") {
        CHECK(wb::required_spacing(config, envelope.min_boundary_mm) == 300.0);
        CHECK(wb::required_spacing(config, envelope.max_boundary_mm) == 750.0);
    }
    SUBCASE("targets outside the envelope are rejected") {
        CHECK_THROWS_AS(wb::required_spacing(config, envelope.min_boundary_mm - 0.01),
                        wb::domain_error);
        CHECK_THROWS_AS(wb::required_spacing(config, envelope.max_boundary_mm + 0.01),
                        wb::domain_error);
    }
    SUBCASE("round-trips within the bisection tolerance") {
        testutil::Rand rand(201);
        for (int i = 0; i < 200; ++i) {
            const double target =
                rand.in(envelope.min_boundary_mm, envelope.max_boundary_mm);
            const double spacing = wb::required_spacing(config, target);
            CHECK(spacing >= 300.0);
            CHECK(spacing <= 750.0);
            CHECK(std::abs(boundary(config, spacing) - target) <= 1e-6);
        }
    }
}

TEST_CASE("fuzzed configs keep the boundary monotone and invertible") {
    testutil::Rand rand(202);
    for (int i = 0; i < 100; ++i) {
        const wb::WheelConfig config = random_config(rand);
        const wb::MachineEnvelope envelope = wb::envelope_for_config(config);

        double previous = boundary(config, config.min_spacing_mm);
        for (int j = 1; j <= 50; ++j) {
            // Clamp: reconstructing the endpoint can overshoot it by an ulp.
            const double spacing = std::min(
                config.max_spacing_mm,
                config.min_spacing_mm + (config.max_spacing_mm - config.min_spacing_mm) *
                                            static_cast<double>(j) / 50.0);
            const double b = boundary(config, spacing);
            CHECK(b >= previous - 1e-9);
            previous = b;
        }

        for (int j = 0; j < 5; ++j) {
            const double target = rand.in(envelope.min_boundary_mm, envelope.max_boundary_mm);
            const double spacing = wb::required_spacing(config, target);
            CHECK(std::abs(boundary(config, spacing) - target) <= 1e-6);
        }
    }
}

TEST_CASE("select_config picks a feasible arrangement") {
    const std::vector<wb::WheelConfig> configs{three_wheel(), two_wheel()};

    SUBCASE("only the 3-wheel arrangement reaches 1650 mm") {
        const wb::WheelPlan plan = wb::select_config(configs, 1650.0);
        REQUIRE(plan.config.has_value());
        CHECK(plan.config->wheel_count == 3);
        CHECK(plan.spacing_mm == doctest::Approx(724.8811362698398).epsilon(1e-9));
        CHECK(plan.target_boundary_mm() == doctest::Approx(1650.0).epsilon(1e-9));
    }
    SUBCASE("750 mm is the 2-wheel minimum") {
        const wb::WheelPlan plan = wb::select_config(configs, 750.0);
        REQUIRE(plan.config.has_value());
        CHECK(plan.config->wheel_count == 2);
        CHECK(plan.spacing_mm == 300.0);
        CHECK(plan.effective_elongation == 2.5);
    }
    SUBCASE("overlap prefers the 2-wheel arrangement") {
        const wb::WheelPlan plan = wb::select_config(configs, 1300.0);
        REQUIRE(plan.config.has_value());
        CHECK(plan.config->wheel_count == 2);
        CHECK(plan.target_boundary_mm() == doctest::Approx(1300.0).epsilon(1e-9));
    }
    SUBCASE("targets outside every envelope are infeasible") {
        CHECK_THROWS_AS(wb::select_config(configs, 500.0), wb::infeasible_error);
        CHECK_THROWS_AS(wb::select_config(configs, 1700.0), wb::infeasible_error);
        // The error names the combined envelope.
        try {
            wb::select_config(configs, 500.0);
            FAIL("expected infeasible_error");
        } catch (const wb::infeasible_error& e) {
            CHECK(std::string(e.what()).find("[750, 1687.5]") != std::string::npos);
        }
    }
    SUBCASE("degenerate inputs") {
        CHECK_THROWS_AS(wb::select_config({}, 1000.0), wb::config_error);
        CHECK_THROWS_AS(wb::select_config(configs, 0.0), wb::domain_error);
    }
}

TEST_CASE("pull plans stretch the band directly") {
    const wb::WheelPlan plan = wb::make_pull_plan(610.0);
    CHECK_FALSE(plan.config.has_value());
    CHECK(plan.spacing_mm == 610.0);
    CHECK(plan.effective_elongation == 1.0);
    CHECK(plan.target_boundary_mm() == 610.0);
    CHECK_THROWS_AS(wb::make_pull_plan(0.0), wb::domain_error);
}
