#ifndef WAISTBAND_SPEC_IO_HPP
#define WAISTBAND_SPEC_IO_HPP

#include <string_view>
#include <vector>

#include "waistband/elastic.hpp"
#include "waistband/force.hpp"
#include "waistband/geometry.hpp"
#include "waistband/sim.hpp"

namespace waistband {

/// One machine spec file: the servo, one or two wheel configs (distinct
/// wheel counts) and optional simulation defaults.
struct MachineSpec {
    ServoSpec servo;
    std::vector<WheelConfig> configs;
    SimParams sim_defaults;
};

/// Band spec parameters plus the curve shape knob.
struct BandSpec {
    BandParams band;
    double end_slope_factor = 3.0;
};

/// Parses and validates machine spec JSON. Errors carry the offending
/// field path (e.g. "configs[0].min_spacing_mm") or the parser position.
MachineSpec parse_machine_spec(std::string_view json_text);

/// Parses and validates band spec JSON; same error style.
BandSpec parse_band_spec(std::string_view json_text);

}  // namespace waistband

#endif
