#pragma once

// Minimal log-log line chart written straight to SVG text.

#include <span>
#include <string>

#include "ipmlab/harness.hpp"

namespace ipmlab {

/// 800x600 canvas, log-log axes with decade ticks, one polyline per report
/// (labelled by target family) and its fitted line dashed on top.
std::string render_rate_svg(std::span<const RateReport> reports);

}  // namespace ipmlab
