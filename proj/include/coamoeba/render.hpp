#pragma once

#include <string>

#include "coamoeba/model.hpp"

namespace coamoeba {

struct RenderOptions {
    bool show_centers = false;
    bool show_conjugation = false;
    int size = 480; // pixels per turn
};

/// SVG 1.1 picture of a planar coamoeba on the unit square of arrangement
/// coordinates: the coamoeba dark, the zonotope holes white. Throws
/// UnsupportedDimension unless n == 2.
std::string render_svg(const NormalizedModel& model, const RenderOptions& options = {});

} // namespace coamoeba
