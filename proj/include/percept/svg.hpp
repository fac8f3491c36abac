#pragma once

#include <string>
#include <vector>

namespace percept {

struct SvgPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
};

// Dependency-free scatter: axes, one circle per point, optional text labels.
std::string scatter_svg(const std::vector<SvgPoint>& points, int width = 640,
                        int height = 480);

// Polyline over (k, value) with circles on detected peaks.
std::string profile_svg(const std::vector<double>& values, const std::vector<int>& peaks,
                        int width = 640, int height = 360);

}  // namespace percept
