#pragma once

#include <span>

#include "resinet/types.hpp"

namespace resinet {

struct Bounds {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 1.0;
    double ymax = 1.0;

    [[nodiscard]] double width() const { return xmax - xmin; }
    [[nodiscard]] double height() const { return ymax - ymin; }
    [[nodiscard]] double area() const { return width() * height(); }
    [[nodiscard]] bool contains(const Vec2& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    [[nodiscard]] Vec2 clamp(const Vec2& p) const;
};

struct Workspace {
    Bounds bounds{0.0, 0.0, 5.0, 5.0};
    double cover_radius = 0.5;
    double resolution = 0.05;  ///< grid cell size h

    void validate() const;
};

/// Area of the union of sensing disks, clipped to the workspace: the number
/// of grid-cell centers within cover_radius of some robot, times h^2.
/// Cells of side h tile the bounds from (xmin, ymin); only centers inside the
/// bounds count.
double covered_area(std::span<const Vec2> positions, const Workspace& workspace);

}  // namespace resinet
