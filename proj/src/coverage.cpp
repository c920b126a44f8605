#include "resinet/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace resinet {

Vec2 Bounds::clamp(const Vec2& p) const {
    return {std::clamp(p.x, xmin, xmax), std::clamp(p.y, ymin, ymax)};
}

void Workspace::validate() const {
    if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin))
        throw InputError("workspace: degenerate bounds");
    if (!(resolution > 0.0)) throw InputError("workspace: resolution must be positive");
    if (!(cover_radius > 0.0)) throw InputError("workspace: cover_radius must be positive");
}

namespace {

/// Number of cell centers xmin + (i + 1/2) h that lie inside [lo, hi].
long cell_count(double extent, double h) {
    const long n = static_cast<long>(std::floor(extent / h));
    // A trailing partial cell still counts if its center fits.
    return (static_cast<double>(n) + 0.5) * h <= extent ? n + 1 : n;
}

}  // namespace

double covered_area(std::span<const Vec2> positions, const Workspace& workspace) {
    if (positions.empty()) return 0.0;
    const Bounds& b = workspace.bounds;
    const double h = workspace.resolution;
    const double r = workspace.cover_radius;
    const long nx = cell_count(b.width(), h);
    const long ny = cell_count(b.height(), h);

    // Row-wise interval union: each disk covers a run of consecutive cell
    // columns on every row it crosses.
    std::vector<std::vector<std::pair<long, long>>> rows(static_cast<std::size_t>(ny));
    for (const Vec2& p : positions) {
        if (!p.finite()) throw InputError("covered_area: non-finite position");
        const long j_lo = std::max(0L, static_cast<long>(std::ceil((p.y - r - b.ymin) / h - 0.5)));
        const long j_hi = std::min(ny - 1, static_cast<long>(std::floor((p.y + r - b.ymin) / h - 0.5)));
        for (long j = j_lo; j <= j_hi; ++j) {
            const double cy = b.ymin + (static_cast<double>(j) + 0.5) * h;
            const double dy = cy - p.y;
            const double rem = r * r - dy * dy;
            if (rem < 0.0) continue;
            const double half = std::sqrt(rem);
            long i_lo = static_cast<long>(std::ceil((p.x - half - b.xmin) / h - 0.5));
            long i_hi = static_cast<long>(std::floor((p.x + half - b.xmin) / h - 0.5));
            i_lo = std::max(0L, i_lo);
            i_hi = std::min(nx - 1, i_hi);
            if (i_lo <= i_hi) rows[static_cast<std::size_t>(j)].emplace_back(i_lo, i_hi);
        }
    }

    long covered = 0;
    for (auto& runs : rows) {
        if (runs.empty()) continue;
        std::sort(runs.begin(), runs.end());
        long cur_lo = runs.front().first;
        long cur_hi = runs.front().second;
        for (std::size_t k = 1; k < runs.size(); ++k) {
            if (runs[k].first <= cur_hi + 1) {
                cur_hi = std::max(cur_hi, runs[k].second);
            } else {
                covered += cur_hi - cur_lo + 1;
                cur_lo = runs[k].first;
                cur_hi = runs[k].second;
            }
        }
        covered += cur_hi - cur_lo + 1;
    }
    return static_cast<double>(covered) * h * h;
}

}  // namespace resinet
