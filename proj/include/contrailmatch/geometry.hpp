#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace contrailmatch {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

/// Polygon ring in pixel coordinates (closing edge implied).
using PixelPolygon = std::vector<Vec2>;
using MultiPolygon = std::vector<PixelPolygon>;

/// Ordered pixel-space path; sub-pixel coordinates allowed.
struct Polyline {
    std::vector<Vec2> points;
};

/// Row-major boolean grid.
class PixelMask {
public:
    PixelMask() = default;
    PixelMask(int width, int height) : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * height, 0) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool at(int x, int y) const {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
        return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool value) {
        bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
    }
    std::size_t count() const;
    const std::vector<std::uint8_t>& bits() const { return bits_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// 8-connected skeleton pixel graph; edge weights are 1 or sqrt(2).
struct PixelGraph {
    struct Pixel {
        int x = 0;
        int y = 0;
    };
    struct Edge {
        std::size_t a = 0;
        std::size_t b = 0;
        double weight = 0.0;
    };
    std::vector<Pixel> nodes;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> adjacency;  // node -> incident edge indices
};

inline constexpr double kInfDistance = std::numeric_limits<double>::infinity();

/// Even-odd rasterization: a pixel is set when its center lies inside any
/// polygon of the multipolygon. Clipped to dims.
PixelMask rasterize(const MultiPolygon& polygons, int width, int height);

/// Point-in-polygon, even-odd rule.
bool point_in_polygon(const Vec2& p, const PixelPolygon& polygon);
bool point_in_any_polygon(const Vec2& p, const MultiPolygon& polygons);

/// Zhang-Suen iterative thinning, run to idempotence. Output is a subset of
/// the input with no 2x2 all-true block.
PixelMask thin(const PixelMask& mask);

PixelGraph skeleton_to_graph(const PixelMask& mask);

/// Maximum-weight simple path over all components. Exact on trees and on
/// components whose cycle space has at most `max_extra_edges` edges beyond a
/// spanning tree; double-sweep heuristic otherwise. Ties between equal-weight
/// paths break toward the lexicographically smallest endpoint pixel pair.
/// Throws std::invalid_argument on an empty graph.
Polyline longest_path(const PixelGraph& graph, int max_extra_edges = 4);

/// Directed Hausdorff distance from the sampled polylines to the filled
/// region covered by `region` (zero for samples inside a polygon). Samples
/// are polyline vertices plus points every `sample_step_px` along segments.
/// Returns +inf for an empty region, or as soon as the running maximum
/// exceeds `early_exit_above` (when finite).
double directed_hausdorff(const std::vector<Polyline>& lines, const MultiPolygon& region,
                          double sample_step_px = 2.0,
                          double early_exit_above = kInfDistance);

/// Intersection over union of rasterized multipolygons; 0 when the union is empty.
double iou(const MultiPolygon& a, const MultiPolygon& b, int width, int height);

/// Annotation polygons to centerline polylines: each polygon is rasterized
/// (over a padded bounding box), thinned and reduced to its longest skeleton
/// path independently. Polygons too small to rasterize contribute nothing.
std::vector<Polyline> extract_centerlines(const MultiPolygon& polygons, int width,
                                          int height);

}  // namespace contrailmatch
