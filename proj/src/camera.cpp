#include "contrailmatch/camera.hpp"

#include <array>
#include <cmath>

namespace contrailmatch {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 rotate_z(const Vec3& v, double angle_rad) {
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    return {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
}

Vec3 rotate_x(const Vec3& v, double angle_rad) {
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    return {v[0], c * v[1] - s * v[2], s * v[1] + c * v[2]};
}

}  // namespace

std::optional<Vec2> project_altitude(const CameraModel& cam, double lat, double lon,
                                     double altitude_m) {
    const double east = (lon - cam.site.lon) * meters_per_deg_lon(cam.site.lat);
    const double north = (lat - cam.site.lat) * kMetersPerDegLat;
    const double up = altitude_m - cam.site_altitude_m;
    if (up <= 0.0) return std::nullopt;  // at or below the horizon

    // world ENU -> camera frame (inverse of yaw, pitch, roll camera pose)
    Vec3 v = {east, north, up};
    v = rotate_z(v, -deg2rad(cam.yaw_deg));
    v = rotate_x(v, -deg2rad(cam.pitch_deg));
    v = rotate_z(v, -deg2rad(cam.roll_deg));
    if (v[2] <= 0.0) return std::nullopt;  // behind the image plane

    const double planar = std::hypot(v[0], v[1]);
    const double theta = std::atan2(planar, v[2]);
    const double r = cam.projection == CameraProjection::kPinhole
                         ? cam.focal_px_per_rad * std::tan(theta)
                         : cam.focal_px_per_rad * theta;

    double px = cam.cx, py = cam.cy;
    if (planar > 0.0) {
        px += r * v[0] / planar;
        py -= r * v[1] / planar;
    }

    const double margin = cam.visibility_margin_px;
    if (r > cam.effective_fov_radius_px() + margin) return std::nullopt;
    if (px < -margin || px > cam.image_width + margin) return std::nullopt;
    if (py < -margin || py > cam.image_height + margin) return std::nullopt;
    return Vec2{px, py};
}

std::optional<Vec2> project(const CameraModel& cam, const GeoPoint& p) {
    return project_altitude(cam, p.lat, p.lon, pressure_to_altitude_m(p.pressure_hpa));
}

std::optional<PixelPolygon> project_polygon(const CameraModel& cam, const GeoRing& ring,
                                            double densify_step_m) {
    if (ring.size() < 3) return std::nullopt;

    GeoRing dense;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const GeoPoint& a = ring[i];
        const GeoPoint& b = ring[(i + 1) % n];
        dense.push_back(a);
        const double len = ground_distance_m(a, b);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / densify_step_m)));
        for (int k = 1; k < pieces; ++k) {
            const double f = static_cast<double>(k) / pieces;
            dense.push_back({a.lat + f * (b.lat - a.lat), a.lon + f * (b.lon - a.lon),
                             a.pressure_hpa + f * (b.pressure_hpa - a.pressure_hpa)});
        }
    }

    PixelPolygon pixels;
    pixels.reserve(dense.size());
    for (const auto& gp : dense)
        if (const auto px = project(cam, gp)) pixels.push_back(*px);
    if (pixels.size() < 3) return std::nullopt;
    return pixels;
}

}  // namespace contrailmatch
