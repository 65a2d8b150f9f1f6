#pragma once

#include <optional>

#include "contrailmatch/geo.hpp"
#include "contrailmatch/geometry.hpp"

namespace contrailmatch {

enum class CameraProjection {
    kEquidistantFisheye,  // r = f * theta
    kPinhole,             // r = f * tan(theta)
};

/// Ground camera, equidistant fisheye by default (r = f * theta); the
/// projection law is substitutable via `projection`.
///
/// With zero orientation the optical axis points at the zenith, east maps to
/// +x and north to -y (north up in the image). Positive yaw rotates the view
/// about the zenith so that world directions move clockwise in the image;
/// pitch tilts the axis about the camera's x axis; roll spins about the
/// optical axis. Points below the horizon, beyond the circular fisheye
/// footprint, or outside the image bounds plus the visibility margin are
/// invisible.
struct CameraModel {
    GeoPoint site;            // pressure_hpa unused; see site_altitude_m
    double site_altitude_m = 0.0;
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double roll_deg = 0.0;
    double focal_px_per_rad = 800.0;
    double cx = 800.0;
    double cy = 800.0;
    int image_width = 1600;
    int image_height = 1600;
    double visibility_margin_px = 50.0;
    double fov_radius_px = 0.0;  // 0 = min(width, height) / 2
    CameraProjection projection = CameraProjection::kEquidistantFisheye;

    double effective_fov_radius_px() const {
        return fov_radius_px > 0.0 ? fov_radius_px
                                   : 0.5 * std::min(image_width, image_height);
    }
};

/// Project a geographic point (isobaric altitude from the standard
/// atmosphere) to pixel coordinates; empty when invisible.
std::optional<Vec2> project(const CameraModel& cam, const GeoPoint& p);

/// Variant with an explicit geometric altitude.
std::optional<Vec2> project_altitude(const CameraModel& cam, double lat, double lon,
                                     double altitude_m);

/// Project a geographic ring after densifying its edges at <= densify_step_m
/// so fisheye curvature is captured. Invisible vertices are omitted; the
/// polygon is dropped entirely when fewer than three remain.
std::optional<PixelPolygon> project_polygon(const CameraModel& cam, const GeoRing& ring,
                                            double densify_step_m = 500.0);

}  // namespace contrailmatch
