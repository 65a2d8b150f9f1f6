#include "contrailmatch/advection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contrailmatch {

GeoPoint FlightTrack::position_at(double t) const {
    if (points.size() < 2) throw std::invalid_argument("flight track needs >= 2 points");
    if (t <= points.front().time) return points.front().position;
    if (t >= points.back().time) return points.back().position;
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](double value, const TrackPoint& p) { return value < p.time; });
    const TrackPoint& hi = *it;
    const TrackPoint& lo = *(it - 1);
    const double f = (t - lo.time) / (hi.time - lo.time);
    return {lo.position.lat + f * (hi.position.lat - lo.position.lat),
            lo.position.lon + f * (hi.position.lon - lo.position.lon),
            lo.position.pressure_hpa + f * (hi.position.pressure_hpa - lo.position.pressure_hpa)};
}

std::vector<Parcel> emit_parcels(const FlightTrack& track, double interval_s,
                                 std::optional<double> emit_from,
                                 std::optional<double> emit_until) {
    if (track.points.size() < 2)
        throw std::invalid_argument("emit_parcels: track needs >= 2 points");
    if (interval_s <= 0.0) throw std::invalid_argument("emit_parcels: interval must be > 0");

    const double t_start = track.start_time();
    const double t_end = track.end_time();
    double t0 = t_start;
    if (emit_from && *emit_from > t0) {
        // stay on the t_start + k*interval lattice
        const double k = std::ceil((*emit_from - t_start) / interval_s - 1e-9);
        t0 = t_start + k * interval_s;
    }
    const double t1 = emit_until ? std::min(*emit_until, t_end) : t_end;

    std::vector<Parcel> parcels;
    for (std::size_t k = 0;; ++k) {
        const double t = t0 + static_cast<double>(k) * interval_s;
        if (t > t1 + 1e-9) break;
        parcels.push_back({t, track.position_at(t)});
    }
    return parcels;
}

namespace {

struct IntegrationResult {
    GeoPoint position;
    bool left_domain = false;
};

IntegrationResult integrate_parcel(const Parcel& parcel, const MetGrid& grid,
                                   double step_s, double frame_time) {
    GeoPoint pos = parcel.position;
    double t = parcel.emission_time;
    while (t < frame_time - 1e-9) {
        const double dt = std::min(step_s, frame_time - t);
        const auto wind = try_sample_wind(grid, t, pos.pressure_hpa, pos.lat, pos.lon);
        if (!wind) return {pos, true};
        pos.lat += wind->v * dt / kMetersPerDegLat;
        pos.lon += wind->u * dt / meters_per_deg_lon(pos.lat);
        pos.pressure_hpa += wind->w * dt / 100.0;  // Pa/s -> hPa
        t += dt;
    }
    // the final position must still be inside the domain to count
    if (!grid.in_domain(frame_time, pos.pressure_hpa, pos.lat, pos.lon))
        return {pos, true};
    return {pos, false};
}

}  // namespace

TheoreticalContrail advect_plume(const std::string& flight_id,
                                 const std::vector<Parcel>& parcels,
                                 const MetGrid& grid, double step_s, double frame_time,
                                 double initial_width_m, double width_growth_m_per_s) {
    if (step_s <= 0.0) throw std::invalid_argument("advect_plume: step must be > 0");

    TheoreticalContrail plume;
    plume.flight_id = flight_id;
    plume.valid_at = frame_time;

    struct Advected {
        double emission_time;
        GeoPoint position;
        bool alive;
    };
    std::vector<Advected> advected;
    for (const auto& parcel : parcels) {
        if (parcel.emission_time > frame_time + 1e-9) continue;  // not emitted yet
        const IntegrationResult result = integrate_parcel(parcel, grid, step_s, frame_time);
        if (result.left_domain) {
            ++plume.dropped_parcels;
            advected.push_back({parcel.emission_time, result.position, false});
        } else {
            advected.push_back({parcel.emission_time, result.position, true});
        }
    }

    // segments between emission-adjacent surviving parcels
    for (std::size_t i = 0; i + 1 < advected.size(); ++i) {
        const auto& a = advected[i];
        const auto& b = advected[i + 1];
        if (!a.alive || !b.alive) continue;
        PlumeSegment seg;
        seg.formation_time = a.emission_time;
        seg.valid_at = frame_time;
        seg.center = {0.5 * (a.position.lat + b.position.lat),
                      0.5 * (a.position.lon + b.position.lon),
                      0.5 * (a.position.pressure_hpa + b.position.pressure_hpa)};
        seg.length_m = ground_distance_m(a.position, b.position);
        seg.orientation_deg = bearing_deg(a.position, b.position);
        const double age = frame_time - seg.formation_time;
        seg.width_m = initial_width_m + width_growth_m_per_s * age;
        plume.segments.push_back(seg);
    }
    return plume;
}

TheoreticalContrail theoretical_contrail(const FlightTrack& track, const MetGrid& grid,
                                         double frame_time, const AdvectionParams& params,
                                         std::optional<double> emit_from) {
    const auto parcels =
        emit_parcels(track, params.emission_interval_s, emit_from, frame_time);
    return advect_plume(track.flight_id, parcels, grid, params.step_s, frame_time,
                        params.initial_width_m, params.width_growth_m_per_s);
}

GeoRing segment_to_polygon(const PlumeSegment& seg, double min_length_m) {
    const double length = std::max(seg.length_m, min_length_m);
    const double half_len = 0.5 * length;
    const double half_wid = 0.5 * seg.width_m;
    const double theta = deg2rad(seg.orientation_deg);
    // unit vectors in meters: along the segment and perpendicular to it
    const double ax = std::sin(theta), ay = std::cos(theta);   // east, north
    const double px = std::cos(theta), py = -std::sin(theta);

    const double m_per_lon = meters_per_deg_lon(seg.center.lat);
    auto corner = [&](double s, double w) {
        const double east = s * ax + w * px;
        const double north = s * ay + w * py;
        return GeoPoint{seg.center.lat + north / kMetersPerDegLat,
                        seg.center.lon + east / m_per_lon, seg.center.pressure_hpa};
    };
    return {corner(-half_len, -half_wid), corner(half_len, -half_wid),
            corner(half_len, half_wid), corner(-half_len, half_wid)};
}

}  // namespace contrailmatch
