#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contrailmatch/geo.hpp"
#include "contrailmatch/met.hpp"

namespace contrailmatch {

struct TrackPoint {
    double time = 0.0;  // epoch seconds
    GeoPoint position;
};

/// One candidate flight: time-ordered ADS-B positions plus metadata.
struct FlightTrack {
    std::string flight_id;
    std::vector<TrackPoint> points;  // strictly increasing in time, >= 2
    std::string callsign;
    std::string aircraft_type;

    double start_time() const { return points.front().time; }
    double end_time() const { return points.back().time; }

    /// Linear interpolation along the track (clamped to the endpoints).
    GeoPoint position_at(double t) const;
};

/// Exhaust parcel tagged with its emission time.
struct Parcel {
    double emission_time = 0.0;
    GeoPoint position;
};

/// One advected plume segment snapshot at `valid_at`.
struct PlumeSegment {
    double formation_time = 0.0;  // emission time of the earlier parcel
    GeoPoint center;
    double length_m = 0.0;
    double width_m = 0.0;
    double orientation_deg = 0.0;  // clockwise from north, [0, 360)
    double valid_at = 0.0;
};

/// Advected plume (theoretical contrail) of one flight at one frame time.
struct TheoreticalContrail {
    std::string flight_id;
    double valid_at = 0.0;
    std::vector<PlumeSegment> segments;  // formation times non-decreasing
    std::size_t dropped_parcels = 0;     // left the met domain during integration
};

struct AdvectionParams {
    double emission_interval_s = 10.0;
    double step_s = 30.0;
    double initial_width_m = 100.0;
    double width_growth_m_per_s = 0.5;
};

/// Emit parcels along the track at t_start, t_start+interval, ... <= t_end,
/// optionally restricted to [emit_from, emit_until].
std::vector<Parcel> emit_parcels(const FlightTrack& track, double interval_s,
                                 std::optional<double> emit_from = std::nullopt,
                                 std::optional<double> emit_until = std::nullopt);

/// Integrate each parcel from its emission time to frame_time with forward
/// Euler steps through the wind field; consecutive surviving parcels form
/// segments. Parcels drifting outside the met domain (beyond the clamp
/// margin) are dropped and counted, breaking the segment chain there.
TheoreticalContrail advect_plume(const std::string& flight_id,
                                 const std::vector<Parcel>& parcels,
                                 const MetGrid& grid, double step_s,
                                 double frame_time, double initial_width_m,
                                 double width_growth_m_per_s);

/// Convenience wrapper: emit along the track and advect to frame_time.
TheoreticalContrail theoretical_contrail(const FlightTrack& track, const MetGrid& grid,
                                         double frame_time, const AdvectionParams& params,
                                         std::optional<double> emit_from = std::nullopt);

/// Rectangle corners of a segment (long axis along its orientation).
/// Zero-length segments become width x epsilon rectangles so downstream
/// polygon handling stays total.
GeoRing segment_to_polygon(const PlumeSegment& seg, double min_length_m = 1.0);

}  // namespace contrailmatch
