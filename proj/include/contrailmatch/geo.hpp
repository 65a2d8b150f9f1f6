#pragma once

#include <cmath>
#include <vector>

namespace contrailmatch {

inline constexpr double kPi = 3.14159265358979323846;

// Local spherical scaling; sub-kilometre accuracy is plenty at plume scales.
inline constexpr double kMetersPerDegLat = 111320.0;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double meters_per_deg_lon(double lat_deg) {
    return kMetersPerDegLat * std::cos(deg2rad(lat_deg));
}

/// A geographic position at an isobaric level.
struct GeoPoint {
    double lat = 0.0;           // degrees north
    double lon = 0.0;           // degrees east
    double pressure_hpa = 0.0;  // vertical coordinate
};

/// Closed geographic ring (last->first edge implied).
using GeoRing = std::vector<GeoPoint>;

struct EnuOffset {
    double east_m = 0.0;
    double north_m = 0.0;
};

/// East/north offset in meters from `from` to `to`, scaled at the mid latitude.
inline EnuOffset enu_offset(const GeoPoint& from, const GeoPoint& to) {
    const double mid_lat = 0.5 * (from.lat + to.lat);
    return {(to.lon - from.lon) * meters_per_deg_lon(mid_lat),
            (to.lat - from.lat) * kMetersPerDegLat};
}

inline double ground_distance_m(const GeoPoint& a, const GeoPoint& b) {
    const EnuOffset d = enu_offset(a, b);
    return std::hypot(d.east_m, d.north_m);
}

/// Bearing from `from` to `to` in degrees clockwise from north, in [0, 360).
inline double bearing_deg(const GeoPoint& from, const GeoPoint& to) {
    const EnuOffset d = enu_offset(from, to);
    double deg = rad2deg(std::atan2(d.east_m, d.north_m));
    if (deg < 0.0) deg += 360.0;
    if (deg >= 360.0) deg -= 360.0;
    return deg;
}

// ICAO standard atmosphere, valid through the lower stratosphere (<= 20 km).
namespace isa {
inline constexpr double kSeaLevelPressureHpa = 1013.25;
inline constexpr double kSeaLevelTempK = 288.15;
inline constexpr double kLapseRateKPerM = 0.0065;
inline constexpr double kGravity = 9.80665;
inline constexpr double kGasConstant = 287.05287;
inline constexpr double kTropopauseAltM = 11000.0;
inline constexpr double kTropopauseTempK = 216.65;

inline double tropopause_pressure_hpa() {
    return kSeaLevelPressureHpa *
           std::pow(kTropopauseTempK / kSeaLevelTempK,
                    kGravity / (kGasConstant * kLapseRateKPerM));
}
}  // namespace isa

inline double pressure_to_altitude_m(double pressure_hpa) {
    const double p_trop = isa::tropopause_pressure_hpa();
    if (pressure_hpa >= p_trop) {
        const double exponent = isa::kGasConstant * isa::kLapseRateKPerM / isa::kGravity;
        return (isa::kSeaLevelTempK / isa::kLapseRateKPerM) *
               (1.0 - std::pow(pressure_hpa / isa::kSeaLevelPressureHpa, exponent));
    }
    return isa::kTropopauseAltM +
           (isa::kGasConstant * isa::kTropopauseTempK / isa::kGravity) *
               std::log(p_trop / pressure_hpa);
}

inline double altitude_to_pressure_hpa(double altitude_m) {
    if (altitude_m <= isa::kTropopauseAltM) {
        const double temp = isa::kSeaLevelTempK - isa::kLapseRateKPerM * altitude_m;
        return isa::kSeaLevelPressureHpa *
               std::pow(temp / isa::kSeaLevelTempK,
                        isa::kGravity / (isa::kGasConstant * isa::kLapseRateKPerM));
    }
    return isa::tropopause_pressure_hpa() *
           std::exp(-isa::kGravity * (altitude_m - isa::kTropopauseAltM) /
                    (isa::kGasConstant * isa::kTropopauseTempK));
}

}  // namespace contrailmatch
