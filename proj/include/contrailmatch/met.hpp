#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace contrailmatch {

/// Sampled wind at a point. w is in Pa/s (positive = descending in pressure
/// coordinates, i.e. toward higher pressure).
struct WindVector {
    double u = 0.0;  // m/s east
    double v = 0.0;  // m/s north
    double w = 0.0;  // Pa/s
};

struct MetLoadOptions {
    double level_band_min_hpa = 200.0;
    double level_band_max_hpa = 300.0;
    // Queries may fall outside the grid by up to this fraction of the
    // adjacent cell before sampling fails; within the margin they clamp.
    double clamp_margin_cells = 0.5;
    // Interpolate the pressure axis in log(p) instead of hPa. The default is
    // linear: the 200-300 hPa band is narrow enough for it.
    bool log_pressure_interpolation = false;
};

/// 4D gridded met fields over (time, pressure level, lat, lon).
/// Immutable after load; safe for concurrent reads.
class MetGrid {
public:
    MetGrid(std::vector<double> times, std::vector<double> levels,
            std::vector<double> lats, std::vector<double> lons,
            std::vector<double> u_wind, std::vector<double> v_wind,
            std::vector<double> w_wind = {}, std::vector<double> temperature = {},
            std::vector<double> relative_humidity = {},
            MetLoadOptions opts = {});

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& levels() const { return levels_; }
    const std::vector<double>& lats() const { return lats_; }
    const std::vector<double>& lons() const { return lons_; }
    const std::vector<double>& u_wind() const { return u_; }
    const std::vector<double>& v_wind() const { return v_; }
    const std::vector<double>& w_wind() const { return w_; }
    const std::vector<double>& temperature() const { return temperature_; }
    bool has_temperature() const { return !temperature_.empty(); }

    std::size_t cell_count() const { return u_.size(); }
    const MetLoadOptions& options() const { return opts_; }

    /// True when (t, p, lat, lon) is inside the grid box extended by the
    /// clamp margin on every axis.
    bool in_domain(double t, double p_hpa, double lat, double lon) const;

private:
    friend WindVector sample_wind(const MetGrid&, double, double, double, double);
    friend std::optional<WindVector> try_sample_wind(const MetGrid&, double, double,
                                                     double, double);

    double interpolate(const std::vector<double>& field, double t, double p,
                       double lat, double lon) const;

    std::vector<double> times_, levels_, lats_, lons_;
    std::vector<double> u_, v_, w_, temperature_, humidity_;
    MetLoadOptions opts_;
};

/// Parse the self-describing met grid text format (see docs/formats.md).
MetGrid load_met_grid(const std::string& path, const MetLoadOptions& opts = {});
MetGrid parse_met_grid(std::istream& in, const MetLoadOptions& opts = {});

/// Serialize a grid back to the text format (used by the scenario generator).
std::string format_met_grid(const MetGrid& grid);

/// Quadrilinear interpolation of the wind fields. Queries within the clamp
/// margin of the box are clamped to the boundary; beyond it this throws
/// OutOfDomainError.
WindVector sample_wind(const MetGrid& grid, double t, double p_hpa, double lat,
                       double lon);

/// Non-throwing variant; empty when outside the clamp margin.
std::optional<WindVector> try_sample_wind(const MetGrid& grid, double t,
                                          double p_hpa, double lat, double lon);

}  // namespace contrailmatch
