#include "contrailmatch/met.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "contrailmatch/errors.hpp"

namespace contrailmatch {

namespace {

void check_axis(const std::vector<double>& axis, const std::string& name) {
    if (axis.size() < 2)
        throw LoadError("axis too short: " + name + " (need at least 2 points)");
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i]))
            throw LoadError("non-finite value in axis " + name + " at index " +
                            std::to_string(i));
        if (i > 0 && axis[i] <= axis[i - 1])
            throw LoadError("non-monotonic axis: " + name);
    }
}

void check_field(const std::vector<double>& field, std::size_t expected,
                 const std::string& name) {
    if (field.empty()) return;
    if (field.size() != expected)
        throw LoadError("field " + name + ": expected " + std::to_string(expected) +
                        " values, got " + std::to_string(field.size()));
    for (std::size_t i = 0; i < field.size(); ++i)
        if (!std::isfinite(field[i]))
            throw LoadError("non-finite value in field " + name + " at index " +
                            std::to_string(i));
}

struct AxisLocation {
    std::size_t lo = 0;  // lower bracketing index
    double frac = 0.0;   // fraction toward lo+1
};

// Locate and clamp a coordinate on one axis. Returns empty if the query is
// outside the axis by more than margin_cells of the adjacent cell.
std::optional<AxisLocation> locate(const std::vector<double>& axis, double x,
                                   double margin_cells) {
    const double lo_margin = margin_cells * (axis[1] - axis[0]);
    const double hi_margin = margin_cells * (axis[axis.size() - 1] - axis[axis.size() - 2]);
    if (x < axis.front() - lo_margin || x > axis.back() + hi_margin) return std::nullopt;
    const double clamped = std::clamp(x, axis.front(), axis.back());
    auto it = std::upper_bound(axis.begin(), axis.end(), clamped);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    if (hi == 0) hi = 1;
    if (hi == axis.size()) hi = axis.size() - 1;
    const std::size_t lo = hi - 1;
    const double frac = (clamped - axis[lo]) / (axis[hi] - axis[lo]);
    return AxisLocation{lo, frac};
}

}  // namespace

MetGrid::MetGrid(std::vector<double> times, std::vector<double> levels,
                 std::vector<double> lats, std::vector<double> lons,
                 std::vector<double> u_wind, std::vector<double> v_wind,
                 std::vector<double> w_wind, std::vector<double> temperature,
                 std::vector<double> relative_humidity, MetLoadOptions opts)
    : times_(std::move(times)),
      levels_(std::move(levels)),
      lats_(std::move(lats)),
      lons_(std::move(lons)),
      u_(std::move(u_wind)),
      v_(std::move(v_wind)),
      w_(std::move(w_wind)),
      temperature_(std::move(temperature)),
      humidity_(std::move(relative_humidity)),
      opts_(opts) {
    check_axis(times_, "times");
    check_axis(levels_, "levels");
    check_axis(lats_, "lats");
    check_axis(lons_, "lons");

    for (double level : levels_)
        if (level < opts_.level_band_min_hpa || level > opts_.level_band_max_hpa)
            throw LoadError("level " + std::to_string(level) +
                            " outside configured band [" +
                            std::to_string(opts_.level_band_min_hpa) + ", " +
                            std::to_string(opts_.level_band_max_hpa) + "]");

    const std::size_t n = times_.size() * levels_.size() * lats_.size() * lons_.size();
    if (u_.size() != n)
        throw LoadError("field u_wind: expected " + std::to_string(n) +
                        " values, got " + std::to_string(u_.size()));
    check_field(u_, n, "u_wind");
    check_field(v_, n, "v_wind");
    if (v_.size() != n)
        throw LoadError("field v_wind: expected " + std::to_string(n) +
                        " values, got " + std::to_string(v_.size()));
    check_field(w_, n, "w_wind");
    check_field(temperature_, n, "temperature");
    check_field(humidity_, n, "relative_humidity");
    if (w_.empty()) w_.assign(n, 0.0);  // w optional, defaults to no vertical motion
}

bool MetGrid::in_domain(double t, double p_hpa, double lat, double lon) const {
    const double m = opts_.clamp_margin_cells;
    return locate(times_, t, m) && locate(levels_, p_hpa, m) &&
           locate(lats_, lat, m) && locate(lons_, lon, m);
}

double MetGrid::interpolate(const std::vector<double>& field, double t, double p,
                            double lat, double lon) const {
    const double m = opts_.clamp_margin_cells;
    const auto lt = locate(times_, t, m);
    auto lp = locate(levels_, p, m);
    if (lp && opts_.log_pressure_interpolation && lp->frac > 0.0 && lp->frac < 1.0) {
        const double lo = levels_[lp->lo], hi = levels_[lp->lo + 1];
        lp->frac = (std::log(lo + lp->frac * (hi - lo)) - std::log(lo)) /
                   (std::log(hi) - std::log(lo));
    }
    const auto ly = locate(lats_, lat, m);
    const auto lx = locate(lons_, lon, m);
    if (!lt || !lp || !ly || !lx) {
        std::ostringstream oss;
        oss << "met query out of domain: t=" << t << " p=" << p << " lat=" << lat
            << " lon=" << lon;
        throw OutOfDomainError(oss.str());
    }

    const std::size_t nl = levels_.size(), ny = lats_.size(), nx = lons_.size();
    const std::array<AxisLocation, 4> loc = {*lt, *lp, *ly, *lx};
    double value = 0.0;
    for (int corner = 0; corner < 16; ++corner) {
        double weight = 1.0;
        std::size_t idx[4];
        for (int axis = 0; axis < 4; ++axis) {
            const bool upper = (corner >> axis) & 1;
            weight *= upper ? loc[axis].frac : 1.0 - loc[axis].frac;
            idx[axis] = loc[axis].lo + (upper ? 1 : 0);
        }
        if (weight == 0.0) continue;
        const std::size_t flat = ((idx[0] * nl + idx[1]) * ny + idx[2]) * nx + idx[3];
        value += weight * field[flat];
    }
    return value;
}

WindVector sample_wind(const MetGrid& grid, double t, double p_hpa, double lat,
                       double lon) {
    return {grid.interpolate(grid.u_, t, p_hpa, lat, lon),
            grid.interpolate(grid.v_, t, p_hpa, lat, lon),
            grid.interpolate(grid.w_, t, p_hpa, lat, lon)};
}

std::optional<WindVector> try_sample_wind(const MetGrid& grid, double t,
                                          double p_hpa, double lat, double lon) {
    if (!grid.in_domain(t, p_hpa, lat, lon)) return std::nullopt;
    return sample_wind(grid, t, p_hpa, lat, lon);
}

namespace {

const char* kMagic = "CONTRAIL-MET";

std::vector<double> read_values(std::istream& in, std::size_t count,
                                const std::string& field) {
    std::vector<double> values;
    values.reserve(count);
    double v = 0.0;
    while (values.size() < count && in >> v) values.push_back(v);
    if (values.size() != count)
        throw LoadError("field " + field + ": expected " + std::to_string(count) +
                        " values, got " + std::to_string(values.size()));
    return values;
}

}  // namespace

MetGrid parse_met_grid(std::istream& in, const MetLoadOptions& opts) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic)
        throw LoadError("malformed met header: expected '" + std::string(kMagic) +
                        " <version>'");
    if (version != 1)
        throw LoadError("unsupported met format version " + std::to_string(version));
    std::string line;
    std::getline(in, line);  // rest of magic line
    if (!std::getline(in, line)) throw LoadError("malformed met header: missing JSON line");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("malformed met header: ") + e.what());
    }

    auto axis = [&](const char* name) {
        if (!header.contains(name))
            throw LoadError(std::string("malformed met header: missing axis ") + name);
        return header.at(name).get<std::vector<double>>();
    };
    const auto times = axis("times");
    const auto levels = axis("levels");
    const auto lats = axis("lats");
    const auto lons = axis("lons");
    if (!header.contains("fields"))
        throw LoadError("malformed met header: missing field list");
    const auto fields = header.at("fields").get<std::vector<std::string>>();

    const std::size_t n = times.size() * levels.size() * lats.size() * lons.size();
    std::vector<double> u, v, w, temperature, humidity;
    bool have_u = false, have_v = false;
    for (const auto& expected : fields) {
        std::string tag, name;
        if (!(in >> tag >> name) || tag != "field" || name != expected)
            throw LoadError("malformed met file: expected block 'field " + expected + "'");
        auto values = read_values(in, n, name);
        if (name == "u_wind") {
            u = std::move(values);
            have_u = true;
        } else if (name == "v_wind") {
            v = std::move(values);
            have_v = true;
        } else if (name == "w_wind") {
            w = std::move(values);
        } else if (name == "temperature") {
            temperature = std::move(values);
        } else if (name == "relative_humidity") {
            humidity = std::move(values);
        } else {
            throw LoadError("unknown met field: " + name);
        }
    }
    if (!have_u || !have_v) throw LoadError("met file must provide u_wind and v_wind");

    return MetGrid(times, levels, lats, lons, std::move(u), std::move(v), std::move(w),
                   std::move(temperature), std::move(humidity), opts);
}

MetGrid load_met_grid(const std::string& path, const MetLoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open met file: " + path);
    try {
        return parse_met_grid(in, opts);
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

std::string format_met_grid(const MetGrid& grid) {
    nlohmann::json header;
    header["times"] = grid.times();
    header["levels"] = grid.levels();
    header["lats"] = grid.lats();
    header["lons"] = grid.lons();
    std::vector<std::string> fields = {"u_wind", "v_wind", "w_wind"};
    if (grid.has_temperature()) fields.push_back("temperature");
    header["fields"] = fields;

    std::ostringstream out;
    out.precision(17);
    out << kMagic << " 1\n" << header.dump() << "\n";
    auto block = [&](const char* name, const std::vector<double>& values) {
        out << "field " << name << "\n";
        for (std::size_t i = 0; i < values.size(); ++i)
            out << values[i] << ((i + 1) % 8 == 0 || i + 1 == values.size() ? '\n' : ' ');
    };
    block("u_wind", grid.u_wind());
    block("v_wind", grid.v_wind());
    block("w_wind", grid.w_wind());
    if (grid.has_temperature()) block("temperature", grid.temperature());
    return out.str();
}

}  // namespace contrailmatch
