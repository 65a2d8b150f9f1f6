#include "contrailmatch/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "contrailmatch/errors.hpp"

namespace contrailmatch {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

void write_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot write file: " + path);
    out << content;
}

std::string format_double(double value, int precision) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
    return buf;
}

ContrailStatus parse_status(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (text == "new") return ContrailStatus::kNew;
    if (text == "old") return ContrailStatus::kOld;
    throw LoadError("unknown contrail status: " + text);
}

// ---------------------------------------------------------------------------
// annotations

std::map<std::string, double> AnnotationSet::formation_times() const {
    std::map<std::string, double> first_seen;
    for (const auto& frame : frames)
        for (const auto& c : frame.contrails)
            first_seen.try_emplace(c.id, frame.frame_time);
    return first_seen;
}

namespace {

// Proper crossing test between segments ab and cd (shared endpoints allowed).
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool self_intersects(const PixelPolygon& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent
            if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                return true;
        }
    }
    return false;
}

// Repair attempt: drop repeated consecutive vertices and an explicit closing
// vertex; reject what remains degenerate or self-crossing.
PixelPolygon validate_polygon(PixelPolygon poly, const std::string& where) {
    PixelPolygon cleaned;
    for (const auto& v : poly) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw LoadError(where + ": non-finite polygon vertex");
        if (cleaned.empty() || !(cleaned.back() == v)) cleaned.push_back(v);
    }
    if (cleaned.size() >= 2 && cleaned.front() == cleaned.back()) cleaned.pop_back();
    if (cleaned.size() < 3) throw LoadError(where + ": degenerate polygon");
    if (self_intersects(cleaned)) throw LoadError(where + ": self-intersecting polygon");
    return cleaned;
}

}  // namespace

AnnotationSet parse_annotations(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(std::string("malformed annotation JSON: ") + e.what());
    }
    if (doc.value("format_version", 0) != 1)
        throw LoadError("annotations: unsupported or missing format_version");

    AnnotationSet set;
    double prev_time = -kInfDistance;
    for (const auto& jframe : doc.at("frames")) {
        FrameAnnotations frame;
        frame.frame_time = jframe.at("frame_time").get<double>();
        if (frame.frame_time <= prev_time)
            throw LoadError("annotations: non-monotone frame times at t=" +
                            format_double(frame.frame_time, 3));
        prev_time = frame.frame_time;

        for (const auto& jc : jframe.at("contrails")) {
            ContrailAnnotation c;
            c.id = jc.at("id").get<std::string>();
            c.status = parse_status(jc.at("status").get<std::string>());
            if (jc.contains("flight_id") && !jc.at("flight_id").is_null())
                c.flight_id = jc.at("flight_id").get<std::string>();
            const std::string where =
                "contrail " + c.id + " at t=" + format_double(frame.frame_time, 3);
            for (const auto& jpoly : jc.at("polygons")) {
                PixelPolygon poly;
                for (const auto& jv : jpoly)
                    poly.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
                c.polygons.push_back(validate_polygon(std::move(poly), where));
            }
            if (c.polygons.empty()) throw LoadError(where + ": contrail with no polygons");
            for (const auto& other : frame.contrails)
                if (other.id == c.id)
                    throw LoadError("duplicate contrail id in frame t=" +
                                    format_double(frame.frame_time, 3) + ": " + c.id);
            frame.contrails.push_back(std::move(c));
        }
        set.frames.push_back(std::move(frame));
    }
    return set;
}

AnnotationSet load_annotations(const std::string& path) {
    try {
        return parse_annotations(read_file(path));
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

std::string format_annotations(const AnnotationSet& set) {
    json doc;
    doc["format_version"] = 1;
    doc["frames"] = json::array();
    for (const auto& frame : set.frames) {
        json jframe;
        jframe["frame_time"] = frame.frame_time;
        jframe["contrails"] = json::array();
        for (const auto& c : frame.contrails) {
            json jc;
            jc["id"] = c.id;
            jc["status"] = c.status == ContrailStatus::kNew ? "new" : "old";
            if (c.flight_id) jc["flight_id"] = *c.flight_id;
            jc["polygons"] = json::array();
            for (const auto& poly : c.polygons) {
                json jpoly = json::array();
                for (const auto& v : poly) jpoly.push_back({v.x, v.y});
                jc["polygons"].push_back(jpoly);
            }
            jframe["contrails"].push_back(jc);
        }
        doc["frames"].push_back(jframe);
    }
    return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// flights (delimiter-separated text, header row)

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    out.push_back(field);
    return out;
}

double parse_number(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw LoadError("invalid number for " + what + ": '" + s + "'");
    }
}

}  // namespace

std::vector<FlightTrack> parse_flights(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::map<std::string, int> columns;
    std::map<std::string, FlightTrack> tracks;  // ordered by flight id
    std::size_t line_no = 0;

    auto column = [&](const char* name) -> int {
        auto it = columns.find(name);
        return it == columns.end() ? -1 : it->second;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv(line);
        if (!header_seen) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                columns[fields[i]] = static_cast<int>(i);
            for (const char* required : {"flight_id", "time", "lat", "lon"})
                if (column(required) < 0)
                    throw LoadError(std::string("flights: missing column ") + required);
            if (column("pressure_hpa") < 0 && column("altitude_m") < 0)
                throw LoadError("flights: need a pressure_hpa or altitude_m column");
            header_seen = true;
            continue;
        }
        auto field = [&](const char* name) -> std::string {
            const int idx = column(name);
            if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) return "";
            return fields[idx];
        };
        const std::string where = "flights line " + std::to_string(line_no);

        TrackPoint pt;
        pt.time = parse_number(field("time"), where + " time");
        pt.position.lat = parse_number(field("lat"), where + " lat");
        pt.position.lon = parse_number(field("lon"), where + " lon");
        const std::string pressure = field("pressure_hpa");
        const std::string altitude = field("altitude_m");
        if (!pressure.empty())
            pt.position.pressure_hpa = parse_number(pressure, where + " pressure");
        else if (!altitude.empty())
            pt.position.pressure_hpa =
                altitude_to_pressure_hpa(parse_number(altitude, where + " altitude"));
        else
            throw LoadError(where + ": point has neither pressure_hpa nor altitude_m");
        if (!std::isfinite(pt.position.lat) || !std::isfinite(pt.position.lon) ||
            !std::isfinite(pt.position.pressure_hpa))
            throw LoadError(where + ": non-finite coordinate");

        const std::string id = field("flight_id");
        if (id.empty()) throw LoadError(where + ": empty flight_id");
        auto& track = tracks[id];
        track.flight_id = id;
        if (track.callsign.empty()) track.callsign = field("callsign");
        if (track.aircraft_type.empty()) track.aircraft_type = field("aircraft_type");
        track.points.push_back(pt);
    }
    if (!header_seen) throw LoadError("flights: missing header row");

    std::vector<FlightTrack> out;
    for (auto& [id, track] : tracks) {
        std::stable_sort(track.points.begin(), track.points.end(),
                         [](const TrackPoint& a, const TrackPoint& b) { return a.time < b.time; });
        // duplicate timestamps: keep the first occurrence
        track.points.erase(std::unique(track.points.begin(), track.points.end(),
                                       [](const TrackPoint& a, const TrackPoint& b) {
                                           return a.time == b.time;
                                       }),
                           track.points.end());
        if (track.points.size() < 2)
            throw LoadError("flights: track " + id + " has fewer than 2 usable points");
        out.push_back(std::move(track));
    }
    return out;
}

std::vector<FlightTrack> load_flights(const std::string& path) {
    try {
        return parse_flights(read_file(path));
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

std::string format_flights(const std::vector<FlightTrack>& tracks) {
    std::ostringstream out;
    out << "# contrail-flights 1\n";
    out << "flight_id,time,lat,lon,pressure_hpa,altitude_m,callsign,aircraft_type\n";
    for (const auto& track : tracks)
        for (const auto& pt : track.points)
            out << track.flight_id << ',' << format_double(pt.time, 3) << ','
                << format_double(pt.position.lat, 8) << ','
                << format_double(pt.position.lon, 8) << ','
                << format_double(pt.position.pressure_hpa, 4) << ",,"
                << track.callsign << ',' << track.aircraft_type << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// camera

CameraModel parse_camera(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(std::string("malformed camera JSON: ") + e.what());
    }
    if (doc.value("format_version", 0) != 1)
        throw LoadError("camera: unsupported or missing format_version");

    CameraModel cam;
    const auto& site = doc.at("site");
    cam.site.lat = site.at("lat").get<double>();
    cam.site.lon = site.at("lon").get<double>();
    cam.site_altitude_m = site.value("altitude_m", 0.0);
    if (doc.contains("orientation")) {
        const auto& o = doc.at("orientation");
        cam.yaw_deg = o.value("yaw_deg", 0.0);
        cam.pitch_deg = o.value("pitch_deg", 0.0);
        cam.roll_deg = o.value("roll_deg", 0.0);
    }
    cam.focal_px_per_rad = doc.at("focal_px_per_rad").get<double>();
    cam.cx = doc.at("principal_point").at(0).get<double>();
    cam.cy = doc.at("principal_point").at(1).get<double>();
    cam.image_width = doc.at("image_size").at(0).get<int>();
    cam.image_height = doc.at("image_size").at(1).get<int>();
    cam.visibility_margin_px = doc.value("visibility_margin_px", 50.0);
    cam.fov_radius_px = doc.value("fov_radius_px", 0.0);
    const std::string projection = doc.value("projection", std::string("equidistant"));
    if (projection == "equidistant")
        cam.projection = CameraProjection::kEquidistantFisheye;
    else if (projection == "pinhole")
        cam.projection = CameraProjection::kPinhole;
    else
        throw LoadError("camera: unknown projection: " + projection);

    if (cam.focal_px_per_rad <= 0) throw LoadError("camera: focal scale must be > 0");
    if (cam.image_width <= 0 || cam.image_height <= 0)
        throw LoadError("camera: image dimensions must be positive");
    if (cam.cx < 0 || cam.cx > cam.image_width || cam.cy < 0 || cam.cy > cam.image_height)
        throw LoadError("camera: principal point outside the image");
    return cam;
}

CameraModel load_camera(const std::string& path) {
    try {
        return parse_camera(read_file(path));
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

std::string format_camera(const CameraModel& cam) {
    json doc;
    doc["format_version"] = 1;
    doc["site"] = {{"lat", cam.site.lat}, {"lon", cam.site.lon}, {"altitude_m", cam.site_altitude_m}};
    doc["orientation"] = {{"yaw_deg", cam.yaw_deg},
                          {"pitch_deg", cam.pitch_deg},
                          {"roll_deg", cam.roll_deg}};
    doc["focal_px_per_rad"] = cam.focal_px_per_rad;
    doc["principal_point"] = {cam.cx, cam.cy};
    doc["image_size"] = {cam.image_width, cam.image_height};
    doc["visibility_margin_px"] = cam.visibility_margin_px;
    if (cam.fov_radius_px > 0) doc["fov_radius_px"] = cam.fov_radius_px;
    doc["projection"] =
        cam.projection == CameraProjection::kPinhole ? "pinhole" : "equidistant";
    return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// run config

namespace {

std::string resolve_path(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty()) return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(std::string("malformed config JSON: ") + e.what());
    }
    if (doc.value("format_version", 0) != 1)
        throw LoadError("config: unsupported or missing format_version");

    RunConfig cfg;
    const auto& paths = doc.at("paths");
    cfg.annotations_path = resolve_path(base_dir, paths.at("annotations").get<std::string>());
    cfg.flights_path = resolve_path(base_dir, paths.at("flights").get<std::string>());
    cfg.met_path = resolve_path(base_dir, paths.at("met").get<std::string>());
    if (paths.contains("camera"))
        cfg.camera_path = resolve_path(base_dir, paths.at("camera").get<std::string>());
    if (doc.contains("camera")) cfg.camera = parse_camera(doc.at("camera").dump());
    if (!cfg.camera && cfg.camera_path.empty())
        throw LoadError("config: need either paths.camera or an inline camera block");

    if (doc.contains("match")) {
        const auto& m = doc.at("match");
        cfg.match.dt_before_s = m.value("dt_before_s", cfg.match.dt_before_s);
        cfg.match.dt_after_s = m.value("dt_after_s", cfg.match.dt_after_s);
        cfg.match.tau_d_px = m.value("tau_d_px", cfg.match.tau_d_px);
        cfg.match.alpha = m.value("alpha", cfg.match.alpha);
        cfg.match.beta = m.value("beta", cfg.match.beta);
        cfg.match.tau_p = m.value("tau_p", cfg.match.tau_p);
        cfg.match.d_cap_px = m.value("d_cap_px", cfg.match.tau_d_px);
        cfg.match.hausdorff_sample_px =
            m.value("hausdorff_sample_px", cfg.match.hausdorff_sample_px);
        if (m.contains("normalization")) {
            const auto mode = m.at("normalization").get<std::string>();
            if (mode == "row")
                cfg.match.normalization = Normalization::kRow;
            else if (mode == "global")
                cfg.match.normalization = Normalization::kGlobal;
            else
                throw LoadError("config: unknown normalization: " + mode);
        }
        if (m.contains("assignment")) {
            const auto method = m.at("assignment").get<std::string>();
            if (method == "greedy")
                cfg.match.assignment = AssignmentMethod::kGreedy;
            else if (method == "hungarian")
                cfg.match.assignment = AssignmentMethod::kHungarian;
            else
                throw LoadError("config: unknown assignment method: " + method);
        }
    } else {
        cfg.match.d_cap_px = cfg.match.tau_d_px;
    }
    if (cfg.match.alpha < 0 || cfg.match.alpha > 1)
        throw LoadError("config: alpha must be in [0, 1]");
    if (cfg.match.beta <= 0) throw LoadError("config: beta must be > 0");
    if (cfg.match.tau_p < 0 || cfg.match.tau_p > 1)
        throw LoadError("config: tau_p must be in [0, 1]");

    if (doc.contains("advection")) {
        const auto& a = doc.at("advection");
        cfg.advection.emission_interval_s =
            a.value("emission_interval_s", cfg.advection.emission_interval_s);
        cfg.advection.step_s = a.value("step_s", cfg.advection.step_s);
        cfg.advection.initial_width_m = a.value("initial_width_m", cfg.advection.initial_width_m);
        cfg.advection.width_growth_m_per_s =
            a.value("width_growth_m_per_s", cfg.advection.width_growth_m_per_s);
    }
    if (doc.contains("met") && doc.at("met").contains("level_band_hpa")) {
        cfg.met_level_band_min_hpa = doc.at("met").at("level_band_hpa").at(0).get<double>();
        cfg.met_level_band_max_hpa = doc.at("met").at("level_band_hpa").at(1).get<double>();
    }
    cfg.candidate_radius_km = doc.value("candidate_radius_km", cfg.candidate_radius_km);
    if (doc.contains("evaluation_points")) {
        cfg.evaluation_points.clear();
        for (const auto& jp : doc.at("evaluation_points")) {
            const auto point = jp.get<std::string>();
            if (point == "first")
                cfg.evaluation_points.push_back(EvaluationPoint::kFirst);
            else if (point == "last")
                cfg.evaluation_points.push_back(EvaluationPoint::kLast);
            else
                throw LoadError("config: unknown evaluation point: " + point);
        }
    }
    if (doc.contains("output_dir"))
        cfg.output_dir = resolve_path(base_dir, doc.at("output_dir").get<std::string>());
    cfg.emit_overlays = doc.value("emit_overlays", false);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    try {
        const auto base = std::filesystem::path(path).parent_path().string();
        return parse_run_config(read_file(path), base);
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

std::string format_run_config(const RunConfig& cfg) {
    json doc;
    doc["format_version"] = 1;
    doc["paths"] = {{"annotations", cfg.annotations_path},
                    {"flights", cfg.flights_path},
                    {"met", cfg.met_path}};
    if (!cfg.camera_path.empty()) doc["paths"]["camera"] = cfg.camera_path;
    if (cfg.camera) doc["camera"] = json::parse(format_camera(*cfg.camera));
    doc["match"] = {
        {"dt_before_s", cfg.match.dt_before_s},
        {"dt_after_s", cfg.match.dt_after_s},
        {"tau_d_px", cfg.match.tau_d_px},
        {"alpha", cfg.match.alpha},
        {"beta", cfg.match.beta},
        {"tau_p", cfg.match.tau_p},
        {"d_cap_px", cfg.match.d_cap_px},
        {"hausdorff_sample_px", cfg.match.hausdorff_sample_px},
        {"normalization", cfg.match.normalization == Normalization::kRow ? "row" : "global"},
        {"assignment",
         cfg.match.assignment == AssignmentMethod::kGreedy ? "greedy" : "hungarian"},
    };
    doc["advection"] = {
        {"emission_interval_s", cfg.advection.emission_interval_s},
        {"step_s", cfg.advection.step_s},
        {"initial_width_m", cfg.advection.initial_width_m},
        {"width_growth_m_per_s", cfg.advection.width_growth_m_per_s},
    };
    doc["met"] = {{"level_band_hpa", {cfg.met_level_band_min_hpa, cfg.met_level_band_max_hpa}}};
    doc["candidate_radius_km"] = cfg.candidate_radius_km;
    json points = json::array();
    for (const auto point : cfg.evaluation_points)
        points.push_back(point == EvaluationPoint::kFirst ? "first" : "last");
    doc["evaluation_points"] = points;
    doc["output_dir"] = cfg.output_dir;
    doc["emit_overlays"] = cfg.emit_overlays;
    return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// attribution records

std::string format_records(const std::vector<AttributionRecord>& records) {
    std::ostringstream out;
    out << "# contrail-records 1\n";
    out << "frame_time,contrail_id,assigned_flight_id,probability,aggregated_distance,raw_distance\n";
    for (const auto& rec : records) {
        out << format_double(rec.frame_time, 3) << ',' << rec.contrail_id << ',';
        if (rec.flight_id)
            out << *rec.flight_id << ',' << format_double(rec.probability, 9) << ','
                << format_double(rec.aggregated_distance, 6) << ','
                << format_double(rec.raw_distance, 6);
        else
            out << ",,,";
        out << '\n';
    }
    return out.str();
}

std::vector<AttributionRecord> parse_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<AttributionRecord> out;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // fixed column order
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 6)
            throw LoadError("records line " + std::to_string(line_no) + ": expected 6 fields");
        AttributionRecord rec;
        rec.frame_time = parse_number(fields[0], "frame_time");
        rec.contrail_id = fields[1];
        if (!fields[2].empty()) {
            rec.flight_id = fields[2];
            rec.probability = parse_number(fields[3], "probability");
            rec.aggregated_distance =
                fields[4] == "inf" ? kInfDistance : parse_number(fields[4], "aggregated_distance");
            rec.raw_distance =
                fields[5] == "inf" ? kInfDistance : parse_number(fields[5], "raw_distance");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<AttributionRecord> load_records(const std::string& path) {
    try {
        return parse_records(read_file(path));
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// reports

std::string format_report(const SummaryReport& report) {
    std::ostringstream out;
    out << "# contrail-report 1\n";
    out << "# point: " << (report.point == EvaluationPoint::kFirst ? "first" : "last") << "\n";
    out << "status,attributed,outcome,count,fraction\n";
    for (const auto& flow : report.flows)
        out << (flow.status == ContrailStatus::kNew ? "new" : "old") << ','
            << (flow.attributed ? "yes" : "no") << ',' << outcome_name(flow.outcome) << ','
            << flow.count << ',' << format_double(flow.fraction, 6) << '\n';
    out << "# summary\n";
    out << "metric,value\n";
    out << "total_contrails," << report.total << '\n';
    out << "new_contrails," << report.new_count << '\n';
    out << "old_contrails," << report.old_count << '\n';
    out << "correct_attribution_rate_new,"
        << format_double(report.correct_attribution_rate_new, 6) << '\n';
    out << "wrong_attribution_rate_new," << format_double(report.wrong_attribution_rate_new, 6)
        << '\n';
    out << "missed_attribution_rate_new,"
        << format_double(report.missed_attribution_rate_new, 6) << '\n';
    out << "correct_omission_rate_old," << format_double(report.correct_omission_rate_old, 6)
        << '\n';
    out << "false_attribution_rate_old,"
        << format_double(report.false_attribution_rate_old, 6) << '\n';
    return out.str();
}

std::string format_report_json(const std::vector<SummaryReport>& reports) {
    json doc;
    doc["format_version"] = 1;
    for (const auto& report : reports) {
        json jr;
        jr["total_contrails"] = report.total;
        jr["new_contrails"] = report.new_count;
        jr["old_contrails"] = report.old_count;
        for (const Outcome o : kAllOutcomes) {
            jr["counts"][outcome_name(o)] = report.count_of(o);
            jr["fractions"][outcome_name(o)] = report.fraction_of(o);
        }
        jr["rates"] = {
            {"correct_attribution_rate_new", report.correct_attribution_rate_new},
            {"wrong_attribution_rate_new", report.wrong_attribution_rate_new},
            {"missed_attribution_rate_new", report.missed_attribution_rate_new},
            {"correct_omission_rate_old", report.correct_omission_rate_old},
            {"false_attribution_rate_old", report.false_attribution_rate_old},
        };
        json flows = json::array();
        for (const auto& flow : report.flows)
            flows.push_back({{"status", flow.status == ContrailStatus::kNew ? "new" : "old"},
                             {"attributed", flow.attributed},
                             {"outcome", outcome_name(flow.outcome)},
                             {"count", flow.count},
                             {"fraction", flow.fraction}});
        jr["flows"] = flows;
        doc[report.point == EvaluationPoint::kFirst ? "first" : "last"] = jr;
    }
    return doc.dump(1) + "\n";
}

}  // namespace contrailmatch
