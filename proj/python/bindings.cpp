#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "contrailmatch/errors.hpp"
#include "contrailmatch/pipeline.hpp"
#include "contrailmatch/synthetic.hpp"

namespace py = pybind11;
using namespace contrailmatch;

namespace {

MultiPolygon to_multipolygon(const std::vector<std::vector<std::pair<double, double>>>& raw) {
    MultiPolygon out;
    for (const auto& ring : raw) {
        PixelPolygon poly;
        for (const auto& [x, y] : ring) poly.push_back({x, y});
        out.push_back(std::move(poly));
    }
    return out;
}

std::vector<std::vector<std::pair<double, double>>> from_multipolygon(const MultiPolygon& polys) {
    std::vector<std::vector<std::pair<double, double>>> out;
    for (const auto& poly : polys) {
        std::vector<std::pair<double, double>> ring;
        for (const auto& v : poly) ring.emplace_back(v.x, v.y);
        out.push_back(std::move(ring));
    }
    return out;
}

std::vector<Polyline> to_polylines(const std::vector<std::vector<std::pair<double, double>>>& raw) {
    std::vector<Polyline> lines;
    for (const auto& pts : raw) {
        Polyline line;
        for (const auto& [x, y] : pts) line.points.push_back({x, y});
        lines.push_back(std::move(line));
    }
    return lines;
}

py::dict report_to_dict(const SummaryReport& report) {
    py::dict d;
    d["point"] = report.point == EvaluationPoint::kFirst ? "first" : "last";
    d["total"] = report.total;
    d["new_count"] = report.new_count;
    d["old_count"] = report.old_count;
    py::dict counts, fractions;
    for (const Outcome o : kAllOutcomes) {
        counts[outcome_name(o)] = report.count_of(o);
        fractions[outcome_name(o)] = report.fraction_of(o);
    }
    d["counts"] = counts;
    d["fractions"] = fractions;
    d["correct_attribution_rate_new"] = report.correct_attribution_rate_new;
    d["wrong_attribution_rate_new"] = report.wrong_attribution_rate_new;
    d["missed_attribution_rate_new"] = report.missed_attribution_rate_new;
    d["correct_omission_rate_old"] = report.correct_omission_rate_old;
    d["false_attribution_rate_old"] = report.false_attribution_rate_old;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "contrail-to-flight attribution core";

    py::register_exception<LoadError>(m, "LoadError");
    py::register_exception<OutOfDomainError>(m, "OutOfDomainError");
    py::register_exception<RuntimeFailure>(m, "RuntimeFailure");

    // met fields
    py::class_<WindVector>(m, "WindVector")
        .def_readonly("u", &WindVector::u)
        .def_readonly("v", &WindVector::v)
        .def_readonly("w", &WindVector::w);
    py::class_<MetGrid>(m, "MetGrid")
        .def_property_readonly("times", &MetGrid::times)
        .def_property_readonly("levels", &MetGrid::levels)
        .def_property_readonly("lats", &MetGrid::lats)
        .def_property_readonly("lons", &MetGrid::lons)
        .def("in_domain", &MetGrid::in_domain, py::arg("t"), py::arg("p_hpa"),
             py::arg("lat"), py::arg("lon"));
    m.def("load_met_grid",
          [](const std::string& path) { return load_met_grid(path); }, py::arg("path"));
    m.def("sample_wind", &sample_wind, py::arg("grid"), py::arg("t"), py::arg("p_hpa"),
          py::arg("lat"), py::arg("lon"));

    // standard atmosphere helpers
    m.def("pressure_to_altitude_m", &pressure_to_altitude_m, py::arg("pressure_hpa"));
    m.def("altitude_to_pressure_hpa", &altitude_to_pressure_hpa, py::arg("altitude_m"));

    // advection
    py::class_<GeoPoint>(m, "GeoPoint")
        .def(py::init([](double lat, double lon, double pressure_hpa) {
                 return GeoPoint{lat, lon, pressure_hpa};
             }),
             py::arg("lat"), py::arg("lon"), py::arg("pressure_hpa"))
        .def_readwrite("lat", &GeoPoint::lat)
        .def_readwrite("lon", &GeoPoint::lon)
        .def_readwrite("pressure_hpa", &GeoPoint::pressure_hpa);
    py::class_<TrackPoint>(m, "TrackPoint")
        .def(py::init([](double time, const GeoPoint& position) {
                 return TrackPoint{time, position};
             }),
             py::arg("time"), py::arg("position"))
        .def_readwrite("time", &TrackPoint::time)
        .def_readwrite("position", &TrackPoint::position);
    py::class_<FlightTrack>(m, "FlightTrack")
        .def(py::init<>())
        .def_readwrite("flight_id", &FlightTrack::flight_id)
        .def_readwrite("points", &FlightTrack::points)
        .def_readwrite("callsign", &FlightTrack::callsign)
        .def_readwrite("aircraft_type", &FlightTrack::aircraft_type)
        .def("position_at", &FlightTrack::position_at, py::arg("t"));
    py::class_<PlumeSegment>(m, "PlumeSegment")
        .def_readonly("formation_time", &PlumeSegment::formation_time)
        .def_readonly("center", &PlumeSegment::center)
        .def_readonly("length_m", &PlumeSegment::length_m)
        .def_readonly("width_m", &PlumeSegment::width_m)
        .def_readonly("orientation_deg", &PlumeSegment::orientation_deg)
        .def_readonly("valid_at", &PlumeSegment::valid_at);
    py::class_<TheoreticalContrail>(m, "TheoreticalContrail")
        .def_readonly("flight_id", &TheoreticalContrail::flight_id)
        .def_readonly("valid_at", &TheoreticalContrail::valid_at)
        .def_readonly("segments", &TheoreticalContrail::segments)
        .def_readonly("dropped_parcels", &TheoreticalContrail::dropped_parcels);
    py::class_<AdvectionParams>(m, "AdvectionParams")
        .def(py::init<>())
        .def_readwrite("emission_interval_s", &AdvectionParams::emission_interval_s)
        .def_readwrite("step_s", &AdvectionParams::step_s)
        .def_readwrite("initial_width_m", &AdvectionParams::initial_width_m)
        .def_readwrite("width_growth_m_per_s", &AdvectionParams::width_growth_m_per_s);
    m.def("theoretical_contrail",
          [](const FlightTrack& track, const MetGrid& grid, double frame_time,
             const AdvectionParams& params) {
              return theoretical_contrail(track, grid, frame_time, params);
          },
          py::arg("track"), py::arg("grid"), py::arg("frame_time"),
          py::arg("params") = AdvectionParams{});
    m.def("segment_to_polygon",
          [](const PlumeSegment& seg) {
              std::vector<std::tuple<double, double, double>> out;
              for (const auto& p : segment_to_polygon(seg))
                  out.emplace_back(p.lat, p.lon, p.pressure_hpa);
              return out;
          },
          py::arg("segment"));

    // camera
    py::class_<CameraModel>(m, "CameraModel")
        .def(py::init<>())
        .def_readwrite("site", &CameraModel::site)
        .def_readwrite("site_altitude_m", &CameraModel::site_altitude_m)
        .def_readwrite("yaw_deg", &CameraModel::yaw_deg)
        .def_readwrite("pitch_deg", &CameraModel::pitch_deg)
        .def_readwrite("roll_deg", &CameraModel::roll_deg)
        .def_readwrite("focal_px_per_rad", &CameraModel::focal_px_per_rad)
        .def_readwrite("cx", &CameraModel::cx)
        .def_readwrite("cy", &CameraModel::cy)
        .def_readwrite("image_width", &CameraModel::image_width)
        .def_readwrite("image_height", &CameraModel::image_height)
        .def_readwrite("visibility_margin_px", &CameraModel::visibility_margin_px)
        .def_readwrite("fov_radius_px", &CameraModel::fov_radius_px);
    m.def("load_camera", &load_camera, py::arg("path"));
    m.def("project",
          [](const CameraModel& cam, const GeoPoint& p) -> py::object {
              const auto px = project(cam, p);
              if (!px) return py::none();
              return py::make_tuple(px->x, px->y);
          },
          py::arg("camera"), py::arg("point"));
    m.def("project_altitude",
          [](const CameraModel& cam, double lat, double lon, double altitude_m) -> py::object {
              const auto px = project_altitude(cam, lat, lon, altitude_m);
              if (!px) return py::none();
              return py::make_tuple(px->x, px->y);
          },
          py::arg("camera"), py::arg("lat"), py::arg("lon"), py::arg("altitude_m"));

    // pixel geometry
    m.def("rasterize_count",
          [](const std::vector<std::vector<std::pair<double, double>>>& polygons, int width,
             int height) { return rasterize(to_multipolygon(polygons), width, height).count(); },
          py::arg("polygons"), py::arg("width"), py::arg("height"));
    m.def("extract_centerlines",
          [](const std::vector<std::vector<std::pair<double, double>>>& polygons, int width,
             int height) {
              std::vector<std::vector<std::pair<double, double>>> out;
              for (const auto& line : extract_centerlines(to_multipolygon(polygons), width, height)) {
                  std::vector<std::pair<double, double>> pts;
                  for (const auto& p : line.points) pts.emplace_back(p.x, p.y);
                  out.push_back(std::move(pts));
              }
              return out;
          },
          py::arg("polygons"), py::arg("width"), py::arg("height"));
    m.def("directed_hausdorff",
          [](const std::vector<std::vector<std::pair<double, double>>>& lines,
             const std::vector<std::vector<std::pair<double, double>>>& region,
             double sample_step_px) {
              return directed_hausdorff(to_polylines(lines), to_multipolygon(region),
                                        sample_step_px);
          },
          py::arg("polylines"), py::arg("region"), py::arg("sample_step_px") = 2.0);
    m.def("iou",
          [](const std::vector<std::vector<std::pair<double, double>>>& a,
             const std::vector<std::vector<std::pair<double, double>>>& b, int width,
             int height) { return iou(to_multipolygon(a), to_multipolygon(b), width, height); },
          py::arg("a"), py::arg("b"), py::arg("width"), py::arg("height"));

    // attribution
    py::enum_<Normalization>(m, "Normalization")
        .value("ROW", Normalization::kRow)
        .value("GLOBAL", Normalization::kGlobal);
    py::enum_<AssignmentMethod>(m, "AssignmentMethod")
        .value("GREEDY", AssignmentMethod::kGreedy)
        .value("HUNGARIAN", AssignmentMethod::kHungarian);
    py::class_<MatchConfig>(m, "MatchConfig")
        .def(py::init<>())
        .def_readwrite("dt_before_s", &MatchConfig::dt_before_s)
        .def_readwrite("dt_after_s", &MatchConfig::dt_after_s)
        .def_readwrite("tau_d_px", &MatchConfig::tau_d_px)
        .def_readwrite("alpha", &MatchConfig::alpha)
        .def_readwrite("beta", &MatchConfig::beta)
        .def_readwrite("tau_p", &MatchConfig::tau_p)
        .def_readwrite("d_cap_px", &MatchConfig::d_cap_px)
        .def_readwrite("hausdorff_sample_px", &MatchConfig::hausdorff_sample_px)
        .def_readwrite("normalization", &MatchConfig::normalization)
        .def_readwrite("assignment", &MatchConfig::assignment);

    py::class_<AttributionState>(m, "AttributionState")
        .def(py::init<>())
        .def_property_readonly("memory", [](const AttributionState& s) {
            py::dict d;
            for (const auto& [key, value] : s.memory)
                d[py::make_tuple(key.first, key.second)] = value;
            return d;
        });

    // per-frame matcher driven from python structures:
    // contrails: [(id, formation_time, [polyline...])]
    // plumes: [(flight_id, [(formation_time, polygon)...])]
    m.def("attribute_frame",
          [](AttributionState& state, double frame_time,
             const std::vector<std::tuple<std::string, double,
                                          std::vector<std::vector<std::pair<double, double>>>>>&
                 contrails,
             const std::vector<std::tuple<
                 std::string,
                 std::vector<std::pair<double, std::vector<std::pair<double, double>>>>>>& plumes,
             const MatchConfig& cfg) {
              FrameInput frame;
              frame.frame_time = frame_time;
              for (const auto& [id, formation_time, lines] : contrails) {
                  ContrailFrameData data;
                  data.contrail_id = id;
                  data.formation_time = formation_time;
                  data.centerlines = to_polylines(lines);
                  frame.contrails.push_back(std::move(data));
              }
              for (const auto& [flight_id, segments] : plumes) {
                  PlumeFrameData data;
                  data.flight_id = flight_id;
                  for (const auto& [formation_time, polygon] : segments) {
                      PixelPolygon poly;
                      for (const auto& [x, y] : polygon) poly.push_back({x, y});
                      data.segments.push_back({formation_time, std::move(poly)});
                  }
                  frame.plumes.push_back(std::move(data));
              }
              const AttributionResult result = attribute_frame(state, frame, cfg);
              py::dict out;
              for (const auto& [id, attr] : result.per_contrail) {
                  py::dict entry;
                  entry["flight_id"] = attr.flight_id ? py::cast(*attr.flight_id) : py::none();
                  entry["probability"] = attr.probability;
                  entry["aggregated_distance"] = attr.aggregated_distance;
                  entry["raw_distance"] = attr.raw_distance;
                  out[py::cast(id)] = entry;
              }
              return out;
          },
          py::arg("state"), py::arg("frame_time"), py::arg("contrails"), py::arg("plumes"),
          py::arg("config") = MatchConfig{});

    // evaluation
    m.def("classify_outcome",
          [](const std::optional<std::string>& assigned, const std::string& status,
             const std::optional<std::string>& truth) {
              return std::string(
                  outcome_name(classify_outcome(assigned, parse_status(status), truth)));
          },
          py::arg("assigned_flight_id"), py::arg("status"), py::arg("true_flight_id"));

    // synthetic scenarios + pipeline
    py::class_<WindModel>(m, "WindModel")
        .def(py::init<>())
        .def_readwrite("u0_m_s", &WindModel::u0_m_s)
        .def_readwrite("v0_m_s", &WindModel::v0_m_s)
        .def_readwrite("du_dlat", &WindModel::du_dlat)
        .def_readwrite("dv_dlat", &WindModel::dv_dlat);
    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def(py::init<>())
        .def_readwrite("seed", &ScenarioSpec::seed)
        .def_readwrite("flight_count", &ScenarioSpec::flight_count)
        .def_readwrite("old_fraction", &ScenarioSpec::old_fraction)
        .def_readwrite("frame_count", &ScenarioSpec::frame_count)
        .def_readwrite("sigma_px", &ScenarioSpec::sigma_px)
        .def_readwrite("wind_mismatch_m_s", &ScenarioSpec::wind_mismatch_m_s)
        .def_readwrite("wind", &ScenarioSpec::wind)
        .def_readwrite("match", &ScenarioSpec::match)
        .def_readwrite("advection", &ScenarioSpec::advection);
    m.def("write_synthetic_scenario",
          [](const ScenarioSpec& spec, const std::string& dir) {
              const Scenario scenario = generate_scenario(spec);
              write_scenario(scenario, spec, dir);
              py::dict d;
              d["new_contrails"] = scenario.new_contrails;
              d["old_contrails"] = scenario.old_contrails;
              d["old_contrails_separated"] = scenario.old_contrails_separated;
              return d;
          },
          py::arg("spec"), py::arg("dir"));
    m.def("run_pipeline",
          [](const std::string& config_path) {
              const PipelineResult result = run_pipeline(load_run_config(config_path));
              py::dict d;
              d["frames_processed"] = result.frames_processed;
              d["candidate_flights"] = result.candidate_flights;
              d["record_count"] = result.records.size();
              d["warnings"] = result.warnings;
              py::list reports;
              for (const auto& report : result.reports) reports.append(report_to_dict(report));
              d["reports"] = reports;
              return d;
          },
          py::arg("config_path"));
}
