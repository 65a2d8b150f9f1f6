#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contrailmatch/advection.hpp"
#include "contrailmatch/attribution.hpp"
#include "contrailmatch/camera.hpp"
#include "contrailmatch/evaluation.hpp"
#include "contrailmatch/geometry.hpp"

namespace contrailmatch {

/// One annotated contrail instance in one frame.
struct ContrailAnnotation {
    std::string id;
    ContrailStatus status = ContrailStatus::kNew;
    std::optional<std::string> flight_id;  // ground-truth link, when known
    MultiPolygon polygons;
};

struct FrameAnnotations {
    double frame_time = 0.0;
    std::vector<ContrailAnnotation> contrails;
};

struct AnnotationSet {
    std::vector<FrameAnnotations> frames;  // strictly increasing frame times

    /// First frame time at which each contrail id appears.
    std::map<std::string, double> formation_times() const;
};

AnnotationSet load_annotations(const std::string& path);
AnnotationSet parse_annotations(const std::string& text);
std::string format_annotations(const AnnotationSet& set);

std::vector<FlightTrack> load_flights(const std::string& path);
std::vector<FlightTrack> parse_flights(const std::string& text);
std::string format_flights(const std::vector<FlightTrack>& tracks);

CameraModel load_camera(const std::string& path);
CameraModel parse_camera(const std::string& text);
std::string format_camera(const CameraModel& cam);

/// Advection block of the run configuration.
struct RunConfig {
    std::string annotations_path;
    std::string flights_path;
    std::string met_path;
    std::string camera_path;  // empty when `camera` is inline
    std::optional<CameraModel> camera;
    MatchConfig match;
    AdvectionParams advection;
    double met_level_band_min_hpa = 200.0;
    double met_level_band_max_hpa = 300.0;
    double candidate_radius_km = 100.0;
    std::vector<EvaluationPoint> evaluation_points = {EvaluationPoint::kFirst,
                                                      EvaluationPoint::kLast};
    std::string output_dir = "out";
    bool emit_overlays = false;
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& text, const std::string& base_dir = "");
std::string format_run_config(const RunConfig& cfg);

/// One attribution record per (frame, contrail).
struct AttributionRecord {
    double frame_time = 0.0;
    std::string contrail_id;
    std::optional<std::string> flight_id;
    double probability = 0.0;
    double aggregated_distance = kInfDistance;
    double raw_distance = kInfDistance;
};

std::string format_records(const std::vector<AttributionRecord>& records);
std::vector<AttributionRecord> parse_records(const std::string& text);
std::vector<AttributionRecord> load_records(const std::string& path);

std::string format_report(const SummaryReport& report);
std::string format_report_json(const std::vector<SummaryReport>& reports);

// small shared helpers
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string format_double(double value, int precision);
ContrailStatus parse_status(std::string text);  // case-insensitive

}  // namespace contrailmatch
