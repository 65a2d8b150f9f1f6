#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contrailmatch/io.hpp"

namespace contrailmatch {

struct OverlayContrail {
    std::string contrail_id;
    ContrailStatus status = ContrailStatus::kNew;
    std::optional<std::string> assigned_flight_id;
    MultiPolygon polygons;
};

/// Everything needed to render one frame.
struct OverlayFrame {
    double frame_time = 0.0;
    std::vector<std::pair<std::string, MultiPolygon>> plumes;  // flight -> polygons
    std::vector<std::pair<std::string, std::vector<Vec2>>> tracks;
    std::vector<OverlayContrail> contrails;
};

struct PipelineResult {
    std::vector<AttributionRecord> records;
    std::vector<SummaryReport> reports;  // one per requested evaluation point
    std::size_t frames_processed = 0;
    std::size_t candidate_flights = 0;
    std::size_t dropped_parcels = 0;
    std::vector<std::string> warnings;
};

/// Load everything referenced by the config, run the frame loop in time
/// order, evaluate, and write records/reports (and overlays when enabled)
/// under cfg.output_dir.
PipelineResult run_pipeline(const RunConfig& cfg);

/// Candidate pre-filter: flights with any track point within `radius_km` of
/// the site during [window_start, window_end].
std::vector<FlightTrack> filter_candidates(const std::vector<FlightTrack>& flights,
                                           const GeoPoint& site, double radius_km,
                                           double window_start, double window_end);

/// Deterministic per-flight colour (hex "#rrggbb") from a stable id hash.
std::string flight_color(const std::string& flight_id);

/// One SVG per frame under out_dir; byte-identical for identical inputs.
void emit_overlays(const std::vector<OverlayFrame>& frames, int image_width,
                   int image_height, const std::string& out_dir);

/// Re-score previously written records against annotation ground truth.
std::vector<SummaryReport> evaluate_records(const std::vector<AttributionRecord>& records,
                                            const AnnotationSet& annotations,
                                            const std::vector<EvaluationPoint>& points);

}  // namespace contrailmatch
