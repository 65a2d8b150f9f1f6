#include "contrailmatch/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "contrailmatch/errors.hpp"

namespace contrailmatch {

std::vector<FlightTrack> filter_candidates(const std::vector<FlightTrack>& flights,
                                           const GeoPoint& site, double radius_km,
                                           double window_start, double window_end) {
    std::vector<FlightTrack> kept;
    for (const auto& track : flights) {
        bool near = false;
        for (const auto& pt : track.points) {
            if (pt.time < window_start || pt.time > window_end) continue;
            if (ground_distance_m(site, pt.position) <= radius_km * 1000.0) {
                near = true;
                break;
            }
        }
        if (near) kept.push_back(track);
    }
    return kept;
}

std::vector<SummaryReport> evaluate_records(const std::vector<AttributionRecord>& records,
                                            const AnnotationSet& annotations,
                                            const std::vector<EvaluationPoint>& points) {
    // ground truth per contrail id
    std::map<std::string, ContrailAnnotation> truth;
    for (const auto& frame : annotations.frames)
        for (const auto& c : frame.contrails) truth.try_emplace(c.id, c);

    // first/last record per contrail (records are in frame order)
    std::map<std::string, const AttributionRecord*> first, last;
    for (const auto& rec : records) {
        first.try_emplace(rec.contrail_id, &rec);
        last[rec.contrail_id] = &rec;
    }

    std::vector<SummaryReport> reports;
    for (const EvaluationPoint point : points) {
        const auto& chosen = point == EvaluationPoint::kFirst ? first : last;
        std::vector<ContrailEvalRecord> eval_records;
        for (const auto& [id, rec] : chosen) {
            auto it = truth.find(id);
            if (it == truth.end())
                throw RuntimeFailure("evaluate: contrail " + id + " missing from annotations");
            ContrailEvalRecord er;
            er.contrail_id = id;
            er.status = it->second.status;
            er.true_flight_id = it->second.flight_id;
            er.assigned_flight_id = rec->flight_id;
            eval_records.push_back(std::move(er));
        }
        reports.push_back(aggregate(eval_records, point));
    }
    return reports;
}

namespace {

struct LoadedInputs {
    AnnotationSet annotations;
    std::vector<FlightTrack> candidates;
    MetGrid met;
    CameraModel camera;
};

LoadedInputs load_inputs(const RunConfig& cfg) {
    MetLoadOptions met_opts;
    met_opts.level_band_min_hpa = cfg.met_level_band_min_hpa;
    met_opts.level_band_max_hpa = cfg.met_level_band_max_hpa;

    LoadedInputs in{load_annotations(cfg.annotations_path),
                    {},
                    load_met_grid(cfg.met_path, met_opts),
                    cfg.camera ? *cfg.camera : load_camera(cfg.camera_path)};

    const auto all_flights = load_flights(cfg.flights_path);
    if (!in.annotations.frames.empty()) {
        const double start = in.annotations.frames.front().frame_time;
        const double end = in.annotations.frames.back().frame_time;
        in.candidates = filter_candidates(all_flights, in.camera.site,
                                          cfg.candidate_radius_km,
                                          start - cfg.match.dt_before_s - 600.0, end);
    }
    return in;
}

}  // namespace

std::string flight_color(const std::string& flight_id) {
    // FNV-1a -> hue; fixed saturation/lightness keeps colours distinct and legible
    std::uint64_t hash = 1469598103934665603ULL;
    for (const char c : flight_id) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    const double hue = static_cast<double>(hash % 360000ULL) / 1000.0;
    const double saturation = 0.75, lightness = 0.55;

    const double c = (1.0 - std::abs(2.0 * lightness - 1.0)) * saturation;
    const double hp = hue / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = lightness - c / 2.0;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::lround((r + m) * 255.0)),
                  static_cast<int>(std::lround((g + m) * 255.0)),
                  static_cast<int>(std::lround((b + m) * 255.0)));
    return buf;
}

namespace {

constexpr const char* kGrey = "#8a8a8a";

void svg_points(std::ostringstream& out, const std::vector<Vec2>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << format_double(pts[i].x, 2) << ',' << format_double(pts[i].y, 2);
    }
}

std::string render_frame_svg(const OverlayFrame& frame, int width, int height) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#10141c\"/>\n";
    out << "<!-- frame_time " << format_double(frame.frame_time, 3) << " -->\n";

    for (const auto& [flight_id, points] : frame.tracks) {
        if (points.size() < 2) continue;
        out << "<polyline fill=\"none\" stroke=\"" << flight_color(flight_id)
            << "\" stroke-width=\"1.5\" stroke-dasharray=\"10 7\" points=\"";
        svg_points(out, points);
        out << "\"/>\n";
    }
    for (const auto& [flight_id, polygons] : frame.plumes) {
        const std::string color = flight_color(flight_id);
        for (const auto& poly : polygons) {
            out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\""
                << color << "\" stroke-width=\"1\" points=\"";
            svg_points(out, poly);
            out << "\"/>\n";
        }
    }
    for (const auto& contrail : frame.contrails) {
        const std::string color =
            contrail.assigned_flight_id ? flight_color(*contrail.assigned_flight_id) : kGrey;
        for (const auto& poly : contrail.polygons) {
            out << "<polygon fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"2.5\" points=\"";
            svg_points(out, poly);
            out << "\"/>\n";
        }
        if (!contrail.polygons.empty() && !contrail.polygons.front().empty()) {
            const Vec2& anchor = contrail.polygons.front().front();
            out << "<text x=\"" << format_double(anchor.x + 4, 2) << "\" y=\""
                << format_double(anchor.y - 4, 2) << "\" fill=\"" << color
                << "\" font-size=\"14\">" << contrail.contrail_id << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string frame_file_name(double frame_time) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "frame_%013.0f.svg", frame_time);
    return buf;
}

}  // namespace

void emit_overlays(const std::vector<OverlayFrame>& frames, int image_width,
                   int image_height, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& frame : frames)
        write_file((std::filesystem::path(out_dir) / frame_file_name(frame.frame_time)).string(),
                   render_frame_svg(frame, image_width, image_height));
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    const LoadedInputs in = load_inputs(cfg);
    PipelineResult result;
    result.candidate_flights = in.candidates.size();

    if (in.annotations.frames.empty()) {
        result.warnings.push_back("annotation file contains no frames; nothing to attribute");
        write_file((std::filesystem::path(cfg.output_dir) / "records.csv").string(),
                   format_records({}));
        write_file((std::filesystem::path(cfg.output_dir) / "report.json").string(),
                   format_report_json({}));
        return result;
    }

    const double video_start = in.annotations.frames.front().frame_time;
    const double video_end = in.annotations.frames.back().frame_time;
    if (in.met.times().front() > video_start - cfg.match.dt_before_s ||
        in.met.times().back() < video_end)
        throw RuntimeFailure("met grid does not cover the video window [" +
                             format_double(video_start - cfg.match.dt_before_s, 3) + ", " +
                             format_double(video_end, 3) + "]");
    if (!in.met.in_domain(video_start, 0.5 * (in.met.levels().front() + in.met.levels().back()),
                          in.camera.site.lat, in.camera.site.lon))
        throw RuntimeFailure("met grid does not cover the camera site");

    const auto formation_times = in.annotations.formation_times();
    // segments emitted before this can never survive any temporal window
    const double emit_from = video_start - cfg.match.dt_before_s;

    AttributionState state;
    std::vector<OverlayFrame> overlay_frames;
    double previous_frame_time = -kInfDistance;

    for (const auto& frame : in.annotations.frames) {
        if (frame.frame_time <= previous_frame_time)
            throw RuntimeFailure("pipeline: frames out of time order at t=" +
                                 format_double(frame.frame_time, 3));
        previous_frame_time = frame.frame_time;

        FrameInput input;
        input.frame_time = frame.frame_time;
        for (const auto& annotation : frame.contrails) {
            ContrailFrameData data;
            data.contrail_id = annotation.id;
            data.status = annotation.status;
            data.formation_time = formation_times.at(annotation.id);
            data.polygons = annotation.polygons;
            data.centerlines = extract_centerlines(annotation.polygons, in.camera.image_width,
                                                   in.camera.image_height);
            input.contrails.push_back(std::move(data));
        }

        for (const auto& track : in.candidates) {
            if (track.start_time() > frame.frame_time) continue;  // not airborne yet
            TheoreticalContrail plume;
            try {
                plume = theoretical_contrail(track, in.met, frame.frame_time, cfg.advection,
                                             emit_from);
            } catch (const OutOfDomainError& e) {
                throw RuntimeFailure("pipeline: flight " + track.flight_id + " at t=" +
                                     format_double(frame.frame_time, 3) + ": " + e.what());
            }
            result.dropped_parcels += plume.dropped_parcels;
            PlumeFrameData data;
            data.flight_id = track.flight_id;
            for (const auto& seg : plume.segments) {
                const auto pixels = project_polygon(in.camera, segment_to_polygon(seg));
                if (pixels) data.segments.push_back({seg.formation_time, *pixels});
            }
            input.plumes.push_back(std::move(data));
        }

        const AttributionResult frame_result = attribute_frame(state, input, cfg.match);
        for (const auto& [contrail_id, attribution] : frame_result.per_contrail)
            result.records.push_back({frame.frame_time, contrail_id, attribution.flight_id,
                                      attribution.probability,
                                      attribution.aggregated_distance,
                                      attribution.raw_distance});

        if (cfg.emit_overlays) {
            OverlayFrame ov;
            ov.frame_time = frame.frame_time;
            for (const auto& plume : input.plumes) {
                MultiPolygon polys;
                for (const auto& seg : plume.segments) polys.push_back(seg.polygon);
                ov.plumes.emplace_back(plume.flight_id, std::move(polys));
            }
            for (const auto& track : in.candidates) {
                std::vector<Vec2> pts;
                for (const auto& tp : track.points)
                    if (const auto px = project(in.camera, tp.position)) pts.push_back(*px);
                if (pts.size() >= 2) ov.tracks.emplace_back(track.flight_id, std::move(pts));
            }
            for (const auto& annotation : frame.contrails) {
                OverlayContrail oc;
                oc.contrail_id = annotation.id;
                oc.status = annotation.status;
                oc.polygons = annotation.polygons;
                const auto it = frame_result.per_contrail.find(annotation.id);
                if (it != frame_result.per_contrail.end())
                    oc.assigned_flight_id = it->second.flight_id;
                ov.contrails.push_back(std::move(oc));
            }
            overlay_frames.push_back(std::move(ov));
        }
        ++result.frames_processed;
    }

    // evaluation needs resolvable truth: every new contrail linked to a flight
    bool have_truth = true;
    std::set<std::string> seen;
    for (const auto& frame : in.annotations.frames)
        for (const auto& c : frame.contrails)
            if (seen.insert(c.id).second)
                if (c.status == ContrailStatus::kNew && !c.flight_id) have_truth = false;
    if (have_truth) {
        result.reports = evaluate_records(result.records, in.annotations, cfg.evaluation_points);
    } else {
        result.warnings.push_back(
            "annotations lack ground-truth flight links; evaluation skipped");
    }

    const std::filesystem::path out_dir(cfg.output_dir);
    write_file((out_dir / "records.csv").string(), format_records(result.records));
    for (const auto& report : result.reports) {
        const char* name =
            report.point == EvaluationPoint::kFirst ? "report_first.csv" : "report_last.csv";
        write_file((out_dir / name).string(), format_report(report));
    }
    write_file((out_dir / "report.json").string(), format_report_json(result.reports));
    if (cfg.emit_overlays)
        emit_overlays(overlay_frames, in.camera.image_width, in.camera.image_height,
                      (out_dir / "overlays").string());
    return result;
}

}  // namespace contrailmatch
