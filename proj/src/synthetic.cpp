#include "contrailmatch/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include "contrailmatch/errors.hpp"
#include "contrailmatch/geometry.hpp"

namespace contrailmatch {

namespace {

// splitmix64: platform-stable draws so generated files never depend on the
// standard library's distribution implementations
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    double normal(double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * sigma;
        }
        double u1 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return radius * std::cos(2.0 * kPi * u2) * sigma;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

MetGrid build_met(const ScenarioSpec& spec, double extra_u) {
    const double t0 = spec.start_time;
    const double t_end = t0 + spec.frame_count * spec.frame_interval_s;
    const std::vector<double> times = {t0 - 1800.0, 0.5 * (t0 + t_end), t_end + 1800.0};
    const std::vector<double> levels = {200.0, 250.0, 300.0};
    std::vector<double> lats, lons;
    for (int i = -2; i <= 2; ++i) {
        lats.push_back(45.0 + i * 0.75);
        lons.push_back(5.0 + i * 0.75);
    }

    const std::size_t n = times.size() * levels.size() * lats.size() * lons.size();
    std::vector<double> u(n), v(n);
    std::size_t k = 0;
    for (std::size_t it = 0; it < times.size(); ++it)
        for (std::size_t ip = 0; ip < levels.size(); ++ip)
            for (double lat : lats)
                for (std::size_t ix = 0; ix < lons.size(); ++ix, ++k) {
                    double uu = spec.wind.u0_m_s, vv = spec.wind.v0_m_s;
                    if (spec.wind.kind == WindKind::kLinearShear) {
                        uu += spec.wind.du_dlat * (lat - 45.0);
                        vv += spec.wind.dv_dlat * (lat - 45.0);
                    }
                    u[k] = uu + extra_u;
                    v[k] = vv;
                }
    return MetGrid(times, levels, lats, lons, std::move(u), std::move(v));
}

CameraModel default_camera() {
    CameraModel cam;
    cam.site = {45.0, 5.0, 0.0};
    cam.site_altitude_m = 0.0;
    cam.focal_px_per_rad = 800.0;
    cam.cx = 800.0;
    cam.cy = 800.0;
    cam.image_width = 1600;
    cam.image_height = 1600;
    cam.visibility_margin_px = 50.0;
    return cam;
}

struct SyntheticFlight {
    FlightTrack track;
    bool phantom = false;
};

std::vector<SyntheticFlight> build_flights(const ScenarioSpec& spec, Rng& rng) {
    const int phantom_count =
        static_cast<int>(std::lround(spec.flight_count * spec.old_fraction));
    const int total = spec.flight_count + phantom_count;
    const double t0 = spec.start_time;
    const double window_end = t0 + (spec.frame_count - 1) * spec.frame_interval_s;

    std::vector<SyntheticFlight> flights;
    for (int k = 0; k < total; ++k) {
        // headings fan over 180 degrees so no two plumes are near-parallel
        const double heading = std::fmod(
            k * 180.0 / total +
                rng.uniform(-spec.heading_jitter_deg, spec.heading_jitter_deg) + 360.0,
            360.0);
        const double speed = rng.uniform(spec.speed_min_m_s, spec.speed_max_m_s);
        const double pressure = rng.uniform(spec.pressure_min_hpa, spec.pressure_max_hpa);
        const double cross_time = rng.uniform(t0 + 90.0, std::max(t0 + 120.0, window_end - 90.0));
        // closest approach within a few km of the zenith
        const double offset_r = rng.uniform(0.0, 3000.0);
        const double offset_az = rng.uniform(0.0, 360.0);

        const double hx = std::sin(deg2rad(heading));  // east component
        const double hy = std::cos(deg2rad(heading));  // north component
        const double cx = offset_r * std::sin(deg2rad(offset_az));
        const double cy = offset_r * std::cos(deg2rad(offset_az));

        SyntheticFlight flight;
        flight.phantom = k >= spec.flight_count;
        char id[16];
        std::snprintf(id, sizeof(id), flight.phantom ? "ph%02d" : "f%02d",
                      flight.phantom ? k - spec.flight_count : k);
        flight.track.flight_id = id;
        const double m_per_lon = meters_per_deg_lon(45.0);
        for (double dt = -420.0; dt <= 420.0 + 1e-9; dt += 10.0) {
            const double east = cx + hx * speed * dt;
            const double north = cy + hy * speed * dt;
            flight.track.points.push_back(
                {cross_time + dt,
                 {45.0 + north / kMetersPerDegLat, 5.0 + east / m_per_lon, pressure}});
        }
        flights.push_back(std::move(flight));
    }
    return flights;
}

PixelPolygon jitter_polygon(const PixelPolygon& poly, double sigma, Rng& rng) {
    if (sigma <= 0.0) return poly;
    for (int attempt = 0; attempt < 8; ++attempt) {
        PixelPolygon jittered;
        jittered.reserve(poly.size());
        for (const auto& v : poly)
            jittered.push_back({v.x + rng.normal(sigma), v.y + rng.normal(sigma)});
        // keep the annotation loadable: reject self-crossing jitters
        bool crossing = false;
        const std::size_t n = jittered.size();
        auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
            const double val = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            return val > 1e-12 ? 1 : (val < -1e-12 ? -1 : 0);
        };
        for (std::size_t i = 0; i < n && !crossing; ++i) {
            for (std::size_t j = i + 1; j < n && !crossing; ++j) {
                if ((j + 1) % n == i || (i + 1) % n == j) continue;
                const Vec2 &a = jittered[i], &b = jittered[(i + 1) % n];
                const Vec2 &c = jittered[j], &d = jittered[(j + 1) % n];
                const int o1 = orient(a, b, c), o2 = orient(a, b, d);
                const int o3 = orient(c, d, a), o4 = orient(c, d, b);
                if (o1 != o2 && o3 != o4 && o1 && o2 && o3 && o4) crossing = true;
            }
        }
        if (!crossing) return jittered;
    }
    return poly;
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
    Rng rng(spec.seed);
    Scenario scenario{build_met(spec, 0.0),
                      {},
                      default_camera(),
                      {},
                      0,
                      0,
                      true,
                      kInfDistance};
    const MetGrid truth_met = build_met(spec, spec.wind_mismatch_m_s);
    auto flights = build_flights(spec, rng);

    for (const auto& flight : flights)
        if (!flight.phantom) scenario.candidate_flights.push_back(flight.track);

    const double t0 = spec.start_time;
    const double emit_from = t0 - spec.match.dt_before_s;

    // contrail ids in flight order; assigned on first visibility
    std::map<std::string, std::string> contrail_ids;  // flight -> contrail id
    int next_id = 0;

    for (int frame = 0; frame < spec.frame_count; ++frame) {
        const double frame_time = t0 + frame * spec.frame_interval_s;
        FrameAnnotations fa;
        fa.frame_time = frame_time;
        for (const auto& flight : flights) {
            const auto plume = theoretical_contrail(flight.track, truth_met, frame_time,
                                                    spec.advection, emit_from);
            MultiPolygon visible;
            for (const auto& seg : plume.segments) {
                const auto px = project_polygon(scenario.camera, segment_to_polygon(seg));
                if (!px) continue;
                // an annotator only draws what lies inside the frame; polygons
                // that survive projection merely within the visibility margin
                // are not annotated
                bool in_image = false;
                for (const auto& v : *px)
                    if (v.x >= 0 && v.x < scenario.camera.image_width && v.y >= 0 &&
                        v.y < scenario.camera.image_height)
                        in_image = true;
                if (!in_image) continue;
                visible.push_back(jitter_polygon(*px, spec.sigma_px, rng));
            }
            if (visible.empty()) continue;

            auto it = contrail_ids.find(flight.track.flight_id);
            if (it == contrail_ids.end()) {
                char cid[16];
                std::snprintf(cid, sizeof(cid), "c%03d", next_id++);
                it = contrail_ids.emplace(flight.track.flight_id, cid).first;
                if (flight.phantom)
                    ++scenario.old_contrails;
                else
                    ++scenario.new_contrails;
            }
            ContrailAnnotation annotation;
            annotation.id = it->second;
            annotation.status = flight.phantom ? ContrailStatus::kOld : ContrailStatus::kNew;
            if (!flight.phantom) annotation.flight_id = flight.track.flight_id;
            annotation.polygons = std::move(visible);
            fa.contrails.push_back(std::move(annotation));
        }
        std::sort(fa.contrails.begin(), fa.contrails.end(),
                  [](const ContrailAnnotation& a, const ContrailAnnotation& b) {
                      return a.id < b.id;
                  });
        scenario.annotations.frames.push_back(std::move(fa));
    }

    if (scenario.new_contrails + scenario.old_contrails == 0)
        throw RuntimeFailure(
            "scenario produced zero visible contrails; increase frame_count, widen the "
            "camera field of view, or move crossing times into the window");

    // verify the separation property of old contrails against candidates
    const auto formation = scenario.annotations.formation_times();
    for (const auto& frame : scenario.annotations.frames) {
        std::vector<PlumeFrameData> candidate_plumes;
        bool plumes_built = false;
        for (const auto& annotation : frame.contrails) {
            if (annotation.status != ContrailStatus::kOld) continue;
            if (!plumes_built) {
                for (const auto& track : scenario.candidate_flights) {
                    const auto plume = theoretical_contrail(
                        track, scenario.candidate_met, frame.frame_time, spec.advection,
                        emit_from);
                    PlumeFrameData data;
                    data.flight_id = track.flight_id;
                    for (const auto& seg : plume.segments)
                        if (const auto px =
                                project_polygon(scenario.camera, segment_to_polygon(seg)))
                            data.segments.push_back({seg.formation_time, *px});
                    candidate_plumes.push_back(std::move(data));
                }
                plumes_built = true;
            }
            const auto centerlines =
                extract_centerlines(annotation.polygons, scenario.camera.image_width,
                                    scenario.camera.image_height);
            for (const auto& plume : candidate_plumes) {
                const auto filtered =
                    temporal_filter(formation.at(annotation.id), plume, spec.match);
                if (!filtered) continue;
                const double d = pairwise_distance(centerlines, *filtered, spec.match);
                if (std::isfinite(d)) {
                    scenario.old_contrails_separated = false;
                    scenario.min_old_candidate_distance_px =
                        std::min(scenario.min_old_candidate_distance_px, d);
                }
            }
        }
    }
    return scenario;
}

void write_scenario(const Scenario& scenario, const ScenarioSpec& spec,
                    const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_file((fs::path(dir) / "met.cmet").string(), format_met_grid(scenario.candidate_met));
    write_file((fs::path(dir) / "flights.csv").string(),
               format_flights(scenario.candidate_flights));
    write_file((fs::path(dir) / "annotations.json").string(),
               format_annotations(scenario.annotations));
    write_file((fs::path(dir) / "camera.json").string(), format_camera(scenario.camera));

    RunConfig cfg;
    cfg.annotations_path = "annotations.json";
    cfg.flights_path = "flights.csv";
    cfg.met_path = "met.cmet";
    cfg.camera_path = "camera.json";
    cfg.match = spec.match;
    cfg.advection = spec.advection;
    cfg.output_dir = "out";
    write_file((fs::path(dir) / "config.json").string(), format_run_config(cfg));
}

}  // namespace contrailmatch
