#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "contrailmatch/errors.hpp"
#include "contrailmatch/synthetic.hpp"

using namespace contrailmatch;

TEST_CASE("synthetic: seed 42 with five clean flights self-matches at distance zero") {
    ScenarioSpec spec;
    spec.seed = 42;
    spec.flight_count = 5;
    spec.old_fraction = 0.0;
    spec.sigma_px = 0.0;
    const Scenario scenario = generate_scenario(spec);
    CHECK(scenario.new_contrails == 5);
    CHECK(scenario.old_contrails == 0);

    // at each contrail's first frame, its centerline lies inside its own
    // generator's temporally filtered plume
    const auto formation = scenario.annotations.formation_times();
    std::map<std::string, std::string> contrail_to_flight;
    std::set<std::string> checked;
    for (const auto& frame : scenario.annotations.frames) {
        for (const auto& annotation : frame.contrails) {
            REQUIRE(annotation.flight_id.has_value());
            if (formation.at(annotation.id) != frame.frame_time) continue;
            if (!checked.insert(annotation.id).second) continue;
            const FlightTrack* track = nullptr;
            for (const auto& t : scenario.candidate_flights)
                if (t.flight_id == *annotation.flight_id) track = &t;
            REQUIRE(track != nullptr);
            const auto plume = theoretical_contrail(
                *track, scenario.candidate_met, frame.frame_time, spec.advection,
                spec.start_time - spec.match.dt_before_s);
            PlumeFrameData data;
            data.flight_id = track->flight_id;
            for (const auto& seg : plume.segments)
                if (const auto px = project_polygon(scenario.camera, segment_to_polygon(seg)))
                    data.segments.push_back({seg.formation_time, *px});
            const auto filtered =
                temporal_filter(formation.at(annotation.id), data, spec.match);
            REQUIRE(filtered.has_value());
            const auto centerlines = extract_centerlines(
                annotation.polygons, scenario.camera.image_width,
                scenario.camera.image_height);
            REQUIRE(!centerlines.empty());
            CHECK(pairwise_distance(centerlines, *filtered, spec.match) == 0.0);
        }
    }
    CHECK(checked.size() == 5);
}

TEST_CASE("synthetic: identical seeds give byte-identical files") {
    ScenarioSpec spec;
    spec.seed = 97;
    spec.flight_count = 4;
    spec.old_fraction = 0.5;
    spec.sigma_px = 3.0;
    const Scenario a = generate_scenario(spec);
    const Scenario b = generate_scenario(spec);
    CHECK(format_met_grid(a.candidate_met) == format_met_grid(b.candidate_met));
    CHECK(format_flights(a.candidate_flights) == format_flights(b.candidate_flights));
    CHECK(format_annotations(a.annotations) == format_annotations(b.annotations));
    // and a different seed changes the draw
    spec.seed = 98;
    const Scenario c = generate_scenario(spec);
    CHECK(format_annotations(a.annotations) != format_annotations(c.annotations));
}

TEST_CASE("synthetic: vertex noise keeps mean self-distance within (0, tau_d)") {
    ScenarioSpec spec;
    spec.seed = 11;
    spec.flight_count = 5;
    spec.old_fraction = 0.0;
    spec.sigma_px = 5.0;
    const Scenario scenario = generate_scenario(spec);
    const auto formation = scenario.annotations.formation_times();

    double total = 0.0;
    int measured = 0;
    for (const auto& frame : scenario.annotations.frames) {
        for (const auto& annotation : frame.contrails) {
            if (formation.at(annotation.id) != frame.frame_time) continue;
            const FlightTrack* track = nullptr;
            for (const auto& t : scenario.candidate_flights)
                if (t.flight_id == *annotation.flight_id) track = &t;
            const auto plume = theoretical_contrail(
                *track, scenario.candidate_met, frame.frame_time, spec.advection,
                spec.start_time - spec.match.dt_before_s);
            PlumeFrameData data;
            data.flight_id = track->flight_id;
            for (const auto& seg : plume.segments)
                if (const auto px = project_polygon(scenario.camera, segment_to_polygon(seg)))
                    data.segments.push_back({seg.formation_time, *px});
            const auto filtered = temporal_filter(formation.at(annotation.id), data, spec.match);
            if (!filtered) continue;
            const auto centerlines = extract_centerlines(
                annotation.polygons, scenario.camera.image_width,
                scenario.camera.image_height);
            const double d = pairwise_distance(centerlines, *filtered, spec.match);
            if (std::isfinite(d)) {
                total += d;
                ++measured;
            }
        }
    }
    REQUIRE(measured > 0);
    const double mean = total / measured;
    CHECK(mean > 0.0);
    CHECK(mean < spec.match.tau_d_px);
    CHECK(mean < 4.0 * spec.sigma_px);  // O(sigma)
}

TEST_CASE("synthetic: phantom flights yield separated old contrails") {
    ScenarioSpec spec;
    spec.seed = 42;
    spec.flight_count = 8;
    spec.old_fraction = 0.25;
    const Scenario scenario = generate_scenario(spec);
    CHECK(scenario.old_contrails >= 1);
    CHECK(scenario.new_contrails >= 7);
    CHECK(scenario.old_contrails_separated);
    // phantoms never leak into the candidate set
    for (const auto& track : scenario.candidate_flights)
        CHECK(track.flight_id.substr(0, 2) != "ph");
    // old contrails carry no truth link
    for (const auto& frame : scenario.annotations.frames)
        for (const auto& c : frame.contrails)
            if (c.status == ContrailStatus::kOld) CHECK_FALSE(c.flight_id.has_value());
}

TEST_CASE("synthetic: a window nobody crosses is an explicit error") {
    ScenarioSpec spec;
    spec.seed = 1;
    spec.flight_count = 2;
    spec.frame_count = 1;  // crossings happen after the only frame
    CHECK_THROWS_WITH_AS(generate_scenario(spec), doctest::Contains("zero visible"),
                         RuntimeFailure);
}

TEST_CASE("synthetic: written scenario files load back through the io layer") {
    ScenarioSpec spec;
    spec.seed = 5;
    spec.flight_count = 3;
    spec.old_fraction = 0.34;
    spec.sigma_px = 2.0;
    const Scenario scenario = generate_scenario(spec);
    const std::string dir =
        (std::filesystem::temp_directory_path() / "contrailmatch_synth_io").string();
    std::filesystem::remove_all(dir);
    write_scenario(scenario, spec, dir);

    const RunConfig cfg = load_run_config(dir + "/config.json");
    const auto annotations = load_annotations(cfg.annotations_path);
    const auto flights = load_flights(cfg.flights_path);
    const auto met = load_met_grid(cfg.met_path);
    const auto camera = load_camera(cfg.camera_path);
    CHECK(annotations.frames.size() == scenario.annotations.frames.size());
    CHECK(flights.size() == scenario.candidate_flights.size());
    CHECK(met.cell_count() == scenario.candidate_met.cell_count());
    CHECK(camera.focal_px_per_rad == scenario.camera.focal_px_per_rad);
}
