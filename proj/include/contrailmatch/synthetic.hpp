#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contrailmatch/advection.hpp"
#include "contrailmatch/attribution.hpp"
#include "contrailmatch/camera.hpp"
#include "contrailmatch/io.hpp"
#include "contrailmatch/met.hpp"

namespace contrailmatch {

enum class WindKind { kUniform, kLinearShear };

struct WindModel {
    WindKind kind = WindKind::kUniform;
    double u0_m_s = 8.0;
    double v0_m_s = 3.0;
    // linear shear terms, m/s per degree latitude
    double du_dlat = 0.0;
    double dv_dlat = 0.0;
};

/// Fully seeded synthetic world: winds, flights, camera and ground-truth
/// contrail annotations produced by the same advection + projection code the
/// matcher uses.
struct ScenarioSpec {
    std::uint64_t seed = 42;
    int flight_count = 10;        // real (candidate) flights
    double old_fraction = 0.25;   // phantom flights yielding "old" contrails
    int frame_count = 20;
    double frame_interval_s = 30.0;
    double start_time = 1700000000.0;
    double pressure_min_hpa = 215.0;
    double pressure_max_hpa = 285.0;
    double speed_min_m_s = 200.0;
    double speed_max_m_s = 260.0;
    double heading_jitter_deg = 3.0;  // around an even fan over 180 degrees
    WindModel wind;
    double sigma_px = 0.0;          // annotation vertex noise
    double wind_mismatch_m_s = 0.0; // truth wind minus candidate wind (u component)
    AdvectionParams advection;
    MatchConfig match;
};

struct Scenario {
    MetGrid candidate_met;                      // what the pipeline consumes
    std::vector<FlightTrack> candidate_flights; // phantoms excluded
    CameraModel camera;
    AnnotationSet annotations;                  // ground truth embedded (flight_id links)
    std::size_t new_contrails = 0;
    std::size_t old_contrails = 0;
    // verified property: no candidate plume within tau_d of any old contrail
    bool old_contrails_separated = true;
    double min_old_candidate_distance_px = kInfDistance;
};

/// Deterministic end to end: identical specs give byte-identical files.
/// Throws RuntimeFailure when the spec yields zero visible contrails.
Scenario generate_scenario(const ScenarioSpec& spec);

/// Write met.cmet, flights.csv, annotations.json, camera.json and a ready
/// config.json into `dir` (exercising the same formats the loader consumes).
void write_scenario(const Scenario& scenario, const ScenarioSpec& spec,
                    const std::string& dir);

}  // namespace contrailmatch
