#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "contrailmatch/errors.hpp"
#include "contrailmatch/pipeline.hpp"
#include "contrailmatch/synthetic.hpp"

namespace cm = contrailmatch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLoadError = 2;
constexpr int kExitRuntimeError = 3;

struct RunOverrides {
    std::string config_path;
    std::string annotations, flights, met, camera, out;
    double dt_before = -1, dt_after = -1, tau_d = -1, alpha = -1, beta = -1, tau_p = -1;
    std::string assignment, normalization;
    bool overlays = false;
};

void add_run_options(CLI::App* app, RunOverrides& opt) {
    const char* env_config = std::getenv("CONTRAILMATCH_CONFIG");
    app->add_option("--config", opt.config_path, "Run configuration JSON")
        ->default_val(env_config ? env_config : "");
    app->add_option("--annotations", opt.annotations, "Annotation file (overrides config)");
    app->add_option("--flights", opt.flights, "Flight track file (overrides config)");
    app->add_option("--met", opt.met, "Met grid file (overrides config)");
    app->add_option("--camera", opt.camera, "Camera calibration file (overrides config)");
    app->add_option("--out", opt.out, "Output directory (overrides config)");
    app->add_option("--dt-before", opt.dt_before, "Temporal window before formation, s");
    app->add_option("--dt-after", opt.dt_after, "Temporal window after formation, s");
    app->add_option("--tau-d", opt.tau_d, "Distance cut-off, px");
    app->add_option("--alpha", opt.alpha, "EWMA persistence in [0,1]");
    app->add_option("--beta", opt.beta, "Softmax inverse temperature");
    app->add_option("--tau-p", opt.tau_p, "Probability floor in [0,1]");
    app->add_option("--assignment", opt.assignment, "greedy | hungarian");
    app->add_option("--normalization", opt.normalization, "row | global");
    app->add_flag("--overlays", opt.overlays, "Emit per-frame SVG overlays");
}

cm::RunConfig build_config(const RunOverrides& opt) {
    if (opt.config_path.empty())
        throw cm::LoadError("no --config given and CONTRAILMATCH_CONFIG is unset");
    cm::RunConfig cfg = cm::load_run_config(opt.config_path);
    if (!opt.annotations.empty()) cfg.annotations_path = opt.annotations;
    if (!opt.flights.empty()) cfg.flights_path = opt.flights;
    if (!opt.met.empty()) cfg.met_path = opt.met;
    if (!opt.camera.empty()) {
        cfg.camera_path = opt.camera;
        cfg.camera.reset();
    }
    if (!opt.out.empty()) cfg.output_dir = opt.out;
    if (opt.dt_before >= 0) cfg.match.dt_before_s = opt.dt_before;
    if (opt.dt_after >= 0) cfg.match.dt_after_s = opt.dt_after;
    if (opt.tau_d >= 0) cfg.match.tau_d_px = opt.tau_d;
    if (opt.alpha >= 0) cfg.match.alpha = opt.alpha;
    if (opt.beta >= 0) cfg.match.beta = opt.beta;
    if (opt.tau_p >= 0) cfg.match.tau_p = opt.tau_p;
    if (!opt.assignment.empty()) {
        if (opt.assignment == "greedy")
            cfg.match.assignment = cm::AssignmentMethod::kGreedy;
        else if (opt.assignment == "hungarian")
            cfg.match.assignment = cm::AssignmentMethod::kHungarian;
        else
            throw cm::LoadError("unknown assignment method: " + opt.assignment);
    }
    if (!opt.normalization.empty()) {
        if (opt.normalization == "row")
            cfg.match.normalization = cm::Normalization::kRow;
        else if (opt.normalization == "global")
            cfg.match.normalization = cm::Normalization::kGlobal;
        else
            throw cm::LoadError("unknown normalization: " + opt.normalization);
    }
    if (opt.overlays) cfg.emit_overlays = true;
    return cfg;
}

void print_reports(const cm::PipelineResult& result) {
    for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
    std::cout << "frames processed:   " << result.frames_processed << "\n";
    std::cout << "candidate flights:  " << result.candidate_flights << "\n";
    std::cout << "records written:    " << result.records.size() << "\n";
    if (result.dropped_parcels > 0)
        std::cerr << "warning: " << result.dropped_parcels
                  << " parcels left the met domain and were dropped\n";
    for (const auto& report : result.reports) {
        std::cout << "\n[" << (report.point == cm::EvaluationPoint::kFirst ? "first" : "last")
                  << " attribution] " << report.total << " contrails (" << report.new_count
                  << " new, " << report.old_count << " old)\n";
        for (const auto& flow : report.flows)
            std::cout << "  " << cm::outcome_name(flow.outcome) << ": " << flow.count << " ("
                      << cm::format_double(100.0 * flow.fraction, 1) << "% of dataset)\n";
        std::cout << "  correct attribution rate (new): "
                  << cm::format_double(100.0 * report.correct_attribution_rate_new, 1) << "%\n";
        std::cout << "  correct omission rate (old):    "
                  << cm::format_double(100.0 * report.correct_omission_rate_old, 1) << "%\n";
    }
}

int run_command(const RunOverrides& opt, bool overlays_only) {
    cm::RunConfig cfg = build_config(opt);
    if (overlays_only) cfg.emit_overlays = true;
    const cm::PipelineResult result = cm::run_pipeline(cfg);
    print_reports(result);
    std::cout << "\noutputs in " << cfg.output_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contrail-to-flight attribution from ground camera annotations"};
    app.require_subcommand(1);

    RunOverrides run_opt;
    auto* run = app.add_subcommand("run", "Run the attribution pipeline");
    add_run_options(run, run_opt);

    RunOverrides overlay_opt;
    auto* overlay = app.add_subcommand("overlay", "Re-run the pipeline, emitting overlays");
    add_run_options(overlay, overlay_opt);

    cm::ScenarioSpec spec;
    std::string synth_out = "scenario";
    std::string wind_kind = "uniform";
    auto* synth = app.add_subcommand("synth", "Generate a synthetic scenario");
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--seed", spec.seed, "Random seed");
    synth->add_option("--flights", spec.flight_count, "Number of candidate flights");
    synth->add_option("--frames", spec.frame_count, "Number of frames");
    synth->add_option("--sigma", spec.sigma_px, "Annotation vertex noise, px");
    synth->add_option("--old-fraction", spec.old_fraction, "Phantom flight fraction");
    synth->add_option("--wind", wind_kind, "uniform | shear");
    synth->add_option("--wind-mismatch", spec.wind_mismatch_m_s,
                      "Truth-vs-candidate wind offset, m/s");

    std::string eval_records, eval_annotations, eval_out = "out";
    auto* eval = app.add_subcommand("eval", "Re-score existing attribution records");
    eval->add_option("--records", eval_records, "records.csv from a previous run")->required();
    eval->add_option("--annotations", eval_annotations, "Annotation file with ground truth")
        ->required();
    eval->add_option("--out", eval_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(run_opt, false);
        if (overlay->parsed()) return run_command(overlay_opt, true);
        if (synth->parsed()) {
            if (wind_kind == "shear") {
                spec.wind.kind = cm::WindKind::kLinearShear;
                spec.wind.du_dlat = 4.0;
                spec.wind.dv_dlat = -2.0;
            } else if (wind_kind != "uniform") {
                throw cm::LoadError("unknown wind model: " + wind_kind);
            }
            const cm::Scenario scenario = cm::generate_scenario(spec);
            cm::write_scenario(scenario, spec, synth_out);
            std::cout << "scenario written to " << synth_out << " (" << scenario.new_contrails
                      << " new, " << scenario.old_contrails << " old contrails)\n";
            if (!scenario.old_contrails_separated)
                std::cerr << "warning: an old contrail lies within tau_d of a candidate "
                             "plume (min distance "
                          << cm::format_double(scenario.min_old_candidate_distance_px, 2)
                          << " px)\n";
            return kExitOk;
        }
        if (eval->parsed()) {
            const auto records = cm::load_records(eval_records);
            const auto annotations = cm::load_annotations(eval_annotations);
            const auto reports = cm::evaluate_records(
                records, annotations,
                {cm::EvaluationPoint::kFirst, cm::EvaluationPoint::kLast});
            for (const auto& report : reports) {
                const char* name = report.point == cm::EvaluationPoint::kFirst
                                       ? "report_first.csv"
                                       : "report_last.csv";
                cm::write_file((std::filesystem::path(eval_out) / name).string(),
                               cm::format_report(report));
            }
            cm::write_file((std::filesystem::path(eval_out) / "report.json").string(),
                           cm::format_report_json(reports));
            std::cout << "reports written to " << eval_out << "\n";
            return kExitOk;
        }
    } catch (const cm::LoadError& e) {
        std::cerr << "load error: " << e.what() << "\n";
        return kExitLoadError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
