#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contrailmatch/geometry.hpp"

namespace contrailmatch {

enum class ContrailStatus { kNew, kOld };

enum class Normalization { kRow, kGlobal };
enum class AssignmentMethod { kGreedy, kHungarian };

struct MatchConfig {
    double dt_before_s = 120.0;
    double dt_after_s = 120.0;
    double tau_d_px = 30.0;   // distance cut-off; beyond it a pair scores +inf
    double alpha = 0.7;       // EWMA persistence
    double beta = 1.0;        // softmax inverse temperature
    double tau_p = 0.5;       // probability floor
    double d_cap_px = 30.0;   // memory update value when the current distance is +inf
    double hausdorff_sample_px = 2.0;
    Normalization normalization = Normalization::kRow;
    AssignmentMethod assignment = AssignmentMethod::kGreedy;
};

/// Dense m x n matrix of aggregated distances (+inf marks excluded pairs).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill)
        : rows(r), cols(c), values(r * c, fill) {}
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Row-stochastic probabilities before and after the tau_p floor.
struct ProbabilityMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> raw;         // softmax output
    std::vector<double> assignable;  // entries below tau_p zeroed
    double raw_at(std::size_t i, std::size_t j) const { return raw[i * cols + j]; }
    double assignable_at(std::size_t i, std::size_t j) const {
        return assignable[i * cols + j];
    }
};

/// One advected plume segment projected into pixel space.
struct ProjectedSegment {
    double formation_time = 0.0;
    PixelPolygon polygon;
};

struct PlumeFrameData {
    std::string flight_id;
    std::vector<ProjectedSegment> segments;
};

struct ContrailFrameData {
    std::string contrail_id;
    double formation_time = 0.0;
    ContrailStatus status = ContrailStatus::kNew;  // ground truth; unused by the matcher
    std::vector<Polyline> centerlines;
    MultiPolygon polygons;  // kept for overlays / IoU, not used by the distance
};

struct FrameInput {
    double frame_time = 0.0;
    std::vector<ContrailFrameData> contrails;
    std::vector<PlumeFrameData> plumes;
};

struct Attribution {
    std::optional<std::string> flight_id;
    double probability = 0.0;
    double aggregated_distance = kInfDistance;
    double raw_distance = kInfDistance;  // this frame's instantaneous distance
};

struct AttributionResult {
    double frame_time = 0.0;
    std::map<std::string, Attribution> per_contrail;  // keyed by contrail id
};

struct PairDistance {
    std::string contrail_id;
    std::string flight_id;
    double distance = kInfDistance;  // +inf = evaluated but beyond the cut-off
};

/// Persistent matcher state: pairwise EWMA memory plus per-frame history.
struct AttributionState {
    std::map<std::pair<std::string, std::string>, double> memory;  // (contrail, flight) -> D~
    ProbabilityMatrix last_probabilities;
    std::vector<std::string> last_contrail_ids;
    std::vector<std::string> last_flight_ids;
    std::vector<AttributionResult> history;
};

/// Keep plume segments whose formation time falls in
/// [t_i - dt_before, t_i + dt_after]; the result is the (implicit) union of
/// their polygons. Empty selection -> the pair is discarded for this frame.
std::optional<MultiPolygon> temporal_filter(double contrail_formation_time,
                                            const PlumeFrameData& plume,
                                            const MatchConfig& cfg);

/// Directed Hausdorff from the contrail centerlines to the filtered plume,
/// with distances beyond tau_d replaced by +inf.
double pairwise_distance(const std::vector<Polyline>& centerlines,
                         const MultiPolygon& filtered, const MatchConfig& cfg);

/// EWMA memory update. Pairs absent from `frame_distances` are untouched;
/// first finite observation initializes the memory; a known pair with an
/// infinite current distance decays toward d_cap.
void update_memory(AttributionState& state, const std::vector<PairDistance>& frame_distances,
                   double alpha, double d_cap);

/// Softmax over scores S = -D~ (excluded pairs get a very negative sentinel),
/// row-wise or over the whole matrix, then the tau_p floor.
ProbabilityMatrix to_probabilities(const Matrix& aggregated, double beta, double tau_p,
                                   Normalization mode);

struct RowAssignment {
    std::optional<std::size_t> column;
    double probability = 0.0;
};

/// Independent per-row argmax over floored probabilities. Ties break toward
/// the lowest aggregated distance, then the lexicographically smallest
/// flight id.
std::vector<RowAssignment> assign_greedy(const ProbabilityMatrix& p, const Matrix& aggregated,
                                         const std::vector<std::string>& flight_ids);

/// Optimal one-to-one assignment maximizing total floored probability
/// (rectangular matrices padded with zero-profit dummies).
std::vector<RowAssignment> assign_hungarian(const ProbabilityMatrix& p);

/// Full per-frame pass: filter -> distance -> memory -> probabilities ->
/// assignment. Appends the result to state.history.
AttributionResult attribute_frame(AttributionState& state, const FrameInput& frame,
                                  const MatchConfig& cfg);

}  // namespace contrailmatch
