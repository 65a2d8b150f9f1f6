#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "contrailmatch/attribution.hpp"

namespace contrailmatch {

enum class Outcome {
    kCorrectAttribution,
    kWrongAttribution,
    kFalseAttribution,
    kCorrectOmission,
    kMissedAttribution,
};

inline constexpr std::array<Outcome, 5> kAllOutcomes = {
    Outcome::kCorrectAttribution, Outcome::kWrongAttribution,
    Outcome::kFalseAttribution, Outcome::kCorrectOmission,
    Outcome::kMissedAttribution};

const char* outcome_name(Outcome o);

enum class EvaluationPoint { kFirst, kLast };

/// Ground truth and decision for one contrail at one evaluation point.
struct ContrailEvalRecord {
    std::string contrail_id;
    ContrailStatus status = ContrailStatus::kNew;
    std::optional<std::string> true_flight_id;      // required for new contrails
    std::optional<std::string> assigned_flight_id;  // empty = unattributed
};

/// Classify one attribution decision against ground truth. A new contrail
/// without a generating flight id is a data error.
Outcome classify_outcome(const std::optional<std::string>& assigned_flight_id,
                         ContrailStatus status,
                         const std::optional<std::string>& true_flight_id);

struct FlowRow {
    ContrailStatus status;
    bool attributed = false;
    Outcome outcome;
    std::size_t count = 0;
    double fraction = 0.0;  // of all contrails
};

struct SummaryReport {
    EvaluationPoint point = EvaluationPoint::kFirst;
    std::size_t total = 0;
    std::size_t new_count = 0;
    std::size_t old_count = 0;
    std::array<std::size_t, 5> counts{};     // indexed by Outcome order
    std::array<double, 5> fractions{};       // of all contrails
    double correct_attribution_rate_new = 0.0;  // correct / new
    double wrong_attribution_rate_new = 0.0;
    double missed_attribution_rate_new = 0.0;
    double correct_omission_rate_old = 0.0;     // omitted / old
    double false_attribution_rate_old = 0.0;
    std::vector<FlowRow> flows;  // fixed order, Sankey-ready

    std::size_t count_of(Outcome o) const { return counts[static_cast<std::size_t>(o)]; }
    double fraction_of(Outcome o) const { return fractions[static_cast<std::size_t>(o)]; }
};

SummaryReport aggregate(const std::vector<ContrailEvalRecord>& records,
                        EvaluationPoint point);

}  // namespace contrailmatch
