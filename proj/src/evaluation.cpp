#include "contrailmatch/evaluation.hpp"

#include <stdexcept>

namespace contrailmatch {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::kCorrectAttribution: return "correct_attribution";
        case Outcome::kWrongAttribution: return "wrong_attribution";
        case Outcome::kFalseAttribution: return "false_attribution";
        case Outcome::kCorrectOmission: return "correct_omission";
        case Outcome::kMissedAttribution: return "missed_attribution";
    }
    return "unknown";
}

Outcome classify_outcome(const std::optional<std::string>& assigned_flight_id,
                         ContrailStatus status,
                         const std::optional<std::string>& true_flight_id) {
    if (status == ContrailStatus::kNew && !true_flight_id)
        throw std::invalid_argument(
            "classify_outcome: new contrail without a generating flight id");
    if (assigned_flight_id) {
        if (status == ContrailStatus::kOld) return Outcome::kFalseAttribution;
        return *assigned_flight_id == *true_flight_id ? Outcome::kCorrectAttribution
                                                      : Outcome::kWrongAttribution;
    }
    return status == ContrailStatus::kOld ? Outcome::kCorrectOmission
                                          : Outcome::kMissedAttribution;
}

SummaryReport aggregate(const std::vector<ContrailEvalRecord>& records,
                        EvaluationPoint point) {
    SummaryReport report;
    report.point = point;
    report.total = records.size();
    for (const auto& rec : records) {
        const Outcome o =
            classify_outcome(rec.assigned_flight_id, rec.status, rec.true_flight_id);
        ++report.counts[static_cast<std::size_t>(o)];
        if (rec.status == ContrailStatus::kNew)
            ++report.new_count;
        else
            ++report.old_count;
    }
    if (report.total > 0)
        for (std::size_t k = 0; k < report.counts.size(); ++k)
            report.fractions[k] =
                static_cast<double>(report.counts[k]) / static_cast<double>(report.total);

    auto rate = [](std::size_t count, std::size_t total) {
        return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
    };
    report.correct_attribution_rate_new =
        rate(report.count_of(Outcome::kCorrectAttribution), report.new_count);
    report.wrong_attribution_rate_new =
        rate(report.count_of(Outcome::kWrongAttribution), report.new_count);
    report.missed_attribution_rate_new =
        rate(report.count_of(Outcome::kMissedAttribution), report.new_count);
    report.correct_omission_rate_old =
        rate(report.count_of(Outcome::kCorrectOmission), report.old_count);
    report.false_attribution_rate_old =
        rate(report.count_of(Outcome::kFalseAttribution), report.old_count);

    // fixed row order for golden outputs
    const struct {
        ContrailStatus status;
        bool attributed;
        Outcome outcome;
    } layout[5] = {
        {ContrailStatus::kNew, true, Outcome::kCorrectAttribution},
        {ContrailStatus::kNew, true, Outcome::kWrongAttribution},
        {ContrailStatus::kNew, false, Outcome::kMissedAttribution},
        {ContrailStatus::kOld, true, Outcome::kFalseAttribution},
        {ContrailStatus::kOld, false, Outcome::kCorrectOmission},
    };
    for (const auto& row : layout)
        report.flows.push_back({row.status, row.attributed, row.outcome,
                                report.count_of(row.outcome),
                                report.fraction_of(row.outcome)});
    return report;
}

}  // namespace contrailmatch
