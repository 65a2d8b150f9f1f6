#include "contrailmatch/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contrailmatch {

namespace {
constexpr double kSentinelScore = -1e9;
}

std::optional<MultiPolygon> temporal_filter(double contrail_formation_time,
                                            const PlumeFrameData& plume,
                                            const MatchConfig& cfg) {
    const double lo = contrail_formation_time - cfg.dt_before_s;
    const double hi = contrail_formation_time + cfg.dt_after_s;
    MultiPolygon kept;
    for (const auto& seg : plume.segments)
        if (seg.formation_time >= lo && seg.formation_time <= hi)
            kept.push_back(seg.polygon);
    if (kept.empty()) return std::nullopt;
    return kept;
}

double pairwise_distance(const std::vector<Polyline>& centerlines,
                         const MultiPolygon& filtered, const MatchConfig& cfg) {
    if (centerlines.empty() || filtered.empty()) return kInfDistance;
    const double d = directed_hausdorff(centerlines, filtered, cfg.hausdorff_sample_px,
                                        cfg.tau_d_px);
    return d > cfg.tau_d_px ? kInfDistance : d;
}

void update_memory(AttributionState& state, const std::vector<PairDistance>& frame_distances,
                   double alpha, double d_cap) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("update_memory: alpha must be in [0, 1]");
    for (const auto& pd : frame_distances) {
        const auto key = std::make_pair(pd.contrail_id, pd.flight_id);
        auto it = state.memory.find(key);
        if (std::isfinite(pd.distance)) {
            if (it == state.memory.end())
                state.memory.emplace(key, pd.distance);  // no stale prior
            else
                it->second = alpha * it->second + (1.0 - alpha) * pd.distance;
        } else if (it != state.memory.end()) {
            // graceful degradation instead of instant erasure
            it->second = alpha * it->second + (1.0 - alpha) * d_cap;
        }
    }
}

ProbabilityMatrix to_probabilities(const Matrix& aggregated, double beta, double tau_p,
                                   Normalization mode) {
    if (beta <= 0.0) throw std::invalid_argument("to_probabilities: beta must be > 0");
    ProbabilityMatrix p;
    p.rows = aggregated.rows;
    p.cols = aggregated.cols;
    p.raw.assign(aggregated.values.size(), 0.0);
    p.assignable.assign(aggregated.values.size(), 0.0);
    if (aggregated.values.empty()) return p;

    auto score = [&](double d) { return std::isfinite(d) ? -d : kSentinelScore; };

    if (mode == Normalization::kRow) {
        for (std::size_t i = 0; i < p.rows; ++i) {
            double max_score = kSentinelScore;
            bool any_finite = false;
            for (std::size_t j = 0; j < p.cols; ++j) {
                const double d = aggregated.at(i, j);
                if (std::isfinite(d)) {
                    any_finite = true;
                    max_score = std::max(max_score, -d);
                }
            }
            if (!any_finite) continue;  // fully excluded row stays all-zero
            double denom = 0.0;
            for (std::size_t j = 0; j < p.cols; ++j)
                denom += std::exp(beta * (score(aggregated.at(i, j)) - max_score));
            for (std::size_t j = 0; j < p.cols; ++j)
                p.raw[i * p.cols + j] =
                    std::exp(beta * (score(aggregated.at(i, j)) - max_score)) / denom;
        }
    } else {
        double max_score = kSentinelScore;
        bool any_finite = false;
        for (double d : aggregated.values)
            if (std::isfinite(d)) {
                any_finite = true;
                max_score = std::max(max_score, -d);
            }
        if (any_finite) {
            double denom = 0.0;
            for (double d : aggregated.values) denom += std::exp(beta * (score(d) - max_score));
            for (std::size_t k = 0; k < aggregated.values.size(); ++k)
                p.raw[k] = std::exp(beta * (score(aggregated.values[k]) - max_score)) / denom;
        }
    }

    for (std::size_t k = 0; k < p.raw.size(); ++k)
        p.assignable[k] = p.raw[k] < tau_p ? 0.0 : p.raw[k];
    return p;
}

std::vector<RowAssignment> assign_greedy(const ProbabilityMatrix& p, const Matrix& aggregated,
                                         const std::vector<std::string>& flight_ids) {
    std::vector<RowAssignment> out(p.rows);
    for (std::size_t i = 0; i < p.rows; ++i) {
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < p.cols; ++j) {
            const double prob = p.assignable_at(i, j);
            if (prob <= 0.0) continue;
            if (!best) {
                best = j;
                continue;
            }
            const double best_prob = p.assignable_at(i, *best);
            if (prob > best_prob + 1e-12) {
                best = j;
            } else if (prob >= best_prob - 1e-12) {
                // tie: lowest aggregated distance, then lexicographic flight id
                const double da = aggregated.at(i, j);
                const double db = aggregated.at(i, *best);
                if (da < db - 1e-12 ||
                    (std::abs(da - db) <= 1e-12 && flight_ids[j] < flight_ids[*best]))
                    best = j;
            }
        }
        if (best) out[i] = {best, p.assignable_at(i, *best)};
    }
    return out;
}

std::vector<RowAssignment> assign_hungarian(const ProbabilityMatrix& p) {
    const int n = static_cast<int>(std::max(p.rows, p.cols));
    std::vector<RowAssignment> out(p.rows);
    if (n == 0) return out;

    // Minimize cost = -probability on a square matrix padded with zero-profit
    // dummies. Shortest-augmenting-path Hungarian with potentials; rows and
    // columns are 1-indexed internally, column 0 is the virtual start.
    auto cost = [&](int i, int j) {
        const std::size_t r = static_cast<std::size_t>(i - 1);
        const std::size_t c = static_cast<std::size_t>(j - 1);
        if (r < p.rows && c < p.cols) return -p.assignable_at(r, c);
        return 0.0;
    };

    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0);  // column -> row (0 = unmatched)
    std::vector<int> way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> min_slack(n + 1, kInfDistance);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = 0;
            double delta = kInfDistance;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double slack = cost(i0, j) - u[i0] - v[j];
                if (slack < min_slack[j]) {
                    min_slack[j] = slack;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (int j = 1; j <= n; ++j) {
        const std::size_t row = static_cast<std::size_t>(match[j] - 1);
        const std::size_t col = static_cast<std::size_t>(j - 1);
        if (row >= p.rows || col >= p.cols) continue;
        const double prob = p.assignable_at(row, col);
        if (prob > 0.0) out[row] = {col, prob};  // below-floor matches stay unassigned
    }
    return out;
}

AttributionResult attribute_frame(AttributionState& state, const FrameInput& frame,
                                  const MatchConfig& cfg) {
    // stable processing order regardless of input arrangement
    std::vector<const ContrailFrameData*> contrails;
    for (const auto& c : frame.contrails) contrails.push_back(&c);
    std::sort(contrails.begin(), contrails.end(),
              [](const auto* a, const auto* b) { return a->contrail_id < b->contrail_id; });
    std::vector<const PlumeFrameData*> plumes;
    for (const auto& f : frame.plumes) plumes.push_back(&f);
    std::sort(plumes.begin(), plumes.end(),
              [](const auto* a, const auto* b) { return a->flight_id < b->flight_id; });

    std::vector<PairDistance> frame_distances;
    Matrix raw(contrails.size(), plumes.size(), kInfDistance);
    for (std::size_t i = 0; i < contrails.size(); ++i) {
        for (std::size_t j = 0; j < plumes.size(); ++j) {
            const auto filtered = temporal_filter(contrails[i]->formation_time, *plumes[j], cfg);
            if (!filtered) continue;  // pair discarded; memory untouched
            const double d = pairwise_distance(contrails[i]->centerlines, *filtered, cfg);
            raw.at(i, j) = d;
            frame_distances.push_back({contrails[i]->contrail_id, plumes[j]->flight_id, d});
        }
    }

    update_memory(state, frame_distances, cfg.alpha, cfg.d_cap_px);

    Matrix aggregated(contrails.size(), plumes.size(), kInfDistance);
    for (std::size_t i = 0; i < contrails.size(); ++i)
        for (std::size_t j = 0; j < plumes.size(); ++j) {
            const auto it = state.memory.find(
                {contrails[i]->contrail_id, plumes[j]->flight_id});
            if (it != state.memory.end()) aggregated.at(i, j) = it->second;
        }

    const ProbabilityMatrix p =
        to_probabilities(aggregated, cfg.beta, cfg.tau_p, cfg.normalization);

    std::vector<std::string> flight_ids;
    for (const auto* f : plumes) flight_ids.push_back(f->flight_id);
    const auto assignments = cfg.assignment == AssignmentMethod::kGreedy
                                 ? assign_greedy(p, aggregated, flight_ids)
                                 : assign_hungarian(p);

    AttributionResult result;
    result.frame_time = frame.frame_time;
    for (std::size_t i = 0; i < contrails.size(); ++i) {
        Attribution attr;
        if (assignments[i].column) {
            const std::size_t j = *assignments[i].column;
            attr.flight_id = flight_ids[j];
            attr.probability = p.raw_at(i, j);
            attr.aggregated_distance = aggregated.at(i, j);
            attr.raw_distance = raw.at(i, j);
        }
        result.per_contrail.emplace(contrails[i]->contrail_id, attr);
    }

    state.last_probabilities = p;
    state.last_contrail_ids.clear();
    for (const auto* c : contrails) state.last_contrail_ids.push_back(c->contrail_id);
    state.last_flight_ids = flight_ids;
    state.history.push_back(result);
    return result;
}

}  // namespace contrailmatch
