#include "contrailmatch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace contrailmatch {

std::size_t PixelMask::count() const {
    return static_cast<std::size_t>(
        std::count_if(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; }));
}

bool point_in_polygon(const Vec2& p, const PixelPolygon& polygon) {
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[j];
        const Vec2& b = polygon[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            const double x_cross = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool point_in_any_polygon(const Vec2& p, const MultiPolygon& polygons) {
    for (const auto& poly : polygons)
        if (poly.size() >= 3 && point_in_polygon(p, poly)) return true;
    return false;
}

PixelMask rasterize(const MultiPolygon& polygons, int width, int height) {
    PixelMask mask(width, height);
    std::vector<double> crossings;
    for (const auto& poly : polygons) {
        if (poly.size() < 3) continue;
        double ymin = poly[0].y, ymax = poly[0].y;
        for (const auto& v : poly) {
            ymin = std::min(ymin, v.y);
            ymax = std::max(ymax, v.y);
        }
        const int row_lo = std::max(0, static_cast<int>(std::floor(ymin - 0.5)));
        const int row_hi = std::min(height - 1, static_cast<int>(std::ceil(ymax)));
        for (int y = row_lo; y <= row_hi; ++y) {
            const double yc = y + 0.5;
            crossings.clear();
            const std::size_t n = poly.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                const Vec2& a = poly[j];
                const Vec2& b = poly[i];
                if ((b.y > yc) != (a.y > yc))
                    crossings.push_back(b.x + (yc - b.y) * (a.x - b.x) / (a.y - b.y));
            }
            std::sort(crossings.begin(), crossings.end());
            for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
                // pixel centers x+0.5 in [crossings[k], crossings[k+1])
                int x_lo = static_cast<int>(std::ceil(crossings[k] - 0.5));
                int x_hi = static_cast<int>(std::ceil(crossings[k + 1] - 0.5)) - 1;
                x_lo = std::max(x_lo, 0);
                x_hi = std::min(x_hi, width - 1);
                for (int x = x_lo; x <= x_hi; ++x) mask.set(x, y, true);
            }
        }
    }
    return mask;
}

namespace {

// Zhang-Suen neighborhood, clockwise from north: p2..p9.
inline void neighborhood(const PixelMask& m, int x, int y, int p[9]) {
    p[1] = m.at(x, y - 1);
    p[2] = m.at(x + 1, y - 1);
    p[3] = m.at(x + 1, y);
    p[4] = m.at(x + 1, y + 1);
    p[5] = m.at(x, y + 1);
    p[6] = m.at(x - 1, y + 1);
    p[7] = m.at(x - 1, y);
    p[8] = m.at(x - 1, y - 1);
}

inline int transitions(const int p[9]) {
    int a = 0;
    for (int i = 1; i <= 8; ++i) {
        const int next = (i == 8) ? p[1] : p[i + 1];
        if (p[i] == 0 && next == 1) ++a;
    }
    return a;
}

inline int neighbor_count(const int p[9]) {
    return p[1] + p[2] + p[3] + p[4] + p[5] + p[6] + p[7] + p[8];
}

}  // namespace

PixelMask thin(const PixelMask& mask) {
    PixelMask out = mask;
    std::vector<std::pair<int, int>> active;
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            if (out.at(x, y)) active.emplace_back(x, y);

    std::vector<std::pair<int, int>> doomed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int phase = 0; phase < 2; ++phase) {
            doomed.clear();
            for (const auto& [x, y] : active) {
                int p[9];
                neighborhood(out, x, y, p);
                const int b = neighbor_count(p);
                if (b < 2 || b > 6) continue;
                if (transitions(p) != 1) continue;
                if (phase == 0) {
                    if (p[1] * p[3] * p[5] != 0) continue;
                    if (p[3] * p[5] * p[7] != 0) continue;
                } else {
                    if (p[1] * p[3] * p[7] != 0) continue;
                    if (p[1] * p[5] * p[7] != 0) continue;
                }
                doomed.emplace_back(x, y);
            }
            if (!doomed.empty()) {
                changed = true;
                for (const auto& [x, y] : doomed) out.set(x, y, false);
                active.erase(std::remove_if(active.begin(), active.end(),
                                            [&](const auto& px) {
                                                return !out.at(px.first, px.second);
                                            }),
                             active.end());
            }
        }
    }

    // Zhang-Suen alone does not guarantee the no-2x2 invariant on every
    // input; remove any residual block via simple-point deletion.
    bool scrubbed = true;
    while (scrubbed) {
        scrubbed = false;
        for (int y = 0; y + 1 < out.height(); ++y) {
            for (int x = 0; x + 1 < out.width(); ++x) {
                if (!(out.at(x, y) && out.at(x + 1, y) && out.at(x, y + 1) &&
                      out.at(x + 1, y + 1)))
                    continue;
                const std::pair<int, int> block[4] = {
                    {x, y}, {x + 1, y}, {x, y + 1}, {x + 1, y + 1}};
                for (const auto& [bx, by] : block) {
                    int p[9];
                    neighborhood(out, bx, by, p);
                    if (transitions(p) == 1) {
                        out.set(bx, by, false);
                        scrubbed = true;
                        break;
                    }
                }
            }
        }
    }
    return out;
}

PixelGraph skeleton_to_graph(const PixelMask& mask) {
    PixelGraph g;
    std::vector<std::size_t> index(static_cast<std::size_t>(mask.width()) * mask.height(),
                                   SIZE_MAX);
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y)) {
                index[static_cast<std::size_t>(y) * mask.width() + x] = g.nodes.size();
                g.nodes.push_back({x, y});
            }
    g.adjacency.resize(g.nodes.size());

    const double kDiag = std::sqrt(2.0);
    auto add_edge = [&](std::size_t a, int nx, int ny, double weight) {
        if (nx < 0 || ny < 0 || nx >= mask.width() || ny >= mask.height()) return;
        const std::size_t b = index[static_cast<std::size_t>(ny) * mask.width() + nx];
        if (b == SIZE_MAX) return;
        const std::size_t e = g.edges.size();
        g.edges.push_back({a, b, weight});
        g.adjacency[a].push_back(e);
        g.adjacency[b].push_back(e);
    };
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto [x, y] = g.nodes[i];
        // E, SW, S, SE: each undirected edge added exactly once
        add_edge(i, x + 1, y, 1.0);
        add_edge(i, x - 1, y + 1, kDiag);
        add_edge(i, x, y + 1, 1.0);
        add_edge(i, x + 1, y + 1, kDiag);
    }
    return g;
}

namespace {

struct PathCandidate {
    double weight = -1.0;
    std::vector<std::size_t> nodes;
};

std::pair<PixelGraph::Pixel, PixelGraph::Pixel> endpoint_pair(const PixelGraph& g,
                                                              const std::vector<std::size_t>& nodes) {
    auto a = g.nodes[nodes.front()];
    auto b = g.nodes[nodes.back()];
    auto key = [](const PixelGraph::Pixel& p) { return std::make_pair(p.y, p.x); };
    if (key(b) < key(a)) std::swap(a, b);
    return {a, b};
}

// True when `cand` should replace `best` (heavier, or equal weight with a
// lexicographically smaller endpoint pixel pair).
bool better_path(const PixelGraph& g, const PathCandidate& cand, const PathCandidate& best) {
    if (best.nodes.empty()) return true;
    if (cand.weight > best.weight + 1e-9) return true;
    if (cand.weight < best.weight - 1e-9) return false;
    const auto [ca, cb] = endpoint_pair(g, cand.nodes);
    const auto [ba, bb] = endpoint_pair(g, best.nodes);
    const auto ck = std::make_tuple(ca.y, ca.x, cb.y, cb.x);
    const auto bk = std::make_tuple(ba.y, ba.x, bb.y, bb.x);
    return ck < bk;
}

std::size_t other_end(const PixelGraph::Edge& e, std::size_t node) {
    return e.a == node ? e.b : e.a;
}

// Farthest-node search along unique tree paths (DFS, no revisits).
PathCandidate tree_farthest(const PixelGraph& g, const std::vector<char>& in_component,
                            std::size_t start) {
    std::vector<double> dist(g.nodes.size(), -1.0);
    std::vector<std::size_t> parent(g.nodes.size(), SIZE_MAX);
    std::vector<std::size_t> stack = {start};
    dist[start] = 0.0;
    PathCandidate best;
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        if (dist[n] > best.weight) {
            best.weight = dist[n];
            best.nodes = {n};  // endpoint only; unwound below
        }
        for (std::size_t ei : g.adjacency[n]) {
            const auto& e = g.edges[ei];
            const std::size_t m = other_end(e, n);
            if (!in_component[m] || dist[m] >= 0.0) continue;
            dist[m] = dist[n] + e.weight;
            parent[m] = n;
            stack.push_back(m);
        }
    }
    std::vector<std::size_t> path;
    for (std::size_t n = best.nodes.front(); n != SIZE_MAX; n = parent[n])
        path.push_back(n);
    std::reverse(path.begin(), path.end());
    best.nodes = std::move(path);
    return best;
}

// Exact longest path on a tree component: all maximal simple paths end at
// leaves, so scan eccentricities from every leaf.
PathCandidate tree_longest_path(const PixelGraph& g, const std::vector<char>& in_component,
                                const std::vector<std::size_t>& members) {
    std::vector<std::size_t> leaves;
    for (std::size_t n : members) {
        std::size_t degree = 0;
        for (std::size_t ei : g.adjacency[n])
            if (in_component[other_end(g.edges[ei], n)]) ++degree;
        if (degree <= 1) leaves.push_back(n);
    }
    if (leaves.empty()) leaves.push_back(members.front());  // single node
    PathCandidate best;
    for (std::size_t leaf : leaves) {
        PathCandidate cand = tree_farthest(g, in_component, leaf);
        if (better_path(g, cand, best)) best = std::move(cand);
    }
    return best;
}

// Exhaustive simple-path search; feasible when the cycle space is small.
void exhaustive_dfs(const PixelGraph& g, const std::vector<char>& in_component,
                    std::vector<char>& visited, std::vector<std::size_t>& path,
                    double weight, PathCandidate& best) {
    if (better_path(g, {weight, path}, best)) best = {weight, path};
    const std::size_t n = path.back();
    for (std::size_t ei : g.adjacency[n]) {
        const auto& e = g.edges[ei];
        const std::size_t m = other_end(e, n);
        if (!in_component[m] || visited[m]) continue;
        visited[m] = 1;
        path.push_back(m);
        exhaustive_dfs(g, in_component, visited, path, weight + e.weight, best);
        path.pop_back();
        visited[m] = 0;
    }
}

// Double-sweep heuristic for cyclic components: shortest-path tree from the
// farthest node pair approximates the centerline.
PathCandidate dijkstra_farthest(const PixelGraph& g, const std::vector<char>& in_component,
                                std::size_t start) {
    std::vector<double> dist(g.nodes.size(), kInfDistance);
    std::vector<std::size_t> parent(g.nodes.size(), SIZE_MAX);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[start] = 0.0;
    queue.push({0.0, start});
    while (!queue.empty()) {
        const auto [d, n] = queue.top();
        queue.pop();
        if (d > dist[n]) continue;
        for (std::size_t ei : g.adjacency[n]) {
            const auto& e = g.edges[ei];
            const std::size_t m = other_end(e, n);
            if (!in_component[m]) continue;
            if (dist[n] + e.weight < dist[m] - 1e-12) {
                dist[m] = dist[n] + e.weight;
                parent[m] = n;
                queue.push({dist[m], m});
            }
        }
    }
    PathCandidate best;
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
        if (!in_component[n] || dist[n] == kInfDistance) continue;
        if (dist[n] > best.weight) {
            best.weight = dist[n];
            best.nodes = {n};
        }
    }
    std::vector<std::size_t> path;
    for (std::size_t n = best.nodes.front(); n != SIZE_MAX; n = parent[n])
        path.push_back(n);
    std::reverse(path.begin(), path.end());
    best.nodes = std::move(path);
    return best;
}

constexpr std::size_t kExhaustiveNodeLimit = 2000;

}  // namespace

Polyline longest_path(const PixelGraph& g, int max_extra_edges) {
    if (g.nodes.empty()) throw std::invalid_argument("longest_path: empty graph");

    std::vector<int> component(g.nodes.size(), -1);
    int n_components = 0;
    for (std::size_t seed = 0; seed < g.nodes.size(); ++seed) {
        if (component[seed] >= 0) continue;
        const int id = n_components++;
        std::vector<std::size_t> stack = {seed};
        component[seed] = id;
        while (!stack.empty()) {
            const std::size_t n = stack.back();
            stack.pop_back();
            for (std::size_t ei : g.adjacency[n]) {
                const std::size_t m = other_end(g.edges[ei], n);
                if (component[m] < 0) {
                    component[m] = id;
                    stack.push_back(m);
                }
            }
        }
    }

    PathCandidate best;
    for (int id = 0; id < n_components; ++id) {
        std::vector<char> in_component(g.nodes.size(), 0);
        std::vector<std::size_t> members;
        for (std::size_t n = 0; n < g.nodes.size(); ++n)
            if (component[n] == id) {
                in_component[n] = 1;
                members.push_back(n);
            }
        std::size_t edge_count = 0;
        for (const auto& e : g.edges)
            if (in_component[e.a]) ++edge_count;

        PathCandidate cand;
        const std::size_t extra = edge_count - (members.size() - 1);
        if (extra == 0) {
            cand = tree_longest_path(g, in_component, members);
        } else if (extra <= static_cast<std::size_t>(max_extra_edges) &&
                   members.size() <= kExhaustiveNodeLimit) {
            std::vector<char> visited(g.nodes.size(), 0);
            for (std::size_t start : members) {
                visited[start] = 1;
                std::vector<std::size_t> path = {start};
                exhaustive_dfs(g, in_component, visited, path, 0.0, cand);
                visited[start] = 0;
            }
        } else {
            PathCandidate sweep1 = dijkstra_farthest(g, in_component, members.front());
            cand = dijkstra_farthest(g, in_component, sweep1.nodes.back());
        }
        if (better_path(g, cand, best)) best = std::move(cand);
    }

    Polyline line;
    line.points.reserve(best.nodes.size());
    for (std::size_t n : best.nodes)
        line.points.push_back({g.nodes[n].x + 0.5, g.nodes[n].y + 0.5});
    return line;
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

struct BBox {
    double xmin = kInfDistance, ymin = kInfDistance;
    double xmax = -kInfDistance, ymax = -kInfDistance;
    void expand(const Vec2& v) {
        xmin = std::min(xmin, v.x);
        ymin = std::min(ymin, v.y);
        xmax = std::max(xmax, v.x);
        ymax = std::max(ymax, v.y);
    }
    double distance(const Vec2& p) const {
        const double dx = std::max({xmin - p.x, 0.0, p.x - xmax});
        const double dy = std::max({ymin - p.y, 0.0, p.y - ymax});
        return std::hypot(dx, dy);
    }
};

}  // namespace

double directed_hausdorff(const std::vector<Polyline>& lines, const MultiPolygon& region,
                          double sample_step_px, double early_exit_above) {
    bool any_polygon = false;
    for (const auto& poly : region)
        if (poly.size() >= 3) any_polygon = true;
    if (!any_polygon) return kInfDistance;  // no coverage at all

    std::vector<BBox> boxes(region.size());
    for (std::size_t i = 0; i < region.size(); ++i)
        for (const auto& v : region[i]) boxes[i].expand(v);

    auto region_distance = [&](const Vec2& p) {
        double best = kInfDistance;
        for (std::size_t i = 0; i < region.size(); ++i) {
            const auto& poly = region[i];
            if (poly.size() < 3) continue;
            if (boxes[i].distance(p) >= best) continue;
            if (point_in_polygon(p, poly)) return 0.0;
            const std::size_t n = poly.size();
            for (std::size_t k = 0, j = n - 1; k < n; j = k++)
                best = std::min(best, point_segment_distance(p, poly[j], poly[k]));
        }
        return best;
    };

    double worst = 0.0;
    auto visit = [&](const Vec2& p) {
        const double d = region_distance(p);
        if (d > worst) worst = d;
        return worst > early_exit_above;
    };

    for (const auto& line : lines) {
        if (line.points.empty()) continue;
        if (visit(line.points.front())) return kInfDistance;
        for (std::size_t i = 1; i < line.points.size(); ++i) {
            const Vec2& a = line.points[i - 1];
            const Vec2& b = line.points[i];
            const double seg_len = std::hypot(b.x - a.x, b.y - a.y);
            const int n_extra = std::max(0, static_cast<int>(std::ceil(seg_len / sample_step_px)) - 1);
            for (int k = 1; k <= n_extra; ++k) {
                const double t = static_cast<double>(k) / (n_extra + 1);
                if (visit({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}))
                    return kInfDistance;
            }
            if (visit(b)) return kInfDistance;
        }
    }
    return worst;
}

double iou(const MultiPolygon& a, const MultiPolygon& b, int width, int height) {
    const PixelMask ma = rasterize(a, width, height);
    const PixelMask mb = rasterize(b, width, height);
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < ma.bits().size(); ++i) {
        const bool in_a = ma.bits()[i] != 0;
        const bool in_b = mb.bits()[i] != 0;
        if (in_a && in_b) ++inter;
        if (in_a || in_b) ++uni;
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<Polyline> extract_centerlines(const MultiPolygon& polygons, int width,
                                          int height) {
    std::vector<Polyline> lines;
    for (const auto& poly : polygons) {
        if (poly.size() < 3) continue;
        // rasterize over a padded bbox crop, then shift back to image coords
        BBox box;
        for (const auto& v : poly) box.expand(v);
        const int x0 = std::max(0, static_cast<int>(std::floor(box.xmin)) - 2);
        const int y0 = std::max(0, static_cast<int>(std::floor(box.ymin)) - 2);
        const int x1 = std::min(width, static_cast<int>(std::ceil(box.xmax)) + 2);
        const int y1 = std::min(height, static_cast<int>(std::ceil(box.ymax)) + 2);
        if (x1 <= x0 || y1 <= y0) continue;

        PixelPolygon shifted;
        shifted.reserve(poly.size());
        for (const auto& v : poly) shifted.push_back({v.x - x0, v.y - y0});
        const PixelMask mask = rasterize({shifted}, x1 - x0, y1 - y0);
        if (mask.count() == 0) continue;
        const PixelGraph graph = skeleton_to_graph(thin(mask));
        if (graph.nodes.empty()) continue;
        Polyline line = longest_path(graph);
        for (auto& p : line.points) {
            p.x += x0;
            p.y += y0;
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace contrailmatch
