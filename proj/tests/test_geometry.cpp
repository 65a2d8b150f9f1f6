#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "contrailmatch/geo.hpp"
#include "contrailmatch/geometry.hpp"

using namespace contrailmatch;

namespace {

struct SplitMix {
    std::uint64_t s;
    std::uint64_t raw() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double next() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + next() * (hi - lo); }
    int below(int n) { return static_cast<int>(raw() % static_cast<std::uint64_t>(n)); }
};

PixelMask mask_from_file(const std::string& name) {
    std::ifstream in(std::string(CONTRAILMATCH_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(line);
    PixelMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (rows[y][x] == 'X') m.set(x, y, true);
    return m;
}

PixelMask mask_from_rows(const std::vector<std::string>& rows) {
    PixelMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (rows[y][x] == 'X') m.set(x, y, true);
    return m;
}

// independent even-odd inside test for the rasterizer oracle
bool oracle_inside(double px, double py, const PixelPolygon& poly) {
    int crossings = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        if ((a.y <= py && b.y > py) || (b.y <= py && a.y > py)) {
            const double t = (py - a.y) / (b.y - a.y);
            if (px < a.x + t * (b.x - a.x)) ++crossings;
        }
    }
    return crossings % 2 == 1;
}

int degree(const PixelGraph& g, std::size_t node) {
    return static_cast<int>(g.adjacency[node].size());
}

double polyline_length(const Polyline& line) {
    double total = 0.0;
    for (std::size_t i = 1; i < line.points.size(); ++i)
        total += std::hypot(line.points[i].x - line.points[i - 1].x,
                            line.points[i].y - line.points[i - 1].y);
    return total;
}

// recover the path weight of a polyline returned for a hand-built graph
double path_weight(const PixelGraph& g, const Polyline& line) {
    std::map<std::pair<int, int>, std::size_t> lookup;
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        lookup[{g.nodes[n].x, g.nodes[n].y}] = n;
    double total = 0.0;
    for (std::size_t i = 1; i < line.points.size(); ++i) {
        const std::size_t a = lookup.at({static_cast<int>(line.points[i - 1].x),
                                         static_cast<int>(line.points[i - 1].y)});
        const std::size_t b = lookup.at(
            {static_cast<int>(line.points[i].x), static_cast<int>(line.points[i].y)});
        bool found = false;
        for (std::size_t ei : g.adjacency[a]) {
            const auto& e = g.edges[ei];
            if (e.a + e.b == a + b && (e.a == a || e.a == b)) {
                total += e.weight;
                found = true;
                break;
            }
        }
        REQUIRE(found);
    }
    return total;
}

PixelGraph manual_graph(const std::vector<std::pair<int, int>>& nodes,
                        const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
    PixelGraph g;
    for (const auto& [x, y] : nodes) g.nodes.push_back({x, y});
    g.adjacency.resize(g.nodes.size());
    for (const auto& [a, b, w] : edges) {
        g.adjacency[a].push_back(g.edges.size());
        g.adjacency[b].push_back(g.edges.size());
        g.edges.push_back({a, b, w});
    }
    return g;
}

// all-pairs unique-path weights on a tree (exhaustive oracle)
double tree_exhaustive_longest(const PixelGraph& g) {
    double best = 0.0;
    for (std::size_t start = 0; start < g.nodes.size(); ++start) {
        std::vector<double> dist(g.nodes.size(), -1.0);
        std::vector<std::size_t> stack = {start};
        dist[start] = 0.0;
        while (!stack.empty()) {
            const std::size_t n = stack.back();
            stack.pop_back();
            best = std::max(best, dist[n]);
            for (std::size_t ei : g.adjacency[n]) {
                const auto& e = g.edges[ei];
                const std::size_t m = e.a == n ? e.b : e.a;
                if (dist[m] < 0.0) {
                    dist[m] = dist[n] + e.weight;
                    stack.push_back(m);
                }
            }
        }
    }
    return best;
}


bool single_connected_component(const PixelGraph& g) {
    if (g.nodes.empty()) return false;
    std::vector<char> seen(g.nodes.size(), 0);
    std::vector<std::size_t> stack = {0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        for (std::size_t ei : g.adjacency[n]) {
            const auto& e = g.edges[ei];
            const std::size_t m = e.a == n ? e.b : e.a;
            if (!seen[m]) {
                seen[m] = 1;
                ++count;
                stack.push_back(m);
            }
        }
    }
    return count == g.nodes.size();
}

// two-sweep diameter oracle (valid on trees)
double two_sweep_diameter(const PixelGraph& g, std::size_t seed_node) {
    auto farthest = [&](std::size_t start) {
        std::vector<double> dist(g.nodes.size(), -1.0);
        std::vector<std::size_t> stack = {start};
        dist[start] = 0.0;
        std::size_t arg = start;
        while (!stack.empty()) {
            const std::size_t n = stack.back();
            stack.pop_back();
            if (dist[n] > dist[arg]) arg = n;
            for (std::size_t ei : g.adjacency[n]) {
                const auto& e = g.edges[ei];
                const std::size_t m = e.a == n ? e.b : e.a;
                if (dist[m] < 0.0) {
                    dist[m] = dist[n] + e.weight;
                    stack.push_back(m);
                }
            }
        }
        return std::make_pair(arg, dist[arg]);
    };
    const auto [u, du] = farthest(seed_node);
    return farthest(u).second;
}

}  // namespace

TEST_CASE("rasterize: integer rectangle covers exactly width*height pixels") {
    const MultiPolygon rect = {{{0, 0}, {10, 0}, {10, 4}, {0, 4}}};
    const PixelMask mask = rasterize(rect, 20, 10);
    CHECK(mask.count() == 40);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 10; ++x) CHECK(mask.at(x, y));
}

TEST_CASE("rasterize: polygon fully outside dims gives an empty mask") {
    const MultiPolygon far = {{{100, 100}, {110, 100}, {110, 110}, {100, 110}}};
    CHECK(rasterize(far, 20, 20).count() == 0);
}

TEST_CASE("rasterize: empty polygon gives an empty mask") {
    CHECK(rasterize({}, 8, 8).count() == 0);
    CHECK(rasterize({{{1, 1}, {2, 2}}}, 8, 8).count() == 0);  // degenerate ring
}

TEST_CASE("rasterize: random polygons match the per-pixel point-in-polygon oracle") {
    SplitMix rng{11};
    for (int trial = 0; trial < 30; ++trial) {
        PixelPolygon poly;
        const int verts = 3 + rng.below(6);
        for (int v = 0; v < verts; ++v)
            poly.push_back({rng.uniform(0.0, 30.0), rng.uniform(0.0, 30.0)});
        const PixelMask mask = rasterize({poly}, 32, 32);
        std::size_t oracle_count = 0;
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) {
                const bool in = oracle_inside(x + 0.5, y + 0.5, poly);
                if (in) ++oracle_count;
                CHECK(mask.at(x, y) == in);
            }
        CHECK(mask.count() == oracle_count);
    }
}

TEST_CASE("thin: 20x3 bar becomes a single-pixel-wide horizontal line") {
    const PixelMask bar = mask_from_file("mask_bar_20x3.txt");
    const PixelMask skel = thin(bar);
    CHECK(skel.count() >= 16);
    int min_x = 99, max_x = -1;
    std::set<int> ys;
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 26; ++x)
            if (skel.at(x, y)) {
                ys.insert(y);
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
            }
    CHECK(ys.size() == 1);  // one row: the bar's axis
    CHECK(max_x - min_x + 1 == static_cast<int>(skel.count()));
}

TEST_CASE("thin: already-thin line is unchanged (idempotence)") {
    const PixelMask line = mask_from_rows({
        "........",
        ".XXXXXX.",
        "........",
    });
    const PixelMask once = thin(line);
    CHECK(once.bits() == line.bits());
}

TEST_CASE("thin: plus-shaped mask yields exactly one degree-4 junction neighborhood") {
    const PixelMask plus = mask_from_file("mask_plus.txt");
    const PixelGraph g = skeleton_to_graph(thin(plus));
    // all degree-4 pixels cluster around the single crossing
    std::vector<std::size_t> junction;
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        if (degree(g, n) == 4) junction.push_back(n);
    REQUIRE(!junction.empty());
    int clusters = 0;
    std::set<std::size_t> pending(junction.begin(), junction.end());
    while (!pending.empty()) {
        ++clusters;
        std::vector<std::size_t> stack = {*pending.begin()};
        pending.erase(pending.begin());
        while (!stack.empty()) {
            const auto n = stack.back();
            stack.pop_back();
            for (auto it = pending.begin(); it != pending.end();) {
                const auto& a = g.nodes[n];
                const auto& b = g.nodes[*it];
                if (std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1) {
                    stack.push_back(*it);
                    it = pending.erase(it);
                } else {
                    ++it;
                }
            }
        }
    }
    CHECK(clusters == 1);
    // the crossing pixel itself sits at the bar intersection
    bool center_found = false;
    for (const std::size_t n : junction)
        if (g.nodes[n].x == 10 && g.nodes[n].y == 10) center_found = true;
    CHECK(center_found);
}

TEST_CASE("thin: random masks satisfy idempotence, subset and no-2x2 invariants") {
    SplitMix rng{23};
    for (int trial = 0; trial < 60; ++trial) {
        PixelMask mask(40, 40);
        const int blobs = 1 + rng.below(4);
        for (int b = 0; b < blobs; ++b) {
            const int cx = 4 + rng.below(32), cy = 4 + rng.below(32);
            const int w = 2 + rng.below(12), h = 2 + rng.below(6);
            for (int y = std::max(0, cy - h / 2); y < std::min(40, cy + h); ++y)
                for (int x = std::max(0, cx - w / 2); x < std::min(40, cx + w); ++x)
                    mask.set(x, y, true);
        }
        const PixelMask skel = thin(mask);
        // subset: no pixel creation
        for (int y = 0; y < 40; ++y)
            for (int x = 0; x < 40; ++x)
                if (skel.at(x, y)) CHECK(mask.at(x, y));
        // idempotence
        CHECK(thin(skel).bits() == skel.bits());
        // no 2x2 block
        for (int y = 0; y + 1 < 40; ++y)
            for (int x = 0; x + 1 < 40; ++x)
                CHECK_FALSE((skel.at(x, y) && skel.at(x + 1, y) && skel.at(x, y + 1) &&
                             skel.at(x + 1, y + 1)));
    }
}

TEST_CASE("skeleton_to_graph: 5-pixel horizontal line is a path of 4 unit edges") {
    const PixelMask line = mask_from_rows({"XXXXX"});
    const PixelGraph g = skeleton_to_graph(line);
    CHECK(g.nodes.size() == 5);
    CHECK(g.edges.size() == 4);
    for (const auto& e : g.edges) CHECK(e.weight == 1.0);
}

TEST_CASE("skeleton_to_graph: 3-pixel diagonal is a path of 2 sqrt(2) edges") {
    const PixelMask diag = mask_from_rows({
        "X..",
        ".X.",
        "..X",
    });
    const PixelGraph g = skeleton_to_graph(diag);
    CHECK(g.nodes.size() == 3);
    CHECK(g.edges.size() == 2);
    for (const auto& e : g.edges) CHECK(e.weight == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("skeleton_to_graph: L-shaped skeleton has exactly two endpoints") {
    // corner cut diagonally so no spurious triangle appears
    const PixelMask ell = mask_from_rows({
        "XXXXXXXX...",
        "........X..",
        "........X..",
        "........X..",
    });
    const PixelGraph g = skeleton_to_graph(ell);
    int endpoints = 0;
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
        CHECK(degree(g, n) >= 1);
        if (degree(g, n) == 1) ++endpoints;
    }
    CHECK(endpoints == 2);
    CHECK(g.nodes.size() == 11);
    CHECK(g.edges.size() == 10);  // acyclic
}

TEST_CASE("longest_path: a path graph is its own longest path") {
    const PixelMask line = mask_from_rows({"XXXXXXX"});
    const Polyline path = longest_path(skeleton_to_graph(line));
    CHECK(path.points.size() == 7);
    CHECK(polyline_length(path) == doctest::Approx(6.0));
}

TEST_CASE("longest_path: Y tree picks the two longest arms") {
    std::vector<std::pair<int, int>> nodes = {{20, 20}};
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    auto add_arm = [&](int dx, int dy, int length) {
        std::size_t prev = 0;
        for (int k = 1; k <= length; ++k) {
            nodes.push_back({20 + dx * k, 20 + dy * k});
            edges.emplace_back(prev, nodes.size() - 1, 1.0);
            prev = nodes.size() - 1;
        }
    };
    add_arm(-1, 0, 10);
    add_arm(1, 0, 6);
    add_arm(0, 1, 3);
    const PixelGraph g = manual_graph(nodes, edges);
    const Polyline path = longest_path(g);
    CHECK(path_weight(g, path) == doctest::Approx(16.0));
    CHECK(path.points.size() == 17);
}

TEST_CASE("longest_path: random small trees match exhaustive enumeration") {
    SplitMix rng{31};
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + rng.below(11);  // <= 12 nodes
        std::vector<std::pair<int, int>> nodes;
        std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
        for (int k = 0; k < n; ++k) nodes.push_back({k * 3, 100 + rng.below(50)});
        for (int k = 1; k < n; ++k)
            edges.emplace_back(static_cast<std::size_t>(rng.below(k)), k,
                               rng.below(2) ? std::sqrt(2.0) : 1.0);
        const PixelGraph g = manual_graph(nodes, edges);
        const double expected = tree_exhaustive_longest(g);
        const double actual = path_weight(g, longest_path(g));
        CHECK(actual == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("longest_path: small cyclic component is solved exactly") {
    // 4-cycle with a tail: longest simple path walks around the cycle
    std::vector<std::pair<int, int>> nodes = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 5}, {3, 5}};
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges = {
        {0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}, {1, 4, 1.0}, {4, 5, 1.0}};
    const PixelGraph g = manual_graph(nodes, edges);
    // path 0-3-2-1-4-5 (or mirror) has weight 5
    CHECK(path_weight(g, longest_path(g)) == doctest::Approx(5.0));
}

TEST_CASE("longest_path: empty graph throws") {
    CHECK_THROWS_AS(longest_path(PixelGraph{}), std::invalid_argument);
}

TEST_CASE("longest_path: weight equals two-sweep diameter on thinned tree masks") {
    SplitMix rng{43};
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 50; ++trial) {
        PixelMask mask(40, 40);
        // a few strokes radiating from a point: thins to a tree almost always
        const int cx = 10 + rng.below(20), cy = 10 + rng.below(20);
        const int strokes = 1 + rng.below(3);
        for (int s = 0; s < strokes; ++s) {
            const double angle = rng.uniform(0.0, 2.0 * kPi);
            const int len = 6 + rng.below(12);
            for (int k = 0; k < len; ++k) {
                const int x = cx + static_cast<int>(std::round(std::cos(angle) * k));
                const int y = cy + static_cast<int>(std::round(std::sin(angle) * k));
                for (int dy = 0; dy <= 1; ++dy)
                    for (int dx = 0; dx <= 1; ++dx)
                        if (x + dx >= 0 && x + dx < 40 && y + dy >= 0 && y + dy < 40)
                            mask.set(x + dx, y + dy, true);
            }
        }
        const PixelGraph g = skeleton_to_graph(thin(mask));
        if (g.nodes.empty()) continue;
        if (g.edges.size() != g.nodes.size() - 1) continue;
        if (!single_connected_component(g)) continue;  // not a single tree
        ++tested;
        const double expected = two_sweep_diameter(g, 0);
        CHECK(path_weight(g, longest_path(g)) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(tested >= 50);
}

namespace {

// independent fine-sampling Hausdorff oracle (crossing-number inside test,
// its own point-segment distance, 0.25 px sampling)
double hausdorff_oracle(const std::vector<Polyline>& lines, const MultiPolygon& region,
                        double step) {
    auto seg_dist = [](const Vec2& p, const Vec2& a, const Vec2& b) {
        const double vx = b.x - a.x, vy = b.y - a.y;
        const double len2 = vx * vx + vy * vy;
        double t = len2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = p.x - a.x - t * vx, dy = p.y - a.y - t * vy;
        return std::sqrt(dx * dx + dy * dy);
    };
    auto point_dist = [&](const Vec2& p) {
        double best = kInfDistance;
        for (const auto& poly : region) {
            if (poly.size() < 3) continue;
            if (oracle_inside(p.x, p.y, poly)) return 0.0;
            for (std::size_t i = 0; i < poly.size(); ++i)
                best = std::min(best, seg_dist(p, poly[i], poly[(i + 1) % poly.size()]));
        }
        return best;
    };
    double worst = 0.0;
    for (const auto& line : lines) {
        for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
            const Vec2& a = line.points[i];
            const Vec2& b = line.points[i + 1];
            const double len = std::hypot(b.x - a.x, b.y - a.y);
            const int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
            for (int k = 0; k <= pieces; ++k) {
                const double t = static_cast<double>(k) / pieces;
                worst = std::max(worst,
                                 point_dist({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}));
            }
        }
        if (line.points.size() == 1) worst = std::max(worst, point_dist(line.points[0]));
    }
    return worst;
}

}  // namespace

TEST_CASE("directed_hausdorff: polyline inside the region scores zero") {
    const MultiPolygon region = {{{0, 0}, {40, 0}, {40, 10}, {0, 10}}};
    const Polyline inside{{{2, 5}, {38, 5}}};
    CHECK(directed_hausdorff({inside}, region) == 0.0);
}

TEST_CASE("directed_hausdorff: parallel segment at offset 5 scores 5") {
    const MultiPolygon region = {{{0, 10}, {40, 10}, {40, 20}, {0, 20}}};
    const Polyline above{{{5, 5}, {35, 5}}};  // 5 px above the near edge
    CHECK(directed_hausdorff({above}, region) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("directed_hausdorff: empty region is +inf by convention") {
    const Polyline line{{{0, 0}, {1, 1}}};
    CHECK(std::isinf(directed_hausdorff({line}, {})));
}

TEST_CASE("directed_hausdorff: random pairs match the fine-sampling oracle within 1 px") {
    SplitMix rng{57};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Polyline> lines;
        const int n_lines = 1 + rng.below(2);
        for (int l = 0; l < n_lines; ++l) {
            Polyline line;
            const int pts = 2 + rng.below(4);
            for (int k = 0; k < pts; ++k)
                line.points.push_back({rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)});
            lines.push_back(std::move(line));
        }
        MultiPolygon region;
        const int n_polys = 1 + rng.below(3);
        for (int b = 0; b < n_polys; ++b) {
            const double cx = rng.uniform(10.0, 90.0), cy = rng.uniform(10.0, 90.0);
            const double w = rng.uniform(4.0, 30.0), h = rng.uniform(4.0, 30.0);
            const double angle = rng.uniform(0.0, kPi);
            PixelPolygon poly;
            for (const auto& [sx, sy] : {std::pair{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}) {
                const double x = sx * w / 2, y = sy * h / 2;
                poly.push_back({cx + x * std::cos(angle) - y * std::sin(angle),
                                cy + x * std::sin(angle) + y * std::cos(angle)});
            }
            region.push_back(std::move(poly));
        }
        const double expected = hausdorff_oracle(lines, region, 0.25);
        const double actual = directed_hausdorff(lines, region);
        CHECK(std::abs(actual - expected) <= 1.0);
    }
}

TEST_CASE("directed_hausdorff: enlarging the region never increases the distance") {
    SplitMix rng{71};
    const Polyline line{{{10, 10}, {60, 40}, {90, 20}}};
    MultiPolygon region = {{{30, 30}, {50, 30}, {50, 50}, {30, 50}}};
    double previous = directed_hausdorff({line}, region);
    for (int step = 0; step < 10; ++step) {
        const double cx = rng.uniform(0.0, 100.0), cy = rng.uniform(0.0, 100.0);
        region.push_back({{cx, cy}, {cx + 20, cy}, {cx + 20, cy + 15}, {cx, cy + 15}});
        const double next = directed_hausdorff({line}, region);
        CHECK(next <= previous + 1e-12);
        previous = next;
    }
}

TEST_CASE("directed_hausdorff: zero iff every sample is covered") {
    const MultiPolygon region = {{{0, 0}, {20, 0}, {20, 20}, {0, 20}}};
    const Polyline covered{{{1, 1}, {19, 19}}};
    CHECK(directed_hausdorff({covered}, region) == 0.0);
    const Polyline poking{{{1, 1}, {25, 1}}};  // exits the region
    CHECK(directed_hausdorff({poking}, region) > 0.0);
}

TEST_CASE("iou: identical, disjoint and half-overlapping rectangles") {
    const MultiPolygon a = {{{0, 0}, {100, 0}, {100, 100}, {0, 100}}};
    const MultiPolygon b = {{{50, 0}, {150, 0}, {150, 100}, {50, 100}}};
    const MultiPolygon far = {{{200, 200}, {210, 200}, {210, 210}, {200, 210}}};
    CHECK(iou(a, a, 256, 256) == doctest::Approx(1.0));
    CHECK(iou(a, far, 256, 256) == doctest::Approx(0.0));
    CHECK(iou(a, b, 256, 256) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(iou(a, b, 256, 256) == iou(b, a, 256, 256));
    CHECK(iou({}, {}, 64, 64) == 0.0);
}

TEST_CASE("extract_centerlines: thin rectangle reduces to a near-axis polyline") {
    const MultiPolygon rect = {{{10, 20}, {90, 20}, {90, 26}, {10, 26}}};
    const auto lines = extract_centerlines(rect, 128, 64);
    REQUIRE(lines.size() == 1);
    CHECK(polyline_length(lines[0]) > 60.0);
    for (const auto& p : lines[0].points) {
        CHECK(p.y > 20.0);
        CHECK(p.y < 26.0);
    }
    // centerline lies inside its own polygon: self-distance is zero
    CHECK(directed_hausdorff(lines, rect) == 0.0);
}
