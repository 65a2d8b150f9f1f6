#include <doctest.h>

#include <cmath>
#include <sstream>

#include "contrailmatch/errors.hpp"
#include "contrailmatch/met.hpp"

using namespace contrailmatch;

namespace {

// 2x2x2x2 grid builder with per-node values from a callback
template <typename F>
MetGrid tiny_grid(F value, double u_default = 10.0) {
    const std::vector<double> times = {0.0, 3600.0};
    const std::vector<double> levels = {200.0, 300.0};
    const std::vector<double> lats = {44.0, 46.0};
    const std::vector<double> lons = {4.0, 6.0};
    std::vector<double> u, v;
    for (double t : times)
        for (double p : levels)
            for (double lat : lats)
                for (double lon : lons) {
                    u.push_back(value(t, p, lat, lon));
                    v.push_back(u_default);
                }
    return MetGrid(times, levels, lats, lons, u, v);
}

std::string tiny_grid_text() {
    std::ostringstream out;
    out << "CONTRAIL-MET 1\n";
    out << R"({"fields":["u_wind","v_wind"],"lats":[44,46],"levels":[200,300],)"
        << R"("lons":[4,6],"times":[0,3600]})" << "\n";
    out << "field u_wind\n";
    for (int i = 0; i < 16; ++i) out << "10 ";
    out << "\nfield v_wind\n";
    for (int i = 0; i < 16; ++i) out << "0 ";
    out << "\n";
    return out.str();
}

// Independent oracle: nested 1D linear interpolation, one axis at a time.
double nested_lerp_oracle(const MetGrid& g, const std::vector<double>& field, double t,
                          double p, double lat, double lon) {
    auto bracket = [](const std::vector<double>& axis, double x) {
        std::size_t hi = 1;
        while (hi + 1 < axis.size() && axis[hi] < x) ++hi;
        const std::size_t lo = hi - 1;
        return std::make_pair(lo, (x - axis[lo]) / (axis[hi] - axis[lo]));
    };
    const auto [it, ft] = bracket(g.times(), t);
    const auto [ip, fp] = bracket(g.levels(), p);
    const auto [iy, fy] = bracket(g.lats(), lat);
    const auto [ix, fx] = bracket(g.lons(), lon);
    const std::size_t nl = g.levels().size(), ny = g.lats().size(), nx = g.lons().size();
    auto at = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return field[((a * nl + b) * ny + c) * nx + d];
    };
    auto lerp = [](double a, double b, double f) { return a + f * (b - a); };
    double over_lon[2][2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                over_lon[a][b][c] =
                    lerp(at(it + a, ip + b, iy + c, ix), at(it + a, ip + b, iy + c, ix + 1), fx);
    double over_lat[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            over_lat[a][b] = lerp(over_lon[a][b][0], over_lon[a][b][1], fy);
    double over_level[2];
    for (int a = 0; a < 2; ++a) over_level[a] = lerp(over_lat[a][0], over_lat[a][1], fp);
    return lerp(over_level[0], over_level[1], ft);
}

struct SplitMix {
    std::uint64_t s;
    double next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + next() * (hi - lo); }
};

}  // namespace

TEST_CASE("met: well-formed 2x2x2x2 file loads with 16 values per field") {
    std::istringstream in(tiny_grid_text());
    const MetGrid grid = parse_met_grid(in);
    CHECK(grid.u_wind().size() == 16);
    CHECK(grid.v_wind().size() == 16);
    CHECK(grid.w_wind().size() == 16);  // absent block defaults to zeros
    for (double w : grid.w_wind()) CHECK(w == 0.0);
}

TEST_CASE("met: duplicate latitude is a non-monotonic axis error") {
    std::string text = tiny_grid_text();
    const auto pos = text.find("[44,46]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 7, "[45,45]");
    std::istringstream in(text);
    CHECK_THROWS_WITH_AS(parse_met_grid(in), doctest::Contains("non-monotonic axis: lats"),
                         LoadError);
}

TEST_CASE("met: shape mismatch and non-finite values are named") {
    const std::vector<double> axis2a = {0.0, 1.0};
    const std::vector<double> levels = {200.0, 300.0};
    std::vector<double> u(16, 1.0), v(16, 1.0);
    CHECK_THROWS_WITH_AS(MetGrid(axis2a, levels, axis2a, axis2a, std::vector<double>(15, 1.0), v),
                         doctest::Contains("field u_wind: expected 16 values, got 15"),
                         LoadError);
    std::vector<double> bad = u;
    bad[7] = std::nan("");
    CHECK_THROWS_WITH_AS(MetGrid(axis2a, levels, axis2a, axis2a, bad, v),
                         doctest::Contains("non-finite value in field u_wind at index 7"),
                         LoadError);
}

TEST_CASE("met: levels outside the configured band are rejected") {
    const std::vector<double> axis = {0.0, 1.0};
    std::vector<double> u(16, 1.0), v(16, 1.0);
    CHECK_THROWS_WITH_AS(MetGrid(axis, {150.0, 250.0}, axis, axis, u, v),
                         doctest::Contains("outside configured band"), LoadError);
}

TEST_CASE("met: constant field interpolates to the constant everywhere") {
    const MetGrid grid = tiny_grid([](double, double, double, double) { return 10.0; });
    const WindVector w = sample_wind(grid, 1234.5, 251.0, 45.3, 4.7);
    CHECK(w.u == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("met: midpoint along time is the average of the node values") {
    // u = 0 at t=0 and 20 at t=3600, other axes queried on-node
    const MetGrid grid =
        tiny_grid([](double t, double, double, double) { return t == 0.0 ? 0.0 : 20.0; });
    const WindVector w = sample_wind(grid, 1800.0, 200.0, 44.0, 4.0);
    CHECK(w.u == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("met: node values are reproduced exactly") {
    const MetGrid grid = tiny_grid([](double t, double p, double lat, double lon) {
        return 0.01 * t + p + 3.0 * lat - 2.0 * lon;
    });
    for (double t : grid.times())
        for (double p : grid.levels())
            for (double lat : grid.lats())
                for (double lon : grid.lons()) {
                    const double expected = 0.01 * t + p + 3.0 * lat - 2.0 * lon;
                    CHECK(std::abs(sample_wind(grid, t, p, lat, lon).u - expected) < 1e-12);
                }
}

TEST_CASE("met: random in-box queries match the nested-lerp oracle") {
    SplitMix rng{7};
    const MetGrid grid = tiny_grid([&](double t, double p, double lat, double lon) {
        return std::sin(t * 0.001) + 0.3 * p - 1.7 * lat * lon;
    });
    for (int trial = 0; trial < 200; ++trial) {
        const double t = rng.uniform(0.0, 3600.0);
        const double p = rng.uniform(200.0, 300.0);
        const double lat = rng.uniform(44.0, 46.0);
        const double lon = rng.uniform(4.0, 6.0);
        const double expected = nested_lerp_oracle(grid, grid.u_wind(), t, p, lat, lon);
        const double actual = sample_wind(grid, t, p, lat, lon).u;
        CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("met: interpolation is monotone between nodes for monotone fields") {
    const MetGrid grid = tiny_grid([](double t, double, double, double) { return t; });
    double prev = -1.0;
    for (int k = 0; k <= 50; ++k) {
        const double t = 3600.0 * k / 50.0;
        const double u = sample_wind(grid, t, 250.0, 45.0, 5.0).u;
        CHECK(u >= prev - 1e-12);
        prev = u;
    }
}

TEST_CASE("met: clamp margin clamps nearby queries and rejects far ones") {
    const MetGrid grid = tiny_grid([](double, double, double, double) { return 5.0; });
    // half a cell on the lat axis is 1.0 degree
    CHECK(sample_wind(grid, 0.0, 200.0, 43.5, 4.0).u == doctest::Approx(5.0));
    CHECK_FALSE(grid.in_domain(0.0, 200.0, 41.0, 4.0));
    CHECK_THROWS_AS(sample_wind(grid, 0.0, 200.0, 41.0, 4.0), OutOfDomainError);
    CHECK_FALSE(try_sample_wind(grid, 0.0, 200.0, 41.0, 4.0).has_value());
}

TEST_CASE("met: optional log-pressure interpolation is exact for log-linear fields") {
    const std::vector<double> times = {0.0, 3600.0}, levels = {200.0, 300.0},
                              lats = {44.0, 46.0}, lons = {4.0, 6.0};
    std::vector<double> u, v;
    for (double t : times)
        for (double p : levels)
            for (double lat : lats)
                for (double lon : lons) {
                    (void)t; (void)lat; (void)lon;
                    u.push_back(std::log(p));
                    v.push_back(0.0);
                }
    MetLoadOptions opts;
    opts.log_pressure_interpolation = true;
    const MetGrid grid(times, levels, lats, lons, u, v, {}, {}, {}, opts);
    for (double p : {210.0, 245.0, 287.5}) {
        CHECK(sample_wind(grid, 0.0, p, 44.0, 4.0).u ==
              doctest::Approx(std::log(p)).epsilon(1e-12));
    }
    // node values still reproduced exactly
    CHECK(sample_wind(grid, 0.0, 300.0, 44.0, 4.0).u == doctest::Approx(std::log(300.0)));
}

TEST_CASE("met: sample_wind is pure") {
    const MetGrid grid = tiny_grid([](double t, double, double lat, double) { return t * lat; });
    const WindVector a = sample_wind(grid, 1000.0, 250.0, 45.0, 5.0);
    const WindVector b = sample_wind(grid, 1000.0, 250.0, 45.0, 5.0);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.w == b.w);
}

TEST_CASE("met: format round-trips through the parser") {
    const MetGrid grid = tiny_grid([](double t, double p, double lat, double lon) {
        return t * 1e-3 + p * 0.5 + lat - lon;
    });
    std::istringstream in(format_met_grid(grid));
    const MetGrid back = parse_met_grid(in);
    CHECK(back.u_wind() == grid.u_wind());
    CHECK(back.times() == grid.times());
}

TEST_CASE("met: fixture file loads") {
    const MetGrid grid = load_met_grid(std::string(CONTRAILMATCH_FIXTURE_DIR) + "/met_2x2x2x2.cmet");
    CHECK(grid.cell_count() == 16);
    CHECK(sample_wind(grid, 1800.0, 250.0, 45.0, 5.0).u == doctest::Approx(10.0));
}
