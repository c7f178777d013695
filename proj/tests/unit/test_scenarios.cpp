#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "czest/models/quadrotor.hpp"
#include "czest/set_queries.hpp"
#include "export.hpp"
#include "scenarios.hpp"

using namespace czest;
using namespace czest::scenarios;

namespace {

std::string metrics_text(const SeedResult& s)
{
    std::ostringstream os;
    write_metrics_csv(os, s.methods);
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        out.push_back(line);
    return out;
}

/// method -> radius column, read back from the CSV text.
std::map<std::string, std::vector<double>> radii_from_csv(const std::string& text)
{
    std::map<std::string, std::vector<double>> out;
    const auto lines = lines_of(text);
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
        std::istringstream row(lines[i]);
        std::string k, method, radius;
        std::getline(row, k, ',');
        std::getline(row, method, ',');
        std::getline(row, radius, ',');
        out[method].push_back(std::stod(radius));
    }
    return out;
}

const ScenarioResult& short_example1()
{
    static const ScenarioResult r =
        run_scenario("example1", [](std::uint64_t s) { return example1_problem(s, 20); }, example1_methods(), {1, 2}, 1);
    return r;
}

} // namespace

TEST(Metrics, HeaderAndRowCount)
{
    const auto& r = short_example1();
    ASSERT_TRUE(r.all_contained());
    const auto lines = lines_of(metrics_text(r.seeds[0]));
    ASSERT_FALSE(lines.empty());
    EXPECT_EQ(lines[0], kMetricsHeader);
    EXPECT_EQ(lines.size(), 1 + 21 * 4);
    EXPECT_EQ(lines[1].substr(0, 7), "0,CZMV,");
    EXPECT_EQ(lines[1].substr(lines[1].rfind(',')), ",0");
}

TEST(Metrics, ArrRecomputedFromCsv)
{
    const auto& r = short_example1();
    double sum_mv = 0.0, sum_fo = 0.0;
    for (const auto& s : r.seeds)
    {
        auto cols = radii_from_csv(metrics_text(s));
        sum_mv += compute_arr(cols["CZMV"], cols["ZMV"]);
        sum_fo += compute_arr(cols["CZFO"], cols["ZFO"]);
    }
    EXPECT_NEAR(sum_mv / r.seeds.size(), r.arr(Method::CZMV, Method::ZMV), 1e-12);
    EXPECT_NEAR(sum_fo / r.seeds.size(), r.arr(Method::CZFO, Method::ZFO), 1e-12);
}

TEST(Metrics, IndependentOfThreadCount)
{
    const auto& one = short_example1();
    const auto many =
        run_scenario("example1", [](std::uint64_t s) { return example1_problem(s, 20); }, example1_methods(), {1, 2}, 3);
    ASSERT_EQ(many.seeds.size(), one.seeds.size());
    for (std::size_t i = 0; i < one.seeds.size(); ++i)
    {
        EXPECT_EQ(many.seeds[i].seed, one.seeds[i].seed);
        EXPECT_EQ(metrics_text(many.seeds[i]), metrics_text(one.seeds[i]));
        EXPECT_EQ(render_svg({radius_chart(many.seeds[i].methods, "r")}),
                  render_svg({radius_chart(one.seeds[i].methods, "r")}));
    }
}

TEST(Metrics, ProblemsAreReproducible)
{
    const auto a = example1_problem(9, 10), b = example1_problem(9, 10), c = example1_problem(10, 10);
    for (std::size_t k = 0; k <= 10; ++k)
    {
        EXPECT_EQ(a.truth.x[k], b.truth.x[k]);
        EXPECT_EQ(a.truth.y[k], b.truth.y[k]);
    }
    EXPECT_NE(a.truth.y[3], c.truth.y[3]);
}

TEST(Json, RoundTripIsExact)
{
    const auto& r = short_example1();
    for (const auto& m : r.seeds[0].methods)
    {
        const auto& Z = m.run.steps.back().updated;
        const auto back = parse_json(dump_json(Z));
        EXPECT_EQ(back.G(), Z.G());
        EXPECT_EQ(back.c(), Z.c());
        EXPECT_EQ(back.A(), Z.A());
        EXPECT_EQ(back.b(), Z.b());
        EXPECT_EQ(dump_json(back), dump_json(Z));
    }
}

TEST(Json, ZonotopeHasEmptyConstraints)
{
    const auto Z = ConstrainedZonotope::ball_inf(Eigen::Vector3d(1, 2, 3), 0.5);
    const auto j = to_json(Z);
    EXPECT_TRUE(j.at("A").empty());
    EXPECT_TRUE(j.at("b").empty());
    const auto back = cz_from_json(j);
    EXPECT_EQ(back.dim(), 3);
    EXPECT_EQ(back.G(), Z.G());
    EXPECT_TRUE(back.is_zonotope());
}

TEST(Json, RejectsMalformedInput)
{
    EXPECT_THROW(parse_json("{\"G\": [[1, 0]], \"c\": [0]}"), Error);
    EXPECT_THROW(parse_json("{\"G\": [[1, 0], [1]], \"c\": [0, 0], \"A\": [], \"b\": []}"), Error);
    EXPECT_THROW(parse_json("not json"), Error);
}

TEST(Svg, DeterministicAndWellFormed)
{
    const auto X = ConstrainedZonotope::box(Eigen::Vector2d(-1, 0), Eigen::Vector2d(1, 2));
    Plot2D p;
    p.title = "box";
    p.polygons.push_back({outline_2d(X), series_color(0), "none", "X"});
    p.dots.push_back({{Eigen::Vector2d(0, 1)}, series_color(1), 2.0, "point"});
    const auto a = render_svg({p, p});
    EXPECT_EQ(a, render_svg({p, p}));
    EXPECT_EQ(a.find("<svg"), a.find('<', a.find("?>") == std::string::npos ? 0 : a.find("?>")));
    EXPECT_NE(a.find("</svg>"), std::string::npos);
    EXPECT_NE(a.find("<polygon"), std::string::npos);
    EXPECT_THROW(outline_2d(ConstrainedZonotope::ball_inf(Eigen::Vector3d::Zero(), 1.0)), DimensionError);
}

TEST(Files, WriteCreatesDirectoriesAndReportsFailure)
{
    const auto dir = std::filesystem::temp_directory_path() / "czest_test_write" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_file(dir / "a.txt", "hello\n");
    std::ifstream in(dir / "a.txt");
    std::string s;
    std::getline(in, s);
    EXPECT_EQ(s, "hello");
    EXPECT_THROW(write_file(dir / "a.txt" / "b.txt", "x"), Error);
    std::filesystem::remove_all(dir.parent_path());
}

TEST(Reach, EnclosuresContainImagesAndOrderAsExpected)
{
    const auto r = example1_reach(2000, 3);
    ASSERT_EQ(r.images.size(), 2000u);
    std::map<std::string, double> area;
    for (const auto& e : r.enclosures)
    {
        EXPECT_EQ(e.violations, 0u) << e.label;
        area[e.label] = e.hull_area;
    }
    ASSERT_EQ(area.size(), 8u);
    EXPECT_LE(area["mean-value-C2"], area["mean-value-C1"] + 1e-12);
    for (const char* other : {"taylor-C1", "taylor-C2", "taylor-C3"})
        EXPECT_LE(area["taylor-C4"], area[other] + 1e-12) << other;
}

TEST(Quadrotor, ConfigFileMatchesDefaultGains)
{
    std::ifstream in(CZEST_CONFIG_DIR "/quadrotor.toml");
    ASSERT_TRUE(in.good());
    std::map<std::string, double> kv;
    for (std::string line; std::getline(in, line);)
    {
        const auto eq = line.find('=');
        if (line.empty() || line[0] == '#' || line[0] == '[' || eq == std::string::npos)
            continue;
        auto key = line.substr(0, eq);
        key.erase(key.find_last_not_of(' ') + 1);
        kv[key] = std::stod(line.substr(eq + 1));
    }
    const QuadrotorControl d;
    EXPECT_EQ(kv.at("kp_xy"), d.kp_xy);
    EXPECT_EQ(kv.at("kd_xy"), d.kd_xy);
    EXPECT_EQ(kv.at("kp_z"), d.kp_z);
    EXPECT_EQ(kv.at("kd_z"), d.kd_z);
    EXPECT_EQ(kv.at("kp_att"), d.kp_att);
    EXPECT_EQ(kv.at("kd_att"), d.kd_att);
    EXPECT_EQ(kv.at("kp_yaw"), d.kp_yaw);
    EXPECT_EQ(kv.at("kd_yaw"), d.kd_yaw);
    EXPECT_EQ(kv.at("max_tilt"), d.max_tilt);
    EXPECT_EQ(kv.at("steps"), double(kQuadrotorSteps));
}

TEST(Quadrotor, MeasurementsAreConsistentWithTruth)
{
    const auto p = quadrotor_problem(4, 60);
    const auto DV = linear_map(p.meas.D_v, p.meas.V);
    for (std::size_t k = 0; k <= 60; ++k)
    {
        Eigen::VectorXd r = p.truth.y[k] - p.meas.C * p.truth.x[k];
        if (p.meas.D_u.size() > 0)
            r -= p.meas.D_u * p.truth.u[k];
        EXPECT_TRUE(is_member(DV, r, 1e-9)) << "k = " << k;
    }
}

TEST(Quadrotor, ShortRunContainsTheTruth)
{
    const auto p = quadrotor_problem(2, 25);
    for (const auto& setup : quadrotor_methods())
    {
        const auto m = run_method(p, setup);
        EXPECT_TRUE(m.ok()) << to_string(setup.method) << " " << m.error;
        EXPECT_EQ(m.run.steps.size(), 26u);
    }
}

TEST(Quadrotor, ControllerTracksTheHelix)
{
    const auto p = quadrotor_problem(1, 400);
    const auto ref = helix(400 * models::QuadrotorParams{}.Ts);
    EXPECT_LT((p.truth.x.back().head<3>() - ref.p).norm(), 0.5);
    EXPECT_EQ(quadrotor_disturbance(0.0), Eigen::Vector3d::Zero());
}

TEST(Example1, ConstrainedBeatsZonotopeAtMostSteps)
{
    std::vector<MethodSetup> methods;
    for (const auto& m : example1_methods(20, 5))
        if (is_mean_value_method(m.method))
            methods.push_back(m);
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s)
        seeds.push_back(s);
    const auto r = run_scenario("example1", [](std::uint64_t s) { return example1_problem(s); }, methods, seeds, 1);
    ASSERT_TRUE(r.all_contained());
    std::size_t better = 0;
    for (std::size_t k = 0; k <= kExample1Steps; ++k)
    {
        double cz = 0.0, z = 0.0;
        for (const auto& s : r.seeds)
        {
            cz += s.methods[0].run.steps[k].radius;
            z += s.methods[1].run.steps[k].radius;
        }
        better += cz <= z;
    }
    EXPECT_GE(better, static_cast<std::size_t>(std::ceil(0.95 * (kExample1Steps + 1))));
}
