// czest: reach, estimation and quadrotor scenarios from the command line.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "czest/error.hpp"
#include "czest/set_queries.hpp"
#include "export.hpp"
#include "scenarios.hpp"

namespace fs = std::filesystem;
using namespace czest;
using namespace czest::scenarios;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct Common
{
    std::string methods = "all";
    Eigen::Index ng = 0;
    Eigen::Index nc = -1;
    std::string h;
    std::uint64_t seed = 1;
    std::size_t seeds = 1;
    std::size_t steps = 0;
    std::string out = "out";
    bool timing = false;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty())
            out.push_back(item);
    return out;
}

/// Keeps the scenario's defaults, filtered by --method and overridden by --h.
std::vector<MethodSetup> select(std::vector<MethodSetup> all, const Common& opt)
{
    std::vector<MethodSetup> out;
    if (opt.methods == "all" || opt.methods == "ALL")
        out = std::move(all);
    else
        for (const auto& name : split(opt.methods, ','))
        {
            const Method m = parse_method(name);
            bool found = false;
            for (const auto& s : all)
                if (s.method == m)
                {
                    out.push_back(s);
                    found = true;
                }
            if (!found)
                throw Error("method " + name + " is not part of this scenario");
        }
    if (!opt.h.empty())
    {
        const HStrategy h = parse_h_strategy(opt.h);
        for (auto& s : out)
            s.h = h;
    }
    return out;
}

std::vector<std::uint64_t> seed_list(const Common& opt)
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < opt.seeds; ++i)
        out.push_back(opt.seed + i);
    return out;
}

/// Reports violations and errors; true when every run is clean.
bool report(const ScenarioResult& r)
{
    bool ok = true;
    for (const auto& s : r.seeds)
        for (const auto& m : s.methods)
        {
            const char* name = to_string(m.setup.method);
            if (!m.error.empty())
            {
                std::cerr << r.name << ": seed " << s.seed << ' ' << name << " stopped: " << m.error << '\n';
                ok = false;
            }
            if (m.violation)
            {
                std::cerr << r.name << ": seed " << s.seed << ' ' << name << " misses the true state at k = "
                          << *m.violation << '\n';
                ok = false;
            }
        }
    return ok;
}

bool has(const ScenarioResult& r, Method m)
{
    if (r.seeds.empty())
        return false;
    for (const auto& x : r.seeds.front().methods)
        if (x.setup.method == m)
            return true;
    return false;
}

/// ARR for the standard method pairs present in `r`, printed and written as arr.csv.
void write_arr(const ScenarioResult& r, const fs::path& dir)
{
    static const std::pair<Method, Method> pairs[] = {{Method::CZMV, Method::ZMV},
                                                      {Method::CZFO, Method::ZFO},
                                                      {Method::CZFO, Method::CZMV},
                                                      {Method::CZMV, Method::CZFO}};
    std::ostringstream csv;
    csv << "a,b,arr\n";
    for (const auto& [a, b] : pairs)
    {
        if (!has(r, a) || !has(r, b))
            continue;
        double arr = 0.0;
        try
        {
            arr = r.arr(a, b);
        }
        catch (const Error& e)
        {
            std::cerr << "ARR " << to_string(a) << '/' << to_string(b) << ": " << e.what() << '\n';
            continue;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", arr);
        csv << to_string(a) << ',' << to_string(b) << ',' << buf << '\n';
        std::printf("ARR %s/%s = %.4f (%zu seeds)\n", to_string(a), to_string(b), arr, r.seeds.size());
    }
    write_file(dir / "arr.csv", csv.str());
}

void write_runs(const ScenarioResult& r, const fs::path& dir, bool timing)
{
    for (const auto& s : r.seeds)
    {
        std::ostringstream csv;
        write_metrics_csv(csv, s.methods, timing);
        write_file(dir / ("metrics_seed" + std::to_string(s.seed) + ".csv"), csv.str());
        for (const auto& m : s.methods)
            if (!m.run.steps.empty())
                write_file(dir / ("final_" + std::string(to_string(m.setup.method)) + "_seed" + std::to_string(s.seed) +
                                  ".json"),
                           dump_json(m.run.steps.back().updated));
    }
    if (!r.seeds.empty())
        write_file(dir / "radius.svg",
                   render_svg({radius_chart(r.seeds.front().methods,
                                            r.name + " radius, seed " + std::to_string(r.seeds.front().seed))},
                              640.0, 400.0));
}

int cmd_reach(std::size_t samples, std::uint64_t seed, const fs::path& dir)
{
    const ReachResult r = example1_reach(samples, seed);
    Plot2D plot;
    plot.title = "one prediction step";
    Plot2D::Dots dots{{}, "#999999", 0.8, "samples"};
    for (const auto& x : r.images)
        dots.points.emplace_back(x(0), x(1));
    plot.dots.push_back(std::move(dots));
    Plot2D::Polygon x0{outline_2d(r.X0), "#000000", "", "X0"};
    Plot2D before;
    before.title = "initial set";
    before.polygons.push_back(x0);
    bool ok = true;
    for (std::size_t i = 0; i < r.enclosures.size(); ++i)
    {
        const auto& e = r.enclosures[i];
        plot.polygons.push_back({outline_2d(e.set), series_color(i), "", e.label});
        write_file(dir / ("reach_" + e.label + ".json"), dump_json(e.set));
        std::printf("%-8s ng=%3ld nc=%3ld hull area %.6f violations %zu\n", e.label.c_str(),
                    static_cast<long>(e.set.num_generators()), static_cast<long>(e.set.num_constraints()),
                    e.hull_area, e.violations);
        ok = ok && e.violations == 0;
    }
    write_file(dir / "reach_X0.json", dump_json(r.X0));
    write_file(dir / "reach.svg", render_svg({before, plot}));
    if (!ok)
        std::cerr << "reach: some samples fall outside an enclosure\n";
    return ok ? kOk : kViolation;
}

int cmd_estimate(const Common& opt)
{
    const Eigen::Index ng = opt.ng > 0 ? opt.ng : 20;
    const Eigen::Index nc = opt.nc >= 0 ? opt.nc : 5;
    const std::size_t steps = opt.steps > 0 ? opt.steps : kExample1Steps;
    const auto methods = select(example1_methods(ng, nc), opt);
    const ScenarioResult r = run_scenario(
        "example1", [&](std::uint64_t s) { return example1_problem(s, steps); }, methods, seed_list(opt));
    const fs::path dir = opt.out;
    write_runs(r, dir, opt.timing);
    write_arr(r, dir);

    // final estimates of the first seed against the truth
    const Problem truth = example1_problem(opt.seed, steps);
    Plot2D plot;
    plot.title = "estimates at k = " + std::to_string(steps);
    const auto& first = r.seeds.front().methods;
    for (std::size_t i = 0; i < first.size(); ++i)
        if (!first[i].run.steps.empty())
            plot.polygons.push_back({outline_2d(first[i].run.steps.back().updated), series_color(i), "",
                                     to_string(first[i].setup.method)});
    Eigen::Vector2d xk = truth.truth.x[steps];
    plot.dots.push_back({std::vector<Eigen::Vector2d>{xk}, "#000000", 3.0, "truth"});
    write_file(dir / "estimate.svg", render_svg({plot}));
    return report(r) ? kOk : kViolation;
}

int cmd_quadrotor(const Common& opt, const QuadrotorControl& control, std::size_t box_every)
{
    const Eigen::Index ng = opt.ng > 0 ? opt.ng : 40;
    const Eigen::Index nc = opt.nc >= 0 ? opt.nc : 12;
    const std::size_t steps = opt.steps > 0 ? opt.steps : kQuadrotorSteps;
    const auto methods = select(quadrotor_methods(ng, nc), opt);
    const ScenarioResult r = run_scenario(
        "quadrotor", [&](std::uint64_t s) { return quadrotor_problem(s, steps, control); }, methods, seed_list(opt));
    const fs::path dir = opt.out;
    write_runs(r, dir, opt.timing);
    write_arr(r, dir);

    // interval-hull boxes of the position, three projections
    const Problem truth = quadrotor_problem(opt.seed, steps, control);
    const char* axis[] = {"x", "y", "z"};
    const int proj[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    std::vector<Plot2D> panes(3);
    for (int p = 0; p < 3; ++p)
    {
        panes[p].title = std::string(axis[proj[p][0]]) + "-" + axis[proj[p][1]];
        panes[p].x_label = axis[proj[p][0]];
        panes[p].y_label = axis[proj[p][1]];
        Plot2D::Line line{{}, "#000000", "truth"};
        for (const auto& x : truth.truth.x)
            line.points.emplace_back(x(proj[p][0]), x(proj[p][1]));
        panes[p].lines.push_back(std::move(line));
    }
    const auto& first = r.seeds.front().methods;
    const std::size_t every = std::max<std::size_t>(box_every, 1);
    for (std::size_t i = 0; i < first.size(); ++i)
        for (const auto& s : first[i].run.steps)
        {
            if (s.k % every != 0)
                continue;
            const IntervalVector hull = interval_hull(s.updated);
            for (int p = 0; p < 3; ++p)
            {
                const Interval& a = hull[static_cast<std::size_t>(proj[p][0])];
                const Interval& b = hull[static_cast<std::size_t>(proj[p][1])];
                Plot2D::Polygon box{{{a.lo(), b.lo()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}, {a.lo(), b.hi()}},
                                    series_color(i),
                                    "",
                                    s.k == 0 ? to_string(first[i].setup.method) : ""};
                panes[static_cast<std::size_t>(p)].polygons.push_back(std::move(box));
            }
        }
    write_file(dir / "position_boxes.svg", render_svg(panes, 440.0, 400.0));
    return report(r) ? kOk : kViolation;
}

int cmd_selftest()
{
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", name.c_str());
        failures += ok ? 0 : 1;
    };

    const ReachResult reach = example1_reach(2000, 7);
    bool reach_ok = !reach.enclosures.empty();
    for (const auto& e : reach.enclosures)
        reach_ok = reach_ok && e.violations == 0;
    check("reach enclosures contain 2000 sampled images", reach_ok);

    const ScenarioResult ex = run_scenario(
        "example1", [](std::uint64_t s) { return example1_problem(s, 30); }, example1_methods(), {1, 2}, 1);
    check("example1 estimates contain the truth (2 seeds x 30 steps)", ex.all_contained());

    const ConstrainedZonotope& Z = ex.seeds.front().methods.front().run.steps.back().updated;
    const ConstrainedZonotope back = parse_json(dump_json(Z));
    check("CG-rep JSON round trip", back.G() == Z.G() && back.c() == Z.c() && back.A() == Z.A() && back.b() == Z.b());

    std::ostringstream a, b;
    write_metrics_csv(a, ex.seeds.front().methods);
    const ScenarioResult again = run_scenario(
        "example1", [](std::uint64_t s) { return example1_problem(s, 30); }, example1_methods(), {1}, 1);
    write_metrics_csv(b, again.seeds.front().methods);
    check("metrics CSV is reproducible", a.str() == b.str());

    const ScenarioResult quad = run_scenario(
        "quadrotor", [](std::uint64_t s) { return quadrotor_problem(s, 100); }, quadrotor_methods(), {1}, 1);
    check("quadrotor estimates contain the truth (100 steps)", quad.all_contained());

    return failures == 0 ? kOk : kViolation;
}

void add_common(CLI::App* app, Common& opt, bool with_h)
{
    app->add_option("--method", opt.methods, "Comma-separated methods (CZMV, CZFO, ZMV, ZFO) or 'all'");
    app->add_option("--ng", opt.ng, "Generator cap")->check(CLI::PositiveNumber);
    app->add_option("--nc", opt.nc, "Constraint cap")->check(CLI::NonNegativeNumber);
    if (with_h)
        app->add_option("--h", opt.h, "Expansion point strategy C1..C4 for every method");
    app->add_option("--seed", opt.seed, "First seed");
    app->add_option("--seeds", opt.seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
    app->add_option("--steps", opt.steps, "Number of steps")->check(CLI::PositiveNumber);
    app->add_option("--out", opt.out, "Output directory");
    app->add_flag("--timing", opt.timing, "Write measured wall_micros instead of 0");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Set-membership state estimation with constrained zonotopes"};
    app.set_config("--config", "", "key=value configuration file; [section] names a subcommand");
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    auto* reach = app.add_subcommand("reach", "One prediction step of Example 1 with every expansion point strategy");
    std::size_t samples = 10000;
    std::uint64_t reach_seed = 1;
    std::string reach_out = "out";
    reach->add_option("--samples", samples, "Number of sampled initial states")->check(CLI::PositiveNumber);
    reach->add_option("--seed", reach_seed, "Sampling seed");
    reach->add_option("--out", reach_out, "Output directory");

    Common est;
    auto* estimate = app.add_subcommand("estimate", "Example 1 estimation with the four estimators");
    add_common(estimate, est, true);

    Common quad;
    QuadrotorControl control;
    std::size_t box_every = 50;
    auto* quadrotor = app.add_subcommand("quadrotor", "Quadrotor helix tracking with force disturbances");
    add_common(quadrotor, quad, true);
    quadrotor->add_option("--box-every", box_every, "Plot a position box every this many steps");
    quadrotor->add_option("--kp_xy", control.kp_xy, "Horizontal position gain");
    quadrotor->add_option("--kd_xy", control.kd_xy, "Horizontal velocity gain");
    quadrotor->add_option("--kp_z", control.kp_z, "Altitude gain");
    quadrotor->add_option("--kd_z", control.kd_z, "Climb rate gain");
    quadrotor->add_option("--kp_att", control.kp_att, "Roll/pitch angle gain");
    quadrotor->add_option("--kd_att", control.kd_att, "Roll/pitch rate gain");
    quadrotor->add_option("--kp_yaw", control.kp_yaw, "Yaw angle gain");
    quadrotor->add_option("--kd_yaw", control.kd_yaw, "Yaw rate gain");
    quadrotor->add_option("--max_tilt", control.max_tilt, "Largest commanded roll/pitch (rad)");

    app.add_subcommand("selftest", "Quick containment, export and determinism checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        if (*reach)
            return cmd_reach(samples, reach_seed, reach_out);
        if (*estimate)
            return cmd_estimate(est);
        if (*quadrotor)
            return cmd_quadrotor(quad, control, box_every);
        return cmd_selftest();
    }
    catch (const std::exception& e)
    {
        std::cerr << "czest: " << e.what() << '\n';
        return kUsage;
    }
}
