#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "czest/error.hpp"
#include "czest/set_queries.hpp"
#include "scenarios.hpp"

namespace czest::scenarios {

bool ScenarioResult::all_contained() const
{
    for (const auto& s : seeds)
        for (const auto& m : s.methods)
            if (!m.ok())
                return false;
    return true;
}

double ScenarioResult::arr(Method a, Method b) const
{
    if (seeds.empty())
        throw DimensionError("ScenarioResult::arr: no seeds");
    double sum = 0.0;
    for (const auto& s : seeds)
    {
        const EstimatorRun* ra = nullptr;
        const EstimatorRun* rb = nullptr;
        for (const auto& m : s.methods)
        {
            if (m.setup.method == a)
                ra = &m.run;
            if (m.setup.method == b)
                rb = &m.run;
        }
        if (!ra || !rb)
            throw Error(std::string("ScenarioResult::arr: missing ") + to_string(!ra ? a : b));
        sum += compute_arr(*ra, *rb);
    }
    return sum / static_cast<double>(seeds.size());
}

MethodResult run_method(const Problem& problem, const MethodSetup& setup, double tol)
{
    MethodResult out;
    out.setup = setup;
    EstimatorConfig cfg;
    cfg.method = setup.method;
    cfg.h_strategy = setup.h;
    cfg.reduction = setup.caps;
    cfg.split_affine_w = setup.split_affine_w;
    try
    {
        out.run = run_estimation(*problem.model, problem.meas, problem.X0, problem.W, problem.steps, problem.truth.u,
                                 problem.truth.y, cfg);
    }
    catch (const std::exception& e)
    {
        out.error = e.what();
        return out;
    }
    for (const auto& rec : out.run.steps)
    {
        if (!is_member(rec.updated, problem.truth.x[rec.k], tol))
        {
            out.violation = rec.k;
            break;
        }
    }
    return out;
}

unsigned default_threads()
{
    if (const char* env = std::getenv("CZEST_THREADS"))
    {
        const int v = std::atoi(env);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ScenarioResult run_scenario(const std::string& name, const std::function<Problem(std::uint64_t)>& make_problem,
                            const std::vector<MethodSetup>& methods, const std::vector<std::uint64_t>& seeds,
                            unsigned threads)
{
    ScenarioResult result;
    result.name = name;
    result.seeds.resize(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (std::size_t i = next++; i < seeds.size(); i = next++)
        {
            try
            {
                const Problem p = make_problem(seeds[i]);
                SeedResult& s = result.seeds[i];
                s.seed = seeds[i];
                for (const auto& m : methods)
                    s.methods.push_back(run_method(p, m));
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned n = std::min<unsigned>(threads ? threads : default_threads(), static_cast<unsigned>(seeds.size()));
    if (n <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return result;
}

} // namespace czest::scenarios
