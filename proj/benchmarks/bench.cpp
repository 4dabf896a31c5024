// Part of geomech. SPDX-License-Identifier: MIT

#include <benchmark/benchmark.h>

#include <geomech/calculus.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/eval.hpp>
#include <geomech/integrate.hpp>
#include <geomech/parser.hpp>

using namespace geomech;

namespace
{

const coord_system& kepler_system()
{
    static const coord_system cs = coord_system::cartesian(3);
    return cs;
}

const expr_ptr& kepler_lagrangian()
{
    static const expr_ptr L = parse(kepler_system(),
                                    "(q1_t^2 + q2_t^2 + q3_t^2)/2 + (q1^2 + q2^2 + q3^2)^(-1/2)");
    return L;
}

void bm_parse(benchmark::State& state)
{
    for (auto _ : state) {
        auto e = parse(kepler_system(),
                       "(q1_t^2 + q2_t^2 + q3_t^2)/2 + (q1^2 + q2^2 + q3^2)^(-1/2)");
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(bm_parse);

void bm_expand_square(benchmark::State& state)
{
    const auto base = parse(kepler_system(), "q1 + 2*q2 + 3*q3 + t");
    for (auto _ : state) {
        auto e = make_pow(base, rat(4));
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(bm_expand_square);

void bm_partial(benchmark::State& state)
{
    const auto& L = kepler_lagrangian();
    for (auto _ : state) {
        auto d = partial(L, "q1");
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(bm_partial);

void bm_total_derivative(benchmark::State& state)
{
    const auto pi1 = partial(kepler_lagrangian(), "q1_t");
    for (auto _ : state) {
        auto d = total_derivative(kepler_system(), pi1);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(bm_total_derivative);

void bm_compiled_eval(benchmark::State& state)
{
    const std::vector<std::string> cols{"t",    "q1",   "q2",   "q3",
                                        "q1_t", "q2_t", "q3_t"};
    const compiled_expr c(kepler_system(), kepler_lagrangian(), cols);
    const double vals[] = {0.1, 1.0, 0.2, -0.3, 0.0, 1.0, 0.1};
    std::vector<double> scratch;
    for (auto _ : state) {
        double v = c(vals, scratch);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_compiled_eval);

// Steps per second of the fixed-step integrator on the three-dimensional
// central-force problem; items = RK4 steps.
void bm_rk4_kepler(benchmark::State& state)
{
    const auto& cs = kepler_system();
    std::vector<expr_ptr> xi;
    for (int i = 1; i <= 3; ++i)
        xi.push_back(parse(cs, "-q" + std::to_string(i) + "*(q1^2 + q2^2 + q3^2)^(-3/2)"));
    const second_order_equation eq(cs, xi);

    integrator_config cfg;
    cfg.t1 = 1.0; // 1000 steps at the default width
    cfg.stride = 1000;
    for (auto _ : state) {
        auto traj = integrate_dynamic(eq, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, cfg);
        benchmark::DoNotOptimize(traj);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(bm_rk4_kepler);

} // namespace

BENCHMARK_MAIN();
