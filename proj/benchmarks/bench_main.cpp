#include "bsl/domain.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"
#include "bsl/riemann.hpp"
#include "bsl/rigidity.hpp"

#include <benchmark/benchmark.h>

using namespace bsl;

static void BM_DistBoundsEllipsoid(benchmark::State& state)
{
    const domain::Domain egg = domain::Domain::ellipsoid({1, 2});
    const CVec a = cvec({0.1, cplx(0.2, -0.1)}), b = cvec({cplx(0.5, 0.3), 0.4});
    for (auto _ : state)
        benchmark::DoNotOptimize(kobayashi::dist_bounds(egg, a, b));
}
BENCHMARK(BM_DistBoundsEllipsoid);

static void BM_GeodesicFlow(benchmark::State& state)
{
    const riemann::MetricPtr m = state.range(0) == 0 ? riemann::poincare() : riemann::bergman_ball(2);
    RVec x = RVec::Zero(m->dim()), v = RVec::Zero(m->dim());
    v[0] = 0.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(riemann::geodesic_flow(*m, {x, v}, 1.0));
}
BENCHMARK(BM_GeodesicFlow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ExpLog(benchmark::State& state)
{
    const riemann::MetricPtr m = riemann::poincare();
    const RVec x = rvec({0.1, -0.2}), y = rvec({-0.4, 0.5});
    for (auto _ : state)
        benchmark::DoNotOptimize(riemann::exp_log(*m, x, y));
}
BENCHMARK(BM_ExpLog)->Unit(benchmark::kMillisecond);

static void BM_ConvexPipeline(benchmark::State& state)
{
    const domain::Domain ball = domain::Domain::ball(2);
    const auto radii = geometric_schedule(0.5, 3, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(rigidity::convex_pipeline(ball, schwarz::identity_map(2), cvec({1.0, 0.0}), radii));
}
BENCHMARK(BM_ConvexPipeline)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
