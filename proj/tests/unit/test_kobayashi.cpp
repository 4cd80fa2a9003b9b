#include "bsl/domain.hpp"
#include "bsl/error.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bsl;
using namespace bsl::kobayashi;
using domain::Domain;

namespace
{

CVec random_point(int d, Rng& rng, double max_norm)
{
    CVec u(d);
    for (int j = 0; j < d; ++j)
        u[j] = cplx(rng.normal(), rng.normal());
    return u / u.norm() * max_norm * std::pow(rng.uniform(), 1.0 / (2 * d));
}

std::vector<oracle::cd> coords(const CVec& z)
{
    return {z.data(), z.data() + z.size()};
}

// sup eps with the Kobayashi disc B(p; eps) inside the Euclidean disc B(p; rho), p real in [0, 1)
double disk_inclusion_oracle(double p, double rho)
{
    return std::atanh(rho / (1.0 - p * p + rho * p));
}

} // namespace

TEST_SUITE("kobayashi")
{
    TEST_CASE("model distances")
    {
        const Domain disk = Domain::disk();
        CHECK(model_dist(disk, cvec({0.0}), cvec({0.5})) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
        CHECK(model_dist(disk, cvec({0.3}), cvec({0.3})) == 0.0);
        CHECK(model_dist(Domain::ball(2), cvec({0.0, 0.0}), cvec({0.5, 0.0})) ==
              doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
        CHECK_THROWS_AS(model_dist(disk, cvec({0.0}), cvec({1.2})), Error);

        Rng rng(1);
        for (int k = 0; k < 200; ++k) {
            const CVec a = random_point(2, rng, 0.99), b = random_point(2, rng, 0.99);
            CHECK(model_dist(Domain::ball(2), a, b) == doctest::Approx(oracle::ball_dist(coords(a), coords(b))).epsilon(1e-9));
            const CVec pa = cvec({random_point(1, rng, 0.99)[0], random_point(1, rng, 0.99)[0]});
            const CVec pb = cvec({random_point(1, rng, 0.99)[0], random_point(1, rng, 0.99)[0]});
            CHECK(model_dist(Domain::polydisk(2), pa, pb) ==
                  doctest::Approx(oracle::polydisk_dist(coords(pa), coords(pb))).epsilon(1e-9));
            CHECK(model_dist(disk, CVec(a.head(1)), CVec(b.head(1))) ==
                  doctest::Approx(oracle::disk_dist(a[0], b[0])).epsilon(1e-9));
        }
    }

    TEST_CASE("model metric and the disk sandwich")
    {
        const Domain disk = Domain::disk();
        CHECK(model_metric(disk, cvec({0.0}), cvec({1.0})) == doctest::Approx(1.0));
        const double k = model_metric(disk, cvec({0.5}), cvec({1.0}));
        CHECK(k == doctest::Approx(4.0 / 3.0));
        CHECK(1.0 <= k);
        CHECK(k <= 2.0);
        CHECK(model_metric(Domain::ball(2), cvec({0.0, 0.0}), cvec({0.6, cplx(0, 0.8)})) == doctest::Approx(1.0));
    }

    TEST_CASE("metric bounds")
    {
        const DistInterval b = metric_bounds(Domain::ball(2), cvec({0.0, 0.0}), cvec({0.3, cplx(0.1, 0.4)}));
        const double nv = cvec({0.3, cplx(0.1, 0.4)}).norm();
        CHECK(b.upper == doctest::Approx(nv));
        CHECK(b.contains(nv, 1e-12));
        CHECK(metric_bounds(Domain::disk(), cvec({0.5}), cvec({1.0})).contains(4.0 / 3.0, 1e-12));

        // finite-type lower bound near (1, 0) of the egg, calibrated on one grid and tested on another
        const Domain egg = Domain::ellipsoid({1, 2});
        const CVec xi = cvec({1.0, 0.0}), n = cvec({-1.0, 0.0}), v = cvec({0.0, 1.0});
        const FiniteTypeBound ft = calibrate_finite_type(egg, xi, n, v, 4, geometric_schedule(0.5, 3, 10));
        CHECK(ft.alpha0 > 0);
        BoundsOptions opts;
        opts.finite_type = ft;
        for (double r : {0.03, 0.007, 0.0015}) {
            const CVec z = xi + r * n;
            const DistInterval iv = metric_bounds(egg, z, v, opts);
            CHECK(iv.lower >= ft.alpha0 / std::pow(r, 0.25) * (1 - 1e-9));
            CHECK(iv.lower <= iv.upper);
        }
    }

    TEST_CASE("distance bounds contain exact values")
    {
        const Domain disk = Domain::disk();
        CHECK(dist_bounds(disk, cvec({0.0}), cvec({0.5})).contains(0.549306144334054846, 1e-12));
        const DistInterval zero = dist_bounds(Domain::ellipsoid({1, 2}), cvec({0.1, 0.2}), cvec({0.1, 0.2}));
        CHECK(zero.lower == 0.0);
        CHECK(zero.upper == 0.0);

        Rng rng(2);
        for (int k = 0; k < 60; ++k) {
            const CVec a = random_point(2, rng, 0.95), b = random_point(2, rng, 0.95);
            const DistInterval iv = dist_bounds(Domain::ball(2), a, b);
            CHECK(iv.contains(oracle::ball_dist(coords(a), coords(b)), 1e-9));
            const DistInterval id = dist_bounds(disk, CVec(a.head(1)), CVec(b.head(1)));
            CHECK(id.contains(oracle::disk_dist(a[0], b[0]), 1e-9));
        }
    }

    TEST_CASE("property: inclusion ball < egg < bidisk is distance decreasing")
    {
        const Domain ball = Domain::ball(2), egg = Domain::ellipsoid({1, 2}), bidisk = Domain::polydisk(2);
        Rng rng(3);
        for (int k = 0; k < 30; ++k) {
            const CVec a = random_point(2, rng, 0.9), b = random_point(2, rng, 0.9);
            const DistInterval e = dist_bounds(egg, a, b);
            CHECK(e.upper >= oracle::polydisk_dist(coords(a), coords(b)) - 1e-9);
            CHECK(e.lower <= oracle::ball_dist(coords(a), coords(b)) + 1e-9);
        }
    }

    TEST_CASE("property: symmetry and triangle inequality")
    {
        const Domain ball = Domain::ball(2);
        Rng rng(4);
        for (int k = 0; k < 50; ++k) {
            const CVec a = random_point(2, rng, 0.97), b = random_point(2, rng, 0.97), c = random_point(2, rng, 0.97);
            CHECK(model_dist(ball, a, b) == doctest::Approx(model_dist(ball, b, a)).epsilon(1e-12));
            CHECK(model_dist(ball, a, c) <= model_dist(ball, a, b) + model_dist(ball, b, c) + 1e-12);
        }
    }

    TEST_CASE("property: lower bound is proper toward the boundary")
    {
        const Domain egg = Domain::ellipsoid({1, 2});
        double prev = -1.0;
        for (double r : geometric_schedule(0.5, 2, 14)) {
            const double lo = dist_lower(egg, cvec({0.0, 0.0}), cvec({1.0 - r, 0.0}));
            CHECK(lo > prev);
            prev = lo;
        }
        CHECK(prev > 3.0);
    }

    TEST_CASE("ball inclusion radii")
    {
        const Domain disk = Domain::disk();
        for (double r : geometric_schedule(0.5, 3, 14)) {
            const double p = 1.0 - r, rho = r / 4.0;
            const double eps = kob_ball_inclusion(disk, cvec({p}), rho);
            CHECK(eps >= r / 4.0 * (1 - 1e-12));
            const double sup = disk_inclusion_oracle(p, rho);
            CHECK(eps <= sup * (1 + 1e-12));
            CHECK(disk_ball_inclusion_exact(p, rho) == doctest::Approx(sup).epsilon(1e-10));
        }
        double prev = 1.0;
        for (double rho : {0.4, 0.1, 0.01, 0.001}) {
            const double eps = kob_ball_inclusion(Domain::ball(2), cvec({0.3, 0.1}), rho);
            CHECK(eps < prev);
            prev = eps;
        }
        CHECK_THROWS_AS(kob_ball_inclusion(disk, cvec({0.9}), 0.2), Error);
    }

    TEST_CASE("logarithmic growth toward the boundary")
    {
        const LogGrowthFit fit = fit_log_growth(Domain::ball(2), cvec({0.0, 0.0}), cvec({1.0, 0.0}), cvec({-1.0, 0.0}),
                                                geometric_schedule(0.5, 3, 14));
        for (std::size_t k = 0; k < fit.radii.size(); ++k)
            CHECK(fit.upper[k] <= fit.c0 + 0.5 * std::log(1.0 / fit.radii[k]) + 1e-12);
        CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.05));
    }
}
