#include "bsl/cgeo.hpp"
#include "bsl/error.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bsl;
using namespace bsl::cgeo;
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

} // namespace

TEST_SUITE("cgeo")
{
    TEST_CASE("mobius flow")
    {
        CHECK(std::abs(mobius_flow(0.7, 0.0) - std::tanh(0.7)) < 1e-15);
        CHECK(std::abs(mobius_flow(0.0, cplx(0.2, -0.4)) - cplx(0.2, -0.4)) < 1e-15);
        CHECK(std::abs(mobius_flow(1.0, mobius_flow(-1.0, 0.3)) - 0.3) < 1e-14);
        Rng rng(1);
        for (int k = 0; k < 50; ++k) {
            const double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
            const cplx z = random_point(1, rng, 0.95)[0];
            CHECK(std::abs(mobius_flow(s + t, z) - mobius_flow(s, mobius_flow(t, z))) < 1e-12);
            // automorphism: preserves the disk distance
            const cplx w = random_point(1, rng, 0.95)[0];
            CHECK(oracle::disk_dist(mobius_flow(t, z), mobius_flow(t, w)) ==
                  doctest::Approx(oracle::disk_dist(z, w)).epsilon(1e-9));
        }
    }

    TEST_CASE("model geodesics")
    {
        const ComplexGeodesic g = complex_geodesic(Domain::ball(2), cvec({0.0, 0.0}), cvec({0.5, 0.0}));
        for (cplx zeta : {cplx(0.3, 0.1), cplx(-0.6, 0.2)}) {
            const CVec p = g(zeta);
            CHECK(std::abs(p[0] - zeta) < 1e-12);
            CHECK(std::abs(p[1]) < 1e-12);
        }
        CHECK(g.defect < 1e-10);

        const ComplexGeodesic gd = complex_geodesic(Domain::disk(), cvec({0.0}), cvec({0.5}));
        CHECK(std::abs(gd(cplx(0.2, 0.3))[0] - cplx(0.2, 0.3)) < 1e-12);

        const ComplexGeodesic ge = complex_geodesic(Domain::ellipsoid({1, 2}), cvec({0.0, 0.0}), cvec({0.0, 0.5}));
        CHECK(ge.defect <= 1e-6);
        CHECK(std::abs(ge(cplx(0.4, 0.0))[1] - 0.4) < 1e-9);
        CHECK(std::abs(ge(cplx(0.4, 0.0))[0]) < 1e-12);

        CHECK_THROWS_AS(complex_geodesic(Domain::ball(2), cvec({0.1, 0.0}), cvec({0.1, 0.0})), Error);
    }

    TEST_CASE("property: model geodesics are isometric")
    {
        Rng rng(2);
        for (int k = 0; k < 20; ++k) {
            const CVec z = random_point(2, rng, 0.9), w = random_point(2, rng, 0.9);
            const ComplexGeodesic g = complex_geodesic(Domain::ball(2), z, w);
            CHECK(g.defect <= 1e-10);
            CHECK(isometry_defect(g, Domain::ball(2), 50, k) <= 1e-10);
            CHECK((g(0.0) - z).norm() < 1e-10);
            CHECK((g(g.s) - w).norm() < 1e-10);
        }
    }

    TEST_CASE("left inverses")
    {
        const Domain ball = Domain::ball(2);
        const ComplexGeodesic g = complex_geodesic(ball, cvec({0.0, 0.0}), cvec({0.5, 0.0}));
        const LeftInverse li = left_inverse(g, ball);
        CHECK(std::abs(li.map(cvec({0.3, 0.4})) - 0.3) < 1e-12);
        const domain::Hyperplane h = li.fiber(0.3);
        CHECK(h.distance(cvec({0.3, cplx(0.2, -0.5)})) < 1e-12);
        CHECK(li.retraction_defect < 1e-10);

        const Domain b3 = Domain::ball(3);
        const ComplexGeodesic g3 = complex_geodesic(b3, cvec({0.0, 0.0, 0.0}), cvec({0.0, 0.5, 0.0}));
        const LeftInverse l3 = left_inverse(g3, b3);
        CHECK(std::abs(l3.map(cvec({0.1, cplx(0.2, 0.1), 0.3})) - cplx(0.2, 0.1)) < 1e-12);

        Rng rng(3);
        for (int k = 0; k < 10; ++k) {
            const ComplexGeodesic gg = complex_geodesic(ball, random_point(2, rng, 0.9), random_point(2, rng, 0.9));
            const LeftInverse l = left_inverse(gg, ball);
            for (int s = 0; s < 8; ++s) {
                const cplx zeta = random_point(1, rng, 0.95)[0];
                CHECK(std::abs(l.map(gg(zeta)) - zeta) < 1e-10);
                CHECK(l.fiber(zeta).distance(gg(zeta)) < 1e-10);
            }
        }
    }

    TEST_CASE("gromov product")
    {
        const Domain disk = Domain::disk();
        const double r = 0.6;
        const double expected = 0.5 * (2 * oracle::disk_dist(0.0, r) - oracle::disk_dist(-r, r));
        CHECK(gromov_product(disk, cvec({r}), cvec({-r}), cvec({0.0})).contains(expected, 1e-9));
        CHECK(gromov_product(disk, cvec({0.4}), cvec({0.4}), cvec({0.0})).contains(oracle::disk_dist(0.0, 0.4), 1e-9));

        const Domain ball = Domain::ball(2);
        double prev = -1.0;
        for (int n = 2; n <= 40; n *= 2) {
            const double a = 1.0 - 1.0 / n, b = 1.0 - 1.0 / (double(n) * n);
            const DistInterval g = gromov_product(ball, cvec({a, 0.0}), cvec({b, 0.0}), cvec({0.0, 0.0}));
            CHECK(g.lower > prev);
            CHECK(g.lower >= 0);
            CHECK(g.upper <= std::min(kobayashi::dist_upper(ball, cvec({a, 0.0}), cvec({0.0, 0.0})),
                                      kobayashi::dist_upper(ball, cvec({b, 0.0}), cvec({0.0, 0.0}))) +
                                 1e-9);
            prev = g.lower;
        }
    }

    TEST_CASE("boundary hyperplane probe")
    {
        const Domain ball = Domain::ball(2);
        const ComplexGeodesic g = complex_geodesic(ball, cvec({0.0, 0.0}), cvec({0.5, 0.0}));
        const HyperplaneProbe p = boundary_hyperplane_probe(g, ball, 1.0, probe_schedule());
        CHECK(std::abs(std::abs(p.limit.normal[0]) - 1.0) < 1e-9);
        CHECK(p.limit.distance(cvec({1.0, 0.3})) < 1e-6);
        CHECK(p.rows.back().residual < 1e-5);
        CHECK(p.rows.back().residual < p.rows.front().residual);

        const Domain egg = Domain::ellipsoid({1, 2});
        const ComplexGeodesic ge = complex_geodesic(egg, cvec({0.0, 0.0}), cvec({0.0, 0.5}));
        const HyperplaneProbe pe = boundary_hyperplane_probe(ge, egg, 1.0, probe_schedule());
        CHECK(std::abs(std::abs(pe.limit.normal[1]) - 1.0) < 1e-6);
        CHECK(pe.rows.back().residual < pe.rows.front().residual);

        // fibers of the left inverse approach the probe's limit hyperplane
        const LeftInverse li = left_inverse(g, ball);
        double prev = 10.0;
        for (double r : {0.5, 0.9, 0.99, 0.999}) {
            const double angle = hyperplane_angle(li.fiber(r).normal, p.limit.normal);
            CHECK(angle <= prev + 1e-12);
            prev = angle;
        }
        CHECK(prev < 1e-6);
    }
}
