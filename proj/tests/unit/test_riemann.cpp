#include "bsl/error.hpp"
#include "bsl/numeric.hpp"
#include "bsl/riemann.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bsl;
using namespace bsl::riemann;

namespace
{

RVec unit_at(const MetricField& m, const RVec& x, RVec v)
{
    return v / norm_g(m, x, v);
}

RVec random_in_ball(int n, Rng& rng, double radius)
{
    RVec x(n);
    for (int i = 0; i < n; ++i)
        x[i] = rng.normal();
    return x / x.norm() * radius * std::pow(rng.uniform(), 1.0 / n);
}

std::vector<double> as_std(const RVec& v)
{
    return {v.data(), v.data() + v.size()};
}

} // namespace

TEST_SUITE("riemann")
{
    TEST_CASE("constant curvature models")
    {
        Rng rng(1);
        for (int k = 0; k < 10; ++k) {
            const RVec x = random_in_ball(2, rng, 0.9);
            const RVec a = random_in_ball(2, rng, 1.0), b = random_in_ball(2, rng, 1.0);
            CHECK(christoffel_curvature(*poincare(), x).sectional(a, b) == doctest::Approx(-1.0).epsilon(1e-6));
            CHECK(christoffel_curvature(*sphere(), RVec(3 * x)).sectional(a, b) == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(std::abs(christoffel_curvature(*euclid(2), x).sectional(a, b)) < 1e-12);
        }
        const Christoffel g = christoffel(*euclid(3), rvec({0.1, 0.2, 0.3}));
        for (int c = 0; c < 3; ++c)
            CHECK(g.k[c].norm() == 0.0);
        CHECK(make_metric("poincare@4")->kappa_model().value() == doctest::Approx(-0.25));
        CHECK_THROWS_AS(make_metric("hyperboloid"), Error);
    }

    TEST_CASE("geodesic endpoints")
    {
        const GeodesicPath flat = geodesic_flow(*euclid(2), {rvec({0, 0}), rvec({1, 0})}, 1.0);
        CHECK((flat.x.back() - rvec({1, 0})).norm() < 1e-12);

        const GeodesicPath hyp = geodesic_flow(*poincare(), {rvec({0, 0}), rvec({0.5, 0})}, 1.0);
        CHECK(hyp.x.back()[0] == doctest::Approx(oracle::poincare_radial(1.0)).epsilon(1e-10));

        const GeodesicPath eq = geodesic_flow(*sphere(), {rvec({1, 0}), rvec({0, 1})}, std::numbers::pi);
        CHECK((eq.x.back() - rvec({-1, 0})).norm() < 1e-5);

    }

    TEST_CASE("property: speed is conserved over long times")
    {
        for (const MetricPtr& m : {euclid(2), poincare(), bergman_ball(2)}) {
            RVec v = RVec::Zero(m->dim());
            v[1] = 1.0;
            const RVec x = RVec::Zero(m->dim());
            const GeodesicPath p = geodesic_flow(*m, {x, unit_at(*m, x, v)}, 10.0);
            CHECK(p.max_drift < 1e-6);
        }
        const GeodesicPath s = geodesic_flow(*sphere(), {rvec({1, 0}), rvec({0, 1})}, 10.0);
        CHECK(s.max_drift < 1e-6);
    }

    TEST_CASE("exponential map inverse")
    {
        const Shooting a = exp_log(*poincare(), rvec({0, 0}), rvec({0.5, 0}));
        CHECK(a.distance == doctest::Approx(std::log(3.0)).epsilon(1e-9));
        const Shooting z = exp_log(*poincare(), rvec({0.2, 0.1}), rvec({0.2, 0.1}));
        CHECK(z.distance == 0.0);
        Rng rng(2);
        for (int k = 0; k < 6; ++k) {
            const RVec x = random_in_ball(2, rng, 0.8), y = random_in_ball(2, rng, 0.8);
            const Shooting s = exp_log(*poincare(), x, y);
            CHECK(s.distance == doctest::Approx(oracle::poincare_dist(as_std(x), as_std(y))).epsilon(1e-7));
            CHECK((exp_map(*poincare(), x, s.v, 2000) - y).norm() < 1e-7);
        }
        const Shooting f = exp_log(*euclid(2), rvec({1, 2}), rvec({4, 6}));
        CHECK(f.distance == doctest::Approx(5.0));
        CHECK_THROWS_AS(exp_log(*sphere(), rvec({0, 0}), rvec({50, 0})), Error);
    }

    TEST_CASE("parallel transport")
    {
        // octant triangle: enclosed area pi/2 equals the holonomy angle
        const MetricPtr s = sphere();
        const RVec pts[4] = {rvec({0, 0}), rvec({1, 0}), rvec({0, 1}), rvec({0, 0})};
        RVec v = rvec({1, 0});
        for (int k = 0; k < 3; ++k) {
            const Shooting sh = exp_log(*s, pts[k], pts[k + 1]);
            v = parallel_transport(*s, geodesic_flow(*s, {pts[k], sh.v}, 1.0), v).p.back();
        }
        CHECK(std::atan2(v[1], v[0]) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));

        const GeodesicPath radial = geodesic_flow(*poincare(), {rvec({0, 0}), rvec({0.5, 0})}, 3.0);
        CHECK(parallel_transport(*poincare(), radial, rvec({0, 0.3})).max_norm_drift < 1e-8);
    }

    TEST_CASE("jacobi fields")
    {
        const GeodesicPath flat = geodesic_flow(*euclid(2), {rvec({0, 0}), rvec({1, 0})}, 4.0);
        const JacobiReport jf = jacobi_flow(*euclid(2), flat, rvec({0, 0}), rvec({0, 1}));
        CHECK(jf.j.back()[1] == doctest::Approx(4.0));
        CHECK(jf.pass);

        for (const auto& [m, k] : {std::pair{poincare(), -1.0}, std::pair{sphere(), 1.0}}) {
            const RVec x0 = k < 0 ? rvec({0, 0}) : rvec({1, 0});
            const RVec v0 = unit_at(*m, x0, k < 0 ? rvec({1, 0}) : rvec({0, 1}));
            const RVec w0 = unit_at(*m, x0, k < 0 ? rvec({0, 1}) : rvec({1, 0}));
            const GeodesicPath p = geodesic_flow(*m, {x0, v0}, 2.0);
            const JacobiReport jr = jacobi_flow(*m, p, RVec::Zero(2), w0);
            CHECK(norm_g(*m, p.x.back(), jr.j.back()) == doctest::Approx(oracle::jacobi_norm(k, 2.0)).epsilon(1e-6));
            CHECK(jr.kappa == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(jr.pass);
        }
        CHECK(std::sinh(1.0) <= std::exp(1.0));
    }

    TEST_CASE("sasaki splitting")
    {
        const MetricPtr m = poincare();
        const RVec x = rvec({0.2, -0.1}), X = rvec({0.3, 0.4}), dx = rvec({0.5, 0.2}), dX = rvec({-0.1, 0.7});
        const SasakiSplit direct = sasaki_eval(*m, {x, X}, dx, dX);
        const SasakiSplit curve = sasaki_eval(*m, [&](double t) { return TangentPoint{x + t * dx, X + t * dX}; });
        CHECK((direct.vertical - curve.vertical).norm() < 1e-8);
        const double h2 = std::pow(norm_g(*m, x, direct.horizontal), 2) + std::pow(norm_g(*m, x, direct.vertical), 2);
        CHECK(direct.h_norm * direct.h_norm == doctest::Approx(h2).epsilon(1e-8));

        const MetricPtr e = euclid(2);
        const SasakiSplit h = sasaki_eval(*e, {x, X}, dx, RVec::Zero(2));
        CHECK(h.vertical.norm() == 0.0);
        CHECK(h.h_norm == doctest::Approx(dx.norm()));
        const SasakiSplit v = sasaki_eval(*m, {x, X}, RVec::Zero(2), dX);
        CHECK(v.horizontal.norm() == 0.0);
        CHECK(v.h_norm == doctest::Approx(norm_g(*m, x, dX)));
    }

    TEST_CASE("property: fiber norm gap is below the h-length of a curve")
    {
        const MetricPtr m = poincare();
        Rng rng(3);
        for (int k = 0; k < 10; ++k) {
            const RVec x0 = random_in_ball(2, rng, 0.6), x1 = random_in_ball(2, rng, 0.6);
            const RVec a = random_in_ball(2, rng, 1.0), b = random_in_ball(2, rng, 1.0);
            auto curve = [&](double t) { return TangentPoint{RVec((1 - t) * x0 + t * x1), RVec((1 - t) * a + t * b)}; };
            const double gap = std::abs(norm_g(*m, x0, a) - norm_g(*m, x1, b));
            CHECK(gap <= sasaki_length(*m, curve, 0.0, 1.0) + 1e-9);
        }
    }

    TEST_CASE("tangent bundle distances")
    {
        const MetricPtr e = euclid(2);
        for (double phi : {0.3, 1.0, 2.5}) {
            const TangentPoint a{rvec({0, 0}), rvec({1, 0})}, b{rvec({0, 0}), rvec({std::cos(phi), std::sin(phi)})};
            const DistInterval t1 = tangent_distances(*e, a, b, BundleMode::T1M);
            const DistInterval tm = tangent_distances(*e, a, b, BundleMode::TM);
            CHECK(t1.upper == doctest::Approx(phi));
            CHECK(tm.upper == doctest::Approx(oracle::flat_spread(1.0, phi)));
            CHECK(t1.upper <= (std::numbers::pi + 1) * tm.upper);
        }
        const TangentPoint p{rvec({0.1, 0.2}), rvec({0.3, 0.1})};
        const DistInterval same = tangent_distances(*poincare(), p, p, BundleMode::TM);
        CHECK(same.lower == 0.0);
        CHECK(same.upper == doctest::Approx(0.0).epsilon(1e-12));
        CHECK_THROWS_AS(tangent_distances(*e, p, p, BundleMode::T1M), Error);

        // transported vector across a base distance 1
        const MetricPtr m = poincare();
        const RVec x = rvec({0, 0});
        const GeodesicPath g = geodesic_flow(*m, {x, unit_at(*m, x, rvec({1, 0}))}, 1.0);
        const RVec X = unit_at(*m, x, rvec({0.3, 1}));
        const RVec Y = parallel_transport(*m, g, X).p.back();
        const DistInterval iv = tangent_distances(*m, {x, X}, {g.x.back(), Y}, BundleMode::TM);
        CHECK(iv.contains(1.0, 1e-6));
    }

    TEST_CASE("geodesic spread")
    {
        const MetricPtr e = euclid(2);
        const double phi = 0.4;
        const SpreadReport flat = spread_check(*e, {rvec({0, 0}), rvec({1, 0})},
                                               {rvec({0, 0}), rvec({std::cos(phi), std::sin(phi)})}, 0.0, 3.0);
        CHECK(flat.pass);
        for (const SpreadRow& r : flat.rows)
            CHECK(r.lhs == doctest::Approx(oracle::flat_spread(r.t, phi)).epsilon(1e-9));

        const TangentPoint g{rvec({0, 0}), rvec({0.5, 0})};
        const SpreadReport same = spread_check(*poincare(), g, g, 1.0, 3.0);
        CHECK(same.pass);
        for (const SpreadRow& r : same.rows)
            CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-12));

        const double a = 0.05;
        const SpreadReport hyp = spread_check(*poincare(), g, {rvec({0, 0}), rvec({0.5 * std::cos(a), 0.5 * std::sin(a)})}, 1.0, 3.0);
        CHECK(hyp.pass);
        // hyperbolic law of cosines (curvature -1) for two rays at angle a
        for (const SpreadRow& r : hyp.rows) {
            const double c = std::cosh(r.t) * std::cosh(r.t) - std::sinh(r.t) * std::sinh(r.t) * std::cos(a);
            CHECK(r.lhs == doctest::Approx(std::acosh(c)).epsilon(1e-6));
        }
    }

    TEST_CASE("backward estimate")
    {
        const MetricPtr e = euclid(2);
        const BackwardSample tr = backward_estimate(*e, {rvec({0, 0}), rvec({1, 0})}, {rvec({0, 0.1}), rvec({1, 0})}, 0.3);
        CHECK(tr.ratio == doctest::Approx(0.3).epsilon(1e-9));
        const BackwardSample same = backward_estimate(*e, {rvec({0, 0}), rvec({1, 0})}, {rvec({0, 0}), rvec({1, 0})}, 0.3);
        CHECK(same.ratio == 0.0);

        const MetricPtr m = poincare();
        const TangentPoint g{rvec({0, 0}), rvec({0.5, 0})};
        const TangentPoint s{rvec({0, 0}), rvec({0.5 * std::cos(1e-3), 0.5 * std::sin(1e-3)})};
        const double r1 = backward_estimate(*m, g, s, 0.1).ratio;
        const double r2 = backward_estimate(*m, g, s, 0.05).ratio;
        CHECK(std::isfinite(r1));
        CHECK(std::abs(r2 / r1 - 1) <= 0.1);
        CHECK_THROWS_AS(backward_estimate(*sphere(), {rvec({1, 0}), rvec({0, 1})}, {rvec({1, 0}), rvec({0, 1})}, 0.9),
                        Error);
    }

    TEST_CASE("segment maximum")
    {
        const SegmentMax o = segment_max_lower_bound(rvec({1, 0}), rvec({0, 1}), 1.0);
        CHECK(o.max_value == doctest::Approx(std::sqrt(2.0)));
        CHECK(o.pass);
        const SegmentMax z = segment_max_lower_bound(rvec({0, 0}), rvec({0, 2}), 0.5);
        CHECK(z.max_value == doctest::Approx(1.0));
        CHECK(z.pass);
        Rng rng(4);
        for (int k = 0; k < 2000; ++k) {
            const double eps = rng.uniform(1e-3, 2.0);
            const RVec y = random_in_ball(3, rng, 2.0);
            const RVec x = k % 2 ? RVec(-(eps / 2) * y) : random_in_ball(3, rng, 2.0);
            const SegmentMax s = segment_max_lower_bound(x, y, eps);
            CHECK(s.pass);
            CHECK(s.max_value == doctest::Approx(oracle::segment_max(as_std(x), as_std(y), eps)).epsilon(1e-9));
        }
    }

    TEST_CASE("convexity radius")
    {
        CHECK(std::isinf(convexity_radius_lower(*poincare())));
        CHECK(convexity_radius_lower(*sphere()) > 0);
        CHECK(convexity_radius_lower(*sphere()) <= std::numbers::pi / 2);
    }
}
