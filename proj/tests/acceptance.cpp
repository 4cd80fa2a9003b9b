// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "bsl/domain.hpp"
#include "bsl/error.hpp"
#include "bsl/kahler.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"
#include "bsl/riemann.hpp"
#include "bsl/rigidity.hpp"
#include "bsl/schwarz.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

using namespace bsl;
using domain::Domain;
using riemann::MetricPtr;
using riemann::TangentPoint;

namespace
{

constexpr double kPi = std::numbers::pi;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass)
            detail = what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx random_disk_point(Rng& rng, double max_norm)
{
    return std::polar(max_norm * std::sqrt(rng.uniform()), rng.uniform(0, 2 * kPi));
}

RVec random_unit(int n, Rng& rng)
{
    RVec x(n);
    for (int i = 0; i < n; ++i)
        x[i] = rng.normal();
    return x.normalized();
}

RVec g_unit(const riemann::MetricField& m, const RVec& x, const RVec& v)
{
    return v / riemann::norm_g(m, x, v);
}

// Unit vector at x making angle phi with the unit vector v, rotated toward a random g-orthogonal direction.
RVec rotate_toward(const riemann::MetricField& m, const RVec& x, const RVec& v, double phi, Rng& rng)
{
    const RMat g = m.metric(x);
    RVec e = random_unit(m.dim(), rng);
    e -= v.dot(g * e) * v;
    e /= std::sqrt(e.dot(g * e));
    return std::cos(phi) * v + std::sin(phi) * e;
}

std::vector<double> std_vec(const RVec& v)
{
    return {v.data(), v.data() + v.size()};
}

std::vector<std::complex<double>> std_cvec(const CVec& v)
{
    return {v.data(), v.data() + v.size()};
}

struct Model
{
    MetricPtr m;
    double kappa;
    // random start point and unit direction in a region where horizon-3 geodesics stay well inside the chart
    std::function<TangentPoint(Rng&)> start;
};

std::vector<Model> models()
{
    std::vector<Model> out;
    auto ball_start = [](MetricPtr m, double radius) {
        return [m, radius](Rng& rng) {
            const RVec x = random_unit(m->dim(), rng) * radius * rng.uniform();
            return TangentPoint{x, g_unit(*m, x, random_unit(m->dim(), rng))};
        };
    };
    const MetricPtr e = riemann::euclid(2), p = riemann::poincare(), b = riemann::bergman_ball(2), s = riemann::sphere();
    out.push_back({e, 0.0, ball_start(e, 1.0)});
    out.push_back({p, 1.0, ball_start(p, 0.5)});
    out.push_back({b, 0.0, ball_start(b, 0.5)});
    // near-equatorial great circles keep away from the chart's point at infinity
    out.push_back({s, 1.0, [s](Rng& rng) {
                       const double a = rng.uniform(0, 2 * kPi), tilt = rng.uniform(-0.3, 0.3);
                       const RVec x = rvec({std::cos(a), std::sin(a)});
                       const RVec t = rvec({-std::sin(a), std::cos(a)});
                       const RVec v = std::cos(tilt) * t + std::sin(tilt) * x;
                       return TangentPoint{x, g_unit(*s, x, v)};
                   }});
    Rng rng(1);
    out[2].kappa = riemann::measured_kappa(*b, riemann::geodesic_flow(*b, out[2].start(rng), 1.0));
    return out;
}

Outcome criterion1()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Domain disk = Domain::disk();
    Rng rng(101);
    int wide = 0;
    for (int k = 0; k < 1000; ++k) {
        const cplx z = random_disk_point(rng, 0.999), w = random_disk_point(rng, 0.999);
        const DistInterval iv = kobayashi::dist_bounds(disk, cvec({z}), cvec({w}));
        o.require(iv.contains(oracle::disk_dist(z, w), 1e-9), "interval misses the closed form");
        if (1 - std::abs(z) >= 0.05 && 1 - std::abs(w) >= 0.05 && iv.width() > 0.2)
            ++wide;
    }
    o.require(wide == 0, std::to_string(wide) + " intervals wider than 0.2");
    const double secs = seconds_since(t0);
    o.require(secs <= 10.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

Outcome criterion2()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto zoo = schwarz::disk_zoo();
    Rng rng(202);
    int violations = 0;
    for (int k = 0; k < 500; ++k) {
        const schwarz::HoloMap& f = zoo[static_cast<std::size_t>(rng.integer(0, static_cast<int>(zoo.size()) - 1))];
        const cplx a = random_disk_point(rng, 0.95), b = random_disk_point(rng, 0.95), z = random_disk_point(rng, 0.95);
        if (!schwarz::cs_bound_check(f, a, b, z).pass)
            ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    const double secs = seconds_since(t0);
    o.require(secs <= 30.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

Outcome criterion3()
{
    Outcome o;
    const auto radii = geometric_schedule(0.5, 3, 14);
    for (const Domain& dom : {Domain::disk(), Domain::ball(2)}) {
        CVec xi = CVec::Zero(dom.dim());
        xi[0] = 1.0;
        const auto rep = rigidity::convex_pipeline(dom, schwarz::identity_map(dom.dim()), xi, radii);
        const double c0 = rep.constant("C_0");
        const CVec z0 = rigidity::default_base_point(dom);
        const CVec n = domain::boundary_data(dom, xi).inward_normal;
        for (double r : radii) {
            const CVec p = xi + r * n;
            const double upper = kobayashi::dist_bounds(dom, z0, p).upper;
            o.require(upper <= c0 + 0.5 * std::log(1.0 / r) + 1e-12, dom.name() + ": growth bound fails");
            o.require(upper >= oracle::ball_dist(std_cvec(z0), std_cvec(p)) - 1e-9, dom.name() + ": upper below exact");
        }
    }
    return o;
}

Outcome criterion4()
{
    Outcome o;
    const auto radii = geometric_schedule(0.5, 3, 14);
    struct Case
    {
        Domain dom;
        CVec xi;
        double beta;
    };
    for (const Case& c : {Case{Domain::disk(), cvec({1.0}), 1.0}, Case{Domain::ball(2), cvec({1.0, 0.0}), 1.0},
                          Case{Domain::ellipsoid({1, 2}), cvec({1.0, 0.0}), 0.75}}) {
        const auto rep = rigidity::convex_pipeline(c.dom, schwarz::identity_map(c.dom.dim()), c.xi, radii);
        const auto eps = rep.series("eps_n");
        const double a = rep.constant("a");
        o.require(a > 0, c.dom.name() + ": a not positive");
        for (std::size_t k = 0; k < radii.size(); ++k)
            o.require(eps[k] >= a * std::pow(radii[k], c.beta) * (1 - 1e-12), c.dom.name() + ": eps below a r^beta");
        const double slope = fit_loglog(radii, eps).slope;
        o.require(std::abs(slope - c.beta) <= 0.1,
                  c.dom.name() + ": fitted slope " + std::to_string(slope) + " vs " + std::to_string(c.beta));
    }
    return o;
}

Outcome criterion5()
{
    Outcome o;
    for (const Model& md : models()) {
        const riemann::MetricField& m = *md.m;
        TangentPoint tp;
        if (md.m->kappa_model() && *md.m->kappa_model() > 0) {
            tp = {rvec({1, 0}), rvec({0, 1})};
        } else {
            RVec v = RVec::Zero(m.dim());
            v[0] = 1.0;
            tp = {RVec::Zero(m.dim()), g_unit(m, RVec::Zero(m.dim()), v)};
        }
        const riemann::GeodesicPath path = riemann::geodesic_flow(m, tp, 10.0);
        o.require(path.max_drift < 1e-6, m.name() + ": drift " + std::to_string(path.max_drift));
    }
    const MetricPtr p = riemann::poincare();
    const riemann::GeodesicPath rad = riemann::geodesic_flow(*p, {rvec({0, 0}), rvec({0.5, 0})}, 1.0);
    o.require(std::abs(rad.x.back()[0] - oracle::poincare_radial(1.0)) <= 1e-5, "radial endpoint");
    return o;
}

Outcome criterion6()
{
    Outcome o;
    Rng rng(606);
    int fields = 0;
    for (const Model& md : models()) {
        const riemann::MetricField& m = *md.m;
        for (int k = 0; k < 50; ++k, ++fields) {
            const TangentPoint tp = md.start(rng);
            const riemann::GeodesicPath path = riemann::geodesic_flow(m, tp, 1.0);
            const RVec j0 = random_unit(m.dim(), rng) * rng.uniform(0, 1), dj0 = random_unit(m.dim(), rng);
            const riemann::JacobiReport jr = riemann::jacobi_flow(m, path, j0, dj0);
            o.require(jr.pass, m.name() + ": growth ratio " + std::to_string(jr.max_ratio));
        }
    }
    o.require(fields == 200, "field count");
    // hyperbolic: |J(1)| = sinh 1 with J(0) = 0, |J'(0)| = 1, against f(0) e^{(1+1)/2} = e
    const MetricPtr p = riemann::poincare();
    const riemann::GeodesicPath path = riemann::geodesic_flow(*p, {rvec({0, 0}), rvec({0.5, 0})}, 1.0);
    const riemann::JacobiReport jr = riemann::jacobi_flow(*p, path, rvec({0, 0}), rvec({0, 0.5}), 1.0);
    const double j1 = riemann::norm_g(*p, path.x.back(), jr.j.back());
    o.require(std::abs(j1 - oracle::jacobi_norm(-1.0, 1.0)) <= 1e-6, "sinh closed form");
    o.require(j1 <= std::exp(1.0) && std::sinh(1.0) <= std::exp(1.0), "sinh 1 <= e");
    return o;
}

Outcome criterion7()
{
    Outcome o;
    Rng rng(707);
    for (const Model& md : models()) {
        const riemann::MetricField& m = *md.m;
        int violations = 0;
        for (int k = 0; k < 100; ++k) {
            const TangentPoint g1 = md.start(rng);
            const TangentPoint g2{g1.x, rotate_toward(m, g1.x, g1.v, rng.uniform(0.01, 0.5), rng)};
            if (!riemann::spread_check(m, g1, g2, md.kappa, 3.0).pass)
                ++violations;
        }
        o.require(violations == 0, m.name() + ": " + std::to_string(violations) + " violations");
    }
    for (int i = 1; i <= 100; ++i)
        for (int j = 1; j <= 100; ++j) {
            const double phi = kPi * i / 100.0, t = 3.0 * j / 100.0;
            o.require(oracle::flat_spread(t, phi) <= std::exp(t / 2) * phi, "flat closed form");
        }
    return o;
}

Outcome criterion8()
{
    Outcome o;
    Rng rng(808);
    for (const Model& md : models()) {
        const riemann::MetricField& m = *md.m;
        for (int k = 0; k < 50; ++k) {
            const TangentPoint g = md.start(rng);
            const TangentPoint s{g.x, rotate_toward(m, g.x, g.v, rng.uniform(1e-3, 0.1), rng)};
            const double r1 = riemann::backward_estimate(m, g, s, 0.2).ratio;
            const double r2 = riemann::backward_estimate(m, g, s, 0.1).ratio;
            o.require(std::isfinite(r1) && std::isfinite(r2), m.name() + ": ratio not finite");
            o.require(std::abs(r2 / r1 - 1) <= 0.1, m.name() + ": ratio moved from " + std::to_string(r1) + " to " +
                                                        std::to_string(r2));
        }
    }
    int violations = 0;
    for (int k = 0; k < 10000; ++k) {
        const int n = rng.integer(1, 6);
        const double eps = rng.uniform(1e-3, 2.0);
        const RVec y = random_unit(n, rng) * rng.uniform(0, 3);
        RVec x = random_unit(n, rng) * rng.uniform(0, 3);
        if (k % 3 == 0)
            x = -rng.uniform(0, 1) * eps * y;
        const riemann::SegmentMax sm = riemann::segment_max_lower_bound(x, y, eps);
        const double dense = oracle::segment_max(std_vec(x), std_vec(y), eps);
        if (std::abs(sm.max_value - dense) > 1e-9 * (1 + dense) || dense < eps / 4 * (x.norm() + y.norm()) - 1e-12)
            ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " segment violations");
    return o;
}

Outcome criterion9()
{
    Outcome o;
    const MetricPtr e = riemann::euclid(2);
    for (int k = 1; k <= 1000; ++k) {
        const double phi = kPi * k / 1000.0;
        const TangentPoint a{rvec({0, 0}), rvec({1, 0})}, b{rvec({0, 0}), rvec({std::cos(phi), std::sin(phi)})};
        const double t1 = riemann::tangent_distances(*e, a, b, riemann::BundleMode::T1M).upper;
        const double tm = riemann::tangent_distances(*e, a, b, riemann::BundleMode::TM).upper;
        o.require(std::abs(t1 - phi) <= 1e-12 && std::abs(tm - oracle::flat_spread(1.0, phi)) <= 1e-12,
                  "flat fiber distances");
        o.require(phi <= (kPi + 1) * 2 * std::sin(phi / 2) && t1 <= (kPi + 1) * tm, "comparison at phi");
    }
    return o;
}

Outcome criterion10()
{
    Outcome o;
    o.require(kahler::rigidity_threshold(1, 1, 1, kPi / 2, false) == 7.0, "threshold 7");
    o.require(kahler::rigidity_threshold(1, 1, 1, kPi / 2, true) == 3.0, "threshold 3");
    Rng rng(1010);
    for (int k = 0; k < 100; ++k) {
        // exact for lambda = 4^j; other lambda carry one rounding of sqrt
        const int j = rng.integer(-10, 10);
        const double l4 = std::ldexp(1.0, 2 * j);
        const double kappa = rng.uniform(0.1, 5), A = rng.uniform(0.1, 5), th = rng.uniform(0.1, kPi / 2);
        const int d = rng.integer(1, 4);
        const double base = kahler::rigidity_threshold(d, kappa, A, th, k % 2);
        o.require(kahler::rigidity_threshold(d, l4 * kappa, A / std::sqrt(l4), th, k % 2) == base, "exact scaling");
        const double l = std::exp(rng.uniform(-5, 5));
        const double moved = kahler::rigidity_threshold(d, l * kappa, A / std::sqrt(l), th, k % 2);
        o.require(std::abs(moved - base) <= 1e-14 * base, "scaling");
    }
    return o;
}

Outcome criterion11()
{
    Outcome o;
    const double r = 0.3;
    o.require(kahler::cgt_inj_lower(std::numeric_limits<double>::infinity(), 1.0, r, 1) == r / 2, "limit r/2");
    for (int d : {1, 2}) {
        const double v = kahler::model_volume(2 * d, -1.0, 2 * r);
        o.require(std::abs(kahler::cgt_inj_lower(v, 1.0, r, d) - r / 4) <= 1e-16, "limit r/4");
    }
    o.require(std::abs(kahler::model_volume(2, -1.0, 1.0) - oracle::hyperbolic_area(1.0)) <= 1e-8, "hyperbolic area");
    return o;
}

Outcome criterion12()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const rigidity::SuiteSummary s = rigidity::counterexample_suite(geometric_schedule(0.5, 3, 14));
        for (const auto& e : s.entries)
            o.require(e.verdict != report::Verdict::ForcesIdentity || e.interior_displacement <= 1e-4,
                      e.map + " identified on " + e.domain);
        o.require(s.identity_ok, "identity not identified everywhere");
        o.require(s.extremal_ok, "extremal map identified");
        o.require(s.high_order_ok, "order >= 4 map neither identified nor indistinguishable");
        o.require(s.all_rows_valid, "a row-wise inequality failed");
    } catch (const Error& e) {
        o.require(false, e.what());
    }
    const double secs = seconds_since(t0);
    o.require(secs <= 300.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

} // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                         criterion5, criterion6, criterion7,  criterion8,
                                                         criterion9, criterion10, criterion11, criterion12};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = e.what();
        }
        std::printf("criterion %zu: %s (%.1f s)%s%s\n", k + 1, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                    o.pass ? "" : " ", o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
