#include "bsl/kahler.hpp"

#include "bsl/error.hpp"
#include "bsl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bsl::kahler
{

namespace
{

RVec random_real(Rng& rng, int n)
{
    RVec x(n);
    for (int i = 0; i < n; ++i)
        x[i] = rng.normal();
    return x;
}

CVec random_unit(Rng& rng, int d)
{
    CVec u(d);
    for (int j = 0; j < d; ++j)
        u[j] = cplx(rng.normal(), rng.normal());
    return u / u.norm();
}

double radial_length(const MetricField& m, const CVec& c, const CVec& u, double a, double b)
{
    const RVec ur = to_real(u);
    auto speed = [&](double s) { return riemann::norm_g(m, to_real(CVec(c + s * u)), ur); };
    return adaptive_simpson(speed, a, b, 1e-10 * (1.0 + b - a)).value;
}

} // namespace

double j_invariance_defect(const MetricField& m, int samples, double radius, std::uint64_t seed)
{
    const int n = m.dim();
    if (n % 2)
        fail(ErrorCode::InvalidArgument, "complex structure needs an even real dimension");
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        RVec z = random_real(rng, n);
        z *= radius * std::pow(rng.uniform(), 1.0 / n) / z.norm();
        if (!m.in_chart(z))
            continue;
        const RMat g = m.metric(z);
        const RVec x = random_real(rng, n), y = random_real(rng, n);
        const double lhs = apply_j(x).dot(g * apply_j(y)), rhs = x.dot(g * y);
        worst = std::max(worst, std::abs(lhs - rhs) / (x.norm() * y.norm() * std::max(1.0, g.norm())));
    }
    return worst;
}

double hol_sectional(const MetricField& m, const RVec& z, const RVec& x)
{
    if (m.dim() % 2)
        fail(ErrorCode::InvalidArgument, "complex structure needs an even real dimension");
    if (x.norm() == 0.0)
        fail(ErrorCode::ZeroVector, "holomorphic sectional curvature of the zero vector");
    const riemann::Curvature c = riemann::christoffel_curvature(m, z);
    const RVec jx = apply_j(x);
    const double gxx = x.dot(c.g * x);
    return c.rm(x, jx, x, jx) / (gxx * gxx);
}

BGReport property_bg_estimate(const MetricField& m, const Domain& dom, const BGSamplePlan& plan)
{
    const int d = dom.dim();
    const int n = 2 * d;
    if (m.dim() != n)
        fail(ErrorCode::InvalidArgument, "metric dimension does not match the domain");
    if (plan.rays < 1 || plan.depth_levels < 2)
        fail(ErrorCode::InvalidArgument, "sample plan needs a ray and two depth levels");
    Rng rng(plan.seed);
    BGReport rep;
    rep.a_est = std::numeric_limits<double>::infinity();
    rep.min_increment_ratio = std::numeric_limits<double>::infinity();
    const CVec c = dom.center();

    for (int ray = 0; ray < plan.rays; ++ray) {
        CVec u = CVec::Zero(d);
        if (ray == 0)
            u[0] = 1.0;
        else
            u = random_unit(rng, d);
        const double exit = dom.ray_exit(c, u);
        std::vector<double> ts{0.0};
        for (int k = 1; k <= plan.depth_levels; ++k)
            ts.push_back(exit * (1.0 - std::ldexp(1.0, -k)));

        for (double t : ts) {
            const CVec z = c + t * u;
            const RVec x = to_real(z);
            if (!m.in_chart(x))
                fail(ErrorCode::ChartIncomplete, "sample point outside the metric chart");
            const double delta = domain::boundary_distance(dom, z);
            const riemann::Curvature curv = riemann::christoffel_curvature(m, x);
            ++rep.points;

            std::vector<RVec> vs;
            for (int i = 0; i < n; ++i) {
                RVec e = RVec::Zero(n);
                e[i] = 1.0;
                vs.push_back(e);
            }
            vs.push_back(to_real(u));
            for (int k = 0; k < plan.directions; ++k)
                vs.push_back(random_real(rng, n));
            for (const RVec& v : vs) {
                const double gv = std::sqrt(v.dot(curv.g * v)) / v.norm();
                rep.A_est = std::max(rep.A_est, gv * delta);
                rep.a_est = std::min(rep.a_est, gv);
            }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    rep.kappa_est = std::max(rep.kappa_est, std::abs(curv.sectional(vs[i], vs[j])));
            for (int k = 0; k + 1 < plan.directions; k += 2)
                rep.kappa_est = std::max(rep.kappa_est, std::abs(curv.sectional(vs[n + 1 + k], vs[n + 2 + k])));
        }

        // Length increments between consecutive depth levels; a complete metric keeps them from shrinking.
        const double first = radial_length(m, c, u, ts[1], ts[2]);
        const double last = radial_length(m, c, u, ts[ts.size() - 2], ts.back());
        rep.min_increment_ratio = std::min(rep.min_increment_ratio, last / first);
    }

    rep.bounds_ok = std::isfinite(rep.kappa_est) && std::isfinite(rep.A_est) && rep.A_est > 0 &&
                    std::isfinite(rep.a_est) && rep.a_est > 0;
    rep.complete = rep.min_increment_ratio >= 0.25;
    rep.pass = rep.bounds_ok && rep.complete;
    rep.samples = "rays=" + std::to_string(plan.rays) + " depths=2^-1..2^-" + std::to_string(plan.depth_levels) +
                  " directions=" + std::to_string(plan.directions) + " seed=" + std::to_string(plan.seed);
    return rep;
}

double squeezing_lower_bound(const Domain& dom, const CVec& z)
{
    if (!dom.contains(z))
        fail(ErrorCode::PointOutsideDomain, "squeezing bound needs an interior point");
    const double in = domain::boundary_distance(dom, z);
    const double out = dom.farthest_boundary_distance(z);
    return std::min(1.0, in / out);
}

double model_volume(int n, double lambda, double r)
{
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "dimension must be positive");
    if (!(r > 0))
        fail(ErrorCode::InvalidArgument, "radius must be positive");
    if (lambda > 0)
        fail(ErrorCode::PositiveCurvatureUnsupported, "model volume needs lambda <= 0");
    const double half = n / 2.0;
    if (lambda == 0)
        return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) * std::pow(r, n);
    const double area = 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
    const double s = std::sqrt(-lambda);
    auto integrand = [&](double t) { return std::pow(std::sinh(s * t) / s, n - 1); };
    const double scale = integrand(r) * r;
    return area * adaptive_simpson(integrand, 0.0, r, 1e-14 * std::max(1.0, scale), 50).value;
}

double cgt_inj_lower(double vol, double kappa, double r, int d)
{
    if (!(kappa > 0) || !(r > 0) || d < 1)
        fail(ErrorCode::InvalidArgument, "kappa, r and d must be positive");
    if (r >= std::numbers::pi / (4.0 * std::sqrt(kappa)))
        fail(ErrorCode::RadiusOutOfRange, "r must be below pi / (4 sqrt(kappa))");
    if (!(vol > 0))
        fail(ErrorCode::InvalidArgument, "volume must be positive");
    if (std::isinf(vol))
        return r / 2.0;
    const double model = model_volume(2 * d, -kappa, 2.0 * r);
    return r / 2.0 * vol / (vol + model);
}

double rigidity_threshold(int d, double kappa, double A, double theta, bool positive_injectivity)
{
    if (d < 1 || !(kappa > 0) || !(A > 0))
        fail(ErrorCode::InvalidArgument, "d, kappa and A must be positive");
    if (!(theta > 0) || theta > std::numbers::pi / 2)
        fail(ErrorCode::InvalidArgument, "theta must lie in (0, pi/2]");
    const double base = positive_injectivity ? 2.0 : 4.0 * d + 2.0;
    return base + std::sqrt(kappa) * A / std::sin(theta);
}

} // namespace bsl::kahler
