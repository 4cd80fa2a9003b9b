#include "bsl/kobayashi.hpp"

#include "bsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bsl::kobayashi
{

using domain::Kind;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1/2) log((1+m)/(1-m)) given m and 1 - m^2 computed without cancellation.
double atanh_split(double m, double one_minus_m2)
{
    if (m <= 0.0)
        return 0.0;
    if (one_minus_m2 <= 0.0)
        return kInf;
    return std::log1p(m) - 0.5 * std::log(one_minus_m2);
}

void require_inside(const Domain& dom, const CVec& z, const char* what)
{
    if (!dom.contains(z))
        fail(ErrorCode::PointOutsideDomain, std::string(what) + ": point outside " + dom.name());
}

// |z|^2 |h|^2 - |<z,h>|^2 as a sum of squared 2x2 minors.
double wedge_norm2(const CVec& z, const CVec& h)
{
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i)
        for (int j = i + 1; j < z.size(); ++j)
            s += std::norm(z[i] * h[j] - z[j] * h[i]);
    return s;
}

double ball_dist(const CVec& z, const CVec& w)
{
    const CVec h = w - z;
    const double den = std::norm(1.0 - inner(z, w));
    const double num = std::max(0.0, h.squaredNorm() - wedge_norm2(z, h));
    const double m = std::sqrt(num / den);
    const double one_minus = (1.0 - z.squaredNorm()) * (1.0 - w.squaredNorm()) / den;
    return atanh_split(m, one_minus);
}

double ball_metric(const CVec& z, const CVec& v)
{
    const double q = 1.0 - z.squaredNorm();
    return std::sqrt(q * v.squaredNorm() + std::norm(inner(z, v))) / q;
}

using domain::chord_center;

CVec outward_normal(const Domain& dom, const CVec& b)
{
    const RVec g = dom.gradient(b);
    const double n = g.norm();
    if (n == 0.0)
        return CVec();
    return to_complex(RVec(g / n));
}

std::vector<CVec> axes(int d)
{
    std::vector<CVec> out;
    for (int j = 0; j < d; ++j) {
        CVec e = CVec::Zero(d);
        e[j] = 1.0;
        out.push_back(e);
    }
    return out;
}

// A convex set contains the midpoints of chords between its boundary points.
void check_chords(const Domain& dom, const std::vector<CVec>& pts, const BoundsOptions& opts)
{
    if (!opts.check_convexity || dom.kind() != Kind::ImplicitConvex)
        return;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dom.defining(CVec(0.5 * (pts[i] + pts[j]))) > 1e-9)
                fail(ErrorCode::NotConvex, "a sampled chord leaves " + dom.name());
}

double metric_upper(const Domain& dom, const CVec& z, const CVec& v)
{
    const double nv = v.norm();
    const CVec u = v / nv;
    double best = kInf;
    const double r0 = dom.slice_inradius(z, u);
    if (r0 > 0.0)
        best = nv / r0;
    const CVec cs = chord_center(dom, z, u);
    for (double f : {0.5, 0.75, 1.0}) {
        const CVec c = z + f * (cs - z);
        const double rho = dom.slice_inradius(c, u);
        const double zeta = std::abs(inner(z - c, u));
        if (zeta < rho)
            best = std::min(best, nv * rho / ((rho - zeta) * (rho + zeta)));
    }
    return best;
}

double halfplane_metric(const Domain& dom, const CVec& z, const CVec& v, const CVec& nu)
{
    const double den = dom.support(nu) - inner(z, nu).real();
    if (!(den > 0.0))
        return 0.0;
    return std::abs(inner(v, nu)) / (2.0 * den);
}

double disc_metric(const Domain& dom, const CVec& z, const CVec& v, const CVec& e)
{
    const domain::Disc disc = dom.projection_disc(e);
    const double a = std::abs(inner(z, e) - disc.center);
    if (!(a < disc.radius))
        return 0.0;
    return std::abs(inner(v, e)) * disc.radius / ((disc.radius - a) * (disc.radius + a));
}

double halfplane_dist(const Domain& dom, const CVec& z, const CVec& w, const CVec& nu)
{
    const double h = dom.support(nu);
    const cplx a = inner(z, nu) - h;
    const cplx b = inner(w, nu) - h;
    if (!(a.real() < 0.0 && b.real() < 0.0))
        return 0.0;
    const double den = std::norm(a + std::conj(b));
    const double m = std::abs(a - b) / std::sqrt(den);
    return atanh_split(m, 4.0 * a.real() * b.real() / den);
}

double disc_dist(const Domain& dom, const CVec& z, const CVec& w, const CVec& e)
{
    const domain::Disc disc = dom.projection_disc(e);
    const cplx a = (inner(z, e) - disc.center) / disc.radius;
    const cplx b = (inner(w, e) - disc.center) / disc.radius;
    if (!(std::abs(a) < 1.0 && std::abs(b) < 1.0))
        return 0.0;
    return disk_dist(a, b);
}

} // namespace

double disk_dist(cplx a, cplx b)
{
    if (!(std::abs(a) < 1.0 && std::abs(b) < 1.0))
        fail(ErrorCode::PointOutsideDomain, "disk_dist: point outside the unit disk");
    if (a == b)
        return 0.0;
    const double den = std::norm(1.0 - std::conj(a) * b);
    const double m = std::abs(a - b) / std::sqrt(den);
    return atanh_split(m, (1.0 - std::norm(a)) * (1.0 - std::norm(b)) / den);
}

double disk_metric(cplx z, cplx v)
{
    if (!(std::abs(z) < 1.0))
        fail(ErrorCode::PointOutsideDomain, "disk_metric: point outside the unit disk");
    return std::abs(v) / (1.0 - std::norm(z));
}

double model_dist(const Domain& dom, const CVec& z, const CVec& w)
{
    require_inside(dom, z, "model_dist");
    require_inside(dom, w, "model_dist");
    switch (dom.kind()) {
    case Kind::Disk: return disk_dist(z[0], w[0]);
    case Kind::Ball: return z == w ? 0.0 : ball_dist(z, w);
    case Kind::Polydisk: {
        double m = 0.0;
        for (int j = 0; j < dom.dim(); ++j)
            m = std::max(m, disk_dist(z[j], w[j]));
        return m;
    }
    default: fail(ErrorCode::InvalidArgument, "model_dist needs a disk, ball or polydisk");
    }
}

double model_metric(const Domain& dom, const CVec& z, const CVec& v)
{
    require_inside(dom, z, "model_metric");
    switch (dom.kind()) {
    case Kind::Disk: return disk_metric(z[0], v[0]);
    case Kind::Ball: return ball_metric(z, v);
    case Kind::Polydisk: {
        double m = 0.0;
        for (int j = 0; j < dom.dim(); ++j)
            m = std::max(m, disk_metric(z[j], v[j]));
        return m;
    }
    default: fail(ErrorCode::InvalidArgument, "model_metric needs a disk, ball or polydisk");
    }
}

DistInterval metric_bounds(const Domain& dom, const CVec& z, const CVec& v, const BoundsOptions& opts)
{
    require_inside(dom, z, "metric_bounds");
    const double nv = v.norm();
    if (nv == 0.0)
        fail(ErrorCode::ZeroVector, "metric_bounds: v = 0");
    const CVec u = v / nv;

    std::vector<CVec> boundary;
    const domain::NearestPoint near = dom.nearest_boundary(z);
    boundary.push_back(near.point);
    for (int k = 0; k < opts.phases; ++k) {
        const CVec dir = std::polar(1.0, 2.0 * std::numbers::pi * k / opts.phases) * u;
        boundary.push_back(z + dom.ray_exit(z, dir) * dir);
    }
    check_chords(dom, boundary, opts);

    double lower = 0.0;
    for (const CVec& b : boundary) {
        const CVec nu = outward_normal(dom, b);
        if (nu.size() > 0)
            lower = std::max(lower, halfplane_metric(dom, z, v, nu));
    }
    std::vector<CVec> dirs = axes(dom.dim());
    dirs.push_back(u);
    for (const CVec& e : dirs)
        lower = std::max(lower, disc_metric(dom, z, v, e));
    if (opts.finite_type) {
        const FiniteTypeBound& ft = *opts.finite_type;
        lower = std::max(lower, ft.alpha0 * nv / std::pow(near.distance, 1.0 / ft.ell));
    }

    const double upper = metric_upper(dom, z, v);
    if (lower > upper && lower - upper < 1e-12 * (1.0 + upper))
        lower = upper;
    return {lower, upper};
}

double dist_lower(const Domain& dom, const CVec& z, const CVec& w, const BoundsOptions& opts)
{
    require_inside(dom, z, "dist_lower");
    require_inside(dom, w, "dist_lower");
    if (z == w)
        return 0.0;
    const CVec h = w - z;
    const CVec u = h / h.norm();

    const domain::NearestPoint nz = dom.nearest_boundary(z);
    const domain::NearestPoint nw = dom.nearest_boundary(w);
    std::vector<CVec> boundary = {nz.point, nw.point, CVec(z - dom.ray_exit(z, CVec(-u)) * u),
                                  CVec(w + dom.ray_exit(w, u) * u)};
    check_chords(dom, boundary, opts);

    double lower = 0.0;
    std::vector<CVec> normals;
    for (const CVec& b : boundary) {
        const CVec nu = outward_normal(dom, b);
        if (nu.size() == 0)
            continue;
        normals.push_back(nu);
        lower = std::max(lower, halfplane_dist(dom, z, w, nu));
    }
    std::vector<CVec> dirs = axes(dom.dim());
    dirs.push_back(u);
    for (std::size_t k = 0; k < std::min<std::size_t>(2, normals.size()); ++k)
        dirs.push_back(normals[k]);
    for (const CVec& e : dirs)
        lower = std::max(lower, disc_dist(dom, z, w, e));
    return lower;
}

double dist_upper(const Domain& dom, const CVec& z, const CVec& w, const BoundsOptions& opts)
{
    require_inside(dom, z, "dist_upper");
    require_inside(dom, w, "dist_upper");
    if (z == w)
        return 0.0;
    const CVec h = w - z;
    const CVec u = h / h.norm();

    // Affine discs in the complex line through z and w.
    double upper = kInf;
    const CVec mid = 0.5 * (z + w);
    const CVec cs = chord_center(dom, mid, u);
    for (double f : {0.0, 0.5, 0.75, 1.0}) {
        const CVec c = mid + f * (cs - mid);
        const double rho = dom.slice_inradius(c, u);
        if (!(rho > 0.0))
            continue;
        const cplx a = inner(z - c, u) / rho;
        const cplx b = inner(w - c, u) / rho;
        if (std::abs(a) < 1.0 && std::abs(b) < 1.0)
            upper = std::min(upper, disk_dist(a, b));
    }
    // Length of the straight segment.
    const Quadrature q = adaptive_simpson(
        [&](double t) { return metric_upper(dom, CVec(z + t * h), h); }, 0.0, 1.0, opts.simpson_tol);
    return std::min(upper, q.value);
}

DistInterval dist_bounds(const Domain& dom, const CVec& z, const CVec& w, const BoundsOptions& opts)
{
    if (z == w) {
        require_inside(dom, z, "dist_bounds");
        return {0.0, 0.0};
    }
    double lower = dist_lower(dom, z, w, opts);
    const double upper = dist_upper(dom, z, w, opts);
    if (lower > upper && lower - upper < 1e-12 * (1.0 + upper))
        lower = upper;
    return {lower, upper};
}

Membership classify(const Domain& dom, const KobBall& ball, const CVec& z, const BoundsOptions& opts)
{
    const DistInterval d = dist_bounds(dom, ball.center, z, opts);
    if (d.upper < ball.radius)
        return Membership::Inside;
    if (d.lower > ball.radius)
        return Membership::Outside;
    return Membership::Undecided;
}

double kob_ball_inclusion(const Domain& dom, const CVec& p, double rho, const BoundsOptions& opts)
{
    require_inside(dom, p, "kob_ball_inclusion");
    if (!(rho > 0.0))
        fail(ErrorCode::InvalidArgument, "kob_ball_inclusion: radius must be positive");
    const double delta = domain::boundary_distance(dom, p);
    if (rho >= delta)
        fail(ErrorCode::RadiusTooLarge, "kob_ball_inclusion: radius reaches the boundary");
    // Omega sits in the ball of radius R about 0, so k(z;v) >= |v| / R.
    double eps = rho / dom.bounding_radius();
    if (opts.finite_type) {
        // delta <= delta(p) + rho on the Euclidean ball.
        const FiniteTypeBound& ft = *opts.finite_type;
        eps = std::max(eps, ft.alpha0 * rho / std::pow(delta + rho, 1.0 / ft.ell));
    }
    return eps;
}

double disk_ball_inclusion_exact(cplx p, double rho)
{
    const double a = std::abs(p);
    if (!(a < 1.0))
        fail(ErrorCode::PointOutsideDomain, "disk_ball_inclusion_exact: point outside the disk");
    if (!(rho > 0.0))
        fail(ErrorCode::InvalidArgument, "disk_ball_inclusion_exact: radius must be positive");
    if (rho >= 1.0 - a)
        fail(ErrorCode::RadiusTooLarge, "disk_ball_inclusion_exact: radius reaches the boundary");
    // The Kobayashi disc of radius atanh(s) is Euclidean with |c - p| + R = s (1 - a^2) / (1 - s a).
    const double s = rho / (1.0 - a * a + rho * a);
    return std::atanh(s);
}

FiniteTypeBound calibrate_finite_type(const Domain& dom, const CVec& xi, const CVec& inward, const CVec& v,
                                      int ell, const std::vector<double>& depths)
{
    if (depths.empty())
        fail(ErrorCode::SamplingEmpty, "calibrate_finite_type: no depths");
    FiniteTypeBound ft;
    ft.ell = ell;
    ft.alpha0 = kInf;
    for (double t : depths) {
        const CVec z = xi + t * inward;
        const DistInterval k = metric_bounds(dom, z, v);
        const double delta = domain::boundary_distance(dom, z);
        ft.alpha0 = std::min(ft.alpha0, k.lower * std::pow(delta, 1.0 / ell) / v.norm());
    }
    return ft;
}

LogGrowthFit fit_log_growth(const Domain& dom, const CVec& z0, const CVec& xi, const CVec& inward,
                            const std::vector<double>& radii, const BoundsOptions& opts)
{
    if (radii.empty())
        fail(ErrorCode::SamplingEmpty, "fit_log_growth: empty schedule");
    LogGrowthFit fit;
    fit.c0 = -kInf;
    std::vector<double> logs;
    for (double r : radii) {
        const DistInterval d = dist_bounds(dom, z0, CVec(xi + r * inward), opts);
        fit.radii.push_back(r);
        fit.upper.push_back(d.upper);
        fit.lower.push_back(d.lower);
        logs.push_back(std::log(1.0 / r));
        fit.c0 = std::max(fit.c0, d.upper - 0.5 * std::log(1.0 / r));
    }
    if (radii.size() >= 2)
        fit.slope = fit_line(logs, fit.upper).slope;
    return fit;
}

} // namespace bsl::kobayashi
