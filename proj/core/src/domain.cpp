#include "bsl/domain.hpp"

#include "bsl/error.hpp"
#include "bsl/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsl::domain
{

namespace
{

using KktMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxReal + 1, kMaxReal + 1>;
using KktVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxReal + 1, 1>;

constexpr int kSliceRays = 64;
constexpr int kProjectionAngles = 64;

double ipow(double x, int p)
{
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

// rho^m with rho = x^2 + y^2, plus its derivatives.
void radial_power(double x, double y, int m, double& f, double& fx, double& fy, double& fxx, double& fxy,
                  double& fyy)
{
    const double rho = x * x + y * y;
    const double pm1 = ipow(rho, m - 1);
    const double pm2 = m >= 2 ? ipow(rho, m - 2) : 0.0;
    f = pm1 * rho;
    fx = 2.0 * m * x * pm1;
    fy = 2.0 * m * y * pm1;
    const double c = 4.0 * m * (m - 1) * pm2;
    fxx = 2.0 * m * pm1 + c * x * x;
    fyy = 2.0 * m * pm1 + c * y * y;
    fxy = c * x * y;
}

std::vector<CVec> probe_directions(int d, int random_count, std::uint64_t seed)
{
    std::vector<CVec> dirs;
    const int n = 2 * d;
    for (int k = 0; k < n; ++k) {
        for (double s : {1.0, -1.0}) {
            RVec e = RVec::Zero(n);
            e[k] = s;
            dirs.push_back(to_complex(e));
        }
    }
    Rng rng(seed);
    for (int k = 0; k < random_count; ++k) {
        RVec e(n);
        for (int j = 0; j < n; ++j)
            e[j] = rng.normal();
        e /= e.norm();
        dirs.push_back(to_complex(e));
    }
    return dirs;
}

struct KktPoint
{
    bool ok = false;
    RVec w;
    double lambda = 0.0;
};

// Solves w - x = lambda grad r(w), r(w) = 0 by Newton from w0.
KktPoint kkt_newton(const Domain& dom, const RVec& x, RVec w)
{
    const int n = static_cast<int>(x.size());
    KktPoint out;
    RVec g = dom.gradient(to_complex(w));
    double gg = g.squaredNorm();
    if (gg == 0.0)
        return out;
    double lambda = (w - x).dot(g) / gg;
    for (int it = 0; it < 60; ++it) {
        const CVec wc = to_complex(w);
        g = dom.gradient(wc);
        const RMat h = dom.hessian(wc);
        KktVec f(n + 1);
        f.head(n) = w - x - lambda * g;
        f[n] = dom.defining(wc);
        const double scale = 1.0 + x.norm();
        if (f.norm() < 1e-15 * scale) {
            out.ok = true;
            break;
        }
        KktMat jac = KktMat::Zero(n + 1, n + 1);
        jac.topLeftCorner(n, n) = RMat::Identity(n, n) - lambda * h;
        jac.block(0, n, n, 1) = -g;
        jac.block(n, 0, 1, n) = g.transpose();
        const KktVec step = jac.fullPivLu().solve(-f);
        if (!step.allFinite())
            return out;
        w += step.head(n);
        lambda += step[n];
        if (it == 59) {
            const CVec wl = to_complex(w);
            KktVec fl(n + 1);
            fl.head(n) = w - x - lambda * dom.gradient(wl);
            fl[n] = dom.defining(wl);
            out.ok = fl.norm() < 1e-11 * scale;
        }
    }
    out.w = w;
    out.lambda = lambda;
    if (out.ok)
        out.ok = std::abs(dom.defining(to_complex(w))) < 1e-12 && lambda > 0.0;
    return out;
}

CVec unit(const CVec& u)
{
    const double n = u.norm();
    if (n == 0.0)
        fail(ErrorCode::InvalidArgument, "zero direction");
    return u / n;
}

} // namespace

const char* to_string(Kind kind)
{
    switch (kind) {
    case Kind::Disk: return "disk";
    case Kind::Ball: return "ball";
    case Kind::Polydisk: return "polydisk";
    case Kind::Ellipsoid: return "ellipsoid";
    case Kind::ImplicitConvex: return "implicit";
    }
    return "unknown";
}

double Polynomial::value(const RVec& x) const
{
    double s = 0.0;
    for (const auto& t : terms) {
        double m = t.coef;
        for (int k = 0; k < real_dim; ++k)
            if (t.powers[k] != 0)
                m *= ipow(x[k], t.powers[k]);
        s += m;
    }
    return s;
}

RVec Polynomial::gradient(const RVec& x) const
{
    RVec g = RVec::Zero(real_dim);
    for (const auto& t : terms) {
        for (int k = 0; k < real_dim; ++k) {
            if (t.powers[k] == 0)
                continue;
            double m = t.coef * t.powers[k] * ipow(x[k], t.powers[k] - 1);
            for (int j = 0; j < real_dim; ++j)
                if (j != k && t.powers[j] != 0)
                    m *= ipow(x[j], t.powers[j]);
            g[k] += m;
        }
    }
    return g;
}

RMat Polynomial::hessian(const RVec& x) const
{
    RMat h = RMat::Zero(real_dim, real_dim);
    for (const auto& t : terms) {
        for (int a = 0; a < real_dim; ++a) {
            if (t.powers[a] == 0)
                continue;
            for (int b = a; b < real_dim; ++b) {
                if (t.powers[b] == 0 || (a == b && t.powers[a] < 2))
                    continue;
                double m = t.coef;
                for (int j = 0; j < real_dim; ++j) {
                    int p = t.powers[j];
                    if (j == a && j == b) {
                        m *= p * (p - 1) * ipow(x[j], p - 2);
                    } else if (j == a || j == b) {
                        m *= p * ipow(x[j], p - 1);
                    } else if (p != 0) {
                        m *= ipow(x[j], p);
                    }
                }
                h(a, b) += m;
                if (a != b)
                    h(b, a) += m;
            }
        }
    }
    return h;
}

Domain Domain::disk()
{
    Domain d;
    d.kind_ = Kind::Disk;
    d.dim_ = 1;
    d.exponents_ = {1};
    d.bounding_radius_ = 1.0;
    d.center_ = CVec::Zero(1);
    return d;
}

Domain Domain::ball(int dim)
{
    if (dim < 1 || dim > kMaxDim)
        fail(ErrorCode::InvalidArgument, "ball dimension out of range");
    if (dim == 1)
        return disk();
    Domain d;
    d.kind_ = Kind::Ball;
    d.dim_ = dim;
    d.exponents_.assign(dim, 1);
    d.bounding_radius_ = 1.0;
    d.center_ = CVec::Zero(dim);
    return d;
}

Domain Domain::polydisk(int dim)
{
    if (dim < 1 || dim > kMaxDim)
        fail(ErrorCode::InvalidArgument, "polydisk dimension out of range");
    if (dim == 1)
        return disk();
    Domain d;
    d.kind_ = Kind::Polydisk;
    d.dim_ = dim;
    d.exponents_.assign(dim, 1);
    d.bounding_radius_ = std::sqrt(static_cast<double>(dim));
    d.center_ = CVec::Zero(dim);
    return d;
}

Domain Domain::ellipsoid(std::vector<int> exponents)
{
    const int dim = static_cast<int>(exponents.size());
    if (dim < 1 || dim > kMaxDim)
        fail(ErrorCode::InvalidArgument, "ellipsoid dimension out of range");
    for (int m : exponents)
        if (m < 1)
            fail(ErrorCode::InvalidArgument, "ellipsoid exponents must be positive integers");
    if (std::all_of(exponents.begin(), exponents.end(), [](int m) { return m == 1; }))
        return ball(dim);
    Domain d;
    d.kind_ = Kind::Ellipsoid;
    d.dim_ = dim;
    d.exponents_ = std::move(exponents);
    // Each |z_i| < 1, so the norm is below sqrt(d).
    d.bounding_radius_ = std::sqrt(static_cast<double>(dim));
    d.center_ = CVec::Zero(dim);
    return d;
}

Domain Domain::implicit(Polynomial r, int dim, CVec interior_point, std::optional<double> bounding_radius)
{
    if (dim < 1 || dim > kMaxDim)
        fail(ErrorCode::InvalidArgument, "implicit domain dimension out of range");
    if (r.real_dim != 2 * dim)
        fail(ErrorCode::InvalidArgument, "polynomial real dimension must be 2d");
    for (const auto& t : r.terms)
        if (static_cast<int>(t.powers.size()) != r.real_dim)
            fail(ErrorCode::InvalidArgument, "polynomial term has wrong number of powers");
    Domain d;
    d.kind_ = Kind::ImplicitConvex;
    d.dim_ = dim;
    d.poly_ = std::move(r);
    d.center_ = interior_point.size() == dim ? interior_point : CVec::Zero(dim);
    if (!(d.poly_.value(to_real(d.center_)) < 0.0))
        fail(ErrorCode::PointOutsideDomain, "interior point of implicit domain is not inside");
    if (bounding_radius) {
        d.bounding_radius_ = *bounding_radius;
    } else {
        // Estimate from radial exits, with a grow-until-outside bracket.
        double reach = 0.0;
        for (const CVec& u : probe_directions(dim, 256, 7)) {
            double hi = 1.0;
            while (d.poly_.value(to_real(CVec(d.center_ + hi * u))) < 0.0 && hi < 1e6)
                hi *= 2.0;
            reach = std::max(reach, hi);
        }
        d.bounding_radius_ = d.center_.norm() + reach;
    }
    return d;
}

std::string Domain::name() const
{
    std::ostringstream os;
    os << to_string(kind_);
    switch (kind_) {
    case Kind::Disk: break;
    case Kind::Ball:
    case Kind::Polydisk: os << "(" << dim_ << ")"; break;
    case Kind::Ellipsoid:
        os << "(" << dim_ << ";";
        for (std::size_t i = 0; i < exponents_.size(); ++i)
            os << (i ? " " : "") << exponents_[i];
        os << ")";
        break;
    case Kind::ImplicitConvex: os << "(" << poly_.name << ")"; break;
    }
    return os.str();
}

double Domain::defining(const CVec& z) const
{
    switch (kind_) {
    case Kind::Disk:
    case Kind::Ball: return z.squaredNorm() - 1.0;
    case Kind::Polydisk: {
        double m = 0.0;
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::norm(z[j]));
        return m - 1.0;
    }
    case Kind::Ellipsoid: {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j)
            s += ipow(std::norm(z[j]), exponents_[j]);
        return s - 1.0;
    }
    case Kind::ImplicitConvex: return poly_.value(to_real(z));
    }
    return 0.0;
}

RVec Domain::gradient(const CVec& z) const
{
    const int n = 2 * dim_;
    RVec g = RVec::Zero(n);
    switch (kind_) {
    case Kind::Polydisk: {
        int a = 0;
        for (int j = 1; j < dim_; ++j)
            if (std::norm(z[j]) > std::norm(z[a]))
                a = j;
        g[a] = 2.0 * z[a].real();
        g[dim_ + a] = 2.0 * z[a].imag();
        return g;
    }
    case Kind::ImplicitConvex: return poly_.gradient(to_real(z));
    default: break;
    }
    for (int j = 0; j < dim_; ++j) {
        double f, fx, fy, fxx, fxy, fyy;
        radial_power(z[j].real(), z[j].imag(), exponents_[j], f, fx, fy, fxx, fxy, fyy);
        g[j] = fx;
        g[dim_ + j] = fy;
    }
    return g;
}

RMat Domain::hessian(const CVec& z) const
{
    const int n = 2 * dim_;
    RMat h = RMat::Zero(n, n);
    switch (kind_) {
    case Kind::Polydisk: {
        int a = 0;
        for (int j = 1; j < dim_; ++j)
            if (std::norm(z[j]) > std::norm(z[a]))
                a = j;
        h(a, a) = 2.0;
        h(dim_ + a, dim_ + a) = 2.0;
        return h;
    }
    case Kind::ImplicitConvex: return poly_.hessian(to_real(z));
    default: break;
    }
    for (int j = 0; j < dim_; ++j) {
        double f, fx, fy, fxx, fxy, fyy;
        radial_power(z[j].real(), z[j].imag(), exponents_[j], f, fx, fy, fxx, fxy, fyy);
        h(j, j) = fxx;
        h(j, dim_ + j) = fxy;
        h(dim_ + j, j) = fxy;
        h(dim_ + j, dim_ + j) = fyy;
    }
    return h;
}

double Domain::ray_exit(const CVec& z, const CVec& u) const
{
    const double uu = u.squaredNorm();
    if (uu == 0.0)
        fail(ErrorCode::InvalidArgument, "zero ray direction");
    if (kind_ == Kind::Disk || kind_ == Kind::Ball) {
        const double b = inner(z, u).real();
        const double c = z.squaredNorm() - 1.0;
        const double disc = b * b - uu * c;
        if (disc <= 0.0)
            return 0.0;
        // Root of uu t^2 + 2 b t + c = 0 on the positive side, written to avoid cancellation.
        const double q = -(b + std::copysign(std::sqrt(disc), b));
        double t = b > 0.0 ? c / q : q / uu;
        if (b == 0.0)
            t = std::sqrt(-c / uu);
        return std::max(0.0, t);
    }
    if (kind_ == Kind::Polydisk) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < dim_; ++j) {
            const double a = std::norm(u[j]);
            if (a == 0.0)
                continue;
            const double b = (z[j] * std::conj(u[j])).real();
            const double c = std::norm(z[j]) - 1.0;
            const double disc = b * b - a * c;
            if (disc <= 0.0)
                return 0.0;
            best = std::min(best, (-b + std::sqrt(disc)) / a);
        }
        return std::max(0.0, best);
    }
    if (!contains(z))
        return 0.0;
    const double hi = (z.norm() + bounding_radius_) / std::sqrt(uu) * 1.0001 + 1e-12;
    return bisect_last_true([&](double t) { return contains(CVec(z + t * u)); }, 0.0, hi, 60);
}

double Domain::slice_inradius(const CVec& c, const CVec& u_in) const
{
    const CVec u = unit(u_in);
    if (!contains(c))
        return 0.0;
    switch (kind_) {
    case Kind::Disk:
    case Kind::Ball: {
        const double a = std::abs(inner(c, u));
        const double rest = 1.0 - c.squaredNorm();
        return std::max(0.0, -a + std::sqrt(a * a + rest));
    }
    case Kind::Polydisk: {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < dim_; ++j)
            if (std::abs(u[j]) > 0.0)
                best = std::min(best, (1.0 - std::abs(c[j])) / std::abs(u[j]));
        return std::max(0.0, best);
    }
    case Kind::Ellipsoid: {
        // Triangle inequality per coordinate gives a sufficient condition.
        auto fits = [&](double rho) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j)
                s += ipow(std::abs(c[j]) + rho * std::abs(u[j]), 2 * exponents_[j]);
            return s <= 1.0;
        };
        return bisect_last_true(fits, 0.0, 2.0 * bounding_radius_, 60);
    }
    case Kind::ImplicitConvex: {
        double m = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kSliceRays; ++k) {
            const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * k / kSliceRays);
            m = std::min(m, ray_exit(c, CVec(rot * u)));
        }
        // A convex slice contains the polygon spanned by the ray hits.
        return m * std::cos(std::numbers::pi / kSliceRays);
    }
    }
    return 0.0;
}

double Domain::support(const CVec& u) const
{
    switch (kind_) {
    case Kind::Disk:
    case Kind::Ball: return u.norm();
    case Kind::Polydisk: {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j)
            s += std::abs(u[j]);
        return s;
    }
    case Kind::Ellipsoid: {
        // Lagrangian dual: any lambda > 0 gives an upper bound, the root of the constraint is tight.
        std::vector<double> a(dim_);
        double amax = 0.0;
        for (int j = 0; j < dim_; ++j) {
            a[j] = std::abs(u[j]);
            amax = std::max(amax, a[j]);
        }
        if (amax == 0.0)
            return 0.0;
        auto s_of = [&](int j, double lambda) {
            const int m = exponents_[j];
            return std::pow(a[j] / (2.0 * m * lambda), 1.0 / (2.0 * m - 1.0));
        };
        auto constraint = [&](double lambda) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j)
                s += ipow(s_of(j, lambda), 2 * exponents_[j]);
            return s;
        };
        double lo = std::log(amax) - 60.0, hi = std::log(amax) + 60.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (constraint(std::exp(mid)) > 1.0)
                lo = mid;
            else
                hi = mid;
        }
        const double lambda = std::exp(0.5 * (lo + hi));
        double value = lambda;
        for (int j = 0; j < dim_; ++j) {
            const double s = s_of(j, lambda);
            value += a[j] * s - lambda * ipow(s, 2 * exponents_[j]);
        }
        return value;
    }
    case Kind::ImplicitConvex: {
        // Maximizing a linear functional over a convex set: any KKT point is global.
        const int n = 2 * dim_;
        const RVec ur = to_real(u);
        const double un = ur.norm();
        if (un == 0.0)
            return 0.0;
        RVec w = to_real(CVec(center_ + ray_exit(center_, CVec(u / un)) * (u / un)));
        double mu = 1.0;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            const CVec wc = to_complex(w);
            const RVec g = gradient(wc);
            const RMat h = hessian(wc);
            if (it == 0) {
                const double gg = g.squaredNorm();
                mu = gg > 0.0 ? ur.dot(g) / gg : 1.0;
            }
            KktVec f(n + 1);
            f.head(n) = ur - mu * g;
            f[n] = defining(wc);
            if (f.norm() < 1e-14 * (1.0 + un)) {
                ok = mu > 0.0;
                break;
            }
            KktMat jac = KktMat::Zero(n + 1, n + 1);
            jac.topLeftCorner(n, n) = -mu * h;
            jac.block(0, n, n, 1) = -g;
            jac.block(n, 0, 1, n) = g.transpose();
            const KktVec step = jac.fullPivLu().solve(-f);
            if (!step.allFinite())
                break;
            w += step.head(n);
            mu += step[n];
        }
        if (ok)
            return w.dot(ur) + 1e-12 * un;
        return bounding_radius_ * un;
    }
    }
    return 0.0;
}

Disc Domain::projection_disc(const CVec& e) const
{
    if (kind_ != Kind::ImplicitConvex) {
        // Every model kind is invariant under w -> e^{i t} w, so the image is a centered disc.
        return {0.0, support(e)};
    }
    std::vector<double> h(kProjectionAngles);
    for (int k = 0; k < kProjectionAngles; ++k) {
        const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * k / kProjectionAngles);
        h[k] = support(CVec(rot * e));
    }
    const int q = kProjectionAngles / 4;
    const cplx c(0.5 * (h[0] - h[2 * q]), 0.5 * (h[q] - h[3 * q]));
    double m = 0.0;
    for (int k = 0; k < kProjectionAngles; ++k) {
        const cplx rot = std::polar(1.0, -2.0 * std::numbers::pi * k / kProjectionAngles);
        m = std::max(m, h[k] - (rot * c).real());
    }
    return {c, m / std::cos(std::numbers::pi / kProjectionAngles)};
}

NearestPoint Domain::nearest_boundary(const CVec& z) const
{
    if (!contains(z))
        fail(ErrorCode::PointOutsideDomain, "nearest_boundary: point " + name() + " outside");
    NearestPoint out;
    switch (kind_) {
    case Kind::Disk:
    case Kind::Ball: {
        const double r = z.norm();
        out.distance = 1.0 - r;
        if (r == 0.0) {
            out.point = CVec::Zero(dim_);
            out.point[0] = 1.0;
        } else {
            out.point = z / r;
        }
        return out;
    }
    case Kind::Polydisk: {
        int a = 0;
        for (int j = 1; j < dim_; ++j)
            if (std::abs(z[j]) > std::abs(z[a]))
                a = j;
        out.point = z;
        out.point[a] = std::abs(z[a]) > 0.0 ? z[a] / std::abs(z[a]) : cplx(1.0);
        out.distance = 1.0 - std::abs(z[a]);
        return out;
    }
    default: break;
    }
    const RVec x = to_real(z);
    out.distance = std::numeric_limits<double>::infinity();
    RVec g = gradient(z);
    std::vector<CVec> dirs = probe_directions(dim_, 24, 11);
    if (g.norm() > 0.0)
        dirs.push_back(to_complex(RVec(g / g.norm())));
    for (const CVec& u : dirs) {
        const CVec w0 = z + ray_exit(z, u) * u;
        const double d0 = (w0 - z).norm();
        if (d0 < out.distance) {
            out.distance = d0;
            out.point = w0;
        }
        const KktPoint k = kkt_newton(*this, x, to_real(w0));
        if (k.ok) {
            const double dk = (k.w - x).norm();
            if (dk < out.distance) {
                out.distance = dk;
                out.point = to_complex(k.w);
            }
        }
    }
    return out;
}

double Domain::farthest_boundary_distance(const CVec& z) const
{
    if (!contains(z))
        fail(ErrorCode::PointOutsideDomain, "farthest_boundary_distance: point outside");
    switch (kind_) {
    case Kind::Disk:
    case Kind::Ball: return 1.0 + z.norm();
    case Kind::Polydisk: {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j)
            s += (1.0 + std::abs(z[j])) * (1.0 + std::abs(z[j]));
        return std::sqrt(s);
    }
    default: break;
    }
    const RVec x = to_real(z);
    double best = 0.0;
    for (const CVec& u : probe_directions(dim_, 96, 13)) {
        const CVec w0 = z + ray_exit(z, u) * u;
        best = std::max(best, (w0 - z).norm());
        const KktPoint k = kkt_newton(*this, x, to_real(w0));
        if (k.ok)
            best = std::max(best, (k.w - x).norm());
    }
    return best;
}

double boundary_distance(const Domain& dom, const CVec& z)
{
    if (!dom.contains(z))
        fail(ErrorCode::PointOutsideDomain, "boundary_distance on " + dom.name());
    return dom.nearest_boundary(z).distance;
}

CVec chord_center(const Domain& dom, const CVec& m, const CVec& u)
{
    const double tp = dom.ray_exit(m, u);
    const double tm = dom.ray_exit(m, CVec(-u));
    const CVec m1 = m + 0.5 * (tp - tm) * u;
    const CVec iu = cplx(0.0, 1.0) * u;
    const double sp = dom.ray_exit(m1, iu);
    const double sm = dom.ray_exit(m1, CVec(-iu));
    return m1 + 0.5 * (sp - sm) * iu;
}

BoundaryData boundary_data(const Domain& dom, const CVec& xi)
{
    if (xi.size() != dom.dim())
        fail(ErrorCode::InvalidArgument, "boundary_data: dimension mismatch");
    if (std::abs(dom.defining(xi)) > 1e-12)
        fail(ErrorCode::NotOnBoundary, "boundary_data: r(xi) is not zero");
    const RVec g = dom.gradient(xi);
    const double gn = g.norm();
    if (gn < 1e-12)
        fail(ErrorCode::DegenerateGradient, "boundary_data: gradient vanishes");
    const int n = static_cast<int>(g.size());
    BoundaryData out;
    out.point = xi;
    out.inward_normal = to_complex(RVec(-g / gn));
    out.tangent.anchor = xi;
    out.tangent.normal = to_complex(RVec(g / gn));

    // Orthonormal basis of the real tangent space, the complement of the gradient.
    Eigen::HouseholderQR<RMat> qr(RMat(g / gn));
    const RMat q = qr.householderQ();
    const RMat basis = q.rightCols(n - 1);
    const RMat restricted = basis.transpose() * dom.hessian(xi) * basis;
    Eigen::SelfAdjointEigenSolver<RMat> eig(restricted);
    out.curvature_margin = eig.eigenvalues().minCoeff();
    out.strongly_convex = out.curvature_margin > 1e-8;
    return out;
}

ConeCertificate cone_certificate(const Domain& dom, const Cone& cone, int grid, std::uint64_t seed)
{
    if (grid < 2)
        fail(ErrorCode::InvalidArgument, "cone_certificate: grid must be at least 2");
    if (std::abs(dom.defining(cone.apex)) > 1e-9)
        fail(ErrorCode::ApexNotOnBoundary, "cone apex is not on the boundary");
    if (!(cone.aperture > 0.0 && cone.aperture <= std::numbers::pi / 2) || !(cone.length > 0.0))
        fail(ErrorCode::InvalidArgument, "cone aperture must lie in (0, pi/2] and length be positive");
    const RVec v = to_real(unit(cone.direction));
    const int n = static_cast<int>(v.size());

    Eigen::HouseholderQR<RMat> qr{RMat(v)};
    const RMat q = qr.householderQ();
    const RMat perp = q.rightCols(n - 1);
    std::vector<RVec> sides;
    for (int k = 0; k < n - 1; ++k) {
        sides.push_back(perp.col(k));
        sides.push_back(-perp.col(k));
    }
    Rng rng(seed);
    for (int k = 0; k < grid; ++k) {
        RVec c(n - 1);
        for (int j = 0; j < n - 1; ++j)
            c[j] = rng.normal();
        sides.push_back(perp * c / c.norm());
    }

    std::vector<double> fractions;
    for (int k = 0; k < grid; ++k)
        fractions.push_back(static_cast<double>(k) / grid);
    fractions.push_back(1.0 - 1e-6);
    std::vector<double> lengths;
    for (int j = 1; j < grid; ++j)
        lengths.push_back(cone.length * j / grid);
    lengths.push_back(cone.length * (1.0 - 1e-6));

    ConeCertificate out;
    out.margin = std::numeric_limits<double>::infinity();
    const RVec apex = to_real(cone.apex);
    for (double frac : fractions) {
        const double phi = frac * cone.aperture;
        for (const RVec& w : sides) {
            const RVec dir = std::cos(phi) * v + std::sin(phi) * w;
            for (double t : lengths) {
                const CVec z = to_complex(RVec(apex + t * dir));
                out.margin = std::min(out.margin, -dom.defining(z));
                ++out.samples;
            }
            if (phi == 0.0)
                break;
        }
    }
    out.certified = out.margin > 0.0;
    if (out.certified) {
        out.axis_depth_ratio = std::numeric_limits<double>::infinity();
        const double s = std::sin(cone.aperture);
        for (int j = 1; j <= grid; ++j) {
            const double t = 0.5 * cone.length * j / grid;
            const CVec z = to_complex(RVec(apex + t * v));
            out.axis_depth_ratio = std::min(out.axis_depth_ratio, boundary_distance(dom, z) / (s * t));
        }
    }
    return out;
}

LineType line_type(const Domain& dom, const CVec& xi)
{
    if (std::abs(dom.defining(xi)) > 1e-12)
        fail(ErrorCode::NotOnBoundary, "line_type: xi is not on the boundary");
    LineType out;
    switch (dom.kind()) {
    case Kind::Disk:
    case Kind::Ball: out.value = 2; out.slope = 2.0; return out;
    case Kind::Polydisk: {
        // A face of the polydisk contains complex lines when d >= 2.
        out.infinite = dom.dim() >= 2;
        out.value = 2;
        out.slope = out.infinite ? std::numeric_limits<double>::infinity() : 2.0;
        return out;
    }
    case Kind::Ellipsoid: {
        int v = 2;
        for (int j = 0; j < dom.dim(); ++j)
            if (std::abs(xi[j]) < 1e-12)
                v = std::max(v, 2 * dom.exponents()[j]);
        out.value = v;
        out.slope = v;
        return out;
    }
    case Kind::ImplicitConvex: break;
    }

    const BoundaryData bd = boundary_data(dom, xi);
    const int d = dom.dim();
    const CVec nu = bd.tangent.normal;
    std::vector<CVec> dirs;
    if (d == 1) {
        // No complex tangent line exists; the real tangent direction carries the boundary curvature.
        dirs.push_back(CVec(cplx(0.0, 1.0) * nu));
    } else {
        std::vector<CVec> basis;
        for (int k = 0; k < d; ++k) {
            CVec e = CVec::Zero(d);
            e[k] = 1.0;
            e -= inner(e, nu) * nu;
            for (const CVec& b : basis)
                e -= inner(e, b) * b;
            if (e.norm() > 1e-8)
                basis.push_back(e / e.norm());
        }
        dirs = basis;
        Rng rng(5);
        for (int k = 0; k < 16; ++k) {
            CVec w = CVec::Zero(d);
            for (const CVec& b : basis)
                w += cplx(rng.normal(), rng.normal()) * b;
            if (w.norm() > 0.0)
                dirs.push_back(w / w.norm());
        }
    }

    double best_slope = 0.0;
    int best_value = 2;
    bool infinite = false;
    for (const CVec& w : dirs) {
        std::vector<double> ts, vs;
        for (int k = 0; k < 8; ++k) {
            const double t = std::pow(10.0, -1.0 - 1.5 * k / 7.0);
            double m = 0.0;
            for (int a = 0; a < 4; ++a) {
                const cplx ph = std::polar(t, std::numbers::pi * a / 4.0);
                m = std::max(m, std::abs(dom.defining(CVec(xi + ph * w))));
            }
            ts.push_back(t);
            vs.push_back(m);
        }
        if (*std::max_element(vs.begin(), vs.end()) < 1e-300) {
            infinite = true;
            continue;
        }
        const double slope = fit_loglog(ts, vs).slope;
        const int even = std::max(2, 2 * static_cast<int>(std::lround(slope / 2.0)));
        if (std::abs(slope - even) > 0.1)
            fail(ErrorCode::TypeEstimateUnstable, "line_type regression slope " + std::to_string(slope));
        if (even > best_value || best_slope == 0.0) {
            best_value = std::max(best_value, even);
            best_slope = slope;
        }
    }
    out.value = best_value;
    out.slope = infinite ? std::numeric_limits<double>::infinity() : best_slope;
    out.infinite = infinite;
    return out;
}

namespace
{

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& msg)
{
    fail(ErrorCode::ConfigInvalid, "domain field '" + field + "': " + msg);
}

CVec parse_point(const json& j, const std::string& field)
{
    if (!j.is_array())
        config_error(field, "expected an array of [re, im] pairs");
    CVec z(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& c = j[i];
        if (c.is_number()) {
            z[static_cast<int>(i)] = c.get<double>();
        } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
            z[static_cast<int>(i)] = cplx(c[0].get<double>(), c[1].get<double>());
        } else {
            config_error(field, "entries must be numbers or [re, im] pairs");
        }
    }
    return z;
}

} // namespace

Domain parse_domain_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ConfigInvalid, std::string("domain JSON: ") + e.what());
    }
    if (!j.is_object())
        config_error("<root>", "expected an object");
    static const std::vector<std::string> known = {"kind", "dimension", "exponents", "polynomial",
                                                   "interior_point", "bounding_radius"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            config_error(it.key(), "unknown key");
    if (!j.contains("kind") || !j["kind"].is_string())
        config_error("kind", "missing or not a string");
    const std::string kind = j["kind"].get<std::string>();
    auto dimension = [&]() {
        if (!j.contains("dimension") || !j["dimension"].is_number_integer())
            config_error("dimension", "missing or not an integer");
        return j["dimension"].get<int>();
    };
    if (kind == "disk")
        return Domain::disk();
    if (kind == "ball")
        return Domain::ball(dimension());
    if (kind == "polydisk")
        return Domain::polydisk(dimension());
    if (kind == "ellipsoid") {
        if (!j.contains("exponents") || !j["exponents"].is_array())
            config_error("exponents", "missing or not an array");
        std::vector<int> m;
        for (const auto& e : j["exponents"]) {
            if (!e.is_number_integer())
                config_error("exponents", "entries must be integers");
            m.push_back(e.get<int>());
        }
        if (j.contains("dimension") && dimension() != static_cast<int>(m.size()))
            config_error("dimension", "does not match the number of exponents");
        return Domain::ellipsoid(m);
    }
    if (kind == "implicit") {
        const int d = dimension();
        if (!j.contains("polynomial") || !j["polynomial"].is_object())
            config_error("polynomial", "missing or not an object");
        const json& p = j["polynomial"];
        Polynomial poly;
        poly.real_dim = 2 * d;
        for (auto it = p.begin(); it != p.end(); ++it)
            if (it.key() != "name" && it.key() != "terms")
                config_error("polynomial." + it.key(), "unknown key");
        poly.name = p.value("name", std::string("custom"));
        if (!p.contains("terms") || !p["terms"].is_array())
            config_error("polynomial.terms", "missing or not an array");
        for (const auto& t : p["terms"]) {
            for (auto it = t.begin(); it != t.end(); ++it)
                if (it.key() != "coef" && it.key() != "powers")
                    config_error("polynomial.terms." + it.key(), "unknown key");
            PolyTerm term;
            term.coef = t.at("coef").get<double>();
            term.powers = t.at("powers").get<std::vector<int>>();
            if (static_cast<int>(term.powers.size()) != 2 * d)
                config_error("polynomial.terms.powers", "needs 2*dimension entries");
            poly.terms.push_back(term);
        }
        CVec center = CVec::Zero(d);
        if (j.contains("interior_point"))
            center = parse_point(j["interior_point"], "interior_point");
        std::optional<double> radius;
        if (j.contains("bounding_radius"))
            radius = j["bounding_radius"].get<double>();
        return Domain::implicit(poly, d, center, radius);
    }
    config_error("kind", "unknown domain kind '" + kind + "'");
}

Domain parse_domain_spec(const std::string& spec)
{
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::ifstream in(spec);
        if (!in)
            fail(ErrorCode::IoFailure, "cannot read domain file " + spec);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_domain_json(ss.str());
    }
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigInvalid, "domain spec '" + spec + "': bad integer '" + s + "'");
        }
    };
    if (head == "disk" && tail.empty())
        return Domain::disk();
    if (head == "ball")
        return Domain::ball(tail.empty() ? 2 : to_int(tail));
    if (head == "polydisk")
        return Domain::polydisk(tail.empty() ? 2 : to_int(tail));
    if (head == "ellipsoid") {
        std::vector<int> m;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ','))
            m.push_back(to_int(item));
        if (m.empty())
            fail(ErrorCode::ConfigInvalid, "domain spec '" + spec + "': ellipsoid needs exponents");
        return Domain::ellipsoid(m);
    }
    fail(ErrorCode::ConfigInvalid, "unknown domain spec '" + spec + "'");
}

} // namespace bsl::domain
