#include "bsl/riemann.hpp"

#include "bsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bsl::riemann
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

using State = Eigen::VectorXd;

template <class F>
State rk4_step(const F& f, const State& s, double h)
{
    const State k1 = f(s);
    const State k2 = f(s + 0.5 * h * k1);
    const State k3 = f(s + 0.5 * h * k2);
    const State k4 = f(s + h * k3);
    return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

RVec unit(int n, int i)
{
    RVec e = RVec::Zero(n);
    e[i] = 1.0;
    return e;
}

double gdot(const RMat& g, const RVec& a, const RVec& b)
{
    return a.dot(g * b);
}

class Conformal : public MetricField
{
public:
    // lambda(x) = 4 / (1 + sign |x|^2)^2
    Conformal(int n, double sign) : n_(n), sign_(sign) {}

    std::string name() const override
    {
        const std::string base = sign_ < 0 ? "poincare" : "sphere";
        return n_ == 2 ? base : base + ":" + std::to_string(n_);
    }
    int dim() const override { return n_; }
    RMat metric(const RVec& x) const override
    {
        const double u = 1.0 + sign_ * x.squaredNorm();
        return RMat::Identity(n_, n_) * (4.0 / (u * u));
    }
    std::vector<RMat> metric_derivative(const RVec& x) const override
    {
        const double u = 1.0 + sign_ * x.squaredNorm();
        std::vector<RMat> d;
        for (int k = 0; k < n_; ++k)
            d.push_back(RMat::Identity(n_, n_) * (-16.0 * sign_ * x[k] / (u * u * u)));
        return d;
    }
    bool in_chart(const RVec& x) const override
    {
        if (!x.allFinite())
            return false;
        return sign_ < 0 ? x.squaredNorm() < 1.0 : x.norm() < 1e8;
    }
    std::optional<double> kappa_model() const override { return sign_ < 0 ? -1.0 : 1.0; }
    bool hadamard() const override { return sign_ < 0; }

private:
    int n_;
    double sign_;
};

class Euclid : public MetricField
{
public:
    explicit Euclid(int n) : n_(n) {}
    std::string name() const override { return "euclid:" + std::to_string(n_); }
    int dim() const override { return n_; }
    RMat metric(const RVec&) const override { return RMat::Identity(n_, n_); }
    std::vector<RMat> metric_derivative(const RVec&) const override
    {
        return std::vector<RMat>(static_cast<std::size_t>(n_), RMat::Zero(n_, n_));
    }
    bool in_chart(const RVec& x) const override { return x.allFinite(); }
    std::optional<double> kappa_model() const override { return 0.0; }
    bool flat() const override { return true; }
    bool hadamard() const override { return true; }

private:
    int n_;
};

class BergmanBall : public MetricField
{
public:
    explicit BergmanBall(int d) : d_(d) {}
    std::string name() const override { return "bergman-ball:" + std::to_string(d_); }
    int dim() const override { return 2 * d_; }
    RMat metric(const RVec& x) const override
    {
        const double u = 1.0 - x.squaredNorm();
        const RVec w = apply_j(x);
        const int n = 2 * d_;
        return (4.0 / u) * RMat::Identity(n, n) + (4.0 / (u * u)) * (x * x.transpose() + w * w.transpose());
    }
    std::vector<RMat> metric_derivative(const RVec& x) const override
    {
        const int n = 2 * d_;
        const double u = 1.0 - x.squaredNorm();
        const RVec w = apply_j(x);
        const RMat outer = x * x.transpose() + w * w.transpose();
        std::vector<RMat> d;
        for (int k = 0; k < n; ++k) {
            const RVec e = unit(n, k);
            const RVec je = apply_j(e);
            RMat dk = (8.0 * x[k] / (u * u)) * RMat::Identity(n, n) + (16.0 * x[k] / (u * u * u)) * outer;
            dk += (4.0 / (u * u)) *
                  (e * x.transpose() + x * e.transpose() + je * w.transpose() + w * je.transpose());
            d.push_back(dk);
        }
        return d;
    }
    bool in_chart(const RVec& x) const override { return x.allFinite() && x.squaredNorm() < 1.0; }
    bool hadamard() const override { return true; }
    int complex_dim() const override { return d_; }

private:
    int d_;
};

class Scaled : public MetricField
{
public:
    Scaled(MetricPtr base, double lambda) : base_(std::move(base)), lambda_(lambda) {}
    std::string name() const override { return base_->name() + "@" + std::to_string(lambda_); }
    int dim() const override { return base_->dim(); }
    RMat metric(const RVec& x) const override { return lambda_ * base_->metric(x); }
    std::vector<RMat> metric_derivative(const RVec& x) const override
    {
        auto d = base_->metric_derivative(x);
        for (auto& m : d)
            m *= lambda_;
        return d;
    }
    bool in_chart(const RVec& x) const override { return base_->in_chart(x); }
    std::optional<double> kappa_model() const override
    {
        if (auto k = base_->kappa_model())
            return *k / lambda_;
        return std::nullopt;
    }
    bool flat() const override { return base_->flat(); }
    bool hadamard() const override { return base_->hadamard(); }
    int complex_dim() const override { return base_->complex_dim(); }

private:
    MetricPtr base_;
    double lambda_;
};

Christoffel christoffel_from(int n, const RMat& g, const std::vector<RMat>& dg)
{
    const RMat ginv = g.inverse();
    Christoffel c;
    c.n = n;
    RMat lowered[kMaxReal];
    for (int l = 0; l < n; ++l) {
        lowered[l].resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                lowered[l](i, j) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
    }
    for (int a = 0; a < n; ++a) {
        c.k[a] = RMat::Zero(n, n);
        for (int l = 0; l < n; ++l)
            c.k[a] += ginv(a, l) * lowered[l];
    }
    return c;
}

// Step for finite differences at x, shrunk so that a neighbourhood of 100 steps stays in the chart.
double fd_step(const MetricField& m, const RVec& x, double h0)
{
    const int n = m.dim();
    double h = h0;
    for (int it = 0; it < 60; ++it) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            const RVec e = unit(n, i) * (100.0 * h);
            ok = m.in_chart(x + e) && m.in_chart(x - e);
        }
        if (ok)
            return h;
        h *= 0.5;
    }
    return h;
}

int steps_for(double length, const ShootingOptions& opts)
{
    const double s = std::ceil(opts.steps_per_length * length);
    return std::max(opts.min_steps, static_cast<int>(std::min(s, 1e7)));
}

State geodesic_rhs(const MetricField& m, const State& s)
{
    const int n = m.dim();
    const RVec x = s.head(n), v = s.segment(n, n);
    const Christoffel c = christoffel(m, x);
    State out(2 * n);
    out.head(n) = v;
    out.segment(n, n) = -c.contract(v, v);
    return out;
}

std::vector<State> integrate_geodesic(const MetricField& m, const RVec& x, const RVec& v, int steps, double h,
                                      bool keep = true)
{
    const int n = m.dim();
    State s(2 * n);
    s.head(n) = x;
    s.segment(n, n) = v;
    std::vector<State> out{s};
    if (keep)
        out.reserve(static_cast<std::size_t>(steps) + 1);
    auto f = [&](const State& y) { return geodesic_rhs(m, y); };
    for (int k = 0; k < steps; ++k) {
        s = rk4_step(f, s, h);
        if (!m.in_chart(s.head(n)))
            fail(ErrorCode::LeftChart, "geodesic left the chart at step " + std::to_string(k + 1));
        if (keep)
            out.push_back(s);
    }
    if (!keep)
        out.back() = s;
    return out;
}

double fiber_angle(const RMat& g, const RVec& a, const RVec& b)
{
    const double na = std::sqrt(gdot(g, a, a)), nb = std::sqrt(gdot(g, b, b));
    const RVec ua = a / na, ub = b / nb;
    const RVec diff = ua - ub;
    // 2 asin(|a - b| / 2) stays accurate near 0 and pi.
    return 2.0 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, gdot(g, diff, diff))) / 2.0));
}

void require_unit(const MetricField& m, const TangentPoint& p, const char* what)
{
    const double nv = norm_g(m, p.x, p.v);
    if (std::abs(nv - 1.0) > 1e-8)
        fail(ErrorCode::NotUnit, std::string(what) + " has norm " + std::to_string(nv));
}

// Distance used by the spread and backward checks; falls back to the diameter past the certified radius.
double base_distance(const MetricField& m, const RVec& x, const RVec& y)
{
    try {
        return exp_log(m, x, y).distance;
    } catch (const Error& e) {
        const auto k = m.kappa_model();
        if (e.code() == ErrorCode::ShootingDiverged && k && *k > 0)
            return std::numbers::pi / std::sqrt(*k);
        throw;
    }
}

SasakiSplit sasaki_at(const MetricField& m, const std::function<TangentPoint(double)>& curve, double t)
{
    const double e = 1e-3;
    const TangentPoint p = curve(t);
    const TangentPoint a = curve(t + 2 * e), b = curve(t + e), c = curve(t - e), d = curve(t - 2 * e);
    const RVec dx = (-a.x + 8.0 * b.x - 8.0 * c.x + d.x) / (12.0 * e);
    const RVec dX = (-a.v + 8.0 * b.v - 8.0 * c.v + d.v) / (12.0 * e);
    return sasaki_eval(m, p, dx, dX);
}

} // namespace

std::vector<RMat> MetricField::metric_derivative(const RVec& x) const
{
    const int n = dim();
    const double h = fd_step(*this, x, 1e-4);
    std::vector<RMat> d;
    for (int k = 0; k < n; ++k) {
        const RVec e = unit(n, k) * h;
        d.push_back((-metric(x + 2 * e) + 8.0 * metric(x + e) - 8.0 * metric(x - e) + metric(x - 2 * e)) /
                    (12.0 * h));
    }
    return d;
}

MetricPtr euclid(int n)
{
    if (n < 1 || n > kMaxReal)
        fail(ErrorCode::InvalidArgument, "euclid dimension out of range");
    return std::make_shared<Euclid>(n);
}

MetricPtr poincare(int n)
{
    if (n < 1 || n > kMaxReal)
        fail(ErrorCode::InvalidArgument, "poincare dimension out of range");
    return std::make_shared<Conformal>(n, -1.0);
}

MetricPtr sphere(int n)
{
    if (n < 1 || n > kMaxReal)
        fail(ErrorCode::InvalidArgument, "sphere dimension out of range");
    return std::make_shared<Conformal>(n, 1.0);
}

MetricPtr bergman_ball(int d)
{
    if (d < 1 || d > kMaxDim)
        fail(ErrorCode::InvalidArgument, "bergman-ball dimension out of range");
    return std::make_shared<BergmanBall>(d);
}

MetricPtr scaled(MetricPtr base, double lambda)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
        fail(ErrorCode::InvalidArgument, "metric scale must be positive");
    return std::make_shared<Scaled>(std::move(base), lambda);
}

MetricPtr make_metric(const std::string& spec)
{
    std::string body = spec;
    double lambda = 1.0;
    if (auto at = body.find('@'); at != std::string::npos) {
        lambda = std::stod(body.substr(at + 1));
        body = body.substr(0, at);
    }
    std::string name = body;
    int n = -1;
    if (auto colon = body.find(':'); colon != std::string::npos) {
        name = body.substr(0, colon);
        n = std::stoi(body.substr(colon + 1));
    }
    MetricPtr m;
    if (name == "euclid")
        m = euclid(n < 0 ? 2 : n);
    else if (name == "poincare")
        m = poincare(n < 0 ? 2 : n);
    else if (name == "sphere")
        m = sphere(n < 0 ? 2 : n);
    else if (name == "bergman-ball")
        m = bergman_ball(n < 0 ? 2 : n);
    else
        fail(ErrorCode::ConfigInvalid, "unknown metric: " + spec);
    return lambda == 1.0 ? m : scaled(m, lambda);
}

RVec Christoffel::contract(const RVec& a, const RVec& b) const
{
    RVec out(n);
    for (int c = 0; c < n; ++c)
        out[c] = a.dot(k[c] * b);
    return out;
}

RVec Curvature::apply(const RVec& x, const RVec& y, const RVec& z) const
{
    RVec out = RVec::Zero(n);
    for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0.0)
                continue;
            for (int j = 0; j < n; ++j) {
                if (y[j] == 0.0)
                    continue;
                const double* row = &r[static_cast<std::size_t>(((l * n + i) * n + j) * n)];
                double t = 0.0;
                for (int k = 0; k < n; ++k)
                    t += row[k] * z[k];
                s += x[i] * y[j] * t;
            }
        }
        out[l] = s;
    }
    return out;
}

double Curvature::rm(const RVec& x, const RVec& y, const RVec& z, const RVec& w) const
{
    return gdot(g, apply(x, y, w), z);
}

double Curvature::sectional(const RVec& x, const RVec& y) const
{
    const double area = gdot(g, x, x) * gdot(g, y, y) - std::pow(gdot(g, x, y), 2);
    if (!(area > 0))
        fail(ErrorCode::ZeroVector, "sectional curvature of a degenerate plane");
    return rm(x, y, x, y) / area;
}

Christoffel christoffel(const MetricField& m, const RVec& x)
{
    return christoffel_from(m.dim(), m.metric(x), m.metric_derivative(x));
}

Curvature christoffel_curvature(const MetricField& m, const RVec& x)
{
    const int n = m.dim();
    if (!m.in_chart(x))
        fail(ErrorCode::LeftChart, "point outside the chart");
    Curvature c;
    c.n = n;
    c.g = m.metric(x);
    Eigen::SelfAdjointEigenSolver<RMat> es(c.g);
    if (!(es.eigenvalues().minCoeff() > 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff())))
        fail(ErrorCode::SingularMetric, "metric is not positive definite");
    c.gamma = christoffel_from(n, c.g, m.metric_derivative(x));

    // dgam[i] = d Gamma / d x_i by a five-point stencil.
    const double h = fd_step(m, x, 1e-3);
    std::vector<Christoffel> dgam;
    for (int i = 0; i < n; ++i) {
        const RVec e = unit(n, i) * h;
        const Christoffel a = christoffel(m, x + 2 * e), b = christoffel(m, x + e), cc = christoffel(m, x - e),
                          d = christoffel(m, x - 2 * e);
        Christoffel out;
        out.n = n;
        for (int l = 0; l < n; ++l)
            out.k[l] = (-a.k[l] + 8.0 * b.k[l] - 8.0 * cc.k[l] + d.k[l]) / (12.0 * h);
        dgam.push_back(out);
    }

    c.r.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
    const auto& G = c.gamma.k;
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = dgam[i].k[l](j, k) - dgam[j].k[l](i, k);
                    for (int q = 0; q < n; ++q)
                        v += G[l](i, q) * G[q](j, k) - G[l](j, q) * G[q](i, k);
                    c.r[static_cast<std::size_t>(((l * n + i) * n + j) * n + k)] = v;
                }
    return c;
}

double norm_g(const MetricField& m, const RVec& x, const RVec& v)
{
    return std::sqrt(std::max(0.0, gdot(m.metric(x), v, v)));
}

GeodesicPath geodesic_flow(const MetricField& m, const TangentPoint& init, double horizon, const FlowOptions& opts)
{
    const int n = m.dim();
    if (init.x.size() != n || init.v.size() != n)
        fail(ErrorCode::InvalidArgument, "tangent vector dimension mismatch");
    if (!m.in_chart(init.x))
        fail(ErrorCode::LeftChart, "initial point outside the chart");
    if (!(horizon >= 0) || !(opts.h > 0))
        fail(ErrorCode::InvalidArgument, "horizon and step must be positive");
    const int steps = std::max(1, static_cast<int>(std::llround(horizon / opts.h)));
    const double h = horizon > 0 ? horizon / steps : opts.h;

    GeodesicPath p;
    p.init = init;
    p.horizon = horizon;
    p.h = h;
    const auto states = integrate_geodesic(m, init.x, init.v, horizon > 0 ? steps : 0, h);
    const double s0 = norm_g(m, init.x, init.v);
    for (std::size_t k = 0; k < states.size(); ++k) {
        p.t.push_back(static_cast<double>(k) * h);
        p.x.push_back(states[k].head(n));
        p.v.push_back(states[k].segment(n, n));
        if (s0 > 0) {
            const double drift = std::abs(norm_g(m, p.x.back(), p.v.back()) - s0) / s0;
            p.max_drift = std::max(p.max_drift, drift);
        }
    }
    if (p.max_drift > opts.drift_limit)
        fail(ErrorCode::StepTooLarge, "speed drift " + std::to_string(p.max_drift) + " exceeds limit");
    if (opts.richardson && horizon > 0) {
        const auto fine = integrate_geodesic(m, init.x, init.v, 2 * steps, h / 2);
        p.richardson_error = (fine.back().head(n) - states.back().head(n)).norm();
    }
    return p;
}

RVec exp_map(const MetricField& m, const RVec& x, const RVec& v, int steps)
{
    const int n = m.dim();
    return integrate_geodesic(m, x, v, steps, 1.0 / steps, false).back().head(n);
}

double certified_radius(const MetricField& m)
{
    const auto k = m.kappa_model();
    if (k && *k > 0)
        return 0.9 * std::numbers::pi / std::sqrt(*k);
    return kInf;
}

namespace
{

Shooting shoot_forward(const MetricField& m, const RVec& x, const RVec& y, const ShootingOptions& opts)
{
    const int n = m.dim();
    if (x.size() != n || y.size() != n)
        fail(ErrorCode::InvalidArgument, "point dimension mismatch");
    if (!m.in_chart(x) || !m.in_chart(y))
        fail(ErrorCode::LeftChart, "endpoint outside the chart");
    Shooting s;
    if (m.flat()) {
        s.v = y - x;
        s.distance = norm_g(m, x, s.v);
        return s;
    }
    if ((y - x).norm() == 0.0) {
        s.v = RVec::Zero(n);
        return s;
    }

    auto shoot = [&](const RVec& v, int steps) -> std::optional<RVec> {
        try {
            return exp_map(m, x, v, steps);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::LeftChart)
                return std::nullopt;
            throw;
        }
    };

    int total = 0;
    double max_len = std::numeric_limits<double>::infinity();
    // Damped Newton on v -> exp_x(v) - target; the jacobian comes from coarse shots.
    auto newton = [&](RVec v, const RVec& target, double tol) -> std::optional<std::pair<RVec, double>> {
        std::optional<RVec> end;
        for (int k = 0; k < 60 && !(end = shoot(v, steps_for(norm_g(m, x, v), opts))); ++k)
            v *= 0.5;
        if (!end)
            return std::nullopt;
        double res = (*end - target).norm();
        for (int it = 0; it < opts.max_iter && res > tol; ++it, ++total) {
            const double len = norm_g(m, x, v);
            const int coarse = std::max(100, steps_for(len, opts) / 10);
            const auto base = shoot(v, coarse);
            if (!base)
                return std::nullopt;
            RMat jac(n, n);
            const double delta = 1e-7 * (1.0 + v.norm());
            for (int j = 0; j < n; ++j) {
                double sign = 1.0;
                auto e = shoot(v + unit(n, j) * delta, coarse);
                if (!e) {
                    sign = -1.0;
                    e = shoot(v - unit(n, j) * delta, coarse);
                }
                if (!e)
                    return std::nullopt;
                jac.col(j) = sign * (*e - *base) / delta;
            }
            const RVec step = -jac.fullPivLu().solve(RVec(*end - target));
            if (!step.allFinite())
                return std::nullopt;
            double lam = 1.0;
            bool accepted = false;
            for (int k = 0; k < 30; ++k, lam *= 0.5) {
                const RVec trial = v + lam * step;
                const double trial_len = norm_g(m, x, trial);
                if (trial_len > 2.0 * len + 1.0 || trial_len > max_len)
                    continue;
                const auto e = shoot(trial, steps_for(trial_len, opts));
                if (e && (*e - target).norm() < res) {
                    v = trial;
                    end = e;
                    res = (*e - target).norm();
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
                break;
        }
        return std::make_pair(v, res);
    };

    const double tol = opts.tol;
    // The chart segment is a competitor, so its length bounds the distance; the guess gets that length.
    const RVec dir = y - x;
    const double seg_len =
        adaptive_simpson([&](double t) { return norm_g(m, RVec(x + t * dir), dir); }, 0.0, 1.0, 1e-8).value;
    max_len = 2.0 * seg_len + 1e-12;
    RVec guess = dir * (seg_len / norm_g(m, x, dir));
    if (opts.guess)
        guess = *opts.guess;
    auto direct = newton(guess, y, tol);
    // Continuation along the chart segment when the direct solve stalls.
    for (int pieces : {4, 16}) {
        if (direct && direct->second <= std::max(tol, 1e-8))
            break;
        RVec v = RVec::Zero(n);
        std::optional<std::pair<RVec, double>> cur;
        for (int k = 1; k <= pieces; ++k) {
            const RVec target = x + (double(k) / pieces) * (y - x);
            const RVec step = target - x;
            const RVec guess = k == 1 ? RVec(step * (seg_len / pieces / norm_g(m, x, step)))
                                      : RVec(v * (double(k) / (k - 1)));
            cur = newton(guess, target, k == pieces ? tol : 1e-6);
            if (!cur)
                break;
            v = cur->first;
        }
        if (cur && (!direct || cur->second < direct->second))
            direct = cur;
    }
    if (!direct)
        fail(ErrorCode::ShootingDiverged, "shooting left the chart");
    const RVec v = direct->first;
    const double res = direct->second;
    const int it = total;
    s.v = v;
    s.residual = res;
    s.iterations = it;
    s.distance = norm_g(m, x, v);
    if (res > std::max(opts.tol, 1e-8))
        fail(ErrorCode::ShootingDiverged, "shooting residual " + std::to_string(res));
    if (s.distance > certified_radius(m))
        fail(ErrorCode::ShootingDiverged, "endpoint beyond the certified radius");
    return s;
}

} // namespace

Shooting exp_log(const MetricField& m, const RVec& x, const RVec& y, const ShootingOptions& opts)
{
    try {
        return shoot_forward(m, x, y, opts);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ShootingDiverged)
            throw;
    }
    // Solve from the other end and reverse the geodesic.
    ShootingOptions back_opts = opts;
    back_opts.guess.reset();
    const Shooting back = shoot_forward(m, y, x, back_opts);
    const int n = m.dim();
    const int steps = steps_for(back.distance, opts);
    const State end = integrate_geodesic(m, y, back.v, steps, 1.0 / steps, false).back();
    Shooting s;
    s.v = -end.segment(n, n);
    s.distance = norm_g(m, x, s.v);
    s.iterations = back.iterations;
    s.residual = (exp_map(m, x, s.v, steps) - y).norm();
    if (s.residual > std::max(opts.tol, 1e-8) * 100.0)
        fail(ErrorCode::ShootingDiverged, "reversed shooting residual " + std::to_string(s.residual));
    return s;
}

Transport parallel_transport(const MetricField& m, const GeodesicPath& path, const RVec& p0)
{
    const int n = m.dim();
    State s(3 * n);
    s.head(n) = path.init.x;
    s.segment(n, n) = path.init.v;
    s.segment(2 * n, n) = p0;
    auto f = [&](const State& y) {
        const RVec x = y.head(n), v = y.segment(n, n), p = y.segment(2 * n, n);
        const Christoffel c = christoffel(m, x);
        State out(3 * n);
        out.head(n) = v;
        out.segment(n, n) = -c.contract(v, v);
        out.segment(2 * n, n) = -c.contract(v, p);
        return out;
    };
    Transport t;
    const double n0 = norm_g(m, path.init.x, p0);
    t.p.push_back(p0);
    for (std::size_t k = 1; k < path.t.size(); ++k) {
        s = rk4_step(f, s, path.h);
        if (!m.in_chart(s.head(n)))
            fail(ErrorCode::LeftChart, "transport left the chart");
        t.p.push_back(s.segment(2 * n, n));
        if (n0 > 0)
            t.max_norm_drift =
                std::max(t.max_norm_drift, std::abs(norm_g(m, s.head(n), t.p.back()) - n0) / n0);
    }
    return t;
}

double measured_kappa(const MetricField& m, const GeodesicPath& path, int every)
{
    const int n = m.dim();
    double kappa = 0.0;
    for (std::size_t k = 0; k < path.x.size(); k += static_cast<std::size_t>(std::max(1, every))) {
        const Curvature c = christoffel_curvature(m, path.x[k]);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                kappa = std::max(kappa, std::abs(c.sectional(unit(n, i), unit(n, j))));
    }
    return kappa;
}

JacobiReport jacobi_flow(const MetricField& m, const GeodesicPath& path, const RVec& j0, const RVec& dj0,
                         std::optional<double> kappa)
{
    const int n = m.dim();
    JacobiReport r;
    r.kappa = kappa ? *kappa : measured_kappa(m, path);
    State s(4 * n);
    s.head(n) = path.init.x;
    s.segment(n, n) = path.init.v;
    s.segment(2 * n, n) = j0;
    s.segment(3 * n, n) = dj0;
    auto f = [&](const State& y) {
        const RVec x = y.head(n), v = y.segment(n, n), j = y.segment(2 * n, n), p = y.segment(3 * n, n);
        const Curvature c = christoffel_curvature(m, x);
        State out(4 * n);
        out.head(n) = v;
        out.segment(n, n) = -c.gamma.contract(v, v);
        out.segment(2 * n, n) = p - c.gamma.contract(v, j);
        out.segment(3 * n, n) = -c.apply(j, v, v) - c.gamma.contract(v, p);
        return out;
    };
    auto record = [&](double t) {
        const RVec x = s.head(n), j = s.segment(2 * n, n), p = s.segment(3 * n, n);
        const RMat g = m.metric(x);
        r.t.push_back(t);
        r.j.push_back(j);
        r.dj.push_back(p);
        r.f.push_back(std::sqrt(gdot(g, j, j) + gdot(g, p, p)));
    };
    record(0.0);
    for (std::size_t k = 1; k < path.t.size(); ++k) {
        s = rk4_step(f, s, path.h);
        if (!m.in_chart(s.head(n)))
            fail(ErrorCode::LeftChart, "jacobi flow left the chart");
        record(path.t[k]);
    }
    const double f0 = r.f.front();
    for (std::size_t k = 0; k < r.t.size(); ++k) {
        const double bound = f0 * std::exp((r.kappa + 1.0) * r.t[k] / 2.0);
        r.max_ratio = std::max(r.max_ratio, bound > 0 ? r.f[k] / bound : (r.f[k] > 0 ? kInf : 0.0));
    }
    r.pass = r.max_ratio <= 1.0 + 1e-9;
    return r;
}

SasakiSplit sasaki_eval(const MetricField& m, const TangentPoint& p, const RVec& dx, const RVec& dX)
{
    const Christoffel c = christoffel(m, p.x);
    const RMat g = m.metric(p.x);
    SasakiSplit s;
    s.horizontal = dx;
    s.vertical = dX + c.contract(dx, p.v);
    s.h_norm = std::sqrt(std::max(0.0, gdot(g, dx, dx) + gdot(g, s.vertical, s.vertical)));
    return s;
}

SasakiSplit sasaki_eval(const MetricField& m, const std::function<TangentPoint(double)>& curve)
{
    return sasaki_at(m, curve, 0.0);
}

double sasaki_length(const MetricField& m, const std::function<TangentPoint(double)>& curve, double a, double b,
                     int panels)
{
    const int p = std::max(2, panels + panels % 2);
    const double h = (b - a) / p;
    double sum = 0.0;
    for (int k = 0; k <= p; ++k) {
        const double w = (k == 0 || k == p) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        sum += w * sasaki_at(m, curve, a + k * h).h_norm;
    }
    return sum * h / 3.0;
}

DistInterval tangent_distances(const MetricField& m, const TangentPoint& a, const TangentPoint& b, BundleMode mode,
                               const ShootingOptions& opts)
{
    if (mode == BundleMode::T1M) {
        require_unit(m, a, "first tangent vector");
        require_unit(m, b, "second tangent vector");
    }
    if (m.flat()) {
        const RMat g = m.metric(a.x);
        const RVec dx = b.x - a.x;
        const double d2 = gdot(g, dx, dx);
        double fiber = 0.0;
        if (mode == BundleMode::TM) {
            const RVec dv = b.v - a.v;
            fiber = std::sqrt(gdot(g, dv, dv));
        } else {
            fiber = fiber_angle(g, a.v, b.v);
        }
        const double d = std::sqrt(d2 + fiber * fiber);
        return {d, d};
    }

    const Shooting sh = exp_log(m, a.x, b.x, opts);
    RVec px = a.v;
    if (sh.distance > 0) {
        FlowOptions fo;
        fo.h = 1.0 / steps_for(sh.distance, opts);
        const GeodesicPath path = geodesic_flow(m, {a.x, sh.v}, 1.0, fo);
        px = parallel_transport(m, path, a.v).p.back();
    }
    const RMat gb = m.metric(b.x);
    if (mode == BundleMode::TM) {
        const RVec dv = b.v - px;
        const double lower = std::max(sh.distance, std::abs(norm_g(m, a.x, a.v) - norm_g(m, b.x, b.v)));
        return {lower, sh.distance + std::sqrt(gdot(gb, dv, dv))};
    }
    return {sh.distance, sh.distance + fiber_angle(gb, px, b.v)};
}

SpreadReport spread_check(const MetricField& m, const TangentPoint& g1, const TangentPoint& g2, double kappa,
                          double horizon, int grid)
{
    if (grid < 1 || !(horizon > 0))
        fail(ErrorCode::InvalidArgument, "spread check needs a positive horizon and grid");
    SpreadReport rep;
    rep.d_t1 = tangent_distances(m, g1, g2, BundleMode::T1M).upper;
    const GeodesicPath p1 = geodesic_flow(m, g1, horizon), p2 = geodesic_flow(m, g2, horizon);
    const std::size_t last = p1.t.size() - 1;
    rep.pass = true;
    for (int k = 1; k <= grid; ++k) {
        const std::size_t idx = std::min(last, static_cast<std::size_t>(std::llround(last * (double(k) / grid))));
        SpreadRow row;
        row.t = p1.t[idx];
        row.lhs = base_distance(m, p1.x[idx], p2.x[idx]);
        row.rhs = std::exp((kappa + 1.0) * row.t / 2.0) * rep.d_t1;
        row.pass = row.lhs <= row.rhs + 1e-8;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

double convexity_radius_lower(const MetricField& m)
{
    if (m.hadamard())
        return kInf;
    const auto k = m.kappa_model();
    if (k && *k > 0) {
        const double inj = std::numbers::pi / std::sqrt(*k);
        return std::min(std::numbers::pi / (2.0 * std::sqrt(*k)), inj / 2.0);
    }
    return 0.0;
}

BackwardSample backward_estimate(const MetricField& m, const TangentPoint& gamma, const TangentPoint& sigma,
                                 double eps, int grid)
{
    require_unit(m, gamma, "geodesic direction");
    require_unit(m, sigma, "comparison direction");
    if (!(eps > 0) || eps >= std::min(convexity_radius_lower(m) / 2.0, 1.0))
        fail(ErrorCode::EpsilonTooLarge, "epsilon outside (0, min(r/2, 1))");
    BackwardSample b;
    b.d_t1 = tangent_distances(m, gamma, sigma, BundleMode::T1M).upper;
    FlowOptions fo;
    fo.h = eps / (grid * 50.0);
    const GeodesicPath p1 = geodesic_flow(m, gamma, eps, fo), p2 = geodesic_flow(m, sigma, eps, fo);
    const std::size_t last = p1.t.size() - 1;
    for (int k = 0; k <= grid; ++k) {
        const std::size_t idx = std::min(last, static_cast<std::size_t>(std::llround(last * (double(k) / grid))));
        b.max_dist = std::max(b.max_dist, base_distance(m, p1.x[idx], p2.x[idx]));
    }
    if (b.max_dist > 0)
        b.ratio = b.d_t1 * eps / b.max_dist;
    else
        b.ratio = b.d_t1 > 0 ? kInf : 0.0;
    return b;
}

SegmentMax segment_max_lower_bound(const RVec& x, const RVec& y, double eps)
{
    if (!(eps > 0))
        fail(ErrorCode::InvalidArgument, "epsilon must be positive");
    SegmentMax s;
    s.max_value = std::max(x.norm(), (x + eps * y).norm());
    const double yy = y.squaredNorm();
    if (yy > 0) {
        const double t = -x.dot(y) / yy;
        if (t > 0 && t < eps)
            s.max_value = std::max(s.max_value, (x + t * y).norm());
    }
    s.bound = eps / 4.0 * (x.norm() + y.norm());
    s.pass = s.max_value >= s.bound;
    return s;
}

} // namespace bsl::riemann
