#ifndef BSL_RIEMANN_HPP
#define BSL_RIEMANN_HPP

#include "bsl/linalg.hpp"
#include "bsl/numeric.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bsl::riemann
{

class MetricField
{
public:
    virtual ~MetricField() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual RMat metric(const RVec& x) const = 0;
    // d[k](i, j) = d g_ij / d x_k; central differences unless overridden.
    virtual std::vector<RMat> metric_derivative(const RVec& x) const;
    virtual bool in_chart(const RVec& x) const = 0;

    // Constant sectional curvature, when the model has one.
    virtual std::optional<double> kappa_model() const { return std::nullopt; }
    virtual bool flat() const { return false; }
    // Complete, simply connected, nonpositively curved: infinite injectivity radius.
    virtual bool hadamard() const { return false; }
    // Complex dimension of a Kahler chart in blocked coordinates, 0 otherwise.
    virtual int complex_dim() const { return 0; }
};

using MetricPtr = std::shared_ptr<const MetricField>;

MetricPtr euclid(int n);
// 4 |dx|^2 / (1 - |x|^2)^2 on the unit ball of R^n
MetricPtr poincare(int n = 2);
// 4 |dx|^2 / (1 + |x|^2)^2, stereographic chart of the unit sphere
MetricPtr sphere(int n = 2);
// 4 [ |v|^2/u + |<v,z>|^2/u^2 ], u = 1 - |z|^2, on the ball of C^d; holomorphic sectional curvature -1
MetricPtr bergman_ball(int d = 2);
MetricPtr scaled(MetricPtr base, double lambda);

// euclid[:n], poincare, sphere, bergman-ball[:d]
MetricPtr make_metric(const std::string& spec);

struct Christoffel
{
    int n = 0;
    // k[c](i, j) = Gamma^c_ij
    std::array<RMat, kMaxReal> k;

    // (Gamma(a, b))^c = sum_ij Gamma^c_ij a_i b_j
    RVec contract(const RVec& a, const RVec& b) const;
};

struct Curvature
{
    int n = 0;
    RMat g;
    Christoffel gamma;
    // r[((l n + i) n + j) n + k] = R^l_ijk with R(d_i, d_j) d_k = R^l_ijk d_l
    std::vector<double> r;

    RVec apply(const RVec& x, const RVec& y, const RVec& z) const;
    // g(R(X, Y) W, Z)
    double rm(const RVec& x, const RVec& y, const RVec& z, const RVec& w) const;
    double sectional(const RVec& x, const RVec& y) const;
};

Christoffel christoffel(const MetricField& m, const RVec& x);
// Throws SingularMetric unless g(x) is positive definite.
Curvature christoffel_curvature(const MetricField& m, const RVec& x);

double norm_g(const MetricField& m, const RVec& x, const RVec& v);

struct TangentPoint
{
    RVec x;
    RVec v;
};

struct GeodesicPath
{
    TangentPoint init;
    double horizon = 0.0;
    double h = 1e-3;
    std::vector<double> t;
    std::vector<RVec> x;
    std::vector<RVec> v;
    double max_drift = 0.0;
    // |x_h(T) - x_{h/2}(T)| when requested.
    std::optional<double> richardson_error;

    TangentPoint at(std::size_t k) const { return {x[k], v[k]}; }
};

struct FlowOptions
{
    double h = 1e-3;
    double drift_limit = 1e-4;
    bool richardson = false;
};

GeodesicPath geodesic_flow(const MetricField& m, const TangentPoint& init, double horizon,
                           const FlowOptions& opts = {});

// Endpoint of the geodesic with initial velocity v after unit time, in the given number of RK4 steps.
RVec exp_map(const MetricField& m, const RVec& x, const RVec& v, int steps);

struct ShootingOptions
{
    int min_steps = 1000;
    double steps_per_length = 1000.0;
    double tol = 1e-10;
    int max_iter = 60;
    std::optional<RVec> guess;
};

struct Shooting
{
    RVec v;
    double distance = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Solves exp_x(v) = y; throws ShootingDiverged outside the certified radius.
Shooting exp_log(const MetricField& m, const RVec& x, const RVec& y, const ShootingOptions& opts = {});

// 0.9 pi / sqrt(kappa) for positively curved models, infinite otherwise.
double certified_radius(const MetricField& m);

struct Transport
{
    std::vector<RVec> p;
    double max_norm_drift = 0.0;
};

Transport parallel_transport(const MetricField& m, const GeodesicPath& path, const RVec& p0);

struct JacobiReport
{
    std::vector<double> t;
    std::vector<RVec> j;
    // covariant derivative of J
    std::vector<RVec> dj;
    std::vector<double> f;
    double kappa = 0.0;
    // max over t of f(t) / (f(0) exp((kappa + 1) t / 2))
    double max_ratio = 0.0;
    bool pass = false;
};

// Integrates J'' + R(J, g')g' = 0 along the path; kappa is measured along the path when not given.
JacobiReport jacobi_flow(const MetricField& m, const GeodesicPath& path, const RVec& j0, const RVec& dj0,
                         std::optional<double> kappa = std::nullopt);

// sup |sectional| over coordinate planes at sampled points of the path.
double measured_kappa(const MetricField& m, const GeodesicPath& path, int every = 100);

struct SasakiSplit
{
    RVec horizontal;
    RVec vertical;
    double h_norm = 0.0;
};

// Splitting of xi = (dx, dX) at X over x: horizontal = dx, vertical = dX + Gamma(dx, X).
SasakiSplit sasaki_eval(const MetricField& m, const TangentPoint& p, const RVec& dx, const RVec& dX);

// Same with xi the derivative at 0 of a curve t -> (x(t), X(t)).
SasakiSplit sasaki_eval(const MetricField& m, const std::function<TangentPoint(double)>& curve);

// h-length of t -> curve(t) over [a, b].
double sasaki_length(const MetricField& m, const std::function<TangentPoint(double)>& curve, double a, double b,
                     int panels = 64);

enum class BundleMode
{
    TM,
    T1M,
};

DistInterval tangent_distances(const MetricField& m, const TangentPoint& a, const TangentPoint& b, BundleMode mode,
                               const ShootingOptions& opts = {});

struct SpreadRow
{
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct SpreadReport
{
    std::vector<SpreadRow> rows;
    double d_t1 = 0.0;
    bool pass = false;
};

// d(g1(t), g2(t)) <= exp((kappa + 1) t / 2) d_T1(g1'(0), g2'(0)) on times in (0, horizon].
SpreadReport spread_check(const MetricField& m, const TangentPoint& g1, const TangentPoint& g2, double kappa,
                          double horizon, int grid = 6);

// Lower bound for the strong-convexity radius at x from the curvature bound and injectivity radius.
double convexity_radius_lower(const MetricField& m);

struct BackwardSample
{
    double ratio = 0.0;
    double d_t1 = 0.0;
    double max_dist = 0.0;
};

// [d_T1(g'(0), s'(0)) eps] / max_{t in [0, eps]} d(g(t), s(t)) for unit initial vectors.
BackwardSample backward_estimate(const MetricField& m, const TangentPoint& gamma, const TangentPoint& sigma,
                                 double eps, int grid = 8);

struct SegmentMax
{
    double max_value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

SegmentMax segment_max_lower_bound(const RVec& x, const RVec& y, double eps);

} // namespace bsl::riemann

#endif
