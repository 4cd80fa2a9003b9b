#ifndef BSL_KOBAYASHI_HPP
#define BSL_KOBAYASHI_HPP

#include "bsl/domain.hpp"
#include "bsl/numeric.hpp"

#include <optional>
#include <vector>

namespace bsl::kobayashi
{

using domain::Domain;

// Kobayashi distance and metric of the unit disk, normalized so that k(0;v) = |v|.
double disk_dist(cplx a, cplx b);
double disk_metric(cplx z, cplx v);

// k(z;v) >= alpha0 |v| / delta(z)^{1/ell} near a boundary point of line type ell.
struct FiniteTypeBound
{
    double alpha0 = 0.0;
    int ell = 2;
};

struct BoundsOptions
{
    std::optional<FiniteTypeBound> finite_type;
    // Rotations e^{i theta_k} u used to collect boundary points in the complex slice.
    int phases = 8;
    double simpson_tol = 1e-8;
    bool check_convexity = true;
};

struct KobBall
{
    CVec center;
    double radius = 0.0;
};

enum class Membership
{
    Inside,
    Outside,
    Undecided,
};

double model_dist(const Domain& dom, const CVec& z, const CVec& w);
double model_metric(const Domain& dom, const CVec& z, const CVec& v);

DistInterval metric_bounds(const Domain& dom, const CVec& z, const CVec& v, const BoundsOptions& opts = {});
DistInterval dist_bounds(const Domain& dom, const CVec& z, const CVec& w, const BoundsOptions& opts = {});
double dist_lower(const Domain& dom, const CVec& z, const CVec& w, const BoundsOptions& opts = {});
double dist_upper(const Domain& dom, const CVec& z, const CVec& w, const BoundsOptions& opts = {});

Membership classify(const Domain& dom, const KobBall& ball, const CVec& z, const BoundsOptions& opts = {});

// Certified eps with B_K(p; eps) inside the Euclidean ball B(p; rho).
double kob_ball_inclusion(const Domain& dom, const CVec& p, double rho, const BoundsOptions& opts = {});

// The exact supremum for the unit disk.
double disk_ball_inclusion_exact(cplx p, double rho);

// alpha0 = min over the grid of lower(z; v) delta(z)^{1/ell} / |v| along xi + t n.
FiniteTypeBound calibrate_finite_type(const Domain& dom, const CVec& xi, const CVec& inward, const CVec& v,
                                      int ell, const std::vector<double>& depths);

// Fit of upper(z0, xi + r n) against (1/2) log(1/r): c0 is the worst residual.
struct LogGrowthFit
{
    double c0 = 0.0;
    double slope = 0.0;
    std::vector<double> radii;
    std::vector<double> upper;
    std::vector<double> lower;
};

LogGrowthFit fit_log_growth(const Domain& dom, const CVec& z0, const CVec& xi, const CVec& inward,
                            const std::vector<double>& radii, const BoundsOptions& opts = {});

} // namespace bsl::kobayashi

#endif
