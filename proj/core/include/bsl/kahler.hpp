#ifndef BSL_KAHLER_HPP
#define BSL_KAHLER_HPP

#include "bsl/domain.hpp"
#include "bsl/riemann.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bsl::kahler
{

using domain::Domain;
using riemann::MetricField;

// max |g(JX, JY) - g(X, Y)| / (|X| |Y|) over random points of the unit ball and random X, Y.
double j_invariance_defect(const MetricField& m, int samples = 64, double radius = 0.9, std::uint64_t seed = 9);

// R(X, JX, X, JX) / g(X, X)^2
double hol_sectional(const MetricField& m, const RVec& z, const RVec& x);

struct BGSamplePlan
{
    int rays = 6;
    // sample depths delta = 2^-1 .. 2^-depth_levels along each ray
    int depth_levels = 10;
    int directions = 6;
    std::uint64_t seed = 5;
};

struct BGReport
{
    double kappa_est = 0.0;
    double A_est = 0.0;
    double a_est = 0.0;
    bool bounds_ok = false;
    // radial length increments over halvings of delta stay bounded below on every ray
    bool complete = false;
    bool pass = false;
    double min_increment_ratio = 0.0;
    int points = 0;
    std::string samples;
};

BGReport property_bg_estimate(const MetricField& m, const Domain& dom, const BGSamplePlan& plan = {});

// delta(z) / max boundary distance from z
double squeezing_lower_bound(const Domain& dom, const CVec& z);

// Volume of the radius-r ball in the n-dimensional space form of curvature lambda <= 0.
double model_volume(int n, double lambda, double r);

// (r/2) V / (V + V_{-kappa}^{2d}(2r)), for r < pi / (4 sqrt(kappa)).
double cgt_inj_lower(double vol, double kappa, double r, int d);

// 4d + 2 + sqrt(kappa) A / sin(theta), or 2 + ... with positive injectivity radius.
double rigidity_threshold(int d, double kappa, double A, double theta, bool positive_injectivity);

} // namespace bsl::kahler

#endif
