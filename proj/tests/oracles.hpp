#ifndef BSL_TESTS_ORACLES_HPP
#define BSL_TESTS_ORACLES_HPP

// Closed forms written independently of the library, used to cross-check it.

#include <cmath>
#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle
{

using cd = std::complex<double>;

// Disk distance with k(0; v) = |v|, via the cosh form of the hyperbolic distance (curvature -4).
inline double disk_dist(cd z, cd w)
{
    const double num = std::norm(z - w);
    const double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
    return 0.5 * std::acosh(1.0 + 2.0 * num / den);
}

inline double disk_dist_from_origin(double r)
{
    return 0.5 * std::log((1.0 + r) / (1.0 - r));
}

inline double disk_metric(cd z, cd v)
{
    return std::abs(v) / (1.0 - std::norm(z));
}

// Ball distance: tanh d = |phi_a(b)| with 1 - |phi_a(b)|^2 = (1 - |a|^2)(1 - |b|^2) / |1 - <b, a>|^2.
inline double ball_dist(const std::vector<cd>& a, const std::vector<cd>& b)
{
    double na = 0, nb = 0;
    cd ab = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        na += std::norm(a[j]);
        nb += std::norm(b[j]);
        ab += b[j] * std::conj(a[j]);
    }
    const double s = (1.0 - na) * (1.0 - nb) / std::norm(1.0 - ab);
    return std::atanh(std::sqrt(std::max(0.0, 1.0 - s)));
}

inline double polydisk_dist(const std::vector<cd>& a, const std::vector<cd>& b)
{
    double m = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, disk_dist(a[j], b[j]));
    return m;
}

// Distance of the Poincare ball metric 4|dx|^2 / (1 - |x|^2)^2.
inline double poincare_dist(const std::vector<double>& a, const std::vector<double>& b)
{
    double na = 0, nb = 0, nd = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += a[i] * a[i];
        nb += b[i] * b[i];
        nd += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::acosh(1.0 + 2.0 * nd / ((1.0 - na) * (1.0 - nb)));
}

// Hyperbolic area of a radius-r disc in curvature -1.
inline double hyperbolic_area(double r)
{
    return 2.0 * std::numbers::pi * (std::cosh(r) - 1.0);
}

inline double euclidean_ball_volume(int n, double r)
{
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(r, n);
}

// Jacobi field norm with J(0) = 0, |J'(0)| = 1 in constant curvature k.
inline double jacobi_norm(double k, double t)
{
    if (k == 0)
        return t;
    if (k > 0)
        return std::sin(std::sqrt(k) * t) / std::sqrt(k);
    return std::sinh(std::sqrt(-k) * t) / std::sqrt(-k);
}

// Radial unit-speed geodesic of the Poincare disk from the origin reaches tanh(t/2).
inline double poincare_radial(double t)
{
    return std::tanh(t / 2.0);
}

// Chord length between two flat rays from one point at angle phi after time t.
inline double flat_spread(double t, double phi)
{
    return 2.0 * t * std::sin(phi / 2.0);
}

// max over a dense grid of t in [0, eps] of |x + t y|
inline double segment_max(const std::vector<double>& x, const std::vector<double>& y, double eps, int grid = 1000)
{
    double best = 0;
    for (int k = 0; k <= grid; ++k) {
        const double t = eps * k / grid;
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += (x[i] + t * y[i]) * (x[i] + t * y[i]);
        best = std::max(best, std::sqrt(s));
    }
    return best;
}

} // namespace oracle

#endif
