#include "bsl/numeric.hpp"

#include <cmath>

namespace bsl
{

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2)
        return {};
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y)
{
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    return fit_line(lx, ly);
}

namespace
{

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth, int& evals)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

} // namespace

Quadrature adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth)
{
    Quadrature q;
    if (a == b)
        return q;
    // Split into a few panels first so narrow features are not missed by the first estimate.
    constexpr int panels = 4;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == panels) ? b : lo + h;
        const double fa = f(lo);
        const double fb = f(hi);
        const double fm = f(0.5 * (lo + hi));
        q.evaluations += 3;
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        q.value += simpson_step(f, lo, hi, fa, fm, fb, whole, tol / panels, max_depth, q.evaluations);
    }
    return q;
}

double bisect_last_true(const std::function<bool(double)>& inside, double lo, double hi, int steps)
{
    for (int i = 0; i < steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (inside(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::vector<double> geometric_schedule(double ratio, int first, int last)
{
    std::vector<double> out;
    for (int n = first; n <= last; ++n)
        out.push_back(std::pow(ratio, n));
    return out;
}

double Rng::uniform(double a, double b)
{
    std::uniform_real_distribution<double> dist(a, b);
    return dist(engine_);
}

double Rng::normal()
{
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(engine_);
}

int Rng::integer(int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(engine_);
}

} // namespace bsl
