#ifndef BSL_NUMERIC_HPP
#define BSL_NUMERIC_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace bsl
{

struct DistInterval
{
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double x, double slack = 0.0) const { return lower - slack <= x && x <= upper + slack; }
    double width() const { return upper - lower; }
};

struct LineFit
{
    double slope = 0.0;
    double intercept = 0.0;
};

// Least-squares line through (x_i, y_i).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Slope of log y against log x over the entries with y > 0.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct Quadrature
{
    double value = 0.0;
    int evaluations = 0;
};

Quadrature adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_depth = 40);

// Largest t in [lo, hi] with inside(t) true, assuming inside is true at lo and monotone.
double bisect_last_true(const std::function<bool(double)>& inside, double lo, double hi, int steps = 60);

// Schedule r_n = ratio^n for n = first..last.
std::vector<double> geometric_schedule(double ratio, int first, int last);

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double a = 0.0, double b = 1.0);
    double normal();
    int integer(int lo, int hi);
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace bsl

#endif
