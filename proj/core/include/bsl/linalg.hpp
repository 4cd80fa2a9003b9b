#ifndef BSL_LINALG_HPP
#define BSL_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace bsl
{

using cplx = std::complex<double>;

// Complex dimension is capped so every vector lives on the stack.
constexpr int kMaxDim = 4;
constexpr int kMaxReal = 2 * kMaxDim;

using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxReal, 1>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxReal, kMaxReal>;

// Real coordinates are blocked: (Re z_1..Re z_d, Im z_1..Im z_d).
inline RVec to_real(const CVec& z)
{
    const int d = static_cast<int>(z.size());
    RVec x(2 * d);
    for (int j = 0; j < d; ++j) {
        x[j] = z[j].real();
        x[d + j] = z[j].imag();
    }
    return x;
}

inline CVec to_complex(const RVec& x)
{
    const int d = static_cast<int>(x.size()) / 2;
    CVec z(d);
    for (int j = 0; j < d; ++j)
        z[j] = cplx(x[j], x[d + j]);
    return z;
}

// <z,w> = sum z_j conj(w_j)
inline cplx inner(const CVec& z, const CVec& w)
{
    cplx s = 0.0;
    for (int j = 0; j < z.size(); ++j)
        s += z[j] * std::conj(w[j]);
    return s;
}

inline CVec cvec(std::initializer_list<cplx> xs)
{
    CVec z(static_cast<int>(xs.size()));
    int j = 0;
    for (cplx x : xs)
        z[j++] = x;
    return z;
}

inline RVec rvec(std::initializer_list<double> xs)
{
    RVec x(static_cast<int>(xs.size()));
    int j = 0;
    for (double v : xs)
        x[j++] = v;
    return x;
}

// Multiplication by i in blocked real coordinates.
inline RVec apply_j(const RVec& x)
{
    const int d = static_cast<int>(x.size()) / 2;
    RVec y(2 * d);
    y.head(d) = -x.tail(d);
    y.tail(d) = x.head(d);
    return y;
}

} // namespace bsl

#endif
