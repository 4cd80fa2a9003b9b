#ifndef BSL_CGEO_HPP
#define BSL_CGEO_HPP

#include "bsl/domain.hpp"
#include "bsl/numeric.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace bsl::cgeo
{

using domain::Domain;

enum class GeodesicTag
{
    DiskAuto,
    BallAffineSlice,
    PolydiskProduct,
    ConvexNumeric,
};

const char* to_string(GeodesicTag tag);

// zeta -> (rot scale zeta + shift) / (1 + conj(shift) rot scale zeta); an automorphism when scale = 1.
struct Mobius
{
    cplx rot = 1.0;
    cplx shift = 0.0;
    double scale = 1.0;

    cplx operator()(cplx zeta) const;
    cplx inverse(cplx w) const;
};

// Sends 0 to a and some s in [0, 1) to b; s is returned through the second argument.
Mobius mobius_through(cplx a, cplx b, double* s = nullptr);

// (cosh t z + sinh t) / (sinh t z + cosh t)
cplx mobius_flow(double t, cplx z);

class ComplexGeodesic
{
public:
    GeodesicTag tag = GeodesicTag::DiskAuto;
    double defect = 0.0;
    // phi(0) = z and phi(s) = w.
    double s = 0.0;

    // Affine kinds: phi(zeta) = base + radius * chart(zeta) * direction.
    CVec base;
    CVec direction;
    double radius = 1.0;
    Mobius chart;

    // PolydiskProduct: one map per coordinate.
    std::vector<Mobius> factors;
    int dominant = 0;

    CVec operator()(cplx zeta) const;
    int dim() const;
};

struct GeodesicOptions
{
    double model_tolerance = 1e-8;
    int defect_pairs = 16;
    std::uint64_t seed = 1;
};

ComplexGeodesic complex_geodesic(const Domain& dom, const CVec& z, const CVec& w, const GeodesicOptions& opts = {});

// max over sampled pairs of |K_D - K_Omega| (models) or K_D - lower (otherwise).
double isometry_defect(const ComplexGeodesic& geo, const Domain& dom, int pairs, std::uint64_t seed);

struct LeftInverse
{
    std::function<cplx(const CVec&)> map;
    // pi^{-1}(zeta) = Omega cap fiber(zeta)
    std::function<domain::Hyperplane(cplx)> fiber;
    double retraction_defect = 0.0;
};

LeftInverse left_inverse(const ComplexGeodesic& geo, const Domain& dom);

DistInterval gromov_product(const Domain& dom, const CVec& z, const CVec& w, const CVec& o);

struct ProbeRow
{
    double r = 0.0;
    CVec point;
    CVec boundary_point;
    CVec normal;
    double residual = 0.0;
    // Angle between this tangent hyperplane and the limit.
    double normal_angle = 0.0;
};

struct HyperplaneProbe
{
    domain::Hyperplane limit;
    std::vector<ProbeRow> rows;
};

// r_k = 1 - 2^{-k}, k = 1..20
std::vector<double> probe_schedule(int last = 20);

HyperplaneProbe boundary_hyperplane_probe(const ComplexGeodesic& geo, const Domain& dom, cplx zeta,
                                          const std::vector<double>& radii);

// Angle between unit normals, insensitive to phase.
double hyperplane_angle(const CVec& n1, const CVec& n2);

} // namespace bsl::cgeo

#endif
