#ifndef BSL_SCHWARZ_HPP
#define BSL_SCHWARZ_HPP

#include "bsl/domain.hpp"
#include "bsl/report.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bsl::schwarz
{

using domain::Domain;

// f(z) = z + coef (z_1 - xi_1)^order e_1, or z + coef (z - xi)^order when d = 1.
struct ContactSpec
{
    CVec xi;
    int order = 0;
    cplx coef = 0.0;
};

struct HoloMap
{
    std::string name;
    int dim = 1;
    std::function<CVec(const CVec&)> eval;
    bool declared_self_map = true;
    bool identity = false;
    std::optional<ContactSpec> contact;

    CVec operator()(const CVec& z) const { return eval(z); }
};

HoloMap identity_map(int d);
HoloMap rotation(double theta);
// e^{i phase} prod (z - a) / (1 - conj(a) z)
HoloMap blaschke(std::vector<cplx> zeros, double phase = 0.0);
HoloMap contact_map(int d, int order, cplx coef);
// Upper half-plane w -> w - c/w conjugated to the disk; order-3 contact at 1 and not the identity.
HoloMap extremal3(double c);
// Translation w1 -> w1 + a of the Siegel half-space, fixing e_1.
HoloMap parabolic(int d, double a);
// The automorphism ((z_1 + s), sqrt(1 - s^2) z') / (1 + s z_1), s = tanh t.
HoloMap hyperbolic(int d, double t);
// (z_1, e^{i theta} z_2, ...)
HoloMap ball_rotation(int d, double theta);

// id, rot:T, blaschke:re:im[:re:im...], square, contact:M:C, extremal3:C, parabolic:A, hyperbolic:T, ballrot:T
HoloMap parse_map_spec(const std::string& spec, int dim);

struct SelfMapCertificate
{
    bool certified = false;
    // max of r(f(z)) over the near-boundary samples
    double max_excess = 0.0;
    int samples = 0;
};

SelfMapCertificate certify_self_map(const HoloMap& f, const Domain& dom, int samples = 4096, double margin = 1e-9,
                                    std::uint64_t seed = 3);

// Certified disk self-maps used by the property suites.
std::vector<HoloMap> disk_zoo();

struct CsCheck
{
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    bool pass = false;
};

double cs_constant(cplx a, cplx b, cplx z);
CsCheck cs_bound_check(const HoloMap& f, cplx a, cplx b, cplx z);

struct ErrorModulus
{
    std::vector<double> radii;
    // Nondecreasing envelope of the sampled sup of |f(z) - z| over Omega cap B(xi; r).
    std::vector<double> values;
    double slope = 0.0;
};

ErrorModulus error_modulus(const HoloMap& f, const Domain& dom, const CVec& xi, const std::vector<double>& radii,
                           int samples = 256, std::uint64_t seed = 17);

// e^{4 K(z_n, 0)} / r_n times the grid sup of K(f(w), w) over the Kobayashi disc B(z_n; r_n).
double quantid_term(const HoloMap& f, cplx zn, double rn);

// max |f(z) - z| over a fixed grid of interior points with delta >= 0.05.
double interior_displacement(const HoloMap& f, const Domain& dom, int points = 1000, std::uint64_t seed = 23);

struct DiskPipelineOptions
{
    double threshold = 1e-6;
    int window = 5;
    cplx xi = 1.0;
};

report::PipelineReport disk_rigidity_pipeline(const HoloMap& f, const std::vector<double>& radii,
                                              const DiskPipelineOptions& opts = {});

} // namespace bsl::schwarz

#endif
