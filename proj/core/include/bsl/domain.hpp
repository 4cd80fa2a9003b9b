#ifndef BSL_DOMAIN_HPP
#define BSL_DOMAIN_HPP

#include "bsl/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bsl::domain
{

enum class Kind
{
    Disk,
    Ball,
    Polydisk,
    Ellipsoid,
    ImplicitConvex,
};

const char* to_string(Kind kind);

// One monomial coef * prod x_k^{powers[k]} over blocked real coordinates.
struct PolyTerm
{
    double coef = 0.0;
    std::vector<int> powers;
};

struct Polynomial
{
    std::string name;
    int real_dim = 0;
    std::vector<PolyTerm> terms;

    double value(const RVec& x) const;
    RVec gradient(const RVec& x) const;
    RMat hessian(const RVec& x) const;
};

// {w : <w - anchor, normal> = 0} with a unit complex normal.
struct Hyperplane
{
    CVec anchor;
    CVec normal;

    double distance(const CVec& w) const { return std::abs(inner(w - anchor, normal)); }
};

struct BoundaryData
{
    CVec point;
    CVec inward_normal;
    Hyperplane tangent;
    bool strongly_convex = false;
    double curvature_margin = 0.0;
};

struct Cone
{
    CVec apex;
    CVec direction;
    double aperture = 0.0;
    double length = 0.0;
};

struct ConeCertificate
{
    bool certified = false;
    double margin = 0.0;
    // min over sampled axis points apex + t v, t <= length/2, of delta / (sin(aperture) t)
    double axis_depth_ratio = 0.0;
    int samples = 0;
};

struct LineType
{
    int value = 2;
    bool infinite = false;
    double slope = 0.0;
};

struct NearestPoint
{
    CVec point;
    double distance = 0.0;
};

struct Disc
{
    cplx center = 0.0;
    double radius = 0.0;
};

class Domain
{
public:
    static Domain disk();
    static Domain ball(int d);
    static Domain polydisk(int d);
    static Domain ellipsoid(std::vector<int> exponents);
    static Domain implicit(Polynomial r, int d, CVec interior_point, std::optional<double> bounding_radius = {});

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double bounding_radius() const { return bounding_radius_; }
    const std::vector<int>& exponents() const { return exponents_; }
    const Polynomial* polynomial() const { return kind_ == Kind::ImplicitConvex ? &poly_ : nullptr; }
    const CVec& center() const { return center_; }
    std::string name() const;

    // Disk, Ball and Polydisk carry closed-form Kobayashi geometry.
    bool is_model() const { return kind_ == Kind::Disk || kind_ == Kind::Ball || kind_ == Kind::Polydisk; }

    double defining(const CVec& z) const;
    RVec gradient(const CVec& z) const;
    RMat hessian(const CVec& z) const;
    bool contains(const CVec& z) const { return z.size() == dim_ && defining(z) < 0.0; }

    // sup{t >= 0 : z + t u in the closure}; the value returned is on the inner side.
    double ray_exit(const CVec& z, const CVec& u) const;

    // Certified radius rho with {c + zeta u : |zeta| <= rho} inside the closure (u unit).
    double slice_inradius(const CVec& c, const CVec& u) const;

    // Upper bound for sup over the domain of Re<w, u>.
    double support(const CVec& u) const;

    // A disc containing the image of the domain under w -> <w, e>.
    Disc projection_disc(const CVec& e) const;

    NearestPoint nearest_boundary(const CVec& z) const;
    double farthest_boundary_distance(const CVec& z) const;

private:
    Domain() = default;

    Kind kind_ = Kind::Disk;
    int dim_ = 1;
    double bounding_radius_ = 1.0;
    std::vector<int> exponents_;
    Polynomial poly_;
    CVec center_;
};

double boundary_distance(const Domain& dom, const CVec& z);

// Midpoint of the chord along u through m, then of the chord along iu through that point.
CVec chord_center(const Domain& dom, const CVec& m, const CVec& u);
BoundaryData boundary_data(const Domain& dom, const CVec& xi);
ConeCertificate cone_certificate(const Domain& dom, const Cone& cone, int grid, std::uint64_t seed = 42);
LineType line_type(const Domain& dom, const CVec& xi);

// Full JSON description: kind, dimension, exponents, polynomial, interior_point, bounding_radius.
Domain parse_domain_json(const std::string& text);

// Short spec: "disk", "ball:2", "polydisk:3", "ellipsoid:1,2", or a path to a JSON file.
Domain parse_domain_spec(const std::string& spec);

} // namespace bsl::domain

#endif
