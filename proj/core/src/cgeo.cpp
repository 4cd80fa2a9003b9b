#include "bsl/cgeo.hpp"

#include "bsl/error.hpp"
#include "bsl/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bsl::cgeo
{

using domain::Kind;

const char* to_string(GeodesicTag tag)
{
    switch (tag) {
    case GeodesicTag::DiskAuto: return "DiskAuto";
    case GeodesicTag::BallAffineSlice: return "BallAffineSlice";
    case GeodesicTag::PolydiskProduct: return "PolydiskProduct";
    case GeodesicTag::ConvexNumeric: return "ConvexNumeric";
    }
    return "unknown";
}

cplx Mobius::operator()(cplx zeta) const
{
    const cplx x = rot * scale * zeta;
    return (x + shift) / (1.0 + std::conj(shift) * x);
}

cplx Mobius::inverse(cplx w) const
{
    return (w - shift) / (1.0 - std::conj(shift) * w) / (rot * scale);
}

Mobius mobius_through(cplx a, cplx b, double* s)
{
    const cplx q = (b - a) / (1.0 - std::conj(a) * b);
    Mobius m;
    m.shift = a;
    const double aq = std::abs(q);
    m.rot = aq > 0.0 ? q / aq : cplx(1.0);
    if (s)
        *s = aq;
    return m;
}

cplx mobius_flow(double t, cplx z)
{
    // Divided through by cosh t so large |t| stays finite.
    const double th = std::tanh(t);
    return (z + th) / (th * z + 1.0);
}

CVec ComplexGeodesic::operator()(cplx zeta) const
{
    if (tag == GeodesicTag::PolydiskProduct) {
        CVec z(static_cast<int>(factors.size()));
        for (std::size_t j = 0; j < factors.size(); ++j)
            z[static_cast<int>(j)] = factors[j](zeta);
        return z;
    }
    return base + radius * chart(zeta) * direction;
}

int ComplexGeodesic::dim() const
{
    return tag == GeodesicTag::PolydiskProduct ? static_cast<int>(factors.size()) : static_cast<int>(base.size());
}

namespace
{

std::vector<cplx> disk_samples(int count, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k)
        out.push_back(std::polar(0.9 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform()));
    return out;
}

} // namespace

double isometry_defect(const ComplexGeodesic& geo, const Domain& dom, int pairs, std::uint64_t seed)
{
    std::vector<std::pair<cplx, cplx>> todo = {{0.0, geo.s}};
    const std::vector<cplx> pts = disk_samples(2 * pairs, seed);
    for (int k = 0; k < pairs; ++k)
        todo.emplace_back(pts[2 * k], pts[2 * k + 1]);
    double defect = 0.0;
    for (const auto& [a, b] : todo) {
        const CVec za = geo(a), zb = geo(b);
        if (!dom.contains(za) || !dom.contains(zb))
            fail(ErrorCode::NumericDefectTooLarge, "complex geodesic leaves " + dom.name());
        const double kd = kobayashi::disk_dist(a, b);
        if (dom.is_model())
            defect = std::max(defect, std::abs(kobayashi::model_dist(dom, za, zb) - kd));
        else
            defect = std::max(defect, kd - kobayashi::dist_lower(dom, za, zb));
    }
    return defect;
}

ComplexGeodesic complex_geodesic(const Domain& dom, const CVec& z, const CVec& w, const GeodesicOptions& opts)
{
    if (!dom.contains(z) || !dom.contains(w))
        fail(ErrorCode::PointOutsideDomain, "complex_geodesic: point outside " + dom.name());
    if (z == w)
        fail(ErrorCode::CoincidentPoints, "complex_geodesic: z = w");
    ComplexGeodesic geo;
    const CVec h = w - z;
    const CVec u = h / h.norm();
    switch (dom.kind()) {
    case Kind::Disk:
        geo.tag = GeodesicTag::DiskAuto;
        geo.base = CVec::Zero(1);
        geo.direction = CVec::Ones(1);
        geo.radius = 1.0;
        geo.chart = mobius_through(z[0], w[0], &geo.s);
        break;
    case Kind::Ball: {
        // The complex line through z and w meets the ball in a round disc about c.
        geo.tag = GeodesicTag::BallAffineSlice;
        geo.base = z - inner(z, u) * u;
        geo.direction = u;
        geo.radius = std::sqrt(1.0 - geo.base.squaredNorm());
        geo.chart = mobius_through(inner(z - geo.base, u) / geo.radius, inner(w - geo.base, u) / geo.radius, &geo.s);
        break;
    }
    case Kind::Polydisk: {
        geo.tag = GeodesicTag::PolydiskProduct;
        std::vector<double> m(dom.dim());
        for (int j = 0; j < dom.dim(); ++j)
            geo.factors.push_back(mobius_through(z[j], w[j], &m[j]));
        geo.dominant = static_cast<int>(std::max_element(m.begin(), m.end()) - m.begin());
        geo.s = m[geo.dominant];
        for (int j = 0; j < dom.dim(); ++j)
            geo.factors[j].scale = m[j] / geo.s;
        break;
    }
    default: {
        // Largest affine disc in the slice found among chord-centred candidates.
        geo.tag = GeodesicTag::ConvexNumeric;
        const CVec mid = 0.5 * (z + w);
        const CVec cs = domain::chord_center(dom, mid, u);
        double best = std::numeric_limits<double>::infinity();
        for (double f : {1.0, 0.75, 0.5, 0.0}) {
            const CVec c = mid + f * (cs - mid);
            const double rho = dom.slice_inradius(c, u);
            if (!(rho > 0.0))
                continue;
            const cplx a = inner(z - c, u) / rho;
            const cplx b = inner(w - c, u) / rho;
            if (!(std::abs(a) < 1.0 && std::abs(b) < 1.0))
                continue;
            const double kd = kobayashi::disk_dist(a, b);
            if (kd < best) {
                best = kd;
                geo.base = c;
                geo.direction = u;
                geo.radius = rho;
                geo.chart = mobius_through(a, b, &geo.s);
            }
        }
        if (!std::isfinite(best))
            fail(ErrorCode::NumericDefectTooLarge, "no affine disc through both points fits in " + dom.name());
        break;
    }
    }
    const int pairs = geo.tag == GeodesicTag::ConvexNumeric ? std::min(opts.defect_pairs, 8) : opts.defect_pairs;
    geo.defect = isometry_defect(geo, dom, pairs, opts.seed);
    if (dom.is_model() && geo.defect > opts.model_tolerance)
        fail(ErrorCode::NumericDefectTooLarge, "isometry defect " + std::to_string(geo.defect));
    return geo;
}

LeftInverse left_inverse(const ComplexGeodesic& geo, const Domain& dom)
{
    LeftInverse inv;
    const ComplexGeodesic g = geo;
    const int d = geo.dim();
    if (geo.tag == GeodesicTag::DiskAuto) {
        inv.map = [g](const CVec& z) { return g.chart.inverse(z[0]); };
        inv.fiber = [g](cplx zeta) { return domain::Hyperplane{g(zeta), CVec::Ones(1)}; };
    } else if (geo.tag == GeodesicTag::PolydiskProduct) {
        const int j = geo.dominant;
        inv.map = [g, j](const CVec& z) { return g.factors[j].inverse(z[j]); };
        inv.fiber = [g, j, d](cplx zeta) {
            CVec n = CVec::Zero(d);
            n[j] = 1.0;
            return domain::Hyperplane{g(zeta), n};
        };
    } else if (geo.tag == GeodesicTag::BallAffineSlice && geo.base.norm() > 1e-14) {
        // The automorphism exchanging c and 0 straightens the slice; its projection pulls back to
        // eta = s <z,u> / (1 - <z,c>) with fibers <z, s u + conj(eta) c> = eta.
        const double sa = geo.radius;
        inv.map = [g, sa](const CVec& z) {
            return g.chart.inverse(sa * inner(z, g.direction) / (1.0 - inner(z, g.base)));
        };
        inv.fiber = [g, sa](cplx zeta) {
            const cplx eta = g.chart(zeta);
            const CVec n = sa * g.direction + std::conj(eta) * g.base;
            const double nn = n.norm();
            return domain::Hyperplane{CVec(eta * n / (nn * nn)), CVec(n / nn)};
        };
    } else {
        // Orthogonal projection onto the slice is a retraction when Omega projects into the disc.
        const domain::Disc disc = dom.projection_disc(geo.direction);
        const cplx c0 = inner(geo.base, geo.direction);
        if (std::abs(disc.center - c0) > 1e-9 || disc.radius > geo.radius * (1.0 + 1e-9))
            fail(ErrorCode::NoConstructiveInverse, "no holomorphic retraction known for " + dom.name());
        inv.map = [g](const CVec& z) { return g.chart.inverse(inner(CVec(z - g.base), g.direction) / g.radius); };
        inv.fiber = [g](cplx zeta) { return domain::Hyperplane{g(zeta), g.direction}; };
    }

    for (int a = 1; a <= 8; ++a)
        for (int k = 0; k < 8; ++k) {
            const cplx zeta = std::polar(0.1 * a, 2.0 * std::numbers::pi * k / 8.0);
            inv.retraction_defect = std::max(inv.retraction_defect, std::abs(inv.map(geo(zeta)) - zeta));
        }
    if (inv.retraction_defect > 1e-9)
        fail(ErrorCode::NumericDefectTooLarge, "left inverse misses the geodesic by " +
                                                   std::to_string(inv.retraction_defect));
    return inv;
}

DistInterval gromov_product(const Domain& dom, const CVec& z, const CVec& w, const CVec& o)
{
    const DistInterval zo = kobayashi::dist_bounds(dom, z, o);
    const DistInterval ow = kobayashi::dist_bounds(dom, o, w);
    const DistInterval zw = kobayashi::dist_bounds(dom, z, w);
    DistInterval out;
    out.lower = std::max(0.0, 0.5 * (zo.lower + ow.lower - zw.upper));
    out.upper = std::min({0.5 * (zo.upper + ow.upper - zw.lower), zo.upper, ow.upper});
    out.lower = std::min(out.lower, out.upper);
    return out;
}

std::vector<double> probe_schedule(int last)
{
    std::vector<double> r;
    for (int k = 1; k <= last; ++k)
        r.push_back(1.0 - std::ldexp(1.0, -k));
    return r;
}

double hyperplane_angle(const CVec& n1, const CVec& n2)
{
    const CVec a = n1 / n1.norm();
    const CVec b = n2 / n2.norm();
    const cplx p = inner(a, b);
    const cplx ph = std::abs(p) > 0.0 ? p / std::abs(p) : cplx(1.0);
    return 2.0 * std::asin(std::min(1.0, 0.5 * (a - ph * b).norm()));
}

HyperplaneProbe boundary_hyperplane_probe(const ComplexGeodesic& geo, const Domain& dom, cplx zeta,
                                          const std::vector<double>& radii)
{
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        fail(ErrorCode::InvalidArgument, "probe direction must lie on the unit circle");
    if (radii.empty())
        fail(ErrorCode::SamplingEmpty, "empty probe schedule");
    HyperplaneProbe out;
    for (double r : radii) {
        ProbeRow row;
        row.r = r;
        row.point = geo(r * zeta);
        row.boundary_point = dom.nearest_boundary(row.point).point;
        const RVec g = dom.gradient(row.boundary_point);
        row.normal = to_complex(RVec(g / g.norm()));
        out.rows.push_back(row);
    }

    const std::size_t tail = std::min<std::size_t>(5, out.rows.size());
    const CVec ref = out.rows.back().normal;
    CVec avg = CVec::Zero(ref.size());
    for (std::size_t k = out.rows.size() - tail; k < out.rows.size(); ++k) {
        const cplx p = inner(out.rows[k].normal, ref);
        const cplx ph = std::abs(p) > 0.0 ? std::conj(p) / std::abs(p) : cplx(1.0);
        avg += ph * out.rows[k].normal;
    }
    out.limit.normal = avg / avg.norm();
    out.limit.anchor = out.rows.back().boundary_point;

    for (ProbeRow& row : out.rows) {
        row.residual = (row.point - row.boundary_point).norm() + out.limit.distance(row.boundary_point);
        row.normal_angle = hyperplane_angle(row.normal, out.limit.normal);
    }
    for (std::size_t k = 1; k < out.rows.size(); ++k)
        if (out.rows[k].residual > out.rows[k - 1].residual + 1e-9)
            fail(ErrorCode::NoConvergence, "probe residuals stop decreasing at r = " + std::to_string(out.rows[k].r));
    return out;
}

} // namespace bsl::cgeo
