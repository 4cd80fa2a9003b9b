#include "bsl/schwarz.hpp"

#include "bsl/error.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsl::schwarz
{

using kobayashi::disk_dist;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

cplx ipow(cplx z, int m)
{
    cplx r = 1.0;
    for (int k = 0; k < m; ++k)
        r *= z;
    return r;
}

void require_dim(int d)
{
    if (d < 1 || d > kMaxDim)
        fail(ErrorCode::InvalidArgument, "map dimension out of range");
}

// Siegel half-space coordinates: w_1 = i(1 + z_1)/(1 - z_1), w_k = i z_k/(1 - z_1).
CVec to_siegel(const CVec& z)
{
    CVec w(z.size());
    const cplx den = 1.0 - z[0];
    w[0] = cplx(0.0, 1.0) * (1.0 + z[0]) / den;
    for (int k = 1; k < z.size(); ++k)
        w[k] = cplx(0.0, 1.0) * z[k] / den;
    return w;
}

CVec from_siegel(const CVec& w)
{
    CVec z(w.size());
    const cplx den = w[0] + cplx(0.0, 1.0);
    z[0] = (w[0] - cplx(0.0, 1.0)) / den;
    for (int k = 1; k < w.size(); ++k)
        z[k] = 2.0 * w[k] / den;
    return z;
}

double parse_double(const std::string& s, const std::string& spec)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::ConfigInvalid, "map spec '" + spec + "': bad number '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

} // namespace

HoloMap identity_map(int d)
{
    require_dim(d);
    HoloMap f;
    f.name = "id";
    f.dim = d;
    f.identity = true;
    f.eval = [](const CVec& z) { return z; };
    return f;
}

HoloMap rotation(double theta)
{
    HoloMap f;
    f.name = "rot:" + fmt(theta);
    f.dim = 1;
    const cplx e = std::polar(1.0, theta);
    f.eval = [e](const CVec& z) { return CVec(e * z); };
    return f;
}

HoloMap blaschke(std::vector<cplx> zeros, double phase)
{
    for (cplx a : zeros)
        if (!(std::abs(a) < 1.0))
            fail(ErrorCode::InvalidArgument, "Blaschke zeros must lie in the open disk");
    HoloMap f;
    std::ostringstream os;
    os << "blaschke";
    for (cplx a : zeros)
        os << ":" << a.real() << ":" << a.imag();
    f.name = os.str();
    f.dim = 1;
    const cplx e = std::polar(1.0, phase);
    f.eval = [zeros, e](const CVec& z) {
        cplx v = e;
        for (cplx a : zeros)
            v *= (z[0] - a) / (1.0 - std::conj(a) * z[0]);
        return cvec({v});
    };
    return f;
}

HoloMap contact_map(int d, int order, cplx coef)
{
    require_dim(d);
    if (order < 1)
        fail(ErrorCode::InvalidArgument, "contact order must be positive");
    HoloMap f;
    f.name = "contact:" + std::to_string(order) + ":" + fmt(coef.real());
    f.dim = d;
    CVec xi = CVec::Zero(d);
    xi[0] = 1.0;
    f.contact = ContactSpec{xi, order, coef};
    f.eval = [order, coef](const CVec& z) {
        CVec w = z;
        w[0] += coef * ipow(z[0] - 1.0, order);
        return w;
    };
    return f;
}

HoloMap extremal3(double c)
{
    if (!(c > 0.0))
        fail(ErrorCode::InvalidArgument, "extremal3 needs c > 0");
    HoloMap f;
    f.name = "extremal3:" + fmt(c);
    f.dim = 1;
    f.contact = ContactSpec{cvec({1.0}), 3, 0.0};
    f.eval = [c](const CVec& z) {
        const cplx w = cplx(0.0, 1.0) * (1.0 + z[0]) / (1.0 - z[0]);
        const cplx fw = w - c / w;
        return cvec({(fw - cplx(0.0, 1.0)) / (fw + cplx(0.0, 1.0))});
    };
    return f;
}

HoloMap parabolic(int d, double a)
{
    require_dim(d);
    HoloMap f;
    f.name = "parabolic:" + fmt(a);
    f.dim = d;
    CVec xi = CVec::Zero(d);
    xi[0] = 1.0;
    f.contact = ContactSpec{xi, 2, 0.0};
    f.eval = [a](const CVec& z) {
        CVec w = to_siegel(z);
        w[0] += a;
        return from_siegel(w);
    };
    return f;
}

HoloMap hyperbolic(int d, double t)
{
    require_dim(d);
    HoloMap f;
    f.name = "hyperbolic:" + fmt(t);
    f.dim = d;
    const double s = std::tanh(t);
    const double q = std::sqrt(1.0 - s * s);
    f.eval = [s, q](const CVec& z) {
        const cplx den = 1.0 + s * z[0];
        CVec w(z.size());
        w[0] = (z[0] + s) / den;
        for (int k = 1; k < z.size(); ++k)
            w[k] = q * z[k] / den;
        return w;
    };
    return f;
}

HoloMap ball_rotation(int d, double theta)
{
    require_dim(d);
    if (d < 2)
        fail(ErrorCode::InvalidArgument, "ball_rotation needs d >= 2");
    HoloMap f;
    f.name = "ballrot:" + fmt(theta);
    f.dim = d;
    const cplx e = std::polar(1.0, theta);
    f.eval = [e](const CVec& z) {
        CVec w = z;
        for (int k = 1; k < z.size(); ++k)
            w[k] *= e;
        return w;
    };
    return f;
}

HoloMap parse_map_spec(const std::string& spec, int dim)
{
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.empty())
        fail(ErrorCode::ConfigInvalid, "empty map spec");
    const std::string& head = parts[0];
    auto arg = [&](std::size_t k) {
        if (k >= parts.size())
            fail(ErrorCode::ConfigInvalid, "map spec '" + spec + "' is missing an argument");
        return parse_double(parts[k], spec);
    };
    auto need_disk = [&]() {
        if (dim != 1)
            fail(ErrorCode::ConfigInvalid, "map '" + head + "' is only defined on the disk");
    };
    if (head == "id")
        return identity_map(dim);
    if (head == "rot") {
        need_disk();
        return rotation(arg(1));
    }
    if (head == "square") {
        need_disk();
        HoloMap f = blaschke({0.0, 0.0});
        f.name = "square";
        return f;
    }
    if (head == "blaschke") {
        need_disk();
        if (parts.size() < 3 || parts.size() % 2 == 0)
            fail(ErrorCode::ConfigInvalid, "blaschke needs re:im pairs");
        std::vector<cplx> zeros;
        for (std::size_t k = 1; k + 1 < parts.size(); k += 2)
            zeros.emplace_back(arg(k), arg(k + 1));
        return blaschke(zeros);
    }
    if (head == "contact")
        return contact_map(dim, static_cast<int>(arg(1)), arg(2));
    if (head == "extremal3") {
        need_disk();
        return extremal3(arg(1));
    }
    if (head == "parabolic")
        return parabolic(dim, arg(1));
    if (head == "hyperbolic")
        return hyperbolic(dim, arg(1));
    if (head == "ballrot")
        return ball_rotation(dim, arg(1));
    fail(ErrorCode::ConfigInvalid, "unknown map spec '" + spec + "'");
}

SelfMapCertificate certify_self_map(const HoloMap& f, const Domain& dom, int samples, double margin,
                                    std::uint64_t seed)
{
    if (f.dim != dom.dim())
        fail(ErrorCode::InvalidArgument, "map and domain dimensions differ");
    // r o f is plurisubharmonic for convex r, so the shell near the boundary decides containment.
    constexpr double shrink = 1.0 - 1e-6;
    const int d = dom.dim();
    std::vector<CVec> dirs;
    const int structured = d == 1 ? samples : samples / 2;
    for (int j = 0; j < d; ++j) {
        const int per = structured / d;
        for (int k = 0; k < per; ++k) {
            CVec u = CVec::Zero(d);
            u[j] = std::polar(1.0, kTwoPi * k / per);
            dirs.push_back(u);
        }
    }
    Rng rng(seed);
    while (static_cast<int>(dirs.size()) < samples) {
        CVec u(d);
        for (int j = 0; j < d; ++j)
            u[j] = cplx(rng.normal(), rng.normal());
        dirs.push_back(u / u.norm());
    }
    SelfMapCertificate cert;
    cert.max_excess = -std::numeric_limits<double>::infinity();
    const CVec& c = dom.center();
    for (const CVec& u : dirs) {
        const CVec z = c + shrink * dom.ray_exit(c, u) * u;
        const CVec w = f(z);
        const double excess = w.allFinite() ? dom.defining(w) : std::numeric_limits<double>::infinity();
        cert.max_excess = std::max(cert.max_excess, excess);
        ++cert.samples;
    }
    cert.certified = cert.max_excess <= margin;
    return cert;
}

std::vector<HoloMap> disk_zoo()
{
    std::vector<HoloMap> zoo = {
        identity_map(1),
        rotation(std::numbers::pi / 100.0),
        rotation(1.0),
        blaschke({0.5}),
        blaschke({cplx(0.3, 0.4), -0.2}, 0.7),
        parse_map_spec("square", 1),
        contact_map(1, 2, 0.25),
        contact_map(1, 2, 0.5),
        contact_map(1, 3, -0.125),
        contact_map(1, 3, -0.25),
        extremal3(0.1),
        parabolic(1, 0.5),
        hyperbolic(1, 0.3),
        contact_map(1, 4, 1e-12),
    };
    const Domain disk = Domain::disk();
    for (const HoloMap& f : zoo)
        if (!certify_self_map(f, disk).certified)
            fail(ErrorCode::NotSelfMap, "zoo map " + f.name + " failed certification");
    return zoo;
}

double cs_constant(cplx a, cplx b, cplx z)
{
    const double kab = disk_dist(a, b);
    return std::exp(2.0 * disk_dist(z, a) + 2.0 * disk_dist(z, b) + 2.0 * kab) / (2.0 * kab);
}

CsCheck cs_bound_check(const HoloMap& f, cplx a, cplx b, cplx z)
{
    if (a == b)
        fail(ErrorCode::CoincidentAnchors, "cs_bound_check: a = b");
    auto disp = [&](cplx x) { return disk_dist(f(cvec({x}))[0], x); };
    CsCheck out;
    out.constant = cs_constant(a, b, z);
    out.lhs = disp(z);
    const double s = disp(a) + disp(b);
    // 0 * inf stays 0: a map fixing both anchors is the identity.
    out.rhs = s == 0.0 ? 0.0 : out.constant * s;
    out.pass = out.lhs <= out.rhs + 1e-12;
    return out;
}

ErrorModulus error_modulus(const HoloMap& f, const Domain& dom, const CVec& xi, const std::vector<double>& radii,
                           int samples, std::uint64_t seed)
{
    if (radii.empty())
        fail(ErrorCode::SamplingEmpty, "error_modulus: no radii");
    if (std::abs(dom.defining(xi)) > 1e-9)
        fail(ErrorCode::NotOnBoundary, "error_modulus: xi is not a boundary point");
    const int d = dom.dim();
    Rng rng(seed);
    std::vector<double> raw(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        if (!(r > 0.0))
            fail(ErrorCode::InvalidArgument, "error_modulus: radii must be positive");
        std::vector<CVec> pts;
        if (d == 1) {
            // |f - id| is subharmonic: sample both boundary arcs of the region and an interior grid.
            const cplx x = xi[0];
            const double psi = std::acos(std::min(1.0, r / 2.0));
            for (int j = 0; j < samples; ++j) {
                const double t = -psi + 2.0 * psi * (j + 0.5) / samples;
                pts.push_back(cvec({x * (1.0 - r * std::polar(1.0, t))}));
            }
            const double alpha = 2.0 * std::asin(std::min(1.0, r / 2.0));
            for (int j = 0; j < samples; ++j) {
                const double t = -alpha + 2.0 * alpha * (j + 0.5) / samples;
                pts.push_back(cvec({x * std::polar(1.0 - 1e-9, t)}));
            }
            for (int a = 1; a <= 8; ++a)
                for (int j = 0; j < 16; ++j) {
                    const double t = -psi + 2.0 * psi * (j + 0.5) / 16;
                    pts.push_back(cvec({x * (1.0 - r * a / 8.0 * std::polar(1.0, t))}));
                }
        } else {
            const CVec& c = dom.center();
            for (int j = 0; j < samples; ++j) {
                CVec u(d);
                for (int i = 0; i < d; ++i)
                    u[i] = cplx(rng.normal(), rng.normal());
                u /= u.norm();
                pts.push_back(xi + r * u);
                const CVec q = xi + r * std::pow(rng.uniform(), 1.0 / (2.0 * d)) * u;
                pts.push_back(q);
                const CVec ray = q - c;
                pts.push_back(c + (1.0 - 1e-9) * dom.ray_exit(c, ray) * ray);
            }
        }
        double m = -1.0;
        for (const CVec& z : pts) {
            if (!dom.contains(z) || (z - xi).norm() > r)
                continue;
            m = std::max(m, (f(z) - z).norm());
        }
        if (m < 0.0)
            fail(ErrorCode::SamplingEmpty, "error_modulus: no samples in the region at r = " + fmt(r));
        raw[k] = m;
    }
    std::vector<std::size_t> order(radii.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });
    ErrorModulus out;
    out.radii = radii;
    out.values.assign(radii.size(), 0.0);
    double env = 0.0;
    for (std::size_t k : order) {
        env = std::max(env, raw[k]);
        out.values[k] = env;
    }
    if (radii.size() >= 2)
        out.slope = fit_loglog(out.radii, out.values).slope;
    return out;
}

double quantid_term(const HoloMap& f, cplx zn, double rn)
{
    if (!(std::abs(zn) < 1.0))
        fail(ErrorCode::PointOutsideDomain, "quantid_term: z_n outside the disk");
    if (!(rn > 0.0 && rn < 1.0))
        fail(ErrorCode::InvalidArgument, "quantid_term: r_n must lie in (0, 1)");
    auto disp = [&](cplx w) { return disk_dist(f(cvec({w}))[0], w); };
    double sup = disp(zn);
    for (int k = 1; k <= 8; ++k) {
        const double s = std::tanh(rn * k / 8.0);
        for (int j = 0; j < 32; ++j) {
            const cplx zeta = std::polar(s, kTwoPi * j / 32.0);
            sup = std::max(sup, disp((zeta + zn) / (1.0 + std::conj(zn) * zeta)));
        }
    }
    if (sup == 0.0)
        return 0.0;
    return std::exp(4.0 * disk_dist(zn, 0.0)) / rn * sup;
}

double interior_displacement(const HoloMap& f, const Domain& dom, int points, std::uint64_t seed)
{
    Rng rng(seed);
    const int d = dom.dim();
    const CVec& c = dom.center();
    double m = 0.0;
    int kept = 0;
    for (int tries = 0; kept < points && tries < 50 * points; ++tries) {
        CVec u(d);
        for (int i = 0; i < d; ++i)
            u[i] = cplx(rng.normal(), rng.normal());
        u /= u.norm();
        const CVec z = c + 0.95 * std::sqrt(rng.uniform()) * dom.ray_exit(c, u) * u;
        if (domain::boundary_distance(dom, z) < 0.05)
            continue;
        m = std::max(m, (f(z) - z).norm());
        ++kept;
    }
    if (kept == 0)
        fail(ErrorCode::SamplingEmpty, "interior_displacement: no interior grid points");
    return m;
}

report::PipelineReport disk_rigidity_pipeline(const HoloMap& f, const std::vector<double>& radii,
                                              const DiskPipelineOptions& opts)
{
    const Domain disk = Domain::disk();
    if (f.dim != 1)
        fail(ErrorCode::InvalidArgument, "disk pipeline needs a map of the disk");
    const SelfMapCertificate cert = certify_self_map(f, disk);
    if (!cert.certified)
        fail(ErrorCode::NotSelfMap, f.name + " leaves the disk by " + fmt(cert.max_excess));
    if (std::abs(std::abs(opts.xi) - 1.0) > 1e-12)
        fail(ErrorCode::NotOnBoundary, "disk pipeline: xi must lie on the unit circle");

    report::PipelineReport rep;
    rep.pipeline = "disk";
    rep.domain = disk.name();
    rep.map = f.name;
    rep.add_column("n", "", "schedule");
    rep.add_column("r_n", "", "schedule");
    rep.add_column("p_n", "p_n = (1 - r_n) xi", "schedule");
    rep.add_column("K_0_p", "K(0 p_n)", "kobayashi::disk_dist");
    rep.add_column("K_0_p_bound", "(1/2) log(2/r_n)", "closed form");
    rep.add_column("E_5r4", "E(5 r_n/4)", "schwarz::error_modulus");
    rep.add_column("disp_measured", "sup K(w f(w)) over |w - p_n| <= r_n/4", "kobayashi::disk_dist grid");
    rep.add_column("disp_bound", "(2/r_n) E(5 r_n/4)", "Euclidean metric comparison");
    rep.add_column("eps_n", "sup{eps : B_K(p_n eps) in B(p_n r_n/4)}", "kobayashi::disk_ball_inclusion_exact");
    rep.add_column("eps_lower", "a <= eps_n", "min over schedule");
    rep.add_column("term", "e^{4K(p_n 0)}/eps_n sup K(f(w) w)", "schwarz::quantid_term");
    if (radii.empty()) {
        rep.reason = "empty schedule";
        return rep;
    }

    std::vector<double> five_quarters;
    for (double r : radii)
        five_quarters.push_back(1.25 * r);
    const ErrorModulus em = error_modulus(f, disk, cvec({opts.xi}), five_quarters);

    std::vector<double> eps(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k)
        eps[k] = kobayashi::disk_ball_inclusion_exact(opts.xi * (1.0 - radii[k]), radii[k] / 4.0);
    const double a = radii.empty() ? 0.0 : *std::min_element(eps.begin(), eps.end());
    rep.set_constant("a", a);
    rep.set_constant("C", 2.0);

    std::vector<double> terms;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        const cplx p = opts.xi * (1.0 - r);
        double disp = 0.0;
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j < (i ? 32 : 1); ++j) {
                const cplx w = p + std::polar(0.25 * r * i / 8.0, kTwoPi * j / 32.0);
                if (std::abs(w) < 1.0)
                    disp = std::max(disp, disk_dist(f(cvec({w}))[0], w));
            }
        const double e = em.values[k];
        // On B(p_n; r/2) the metric is at most |v|/(r/2), and the segment [w, f(w)] stays there.
        const double bound = e <= r / 4.0 ? 2.0 / r * e : std::nan("");
        const double term = quantid_term(f, p, eps[k]);
        terms.push_back(term);
        rep.rows.push_back({static_cast<double>(k), r, std::abs(p), disk_dist(0.0, p), 0.5 * std::log(2.0 / r), e,
                            disp, bound, eps[k], a, term});
    }
    rep.add_check("distance to p_n", "K_0_p", "K_0_p_bound", 1e-12);
    rep.add_check("displacement on B(p_n r_n/4)", "disp_measured", "disp_bound", 1e-12);
    rep.add_check("uniform eps lower bound", "eps_lower", "eps_n", 0.0);
    rep.evaluate_checks();

    rep.verdict = report::Verdict::Inconclusive;
    if (terms.empty()) {
        rep.reason = "empty schedule";
        return rep;
    }
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(opts.window), terms.size());
    bool nonincreasing = true;
    for (std::size_t k = terms.size() - w + 1; k < terms.size(); ++k)
        if (terms[k] > terms[k - 1] * (1.0 + 1e-9))
            nonincreasing = false;
    if (terms.back() < opts.threshold && nonincreasing) {
        rep.verdict = report::Verdict::ForcesIdentity;
        rep.reason = "quantitative identity term fell below " + fmt(opts.threshold);
    } else if (terms.back() >= opts.threshold) {
        rep.reason = "term stays above threshold: last " + fmt(terms.back());
    } else {
        rep.reason = "term is not monotone over the final window";
    }
    return rep;
}

} // namespace bsl::schwarz
