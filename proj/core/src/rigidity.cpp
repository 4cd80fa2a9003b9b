#include "bsl/rigidity.hpp"

#include "bsl/error.hpp"
#include "bsl/kahler.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bsl::rigidity
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Some unit vector complex-orthogonal to n.
CVec complex_tangent(const CVec& n)
{
    const int d = static_cast<int>(n.size());
    for (int k = 0; k < d; ++k) {
        CVec e = CVec::Zero(d);
        e[k] = 1.0;
        CVec t = e - inner(e, n) * n;
        if (t.norm() > 1e-6)
            return t / t.norm();
    }
    return n;
}

CVec random_unit(Rng& rng, int d)
{
    CVec u(d);
    for (int j = 0; j < d; ++j)
        u[j] = cplx(rng.normal(), rng.normal());
    return u / u.norm();
}

// Verdict shared by both pipelines: the last term is below threshold and the terms decay in r over the window.
void decide(PipelineReport& rep, const std::vector<double>& radii, const std::vector<double>& terms,
            const PipelineOptions& opts, bool extra_ok, const std::string& extra_reason)
{
    rep.verdict = report::Verdict::Inconclusive;
    if (terms.empty()) {
        rep.reason = "empty schedule";
        return;
    }
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(2, opts.window)), terms.size());
    std::vector<double> rs(radii.end() - static_cast<std::ptrdiff_t>(w), radii.end());
    std::vector<double> ts(terms.end() - static_cast<std::ptrdiff_t>(w), terms.end());
    const bool all_zero = std::all_of(ts.begin(), ts.end(), [](double t) { return t == 0.0; });
    const bool all_positive = std::all_of(ts.begin(), ts.end(), [](double t) { return t > 0.0; });
    double slope = kNaN;
    if (all_positive && w >= 2)
        slope = fit_loglog(rs, ts).slope;
    rep.set_constant("term_slope", slope);
    const double last = terms.back();
    if (!std::isfinite(last) || last >= opts.threshold) {
        rep.reason = "term stays above threshold: last " + fmt(last);
        return;
    }
    if (!all_zero && !(slope > 0)) {
        rep.reason = "term does not decay over the final window";
        return;
    }
    if (!extra_ok) {
        rep.reason = extra_reason;
        return;
    }
    rep.verdict = report::Verdict::ForcesIdentity;
    rep.reason = all_zero ? "terms vanish identically" : "term decays below " + fmt(opts.threshold);
}

double shoot_dist(const riemann::MetricField& m, const CVec& a, const CVec& b)
{
    if ((a - b).norm() == 0.0)
        return 0.0;
    return riemann::exp_log(m, to_real(a), to_real(b)).distance;
}

int contact_order(const HoloMap& f)
{
    if (f.identity)
        return kInfiniteOrder;
    return f.contact ? f.contact->order : 1;
}

} // namespace

CVec default_base_point(const Domain& dom)
{
    const int d = dom.dim();
    CVec best = dom.center();
    double best_delta = domain::boundary_distance(dom, best);
    for (int k = 0; k < 2 * d; ++k)
        for (double s : {-0.1, 0.1}) {
            CVec z = dom.center();
            if (k < d)
                z[k] += s;
            else
                z[k - d] += cplx(0.0, s);
            if (!dom.contains(z))
                continue;
            const double delta = domain::boundary_distance(dom, z);
            if (delta > best_delta + 1e-12) {
                best = z;
                best_delta = delta;
            }
        }
    return best;
}

PipelineReport convex_pipeline(const Domain& dom, const HoloMap& f, const CVec& xi, const std::vector<double>& radii,
                               const PipelineOptions& opts)
{
    if (f.dim != dom.dim())
        fail(ErrorCode::InvalidArgument, "map and domain dimensions differ");
    const schwarz::SelfMapCertificate cert = schwarz::certify_self_map(f, dom);
    if (!cert.certified)
        fail(ErrorCode::NotSelfMap, f.name + " leaves " + dom.name() + " by " + fmt(cert.max_excess));
    domain::BoundaryData bd;
    try {
        bd = domain::boundary_data(dom, xi);
    } catch (const Error& e) {
        fail(ErrorCode::BoundaryDataUnavailable, std::string("convex pipeline: ") + e.what());
    }
    const CVec n = bd.inward_normal;
    const CVec z0 = default_base_point(dom);

    kobayashi::BoundsOptions bo;
    double eps_exponent = 1.0;
    if (!dom.is_model() && !radii.empty()) {
        const domain::LineType lt = domain::line_type(dom, xi);
        if (!lt.infinite && lt.value > 2) {
            bo.finite_type =
                kobayashi::calibrate_finite_type(dom, xi, n, complex_tangent(n), lt.value, radii);
            eps_exponent = 1.0 - 1.0 / lt.value;
        }
    }

    PipelineReport rep;
    rep.pipeline = "convex";
    rep.domain = dom.name();
    rep.map = f.name;
    rep.add_column("n", "", "schedule");
    rep.add_column("r_n", "", "schedule");
    rep.add_column("K_upper", "K(z_0 p_n) with p_n = xi + r_n n", "kobayashi::dist_upper");
    rep.add_column("K_bound", "C_0 + (1/2) log(1/r_n)", "kobayashi::fit_log_growth");
    rep.add_column("E_5r4", "E(5 r_n/4)", "schwarz::error_modulus");
    rep.add_column("disp_measured", "sup K(w f(w)) over B(p_n r_n/4)", "kobayashi::dist_upper samples");
    rep.add_column("disp_bound", "E(5 r_n/4)/(delta(p_n) - r_n/2)", "metric bound |v|/delta");
    rep.add_column("eps_n", "eps with B_K(p_n eps) in B(p_n r_n/4)", "kobayashi::kob_ball_inclusion");
    rep.add_column("eps_lower", "a r_n^beta", "min over schedule");
    rep.add_column("e4K", "e^{4K(z_0 p_n)}", "kobayashi::dist_upper");
    rep.add_column("e4K_bound", "A r_n^-2", "A = e^{4 C_0}");
    rep.add_column("composite", "e^{4K(z_0 p_n)}/eps_n sup K(w f(w))", "product of columns");
    if (radii.empty()) {
        rep.reason = "empty schedule";
        return rep;
    }

    const kobayashi::LogGrowthFit fit = kobayashi::fit_log_growth(dom, z0, xi, n, radii, bo);
    std::vector<double> five_quarters;
    for (double r : radii)
        five_quarters.push_back(1.25 * r);
    const schwarz::ErrorModulus em = schwarz::error_modulus(f, dom, xi, five_quarters);

    std::vector<double> eps(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k)
        eps[k] = kobayashi::kob_ball_inclusion(dom, CVec(xi + radii[k] * n), radii[k] / 4.0, bo);
    double a = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < radii.size(); ++k)
        a = std::min(a, eps[k] / std::pow(radii[k], eps_exponent));
    rep.set_constant("C_0", fit.c0);
    rep.set_constant("A", std::exp(4.0 * fit.c0));
    rep.set_constant("a", radii.empty() ? 0.0 : a);
    rep.set_constant("beta", eps_exponent);
    if (bo.finite_type) {
        rep.set_constant("alpha_0", bo.finite_type->alpha0);
        rep.set_constant("line_type", bo.finite_type->ell);
    }

    Rng rng(opts.seed);
    std::vector<double> terms;
    const int d = dom.dim();
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        const CVec p = xi + r * n;
        double disp = 0.0;
        for (int s = 0; s <= opts.disp_samples; ++s) {
            CVec w = p;
            if (s > 0)
                w += (r / 4.0) * std::pow(rng.uniform(), 1.0 / (2 * d)) * random_unit(rng, d);
            if (!dom.contains(w))
                continue;
            const CVec fw = f(w);
            if ((fw - w).norm() > 0)
                disp = std::max(disp, kobayashi::dist_upper(dom, w, fw, bo));
        }
        const double e = em.values[k];
        const double delta = domain::boundary_distance(dom, p);
        // [w, f(w)] stays in B(p_n; r/2) when E <= r/4, where delta >= delta(p_n) - r/2.
        const double bound = (e <= r / 4.0 && delta > r / 2.0) ? e / (delta - r / 2.0) : kNaN;
        const double upper = fit.upper[k];
        const double kbound = fit.c0 + 0.5 * std::log(1.0 / r);
        const double e4k = std::exp(4.0 * upper);
        const double term = disp == 0.0 ? 0.0 : e4k / eps[k] * disp;
        terms.push_back(term);
        rep.rows.push_back({static_cast<double>(k), r, upper, kbound, e, disp, bound, eps[k],
                            a * std::pow(r, eps_exponent), e4k, std::exp(4.0 * kbound), term});
    }
    rep.add_check("distance growth", "K_upper", "K_bound", 1e-12);
    rep.add_check("displacement on B(p_n r_n/4)", "disp_measured", "disp_bound", 1e-12);
    rep.add_check("ball radius lower bound", "eps_lower", "eps_n", 1e-15);
    rep.add_check("exponential distance bound", "e4K", "e4K_bound", 0.0);
    rep.evaluate_checks();
    decide(rep, radii, terms, opts, true, "");
    return rep;
}

PipelineReport biholo_pipeline(const Domain& dom, const HoloMap& phi, riemann::MetricPtr metric,
                               const domain::Cone& cone, const std::vector<double>& radii, std::optional<CVec> z0_in,
                               const BiholoOptions& opts)
{
    const int d = dom.dim();
    if (phi.dim != d || metric->dim() != 2 * d)
        fail(ErrorCode::InvalidArgument, "map, metric and domain dimensions differ");
    const domain::ConeCertificate cc = domain::cone_certificate(dom, cone, opts.cone_grid, opts.seed);
    if (!cc.certified)
        fail(ErrorCode::ConeUncertified, "interior cone is not certified (margin " + fmt(cc.margin) + ")");
    const kahler::BGReport bg = kahler::property_bg_estimate(*metric, dom);
    if (!bg.pass)
        fail(ErrorCode::PropertyBGFail, bg.complete ? "metric bounds failed" : "metric is not complete");

    Rng rng(opts.seed);
    const CVec c = dom.center();
    for (int k = 0; k < opts.isometry_pairs; ++k) {
        CVec x = c, y = c;
        for (CVec* z : {&x, &y}) {
            const CVec u = random_unit(rng, d);
            *z = c + 0.6 * rng.uniform() * dom.ray_exit(c, u) * u;
        }
        const double d1 = shoot_dist(*metric, x, y), d2 = shoot_dist(*metric, phi(x), phi(y));
        if (std::abs(d1 - d2) > opts.isometry_tol)
            fail(ErrorCode::NotIsometry, phi.name + " changes a distance by " + fmt(std::abs(d1 - d2)));
    }

    // Normalize so the sectional curvature is bounded by 1.
    const double kappa = bg.kappa_est;
    const riemann::MetricPtr g = kappa > 0 ? riemann::scaled(metric, kappa) : metric;
    const double A = std::sqrt(std::max(kappa, 1e-300)) * bg.A_est;
    const double a = std::sqrt(std::max(kappa, 1e-300)) * bg.a_est;
    const double theta = cone.aperture;
    const double sin_t = std::sin(theta);
    const bool pos_inj = g->hadamard();
    const double L = kahler::rigidity_threshold(d, 1.0, A, theta, pos_inj);
    const double eps = opts.eps;
    const double eps_exp = pos_inj ? 1.0 : 4.0 * d + 1.0;

    const CVec xi = cone.apex;
    const CVec v = cone.direction / cone.direction.norm();
    const CVec p0 = xi + v;
    if (!dom.contains(p0))
        fail(ErrorCode::InvalidArgument, "p_0 = apex + direction must lie in the domain");
    const CVec z0 = z0_in ? *z0_in : default_base_point(dom);
    if (!dom.contains(z0))
        fail(ErrorCode::PointOutsideDomain, "z_0 must lie in the domain");

    auto real_phi = [&](const RVec& x) { return to_real(phi(to_complex(x))); };
    const double d_z0 = shoot_dist(*g, z0, phi(z0));
    const double d_z0_p0 = shoot_dist(*g, z0, p0);

    std::vector<double> s_radii;
    for (double r : radii)
        s_radii.push_back((sin_t + 4.0) / 4.0 * r);
    const schwarz::ErrorModulus em =
        s_radii.empty() ? schwarz::ErrorModulus{} : schwarz::error_modulus(phi, dom, xi, s_radii);

    struct Raw
    {
        double delta, d_p_p0, path_len, T, tau, eps_n, disp_t, eucl_disp, beta_n, dT1, max_d_eps;
    };
    std::vector<Raw> raw;
    const double cone_factor = (1.0 + eps) * A / sin_t;
    for (double r : radii) {
        Raw w{};
        const CVec p = xi + r * v;
        if (!dom.contains(p))
            fail(ErrorCode::InvalidArgument, "p_n left the domain");
        w.delta = domain::boundary_distance(dom, p);
        w.d_p_p0 = shoot_dist(*g, p, p0);
        const RVec vr = to_real(v);
        auto speed = [&](double u) {
            const double s = std::exp(u);
            return riemann::norm_g(*g, to_real(CVec(xi + s * v)), vr) * s;
        };
        w.path_len = adaptive_simpson(speed, std::log(r), 0.0, 1e-10).value;

        const riemann::Shooting sh = riemann::exp_log(*g, to_real(p), to_real(z0));
        w.T = sh.distance;
        const RVec u0 = sh.v / sh.distance;
        riemann::FlowOptions fo;
        fo.h = std::min(1e-3, w.T / 1000.0);
        const riemann::GeodesicPath path = riemann::geodesic_flow(*g, {to_real(p), u0}, w.T, fo);
        const double ball = sin_t * r / 4.0;
        const RVec pr = to_real(p);
        w.tau = w.T;
        for (std::size_t k = 1; k < path.t.size(); ++k) {
            const double dk = (path.x[k] - pr).norm();
            if (dk > ball) {
                const double dprev = (path.x[k - 1] - pr).norm();
                w.tau = path.t[k - 1] + (path.t[k] - path.t[k - 1]) * (ball - dprev) / (dk - dprev);
                break;
            }
        }
        for (int j = 0; j <= opts.path_grid; ++j) {
            const double t = w.tau * j / opts.path_grid;
            const std::size_t idx =
                std::min(path.t.size() - 1, static_cast<std::size_t>(std::floor(t / path.h)));
            const RVec x = path.x[idx];
            const RVec fx = real_phi(x);
            w.eucl_disp = std::max(w.eucl_disp, (fx - x).norm());
            if ((fx - x).norm() > 0)
                w.disp_t = std::max(w.disp_t, riemann::exp_log(*g, x, fx).distance);
        }

        w.eps_n = std::min(w.tau, 0.99 * std::min(riemann::convexity_radius_lower(*g) / 2.0, 1.0));
        const RVec fp = real_phi(pr);
        const double hd = 1e-6;
        RVec du = u0;
        if (!phi.identity) {
            du = (real_phi(pr + hd * u0) - real_phi(pr - hd * u0)) / (2.0 * hd);
            du /= riemann::norm_g(*g, fp, du);
        }
        const riemann::BackwardSample b = riemann::backward_estimate(*g, {pr, u0}, {fp, du}, w.eps_n);
        w.beta_n = b.ratio;
        w.dT1 = b.d_t1;
        w.max_d_eps = b.max_dist;
        raw.push_back(w);
    }

    // Constants fitted over the schedule; beta only over the calibration half.
    double alpha = 0.0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const double e = std::max(em.values[k], raw[k].eucl_disp);
        alpha = std::max(alpha, e / std::pow(s_radii[k], L));
    }
    const double C1 = (1.0 + eps) * A * alpha * std::pow((sin_t + 4.0) / 4.0, L) * 2.0 / sin_t;
    double beta = 0.0;
    const std::size_t calib = std::max<std::size_t>(1, raw.size() / 2);
    for (std::size_t k = 0; k < std::min(calib, raw.size()); ++k)
        if (std::isfinite(raw[k].beta_n))
            beta = std::max(beta, raw[k].beta_n);
    beta *= 1.0 + eps;
    double E0 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < raw.size(); ++k)
        E0 = std::min(E0, raw[k].eps_n / std::pow(radii[k], eps_exp));
    const double C2 = C1 == 0.0 ? 0.0 : beta * C1 / E0;

    PipelineReport rep;
    rep.pipeline = "biholo";
    rep.domain = dom.name();
    rep.map = phi.name;
    rep.add_column("n", "", "schedule");
    rep.add_column("r_n", "", "schedule");
    rep.add_column("delta_p", "delta(p_n) with p_n = xi_0 + r_n v", "domain::boundary_distance");
    rep.add_column("delta_bound", "sin(theta) r_n", "cone condition");
    rep.add_column("d_p_p0", "d(p_n p_0)", "riemann::exp_log");
    rep.add_column("path_len", "length of xi_0 + (1-t) v on [0 1-r_n]", "quadrature of the metric");
    rep.add_column("cone_bound", "(1+eps) A/sin(theta) log(1/r_n)", "property-(BG) estimate");
    rep.add_column("T_n", "T_n = d(z_0 p_n)", "riemann::exp_log");
    rep.add_column("T_bound", "d(z_0 p_0) + (1+eps) A/sin(theta) log(1/r_n)", "riemann::exp_log");
    rep.add_column("tau_n", "max tau with |gamma_n(t) - p_n| <= sin(theta) r_n/4", "riemann::geodesic_flow");
    rep.add_column("tau_bound", "sin(theta) a r_n/(4(1+eps))", "property-(BG) estimate");
    rep.add_column("eps_n", "min(r(p_n)/2 tau_n 1)", "riemann::convexity_radius_lower");
    rep.add_column("disp_t", "max over t <= tau_n of d(gamma_n(t) phi(gamma_n(t)))", "riemann::exp_log");
    rep.add_column("disp_bound", "C_1 r_n^(L-1)", "fitted alpha");
    rep.add_column("beta_n", "d_T1 eps_n / max over t <= eps_n of d(gamma_n(t) phi(gamma_n(t)))",
                   "riemann::backward_estimate");
    rep.add_column("dT1", "d_T1(gamma_n'(0) (phi gamma_n)'(0))", "riemann::tangent_distances");
    rep.add_column("dT1_bound", "(beta/eps_n) max over t <= eps_n of d(gamma_n(t) phi(gamma_n(t)))",
                   "fitted beta");
    rep.add_column("dT1_power", pos_inj ? "C_2 r_n^(L-2)" : "C_2 r_n^(L-4d-2)", "C_2 = beta C_1/E_0");
    rep.add_column("product", "exp((2+eps) T_n/2) d_T1", "spread bound");
    rep.add_column("d_z0", "d(z_0 phi(z_0))", "riemann::exp_log");

    std::vector<double> products;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const Raw& w = raw[k];
        const double r = radii[k];
        const double logr = std::log(1.0 / r);
        const double disp_bound = w.eucl_disp <= sin_t * r / 4.0 ? C1 * std::pow(r, L - 1.0) : kNaN;
        const double dT1_bound = w.max_d_eps > 0 ? beta / w.eps_n * w.max_d_eps : (w.dT1 > 0 ? kNaN : 0.0);
        const double dT1_power = C2 * std::pow(r, L - 1.0 - eps_exp);
        const double growth = std::exp((2.0 + eps) / 2.0 * w.T);
        const double product = growth * w.dT1;
        products.push_back(product);
        rep.rows.push_back({static_cast<double>(k), r, w.delta, sin_t * r, w.d_p_p0, w.path_len, cone_factor * logr,
                            w.T, d_z0_p0 + cone_factor * logr, w.tau, sin_t * a * r / (4.0 * (1.0 + eps)),
                            w.eps_n, w.disp_t, disp_bound, w.beta_n, w.dT1, dT1_bound, dT1_power, product, d_z0});
    }
    rep.set_constant("kappa", kappa);
    rep.set_constant("A", A);
    rep.set_constant("a", a);
    rep.set_constant("theta", theta);
    rep.set_constant("L", L);
    rep.set_constant("positive_injectivity", pos_inj ? 1.0 : 0.0);
    rep.set_constant("alpha", alpha);
    rep.set_constant("C_1", C1);
    rep.set_constant("beta", beta);
    rep.set_constant("E_0", E0);
    rep.set_constant("C_2", C2);
    rep.set_constant("contact_order", em.slope);
    rep.set_constant("d_z0_p0", d_z0_p0);
    rep.notes.push_back("metric scaled by kappa so the sectional curvature bound is 1");
    rep.notes.push_back("beta fitted on the first " + std::to_string(calib) + " rows");
    if (em.slope <= L)
        rep.notes.push_back("measured contact order " + fmt(em.slope) + " does not clear L = " + fmt(L));

    rep.add_check("cone depth", "delta_bound", "delta_p", 1e-15);
    rep.add_check("distance to p_0 vs path", "d_p_p0", "path_len", 1e-8);
    rep.add_check("path vs cone bound", "path_len", "cone_bound", 1e-8);
    rep.add_check("T_n estimate", "T_n", "T_bound", 1e-8);
    rep.add_check("tau lower bound", "tau_bound", "tau_n", 1e-12);
    rep.add_check("displacement along gamma_n", "disp_t", "disp_bound", 1e-8);
    rep.add_check("initial condition", "dT1", "dT1_bound", 1e-8);
    rep.add_check("initial condition power", "dT1", "dT1_power", 1e-8);
    rep.add_check("spread", "d_z0", "product", 1e-8);
    rep.evaluate_checks();

    bool spread_ok = true;
    for (std::size_t k = 0; k < products.size(); ++k)
        spread_ok = spread_ok && d_z0 <= products[k] + 1e-8;
    decide(rep, radii, products, opts, spread_ok, "d(z_0 phi(z_0)) exceeds the spread product");
    return rep;
}

std::vector<HoloMap> ball_zoo()
{
    const Domain ball = Domain::ball(2);
    std::vector<HoloMap> zoo{schwarz::identity_map(2), schwarz::ball_rotation(2, 0.1), schwarz::parabolic(2, 0.5),
                             schwarz::hyperbolic(2, 0.3), schwarz::contact_map(2, 4, 1e-12)};
    for (const HoloMap& f : zoo)
        if (!schwarz::certify_self_map(f, ball).certified)
            fail(ErrorCode::NotSelfMap, f.name + " is not a self-map of the ball");
    return zoo;
}

SuiteSummary counterexample_suite(const std::vector<double>& radii, const PipelineOptions& opts)
{
    SuiteSummary s;
    auto record = [&](const PipelineReport& rep, const HoloMap& f, const Domain& dom) {
        SuiteEntry e;
        e.pipeline = rep.pipeline;
        e.domain = dom.name();
        e.map = f.name;
        e.verdict = rep.verdict;
        e.rows_valid = rep.rows_valid();
        e.interior_displacement = schwarz::interior_displacement(f, dom);
        e.indistinguishable = e.interior_displacement <= 1e-4;
        e.contact_order = contact_order(f);
        if (e.verdict == report::Verdict::ForcesIdentity && !e.indistinguishable)
            fail(ErrorCode::SuiteSoundnessViolation, e.pipeline + " pipeline identified " + e.map + " on " +
                                                         e.domain + " (interior displacement " +
                                                         fmt(e.interior_displacement) + ")");
        s.entries.push_back(e);
    };

    const Domain disk = Domain::disk();
    const Domain ball = Domain::ball(2);
    const Domain ell = Domain::ellipsoid({1, 2});
    const CVec e1 = cvec({1.0, 0.0});
    schwarz::DiskPipelineOptions dopts;
    dopts.threshold = opts.threshold;
    dopts.window = opts.window;
    for (const HoloMap& f : schwarz::disk_zoo()) {
        record(schwarz::disk_rigidity_pipeline(f, radii, dopts), f, disk);
        record(convex_pipeline(disk, f, cvec({1.0}), radii, opts), f, disk);
    }
    for (const HoloMap& f : ball_zoo())
        record(convex_pipeline(ball, f, e1, radii, opts), f, ball);
    for (const HoloMap& f : {schwarz::identity_map(2), schwarz::ball_rotation(2, 0.1)})
        record(convex_pipeline(ell, f, e1, radii, opts), f, ell);

    BiholoOptions bopts;
    static_cast<PipelineOptions&>(bopts) = opts;
    const double theta = std::acos(-1.0) / 3.0;
    const domain::Cone disk_cone{cvec({1.0}), cvec({-1.0}), theta, 0.9};
    for (const HoloMap& f : {schwarz::identity_map(1), schwarz::rotation(1e-3)})
        record(biholo_pipeline(disk, f, riemann::poincare(), disk_cone, radii, std::nullopt, bopts), f, disk);
    const domain::Cone ball_cone{e1, cvec({-1.0, 0.0}), theta, 0.9};
    for (const HoloMap& f : {schwarz::identity_map(2), schwarz::ball_rotation(2, 0.1), schwarz::hyperbolic(2, 0.3)})
        record(biholo_pipeline(ball, f, riemann::bergman_ball(2), ball_cone, radii, std::nullopt, bopts), f, ball);

    s.identity_ok = true;
    s.high_order_ok = true;
    s.extremal_ok = true;
    s.all_rows_valid = true;
    for (const SuiteEntry& e : s.entries) {
        const bool forced = e.verdict == report::Verdict::ForcesIdentity;
        if (e.map == "id" && !forced)
            s.identity_ok = false;
        if (e.contact_order >= 4 && !forced && !e.indistinguishable)
            s.high_order_ok = false;
        if (e.map.rfind("extremal3", 0) == 0 && forced)
            s.extremal_ok = false;
        s.all_rows_valid = s.all_rows_valid && e.rows_valid;
    }
    s.pass = s.identity_ok && s.high_order_ok && s.extremal_ok && s.all_rows_valid;
    return s;
}

} // namespace bsl::rigidity
