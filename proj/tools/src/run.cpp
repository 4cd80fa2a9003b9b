#include "bsl_cli/cli.hpp"

#include "bsl/cgeo.hpp"
#include "bsl/domain.hpp"
#include "bsl/error.hpp"
#include "bsl/kahler.hpp"
#include "bsl/kobayashi.hpp"
#include "bsl/numeric.hpp"
#include "bsl/report.hpp"
#include "bsl/riemann.hpp"
#include "bsl/rigidity.hpp"
#include "bsl/schwarz.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsl::cli
{

namespace
{

using report::format_number;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Json num(double x)
{
    if (std::isfinite(x))
        return x;
    return format_number(x);
}

double param(const RunConfig& cfg, const std::string& key, double fallback)
{
    const auto it = cfg.params.find(key);
    return it == cfg.params.end() ? fallback : it->second;
}

std::vector<double> radii_of(const RunConfig& cfg)
{
    return cfg.schedule.empty() ? parse_schedule(cfg.schedule_spec) : cfg.schedule;
}

// "1,0" or "0.5:0.2,0": comma separated coordinates, each re or re:im.
CVec parse_point(const std::string& text, int dim, const std::string& field)
{
    std::vector<cplx> zs;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        try {
            if (colon == std::string::npos)
                zs.emplace_back(std::stod(item), 0.0);
            else
                zs.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigInvalid, "field '" + field + "': bad coordinate '" + item + "'");
        }
    }
    if (static_cast<int>(zs.size()) != dim)
        fail(ErrorCode::ConfigInvalid,
             "field '" + field + "': expected " + std::to_string(dim) + " coordinates, got " + std::to_string(zs.size()));
    CVec z(dim);
    for (int j = 0; j < dim; ++j)
        z[j] = zs[static_cast<std::size_t>(j)];
    return z;
}

CVec xi_or_default(const RunConfig& cfg, int dim)
{
    if (!cfg.xi.empty())
        return parse_point(cfg.xi, dim, "xi");
    CVec xi = CVec::Zero(dim);
    xi[0] = 1.0;
    return xi;
}

std::vector<std::vector<double>> read_points(const std::string& path, std::size_t width)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::IoFailure, "cannot read points file " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        try {
            while (std::getline(ls, cell, ','))
                row.push_back(std::stod(cell));
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigInvalid, path + ":" + std::to_string(lineno) + ": not a number");
        }
        if (row.size() != width)
            fail(ErrorCode::ConfigInvalid, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(width) +
                                               " values, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

CVec from_pairs(const std::vector<double>& row, std::size_t offset, int dim)
{
    CVec z(dim);
    for (int j = 0; j < dim; ++j)
        z[j] = cplx(row[offset + 2 * j], row[offset + 2 * j + 1]);
    return z;
}

CVec random_interior(const domain::Domain& dom, Rng& rng)
{
    const int d = dom.dim();
    CVec u(d);
    for (int j = 0; j < d; ++j)
        u[j] = cplx(rng.normal(), rng.normal());
    u /= u.norm();
    const CVec c = dom.center();
    return c + 0.95 * rng.uniform() * dom.ray_exit(c, u) * u;
}

void coord_header(std::ostringstream& out, const std::string& name, int dim)
{
    for (int j = 1; j <= dim; ++j)
        out << name << j << "_re," << name << j << "_im,";
}

void coord_cells(std::ostringstream& out, const CVec& z)
{
    for (int j = 0; j < z.size(); ++j)
        out << format_number(z[j].real()) << ',' << format_number(z[j].imag()) << ',';
}

Artifacts run_kob(const RunConfig& cfg)
{
    const domain::Domain dom = domain::parse_domain_spec(cfg.domain);
    const int d = dom.dim();
    const std::string op = cfg.op.empty() ? "dist" : cfg.op;
    if (op != "dist" && op != "metric" && op != "ball")
        fail(ErrorCode::ConfigInvalid, "field 'op': expected metric, dist or ball");

    const std::size_t width = op == "ball" ? 2 * d + 1 : 4 * d;
    std::vector<std::vector<double>> rows;
    if (!cfg.points.empty())
        rows = read_points(cfg.points, width);
    else {
        Rng rng(cfg.seed);
        for (int k = 0; k < cfg.count; ++k) {
            std::vector<double> row;
            const RVec a = to_real(random_interior(dom, rng));
            RVec b = to_real(random_interior(dom, rng));
            if (op == "metric")
                b = to_real(CVec(to_complex(b) / to_complex(b).norm()));
            const CVec za = to_complex(a), zb = to_complex(b);
            for (int j = 0; j < d; ++j)
                row.insert(row.end(), {za[j].real(), za[j].imag()});
            if (op == "ball")
                row.push_back(0.5 * domain::boundary_distance(dom, za));
            else
                for (int j = 0; j < d; ++j)
                    row.insert(row.end(), {zb[j].real(), zb[j].imag()});
            rows.push_back(std::move(row));
        }
    }

    std::ostringstream csv;
    coord_header(csv, op == "ball" ? "p" : "z", d);
    if (op == "ball")
        csv << "rho,eps_certified,eps_exact,pass\n";
    else {
        coord_header(csv, op == "metric" ? "v" : "w", d);
        csv << "lower,upper,exact,pass\n";
    }

    int failures = 0;
    for (const auto& row : rows) {
        const CVec z = from_pairs(row, 0, d);
        coord_cells(csv, z);
        bool pass = true;
        if (op == "ball") {
            const double rho = row[2 * d];
            const double eps = kobayashi::kob_ball_inclusion(dom, z, rho);
            const double exact = dom.kind() == domain::Kind::Disk ? kobayashi::disk_ball_inclusion_exact(z[0], rho) : kNaN;
            pass = eps > 0 && (std::isnan(exact) || eps <= exact * (1 + 1e-12));
            csv << format_number(rho) << ',' << format_number(eps) << ',' << format_number(exact);
        } else {
            const CVec w = from_pairs(row, 2 * d, d);
            coord_cells(csv, w);
            const DistInterval iv = op == "metric" ? kobayashi::metric_bounds(dom, z, w) : kobayashi::dist_bounds(dom, z, w);
            double exact = kNaN;
            if (dom.is_model())
                exact = op == "metric" ? kobayashi::model_metric(dom, z, w) : kobayashi::model_dist(dom, z, w);
            pass = iv.lower <= iv.upper && (std::isnan(exact) || iv.contains(exact, 1e-9 * (1 + exact)));
            csv << format_number(iv.lower) << ',' << format_number(iv.upper) << ',' << format_number(exact);
        }
        csv << ',' << (pass ? 1 : 0) << '\n';
        failures += pass ? 0 : 1;
    }

    Artifacts art;
    art.csv = csv.str();
    art.json["rows"] = rows.size();
    art.json["failures"] = failures;
    art.status = failures ? 1 : 0;
    return art;
}

Artifacts run_cgeo(const RunConfig& cfg)
{
    const domain::Domain dom = domain::parse_domain_spec(cfg.domain);
    const int d = dom.dim();
    CVec z = dom.center(), w;
    if (!cfg.points.empty()) {
        const auto rows = read_points(cfg.points, 4 * d);
        if (rows.empty())
            fail(ErrorCode::SamplingEmpty, "points file holds no pair");
        z = from_pairs(rows.front(), 0, d);
        w = from_pairs(rows.front(), 2 * d, d);
    } else {
        const CVec xi = xi_or_default(cfg, d);
        w = z + 0.5 * (xi - z);
    }
    const cgeo::ComplexGeodesic geo = cgeo::complex_geodesic(dom, z, w);
    const cgeo::HyperplaneProbe probe = cgeo::boundary_hyperplane_probe(geo, dom, 1.0, cgeo::probe_schedule());

    std::ostringstream csv;
    csv << "k,r,";
    coord_header(csv, "b", d);
    csv << "residual,normal_angle\n";
    for (std::size_t k = 0; k < probe.rows.size(); ++k) {
        const cgeo::ProbeRow& row = probe.rows[k];
        csv << k + 1 << ',' << format_number(row.r) << ',';
        coord_cells(csv, row.boundary_point);
        csv << format_number(row.residual) << ',' << format_number(row.normal_angle) << '\n';
    }

    Artifacts art;
    art.csv = csv.str();
    art.json["tag"] = cgeo::to_string(geo.tag);
    art.json["isometry_defect"] = num(geo.defect);
    art.json["s"] = num(geo.s);
    art.json["final_residual"] = num(probe.rows.back().residual);
    Json normal = Json::array();
    for (int j = 0; j < d; ++j)
        normal.push_back({num(probe.limit.normal[j].real()), num(probe.limit.normal[j].imag())});
    art.json["limit_normal"] = normal;
    art.status = probe.rows.back().residual < 1e-3 ? 0 : 1;
    return art;
}

Artifacts from_report(const report::PipelineReport& rep)
{
    Artifacts art;
    art.csv = rep.to_csv();
    art.json = Json::parse(rep.to_json());
    art.status = rep.rows_valid() ? 0 : 1;
    return art;
}

Artifacts run_schwarz(const RunConfig& cfg)
{
    const schwarz::HoloMap f = schwarz::parse_map_spec(cfg.map, 1);
    schwarz::DiskPipelineOptions opts;
    opts.xi = xi_or_default(cfg, 1)[0];
    return from_report(schwarz::disk_rigidity_pipeline(f, radii_of(cfg), opts));
}

riemann::TangentPoint default_start(const riemann::MetricField& m, const RunConfig& cfg)
{
    const int n = m.dim();
    riemann::TangentPoint p{RVec::Zero(n), RVec::Zero(n)};
    // the sphere chart loses radial geodesics through the origin, so start on the unit circle
    if (m.kappa_model() && *m.kappa_model() > 0) {
        p.x[0] = 1.0;
        p.v[1] = 1.0;
    } else
        p.v[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        p.x[i] = param(cfg, "x" + std::to_string(i), p.x[i]);
        p.v[i] = param(cfg, "v" + std::to_string(i), p.v[i]);
    }
    const double s = riemann::norm_g(m, p.x, p.v);
    if (!(s > 0))
        fail(ErrorCode::ZeroVector, "initial velocity vanishes");
    p.v /= s;
    return p;
}

// Unit vector at p.x making angle phi with p.v inside the (v, e) plane, e the next coordinate direction.
RVec rotate_unit(const riemann::MetricField& m, const riemann::TangentPoint& p, double phi)
{
    const RMat g = m.metric(p.x);
    RVec e = RVec::Zero(m.dim());
    int k = 0;
    for (int i = 0; i < m.dim(); ++i)
        if (std::abs(p.v[i]) < std::abs(p.v[k]))
            k = i;
    e[k] = 1.0;
    e -= p.v.dot(g * e) * p.v;
    e /= std::sqrt(e.dot(g * e));
    return std::cos(phi) * p.v + std::sin(phi) * e;
}

Artifacts run_riemann(const RunConfig& cfg)
{
    const riemann::MetricPtr m = riemann::make_metric(cfg.metric);
    const std::string op = cfg.op.empty() ? "flow" : cfg.op;
    const riemann::TangentPoint start = default_start(*m, cfg);
    const int n = m->dim();
    Artifacts art;
    std::ostringstream csv;

    if (op == "flow") {
        riemann::FlowOptions fo;
        fo.h = param(cfg, "h", 1e-3);
        fo.richardson = param(cfg, "richardson", 0) != 0;
        const double horizon = param(cfg, "horizon", 10.0);
        const auto path = riemann::geodesic_flow(*m, start, horizon, fo);
        const auto stride = static_cast<std::size_t>(std::max(1.0, param(cfg, "stride", 100)));
        csv << "t,";
        for (int i = 0; i < n; ++i)
            csv << 'x' << i << ',';
        for (int i = 0; i < n; ++i)
            csv << 'v' << i << ',';
        csv << "speed_drift\n";
        for (std::size_t k = 0; k < path.t.size(); ++k) {
            if (k % stride && k + 1 != path.t.size())
                continue;
            csv << format_number(path.t[k]) << ',';
            for (int i = 0; i < n; ++i)
                csv << format_number(path.x[k][i]) << ',';
            for (int i = 0; i < n; ++i)
                csv << format_number(path.v[k][i]) << ',';
            csv << format_number(std::abs(riemann::norm_g(*m, path.x[k], path.v[k]) - 1.0)) << '\n';
        }
        art.json["max_drift"] = num(path.max_drift);
        if (path.richardson_error)
            art.json["richardson_error"] = num(*path.richardson_error);
        art.status = path.max_drift < 1e-6 ? 0 : 1;
    } else if (op == "jacobi") {
        const double horizon = param(cfg, "horizon", 4.0);
        const auto path = riemann::geodesic_flow(*m, start, horizon);
        const RVec dj0 = rotate_unit(*m, start, std::numbers::pi / 2);
        const auto rep = riemann::jacobi_flow(*m, path, RVec::Zero(n), dj0);
        const auto stride = static_cast<std::size_t>(std::max(1.0, param(cfg, "stride", 100)));
        csv << "t,f,bound\n";
        for (std::size_t k = 0; k < rep.t.size(); ++k) {
            if (k % stride && k + 1 != rep.t.size())
                continue;
            csv << format_number(rep.t[k]) << ',' << format_number(rep.f[k]) << ','
                << format_number(rep.f[0] * std::exp((rep.kappa + 1) * rep.t[k] / 2)) << '\n';
        }
        art.json["kappa"] = num(rep.kappa);
        art.json["max_ratio"] = num(rep.max_ratio);
        art.json["pass"] = rep.pass;
        art.status = rep.pass ? 0 : 1;
    } else if (op == "spread") {
        const double phi = param(cfg, "phi", 0.5);
        const double horizon = param(cfg, "horizon", 3.0);
        const riemann::TangentPoint other{start.x, rotate_unit(*m, start, phi)};
        const double kappa = m->kappa_model() ? std::abs(*m->kappa_model())
                                              : riemann::measured_kappa(*m, riemann::geodesic_flow(*m, start, horizon));
        const auto rep = riemann::spread_check(*m, start, other, kappa, horizon, static_cast<int>(param(cfg, "grid", 6)));
        csv << "t,lhs,rhs,pass\n";
        for (const auto& row : rep.rows)
            csv << format_number(row.t) << ',' << format_number(row.lhs) << ',' << format_number(row.rhs) << ','
                << (row.pass ? 1 : 0) << '\n';
        art.json["kappa"] = num(kappa);
        art.json["d_t1"] = num(rep.d_t1);
        art.json["pass"] = rep.pass;
        art.status = rep.pass ? 0 : 1;
    } else if (op == "backward") {
        const double phi = param(cfg, "phi", 0.05);
        const riemann::TangentPoint other{start.x, rotate_unit(*m, start, phi)};
        double eps = param(cfg, "eps", 0.2);
        const int halvings = static_cast<int>(param(cfg, "halvings", 4));
        csv << "eps,ratio,d_t1,max_dist\n";
        double first = kNaN, last = kNaN;
        for (int k = 0; k <= halvings; ++k, eps /= 2) {
            const auto s = riemann::backward_estimate(*m, start, other, eps);
            csv << format_number(eps) << ',' << format_number(s.ratio) << ',' << format_number(s.d_t1) << ','
                << format_number(s.max_dist) << '\n';
            if (k == 0)
                first = s.ratio;
            last = s.ratio;
        }
        const bool stable = std::isfinite(first) && std::isfinite(last) && std::abs(last / first - 1) <= 0.1;
        art.json["ratio_first"] = num(first);
        art.json["ratio_last"] = num(last);
        art.json["stable"] = stable;
        art.status = stable ? 0 : 1;
    } else
        fail(ErrorCode::ConfigInvalid, "field 'op': expected flow, jacobi, spread or backward");

    art.csv = csv.str();
    art.json["metric"] = m->name();
    art.json["op"] = op;
    return art;
}

Artifacts run_kahler(const RunConfig& cfg)
{
    Artifacts art;
    Json& j = art.json;
    j["check"] = cfg.check;
    if (cfg.check == "bg") {
        const domain::Domain dom = domain::parse_domain_spec(cfg.domain);
        const riemann::MetricPtr m = riemann::make_metric(cfg.metric);
        kahler::BGSamplePlan plan;
        plan.seed = cfg.seed;
        const kahler::BGReport rep = kahler::property_bg_estimate(*m, dom, plan);
        j["metric"] = m->name();
        j["domain"] = dom.name();
        j["kappa_est"] = num(rep.kappa_est);
        j["A_est"] = num(rep.A_est);
        j["a_est"] = num(rep.a_est);
        j["min_increment_ratio"] = num(rep.min_increment_ratio);
        j["bounds_ok"] = rep.bounds_ok;
        j["complete"] = rep.complete;
        j["pass"] = rep.pass;
        j["samples"] = rep.samples;
        art.status = rep.pass ? 0 : 1;
    } else if (cfg.check == "squeeze") {
        const domain::Domain dom = domain::parse_domain_spec(cfg.domain);
        const CVec z = cfg.xi.empty() ? dom.center() : parse_point(cfg.xi, dom.dim(), "xi");
        j["domain"] = dom.name();
        j["squeezing_lower"] = num(kahler::squeezing_lower_bound(dom, z));
    } else if (cfg.check == "inj") {
        const double vol = param(cfg, "V", std::numeric_limits<double>::infinity());
        const double kappa = param(cfg, "kappa", 1.0), r = param(cfg, "r", 0.1);
        const int d = static_cast<int>(param(cfg, "d", 1));
        j["inj_lower"] = num(kahler::cgt_inj_lower(vol, kappa, r, d));
        j["V"] = num(vol);
        j["kappa"] = num(kappa);
        j["r"] = num(r);
        j["d"] = d;
    } else {
        const int d = static_cast<int>(param(cfg, "d", 1));
        const double kappa = param(cfg, "kappa", 1.0), A = param(cfg, "A", 1.0);
        const double theta = param(cfg, "theta", std::numbers::pi / 2);
        const bool pos = param(cfg, "positive_injectivity", 0) != 0;
        j["threshold"] = num(kahler::rigidity_threshold(d, kappa, A, theta, pos));
    }
    std::ostringstream csv;
    csv << "key,value\n";
    for (const auto& [k, v] : j.items())
        csv << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    art.csv = csv.str();
    return art;
}

Artifacts run_rigidity(const RunConfig& cfg)
{
    const domain::Domain dom = domain::parse_domain_spec(cfg.domain);
    const int d = dom.dim();
    const schwarz::HoloMap f = schwarz::parse_map_spec(cfg.map, d);
    const CVec xi = xi_or_default(cfg, d);
    rigidity::BiholoOptions opts;
    opts.seed = cfg.seed;
    if (cfg.pipeline == "convex")
        return from_report(rigidity::convex_pipeline(dom, f, xi, radii_of(cfg), opts));

    const std::string mspec = cfg.metric.empty() || cfg.metric == RunConfig{}.metric
                                  ? (d == 1 ? std::string("poincare") : "bergman-ball:" + std::to_string(d))
                                  : cfg.metric;
    const domain::BoundaryData bd = domain::boundary_data(dom, xi);
    const domain::Cone cone{xi, bd.inward_normal, cfg.theta, param(cfg, "cone_length", 0.9)};
    return from_report(rigidity::biholo_pipeline(dom, f, riemann::make_metric(mspec), cone, radii_of(cfg), std::nullopt, opts));
}

Artifacts run_suite(const RunConfig& cfg)
{
    rigidity::PipelineOptions opts;
    opts.seed = cfg.seed;
    const rigidity::SuiteSummary s = rigidity::counterexample_suite(radii_of(cfg), opts);
    std::ostringstream csv;
    csv << "pipeline,domain,map,verdict,interior_displacement,rows_valid,indistinguishable,contact_order\n";
    Json entries = Json::array();
    for (const auto& e : s.entries) {
        csv << e.pipeline << ',' << e.domain << ',' << e.map << ',' << report::to_string(e.verdict) << ','
            << format_number(e.interior_displacement) << ',' << (e.rows_valid ? 1 : 0) << ','
            << (e.indistinguishable ? 1 : 0) << ',' << e.contact_order << '\n';
        entries.push_back({{"pipeline", e.pipeline},
                           {"domain", e.domain},
                           {"map", e.map},
                           {"verdict", report::to_string(e.verdict)}});
    }
    Artifacts art;
    art.csv = csv.str();
    art.json["identity_ok"] = s.identity_ok;
    art.json["high_order_ok"] = s.high_order_ok;
    art.json["extremal_ok"] = s.extremal_ok;
    art.json["all_rows_valid"] = s.all_rows_valid;
    art.json["pass"] = s.pass;
    art.json["entries"] = entries;
    art.status = s.pass ? 0 : 1;
    return art;
}

} // namespace

Artifacts run(const RunConfig& cfg)
{
    Artifacts art;
    if (cfg.subcommand == "kob")
        art = run_kob(cfg);
    else if (cfg.subcommand == "cgeo")
        art = run_cgeo(cfg);
    else if (cfg.subcommand == "schwarz")
        art = run_schwarz(cfg);
    else if (cfg.subcommand == "riemann")
        art = run_riemann(cfg);
    else if (cfg.subcommand == "kahler")
        art = run_kahler(cfg);
    else if (cfg.subcommand == "rigidity")
        art = run_rigidity(cfg);
    else if (cfg.subcommand == "suite")
        art = run_suite(cfg);
    else
        fail(ErrorCode::ConfigInvalid, "unknown subcommand '" + cfg.subcommand + "'");
    Json out;
    out["config"] = config_echo(cfg);
    out["status"] = art.status == 0 ? "pass" : "fail";
    out["result"] = std::move(art.json);
    art.json = std::move(out);
    return art;
}

void emit_report(const RunConfig& cfg, const Artifacts& art)
{
    const bool csv = cfg.format != "json", json = cfg.format != "csv";
    const std::string body = art.json.dump(2) + "\n";
    if (cfg.out_dir.empty()) {
        if (csv)
            std::cout << art.csv;
        if (json)
            std::cout << body;
        std::cout.flush();
        if (!std::cout)
            fail(ErrorCode::IoFailure, "cannot write to stdout");
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec)
        fail(ErrorCode::IoFailure, "cannot create " + cfg.out_dir + ": " + ec.message());
    auto write = [&](const std::string& ext, const std::string& text) {
        const auto path = std::filesystem::path(cfg.out_dir) / (cfg.subcommand + ext);
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out)
            fail(ErrorCode::IoFailure, "cannot write " + path.string());
    };
    if (csv)
        write(".csv", art.csv);
    if (json)
        write(".json", body);
}

int main_entry(int argc, const char* const* argv)
{
    try {
        const RunConfig cfg = parse_config(argc, argv);
        const Artifacts art = run(cfg);
        emit_report(cfg, art);
        return art.status;
    } catch (const CLI::CallForHelp&) {
        return 0;
    } catch (const Error& e) {
        std::cerr << "bsl: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "bsl: " << e.what() << '\n';
        return 2;
    }
}

const std::vector<std::string>& column_registry()
{
    static const std::vector<std::string> names{
        "n",         "r_n",        "p_n",      "K_0_p",     "K_0_p_bound", "K_upper",  "K_bound",    "E_5r4",
        "disp_measured", "disp_bound", "eps_n", "eps_lower", "e4K",         "e4K_bound", "composite", "term",
        "delta_p",   "delta_bound", "d_p_p0",  "path_len",  "cone_bound",  "T_n",      "T_bound",    "tau_n",
        "tau_bound", "disp_t",     "beta_n",   "dT1",       "dT1_bound",   "dT1_power", "product",   "d_z0",
    };
    return names;
}

} // namespace bsl::cli
