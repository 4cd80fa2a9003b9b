#include "bsl_cli/cli.hpp"

#include "bsl/error.hpp"
#include "bsl/numeric.hpp"
#include "bsl/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bsl::cli
{

namespace
{

[[noreturn]] void invalid(const std::string& field, const std::string& msg)
{
    fail(ErrorCode::ConfigInvalid, "field '" + field + "': " + msg);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

double to_double(const std::string& field, const std::string& text)
{
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    while (b < e && *b == ' ')
        ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        invalid(field, "not a number: '" + text + "'");
    return v;
}

long long to_int(const std::string& field, const std::string& text)
{
    long long v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size())
        invalid(field, "not an integer: '" + text + "'");
    return v;
}

const std::vector<std::string> kSubcommands{"kob", "cgeo", "schwarz", "riemann", "kahler", "rigidity", "suite"};

} // namespace

std::vector<double> parse_schedule(const std::string& spec)
{
    std::vector<double> out;
    if (spec.rfind("geometric:", 0) == 0) {
        const auto parts = split(spec.substr(10), ':');
        if (parts.size() != 3)
            invalid("schedule", "expected geometric:RATIO:FIRST:LAST");
        const double ratio = to_double("schedule", parts[0]);
        const auto first = to_int("schedule", parts[1]), last = to_int("schedule", parts[2]);
        if (!(ratio > 0 && ratio < 1))
            invalid("schedule", "ratio must lie in (0, 1)");
        if (first < 0 || last > 200)
            invalid("schedule", "exponent range out of bounds");
        if (first <= last)
            out = geometric_schedule(ratio, static_cast<int>(first), static_cast<int>(last));
    } else {
        const std::string body = spec.rfind("list:", 0) == 0 ? spec.substr(5) : spec;
        for (const std::string& s : split(body, ','))
            if (!s.empty())
                out.push_back(to_double("schedule", s));
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!(out[k] > 0 && out[k] < 1))
            invalid("schedule", "radius " + std::to_string(out[k]) + " outside (0, 1)");
        if (k > 0 && !(out[k] < out[k - 1]))
            invalid("schedule", "radii must be strictly decreasing (entry " + std::to_string(k) + ")");
    }
    return out;
}

void apply_field(RunConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "subcommand") {
        if (std::find(kSubcommands.begin(), kSubcommands.end(), value) == kSubcommands.end())
            invalid(key, "unknown subcommand '" + value + "'");
        cfg.subcommand = value;
    } else if (key == "domain")
        cfg.domain = value;
    else if (key == "map")
        cfg.map = value;
    else if (key == "metric")
        cfg.metric = value;
    else if (key == "schedule") {
        cfg.schedule = parse_schedule(value);
        cfg.schedule_spec = value;
    } else if (key == "out_dir")
        cfg.out_dir = value;
    else if (key == "format") {
        if (value != "csv" && value != "json" && value != "both")
            invalid(key, "expected csv, json or both");
        cfg.format = value;
    } else if (key == "seed") {
        const long long s = to_int(key, value);
        if (s < 0)
            invalid(key, "seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "jobs") {
        const long long j = to_int(key, value);
        if (j < 1 || j > 256)
            invalid(key, "jobs must lie in [1, 256]");
        cfg.jobs = static_cast<int>(j);
    } else if (key == "op")
        cfg.op = value;
    else if (key == "pipeline") {
        if (value != "convex" && value != "biholo")
            invalid(key, "expected convex or biholo");
        cfg.pipeline = value;
    } else if (key == "check") {
        if (value != "bg" && value != "squeeze" && value != "inj" && value != "threshold")
            invalid(key, "expected bg, squeeze, inj or threshold");
        cfg.check = value;
    } else if (key == "xi")
        cfg.xi = value;
    else if (key == "theta") {
        cfg.theta = to_double(key, value);
        if (!(cfg.theta > 0 && cfg.theta <= 1.5707963267948966))
            invalid(key, "theta must lie in (0, pi/2]");
    } else if (key == "points")
        cfg.points = value;
    else if (key == "count") {
        const long long c = to_int(key, value);
        if (c < 0 || c > 1000000)
            invalid(key, "count out of range");
        cfg.count = static_cast<int>(c);
    } else if (key == "params") {
        for (const std::string& item : split(value, ',')) {
            if (item.empty())
                continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                invalid(key, "expected name=value, got '" + item + "'");
            cfg.params[item.substr(0, eq)] = to_double(key, item.substr(eq + 1));
        }
    } else
        invalid(key, "unknown key");
}

void apply_json(RunConfig& cfg, const Json& obj)
{
    if (!obj.is_object())
        invalid("<root>", "config must be a JSON object");
    for (const auto& [key, val] : obj.items()) {
        if (key == "schedule" && val.is_array()) {
            std::string list = "list:";
            for (std::size_t k = 0; k < val.size(); ++k) {
                if (!val[k].is_number())
                    invalid(key, "array entries must be numbers");
                list += (k ? "," : "") + report::format_number(val[k].get<double>());
            }
            apply_field(cfg, key, list);
        } else if (key == "params" && val.is_object()) {
            for (const auto& [pk, pv] : val.items()) {
                if (!pv.is_number())
                    invalid("params." + pk, "must be a number");
                cfg.params[pk] = pv.get<double>();
            }
        } else if (val.is_string())
            apply_field(cfg, key, val.get<std::string>());
        else if (val.is_number_integer() || val.is_number_unsigned())
            apply_field(cfg, key, std::to_string(val.get<long long>()));
        else if (val.is_number())
            apply_field(cfg, key, report::format_number(val.get<double>()));
        else
            invalid(key, "unsupported value type");
    }
}

RunConfig load_config_file(const std::string& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::ConfigInvalid, "cannot open config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ConfigInvalid, path + ": " + e.what());
    }
    apply_json(base, j);
    return base;
}

RunConfig parse_config(int argc, const char* const* argv)
{
    CLI::App app{"bsl: boundary rigidity toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::pair<std::string, CLI::Option*>> flags;
    std::map<std::string, std::string> values;
    auto flag = [&](CLI::App* a, const std::string& key, const std::string& desc) {
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        flags.emplace_back(key, a->add_option("--" + name, values[key + "@" + a->get_name()], desc));
    };

    app.add_option("--config", config_path, "JSON config file");
    for (const char* key : {"seed", "out_dir", "jobs", "format"})
        flag(&app, key, key);

    std::map<std::string, std::vector<std::string>> per_sub{
        {"kob", {"domain", "op", "points", "count"}},
        {"cgeo", {"domain", "xi", "points"}},
        {"schwarz", {"map", "xi", "schedule"}},
        {"riemann", {"metric", "op", "params"}},
        {"kahler", {"metric", "domain", "check", "xi", "params"}},
        {"rigidity", {"pipeline", "domain", "map", "metric", "xi", "theta", "schedule", "params"}},
        {"suite", {"schedule"}},
    };
    for (const std::string& name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, name + " subcommand");
        sub->fallthrough();
        for (const std::string& key : per_sub[name])
            flag(sub, key, key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        throw;
    } catch (const CLI::ParseError& e) {
        fail(ErrorCode::ConfigInvalid, e.what());
    }

    RunConfig cfg;
    if (!config_path.empty())
        cfg = load_config_file(config_path, cfg);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    for (const auto& [key, opt] : flags)
        if (opt->count() > 0)
            apply_field(cfg, key, opt->as<std::string>());
    if (cfg.schedule.empty() && cfg.schedule_spec == RunConfig{}.schedule_spec)
        cfg.schedule = parse_schedule(cfg.schedule_spec);
    return cfg;
}

Json config_echo(const RunConfig& cfg)
{
    Json j;
    j["subcommand"] = cfg.subcommand;
    j["domain"] = cfg.domain;
    j["map"] = cfg.map;
    j["metric"] = cfg.metric;
    j["schedule"] = cfg.schedule_spec;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    j["jobs"] = cfg.jobs;
    j["op"] = cfg.op;
    j["pipeline"] = cfg.pipeline;
    j["check"] = cfg.check;
    j["xi"] = cfg.xi;
    j["theta"] = cfg.theta;
    j["points"] = cfg.points;
    j["count"] = cfg.count;
    Json p = Json::object();
    for (const auto& [k, v] : cfg.params)
        p[k] = v;
    j["params"] = p;
    return j;
}

} // namespace bsl::cli
