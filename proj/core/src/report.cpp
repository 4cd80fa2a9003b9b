#include "bsl/report.hpp"

#include "bsl/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace bsl::report
{

const char* to_string(Verdict v)
{
    return v == Verdict::ForcesIdentity ? "forces-identity" : "inconclusive";
}

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void PipelineReport::add_column(std::string name, std::string anchor, std::string source)
{
    if (anchor.find(',') != std::string::npos)
        fail(ErrorCode::InvalidArgument, "column anchor contains a comma: " + anchor);
    columns.push_back({std::move(name), std::move(anchor), std::move(source)});
}

int PipelineReport::column(const std::string& name) const
{
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k].name == name)
            return static_cast<int>(k);
    fail(ErrorCode::InvalidArgument, "report has no column " + name);
}

double PipelineReport::at(std::size_t row, const std::string& name) const
{
    return rows.at(row).at(static_cast<std::size_t>(column(name)));
}

std::vector<double> PipelineReport::series(const std::string& name) const
{
    const int c = column(name);
    std::vector<double> out;
    for (const auto& row : rows)
        out.push_back(row.at(static_cast<std::size_t>(c)));
    return out;
}

void PipelineReport::set_constant(const std::string& name, double value)
{
    for (auto& [k, v] : constants)
        if (k == name) {
            v = value;
            return;
        }
    constants.emplace_back(name, value);
}

double PipelineReport::constant(const std::string& name) const
{
    for (const auto& [k, v] : constants)
        if (k == name)
            return v;
    fail(ErrorCode::InvalidArgument, "report has no constant " + name);
}

void PipelineReport::add_check(std::string label, std::string lhs, std::string rhs, double slack)
{
    column(lhs);
    column(rhs);
    checks.push_back({std::move(label), std::move(lhs), std::move(rhs), slack, 0, 0});
}

void PipelineReport::evaluate_checks()
{
    for (RowCheck& c : checks) {
        c.checked = 0;
        c.violations = 0;
        const int a = column(c.lhs), b = column(c.rhs);
        for (const auto& row : rows) {
            const double l = row.at(static_cast<std::size_t>(a)), r = row.at(static_cast<std::size_t>(b));
            if (std::isnan(l) || std::isnan(r))
                continue;
            ++c.checked;
            if (!(l <= r + c.slack))
                ++c.violations;
        }
    }
}

bool PipelineReport::rows_valid() const
{
    for (const RowCheck& c : checks)
        if (c.violations > 0)
            return false;
    return true;
}

std::string PipelineReport::to_csv() const
{
    std::ostringstream os;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        os << (k ? "," : "") << columns[k].name;
        if (!columns[k].anchor.empty())
            os << " [" << columns[k].anchor << "]";
    }
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k)
            os << (k ? "," : "") << format_number(row[k]);
        os << "\n";
    }
    return os.str();
}

namespace
{

nlohmann::ordered_json number(double x)
{
    if (std::isfinite(x))
        return x;
    return format_number(x);
}

} // namespace

std::string PipelineReport::to_json(int indent) const
{
    nlohmann::ordered_json j;
    j["pipeline"] = pipeline;
    j["domain"] = domain;
    j["map"] = map;
    j["verdict"] = to_string(verdict);
    j["reason"] = reason;
    j["rows_valid"] = rows_valid();
    auto& consts = j["constants"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : constants)
        consts[k] = number(v);
    auto& cols = j["columns"] = nlohmann::ordered_json::array();
    for (const Column& c : columns)
        cols.push_back({{"name", c.name}, {"anchor", c.anchor}, {"source", c.source}});
    auto& chk = j["checks"] = nlohmann::ordered_json::array();
    for (const RowCheck& c : checks)
        chk.push_back({{"label", c.label},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"checked", c.checked},
                       {"violations", c.violations}});
    j["notes"] = notes;
    j["rows"] = rows.size();
    return j.dump(indent);
}

} // namespace bsl::report
