#ifndef BSL_REPORT_HPP
#define BSL_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace bsl::report
{

enum class Verdict
{
    ForcesIdentity,
    Inconclusive,
};

const char* to_string(Verdict v);

struct Column
{
    std::string name;
    // Formula the column evaluates; never contains a comma so it can sit in a CSV header.
    std::string anchor;
    // Operation that produced the values.
    std::string source;
};

// Row-wise inequality lhs <= rhs + slack; rows where either side is NaN are skipped.
struct RowCheck
{
    std::string label;
    std::string lhs;
    std::string rhs;
    double slack = 0.0;
    int checked = 0;
    int violations = 0;
};

struct PipelineReport
{
    std::string pipeline;
    std::string domain;
    std::string map;
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> constants;
    std::vector<RowCheck> checks;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;

    void add_column(std::string name, std::string anchor, std::string source);
    int column(const std::string& name) const;
    double at(std::size_t row, const std::string& name) const;
    std::vector<double> series(const std::string& name) const;
    void set_constant(const std::string& name, double value);
    double constant(const std::string& name) const;

    void add_check(std::string label, std::string lhs, std::string rhs, double slack = 0.0);
    // Evaluates every check against the current rows.
    void evaluate_checks();
    bool rows_valid() const;

    std::string to_csv() const;
    std::string to_json(int indent = 2) const;
};

// A double formatted with %.17g, or "nan"/"inf".
std::string format_number(double x);

} // namespace bsl::report

#endif
