#ifndef BSL_CLI_CLI_HPP
#define BSL_CLI_CLI_HPP

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bsl::cli
{

using Json = nlohmann::ordered_json;

struct RunConfig
{
    std::string subcommand;
    std::string domain = "disk";
    std::string map = "id";
    std::string metric = "poincare";
    std::string schedule_spec = "geometric:0.5:3:14";
    std::vector<double> schedule;
    std::string out_dir;
    std::string format = "both";
    std::uint64_t seed = 42;
    int jobs = 1;

    // subcommand specific
    std::string op;
    std::string pipeline = "convex";
    std::string check = "bg";
    std::string xi;
    double theta = 1.0471975511965976;
    std::string points;
    int count = 16;
    std::map<std::string, double> params;
};

// "geometric:RATIO:FIRST:LAST" or "list:r1,r2,..." or a bare comma list.
std::vector<double> parse_schedule(const std::string& spec);

// Sets one field from its textual value; unknown keys and malformed values throw ConfigInvalid.
void apply_field(RunConfig& cfg, const std::string& key, const std::string& value);

// Applies a JSON object of fields; schedule may be a string or an array of radii.
void apply_json(RunConfig& cfg, const Json& obj);

RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Flags override the config file, which overrides defaults.
RunConfig parse_config(int argc, const char* const* argv);

Json config_echo(const RunConfig& cfg);

struct Artifacts
{
    std::string csv;
    Json json;
    // 0 pass, 1 a checked inequality failed
    int status = 0;
};

Artifacts run(const RunConfig& cfg);

// Writes <subcommand>.csv and <subcommand>.json under out_dir, or prints to stdout without one.
void emit_report(const RunConfig& cfg, const Artifacts& art);

// Full command: parse, run, emit. Returns the process exit code.
int main_entry(int argc, const char* const* argv);

// Column names every pipeline may emit; report headers are checked against it.
const std::vector<std::string>& column_registry();

} // namespace bsl::cli

#endif
