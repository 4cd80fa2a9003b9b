#ifndef BSL_RIGIDITY_HPP
#define BSL_RIGIDITY_HPP

#include "bsl/domain.hpp"
#include "bsl/report.hpp"
#include "bsl/riemann.hpp"
#include "bsl/schwarz.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bsl::rigidity
{

using domain::Domain;
using report::PipelineReport;
using schwarz::HoloMap;

struct PipelineOptions
{
    double threshold = 1e-6;
    int window = 5;
    // the small epsilon in the (1 + eps) and (2 + eps) factors
    double eps = 0.05;
    int disp_samples = 64;
    std::uint64_t seed = 42;
};

// Point of maximal boundary distance among the domain center and a few sampled candidates.
CVec default_base_point(const Domain& dom);

PipelineReport convex_pipeline(const Domain& dom, const HoloMap& f, const CVec& xi, const std::vector<double>& radii,
                               const PipelineOptions& opts = {});

struct BiholoOptions : PipelineOptions
{
    int isometry_pairs = 16;
    double isometry_tol = 1e-6;
    int cone_grid = 16;
    int path_grid = 8;
};

// The cone apex is the boundary point; p_n = apex + r_n direction.
PipelineReport biholo_pipeline(const Domain& dom, const HoloMap& phi, riemann::MetricPtr metric,
                               const domain::Cone& cone, const std::vector<double>& radii,
                               std::optional<CVec> z0 = std::nullopt, const BiholoOptions& opts = {});

struct SuiteEntry
{
    std::string pipeline;
    std::string domain;
    std::string map;
    report::Verdict verdict = report::Verdict::Inconclusive;
    double interior_displacement = 0.0;
    bool rows_valid = false;
    // displacement below 1e-4 on the interior grid
    bool indistinguishable = false;
    int contact_order = 0;
};

struct SuiteSummary
{
    std::vector<SuiteEntry> entries;
    // identity got forces-identity everywhere
    bool identity_ok = false;
    // every order >= 4 self-map got forces-identity or is indistinguishable from id
    bool high_order_ok = false;
    // the order-3 disk extremal map stayed inconclusive
    bool extremal_ok = false;
    bool all_rows_valid = false;
    bool pass = false;
};

// Throws SuiteSoundnessViolation when a map that moves interior points by more than 1e-4 gets forces-identity.
SuiteSummary counterexample_suite(const std::vector<double>& radii, const PipelineOptions& opts = {});

// Certified self-maps of Ball(2) used by the suite.
std::vector<HoloMap> ball_zoo();

} // namespace bsl::rigidity

#endif
