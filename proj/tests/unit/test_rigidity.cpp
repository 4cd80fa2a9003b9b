#include "bsl/error.hpp"
#include "bsl/numeric.hpp"
#include "bsl/rigidity.hpp"
#include "bsl_cli/cli.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace bsl;
using namespace bsl::rigidity;
using report::Verdict;

namespace
{

void check_registered(const PipelineReport& rep)
{
    const auto& reg = cli::column_registry();
    for (const report::Column& c : rep.columns) {
        CHECK_MESSAGE(std::find(reg.begin(), reg.end(), c.name) != reg.end(), c.name);
        CHECK(c.anchor.find(',') == std::string::npos);
        CHECK_FALSE(c.source.empty());
    }
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

const domain::Cone disk_cone{cvec({1.0}), cvec({-1.0}), std::numbers::pi / 3, 0.9};

} // namespace

TEST_SUITE("rigidity")
{
    TEST_CASE("convex pipeline on the disk")
    {
        const auto radii = geometric_schedule(0.5, 3, 14);
        const PipelineReport id = convex_pipeline(Domain::disk(), schwarz::identity_map(1), cvec({1.0}), radii);
        CHECK(id.verdict == Verdict::ForcesIdentity);
        CHECK(id.rows.size() == radii.size());
        CHECK(id.rows_valid());
        for (double c : id.series("composite"))
            CHECK(c == 0.0);
        check_registered(id);

        const PipelineReport ex = convex_pipeline(Domain::disk(), schwarz::extremal3(0.1), cvec({1.0}), radii);
        CHECK(ex.verdict == Verdict::Inconclusive);
        CHECK(ex.rows_valid());
        check_registered(ex);
        // every bound column dominates its measured column
        for (std::size_t n = 0; n < ex.rows.size(); ++n) {
            CHECK(ex.at(n, "K_upper") <= ex.at(n, "K_bound") + 1e-9);
            CHECK(ex.at(n, "disp_measured") <= ex.at(n, "disp_bound") * (1 + 1e-9));
            CHECK(ex.at(n, "eps_n") >= ex.at(n, "eps_lower") * (1 - 1e-9));
        }
    }

    TEST_CASE("convex pipeline on the ellipsoid")
    {
        const auto radii = geometric_schedule(0.5, 3, 12);
        const Domain egg = Domain::ellipsoid({1, 2});
        const PipelineReport id = convex_pipeline(egg, schwarz::identity_map(2), cvec({1.0, 0.0}), radii);
        CHECK(id.verdict == Verdict::ForcesIdentity);
        CHECK(id.rows_valid());
        const PipelineReport rot = convex_pipeline(egg, schwarz::ball_rotation(2, 0.1), cvec({1.0, 0.0}), radii);
        CHECK(rot.verdict == Verdict::Inconclusive);
        CHECK(rot.rows_valid());
    }

    TEST_CASE("convex pipeline errors and empty schedules")
    {
        CHECK(code_of([] { convex_pipeline(Domain::disk(), schwarz::contact_map(1, 2, 2.0), cvec({1.0}), {0.1}); }) ==
              ErrorCode::NotSelfMap);
        CHECK(convex_pipeline(Domain::disk(), schwarz::identity_map(1), cvec({1.0}), {}).rows.empty());
        CHECK(default_base_point(Domain::disk()).norm() < 1e-12);
    }

    TEST_CASE("biholomorphism pipeline")
    {
        const auto radii = geometric_schedule(0.5, 3, 8);
        const PipelineReport id =
            biholo_pipeline(Domain::disk(), schwarz::identity_map(1), riemann::poincare(), disk_cone, radii);
        CHECK(id.verdict == Verdict::ForcesIdentity);
        CHECK(id.rows_valid());
        for (double d : id.series("disp_t"))
            CHECK(d == doctest::Approx(0.0).epsilon(1e-12));
        check_registered(id);

        // the rotation fixes the default base point 0, so move z_0 off it
        const PipelineReport rot = biholo_pipeline(Domain::disk(), schwarz::rotation(1e-3), riemann::poincare(),
                                                   disk_cone, radii, cvec({0.3}));
        CHECK(rot.verdict == Verdict::Inconclusive);
        CHECK(rot.rows_valid());
        CHECK(rot.series("d_z0").front() > 0);
        check_registered(rot);
    }

    TEST_CASE("biholomorphism pipeline preconditions")
    {
        const auto radii = geometric_schedule(0.5, 3, 5);
        const domain::Cone outward{cvec({1.0}), cvec({1.0}), std::numbers::pi / 3, 0.9};
        CHECK(code_of([&] {
                  biholo_pipeline(Domain::disk(), schwarz::identity_map(1), riemann::poincare(), outward, radii);
              }) == ErrorCode::ConeUncertified);
        CHECK(code_of([&] {
                  biholo_pipeline(Domain::disk(), schwarz::identity_map(1), riemann::euclid(2), disk_cone, radii);
              }) == ErrorCode::PropertyBGFail);
        CHECK(code_of([&] {
                  biholo_pipeline(Domain::disk(), schwarz::parse_map_spec("square", 1), riemann::poincare(), disk_cone,
                                  radii);
              }) == ErrorCode::NotIsometry);
        CHECK(biholo_pipeline(Domain::disk(), schwarz::identity_map(1), riemann::poincare(), disk_cone, {}).rows.empty());
    }

    TEST_CASE("ball zoo is certified")
    {
        const auto zoo = ball_zoo();
        CHECK(zoo.size() >= 4);
        CHECK(zoo.front().identity);
    }
}
