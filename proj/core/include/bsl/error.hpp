#ifndef BSL_ERROR_HPP
#define BSL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bsl
{

enum class ErrorCode
{
    InvalidArgument,
    PointOutsideDomain,
    NotOnBoundary,
    DegenerateGradient,
    ApexNotOnBoundary,
    TypeEstimateUnstable,
    NotConvex,
    RadiusTooLarge,
    CoincidentPoints,
    NumericDefectTooLarge,
    NoConstructiveInverse,
    NoConvergence,
    CoincidentAnchors,
    SamplingEmpty,
    NotSelfMap,
    SingularMetric,
    LeftChart,
    StepTooLarge,
    ShootingDiverged,
    NotUnit,
    EpsilonTooLarge,
    ZeroVector,
    ChartIncomplete,
    PositiveCurvatureUnsupported,
    RadiusOutOfRange,
    NotIsometry,
    PropertyBGFail,
    ConeUncertified,
    SuiteSoundnessViolation,
    BoundaryDataUnavailable,
    ConfigInvalid,
    IoFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

} // namespace bsl

#endif
