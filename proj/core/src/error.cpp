#include "bsl/error.hpp"

namespace bsl
{

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::ApexNotOnBoundary: return "ApexNotOnBoundary";
    case ErrorCode::TypeEstimateUnstable: return "TypeEstimateUnstable";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NumericDefectTooLarge: return "NumericDefectTooLarge";
    case ErrorCode::NoConstructiveInverse: return "NoConstructiveInverse";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::CoincidentAnchors: return "CoincidentAnchors";
    case ErrorCode::SamplingEmpty: return "SamplingEmpty";
    case ErrorCode::NotSelfMap: return "NotSelfMap";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::LeftChart: return "LeftChart";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ShootingDiverged: return "ShootingDiverged";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ChartIncomplete: return "ChartIncomplete";
    case ErrorCode::PositiveCurvatureUnsupported: return "PositiveCurvatureUnsupported";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::PropertyBGFail: return "PropertyBGFail";
    case ErrorCode::ConeUncertified: return "ConeUncertified";
    case ErrorCode::SuiteSoundnessViolation: return "SuiteSoundnessViolation";
    case ErrorCode::BoundaryDataUnavailable: return "BoundaryDataUnavailable";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace bsl
