#include "parityscope/errors.hpp"

namespace pscope {

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::ParityConditionUnsatisfiable: return "ParityConditionUnsatisfiable";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::SingularCapacitanceMatrix: return "SingularCapacitanceMatrix";
    case ErrorKind::SingularResponseMatrix: return "SingularResponseMatrix";
    case ErrorKind::DegenerateResponse: return "DegenerateResponse";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::LevelIdentificationFailure: return "LevelIdentificationFailure";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::QuadratureNonconvergent: return "QuadratureNonconvergent";
    }
    return "UnknownError";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config:
        return 2;
    case ErrorKind::DegenerateDenominator:
    case ErrorKind::ParityConditionUnsatisfiable:
    case ErrorKind::NegativeDiscriminant:
    case ErrorKind::SingularCapacitanceMatrix:
    case ErrorKind::SingularResponseMatrix:
    case ErrorKind::DegenerateResponse:
        return 3;
    default:
        return 4;
    }
}

} // namespace pscope
