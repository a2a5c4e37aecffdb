#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pscope {

enum class ErrorKind {
    Config,
    DegenerateDenominator,
    ParityConditionUnsatisfiable,
    NegativeDiscriminant,
    SingularCapacitanceMatrix,
    SingularResponseMatrix,
    DegenerateResponse,
    ConvergenceFailure,
    LevelIdentificationFailure,
    StepTooLarge,
    GridTooCoarse,
    QuadratureNonconvergent,
};

/// Exception carrying a machine-readable error kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

std::string_view to_string(ErrorKind kind);

/// CLI exit status: 2 config, 3 physics condition, 4 numerical.
int exit_code(ErrorKind kind);

} // namespace pscope
