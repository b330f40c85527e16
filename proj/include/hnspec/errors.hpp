#pragma once
#include <stdexcept>
#include <string>

namespace hnspec {

// Every failure class the library can raise. The CLI maps these onto exit codes,
// so numerical failures never get reported as usage or validation problems.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

struct NumericalError : Error { using Error::Error; };
struct ToleranceError : NumericalError { using NumericalError::NumericalError; };
struct ZeroCrossingError : NumericalError { using NumericalError::NumericalError; };
struct BracketError : NumericalError { using NumericalError::NumericalError; };
struct BisectionError : NumericalError { using NumericalError::NumericalError; };
struct NotAnEigenvalueError : NumericalError { using NumericalError::NumericalError; };
struct GridError : NumericalError { using NumericalError::NumericalError; };
struct AsymptoticsError : NumericalError { using NumericalError::NumericalError; };
struct TailError : NumericalError { using NumericalError::NumericalError; };
struct ConvergenceError : NumericalError { using NumericalError::NumericalError; };

}  // namespace hnspec
