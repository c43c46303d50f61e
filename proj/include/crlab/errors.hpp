#pragma once
#include <stdexcept>
#include <string>

namespace crlab {

// Base for every numerical failure raised by the library.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChartDomainError : NumericalError { using NumericalError::NumericalError; };
struct StepSizeError : NumericalError { using NumericalError::NumericalError; };
struct SingularPointError : NumericalError { using NumericalError::NumericalError; };
struct DegenerateChartError : NumericalError { using NumericalError::NumericalError; };
struct HcrZeroError : NumericalError { using NumericalError::NumericalError; };
struct SupportError : NumericalError { using NumericalError::NumericalError; };
struct FitIllConditionedError : NumericalError { using NumericalError::NumericalError; };

// Malformed user input (surface documents, CLI arguments).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crlab
