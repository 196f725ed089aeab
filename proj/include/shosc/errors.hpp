#pragma once

#include <stdexcept>
#include <string>

namespace shosc {

/// Invalid model, truncation or family parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An intermediate or final value left the representable floating range.
class NumericRangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// An infinite sum could not be cut below the requested tail bound before the hard cap.
class TailBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative eigensolver did not converge within its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace shosc
