#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace shosc {

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
using ExactScalar = boost::multiprecision::cpp_rational;
using ExactInteger = boost::multiprecision::cpp_int;

inline ExactScalar rational(std::int64_t numerator, std::int64_t denominator = 1) {
    return ExactScalar(ExactInteger(numerator), ExactInteger(denominator));
}

inline double to_double(const ExactScalar& value) {
    return value.convert_to<double>();
}

/// Exact value of a finite double (every double is a dyadic rational).
ExactScalar exact_from_double(double value);

}  // namespace shosc
