#include "shosc/exact.hpp"
#include "shosc/log_space.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace shosc {

namespace {

constexpr std::size_t kTableSize = 8192;

const std::array<double, kTableSize>& log_factorial_table() {
    static const std::array<double, kTableSize> table = [] {
        std::array<double, kTableSize> t{};
        long double acc = 0.0L;
        t[0] = 0.0;
        for (std::size_t i = 1; i < kTableSize; ++i) {
            acc += std::log(static_cast<long double>(i));
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    return table;
}

}  // namespace

double log_factorial(unsigned long long n) {
    if (n < kTableSize) return log_factorial_table()[n];
    // Stirling series; the truncation error at n >= 8192 is far below double resolution.
    const long double x = static_cast<long double>(n);
    const long double half_log_two_pi = 0.918938533204672741780329736406L;
    return static_cast<double>((x + 0.5L) * std::log(x) - x + half_log_two_pi + 1.0L / (12.0L * x) -
                               1.0L / (360.0L * x * x * x));
}

ExactScalar exact_from_double(double value) {
    if (!std::isfinite(value)) throw std::domain_error("exact_from_double: non-finite value");
    if (value == 0.0) return ExactScalar(0);
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // mantissa * 2^53 is an exact integer
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    ExactInteger numerator(scaled);
    ExactInteger denominator(1);
    if (exponent >= 0) {
        numerator <<= exponent;
    } else {
        denominator <<= -exponent;
    }
    return ExactScalar(numerator, denominator);
}

}  // namespace shosc
