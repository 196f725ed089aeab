#pragma once

#include <cmath>
#include <limits>

namespace shosc {

/// A real number stored as sign * exp(log_abs). sign == 0 encodes an exact zero.
struct SignedLog {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static SignedLog from_value(double v) {
        if (v == 0.0) return {};
        return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
    }
    static SignedLog from_value(long double v) {
        if (v == 0.0L) return {};
        return {v > 0 ? 1 : -1, static_cast<double>(std::log(std::fabs(v)))};
    }

    bool is_zero() const { return sign == 0; }

    /// Multiplies by exp(log_factor).
    SignedLog scaled(double log_factor) const {
        if (sign == 0) return {};
        return {sign, log_abs + log_factor};
    }

    SignedLog operator*(const SignedLog& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {sign * o.sign, log_abs + o.log_abs};
    }

    SignedLog negated() const { return {-sign, log_abs}; }

    /// Converts to double; underflow silently gives zero, overflow gives +-inf.
    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_abs);
    }
};

/// log(n!) from a table accumulated in extended precision for small n, Stirling beyond.
double log_factorial(unsigned long long n);

inline double log_binomial(unsigned long long n, unsigned long long k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace shosc
