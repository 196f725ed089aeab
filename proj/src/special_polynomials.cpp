#include "shosc/special_polynomials.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace shosc {

namespace {

bool is_nonnegative_integer(double x) {
    return x >= 0.0 && x < 9.0e15 && x == std::floor(x);
}

ExactScalar exact_power(const ExactScalar& base, unsigned exponent) {
    ExactScalar result(1);
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

ExactInteger exact_binomial(unsigned n, unsigned k) {
    ExactInteger result(1);
    for (unsigned i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1);
    }
    return result;
}

// a C_{j+1}(x) = (j + a - x) C_j(x) - j C_{j-1}(x), seeded with C_0 = 1, C_1 = 1 - x/a.
long double charlier_degree_recurrence(unsigned degree, long double x, long double a) {
    if (degree == 0) return 1.0L;
    long double previous = 1.0L;
    long double current = 1.0L - x / a;
    for (unsigned j = 1; j < degree; ++j) {
        const long double next = ((j + a - x) * current - j * previous) / a;
        previous = current;
        current = next;
    }
    return current;
}

// p(N-j) K_{j+1} = (p(N-j) + j(1-p) - x) K_j - j(1-p) K_{j-1}, seeded with K_0 = 1, K_1 = 1 - x/(pN).
// Forward recursion cancels heavily for p > 1/2 near x = N, so it runs with 100 digits.
long double krawtchouk_degree_recurrence(unsigned degree, long double x_in, long double p_in, unsigned N) {
    using Wide = boost::multiprecision::cpp_bin_float_100;
    if (degree == 0) return 1.0L;
    const Wide x(x_in);
    const Wide p(p_in);
    const Wide q = 1 - p;
    Wide previous = 1;
    Wide current = 1 - x / (p * N);
    for (unsigned j = 1; j < degree; ++j) {
        const Wide up = p * (N - j);
        Wide next = ((up + j * q - x) * current - j * q * previous) / up;
        previous = std::move(current);
        current = std::move(next);
    }
    return current.convert_to<long double>();
}

SignedLog checked_signed_log(long double value, const char* what) {
    if (!std::isfinite(value)) throw NumericRangeError(std::string(what) + ": value out of floating range");
    return SignedLog::from_value(value);
}

double checked_double(long double value, const char* what) {
    const double v = static_cast<double>(value);
    if (!std::isfinite(v)) throw NumericRangeError(std::string(what) + ": value out of double range");
    return v;
}

}  // namespace

CharlierParams::CharlierParams(double a) : a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("Charlier parameter a must be positive and finite");
}

KrawtchoukParams::KrawtchoukParams(double p, unsigned N) : p_(p), N_(N) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("Krawtchouk parameter p must lie in (0, 1)");
}

// ---------------------------------------------------------------------------
// Charlier
// ---------------------------------------------------------------------------

namespace {

long double charlier_long(unsigned n, double x, double a) {
    if (is_nonnegative_integer(x)) {
        const auto k = static_cast<unsigned long long>(x);
        const unsigned long long degree = std::min<unsigned long long>(n, k);
        const unsigned long long point = std::max<unsigned long long>(n, k);
        return charlier_degree_recurrence(static_cast<unsigned>(degree), static_cast<long double>(point), a);
    }
    return charlier_degree_recurrence(n, x, a);
}

}  // namespace

double charlier(unsigned n, double x, const CharlierParams& params) {
    return checked_double(charlier_long(n, x, params.a()), "charlier");
}

SignedLog charlier_log(unsigned n, double x, const CharlierParams& params) {
    return checked_signed_log(charlier_long(n, x, params.a()), "charlier_log");
}

ExactScalar charlier_exact(unsigned n, const ExactScalar& x, const ExactScalar& a) {
    if (a <= 0) throw ParameterError("Charlier parameter a must be positive");
    return hyp2f0_terminating<ExactScalar>(n, x, ExactScalar(-1) / a);
}

ShiftResiduals<ExactScalar> charlier_shift_residuals_exact(unsigned n, const ExactScalar& x, const ExactScalar& a) {
    const ExactScalar xm1 = x - 1;
    const ExactScalar cn_x = charlier_exact(n, x, a);
    const ExactScalar cn_xm1 = charlier_exact(n, xm1, a);
    ExactScalar forward = cn_x - cn_xm1;
    if (n > 0) forward += ExactScalar(n) / a * charlier_exact(n - 1, xm1, a);
    const ExactScalar backward = cn_x - x / a * cn_xm1 - charlier_exact(n + 1, x, a);
    return {forward, backward};
}

ShiftResiduals<double> charlier_shift_residuals(unsigned n, double x, const CharlierParams& params) {
    const double a = params.a();
    const double cn_x = charlier(n, x, params);
    const double cn_xm1 = charlier(n, x - 1.0, params);
    double forward = cn_x - cn_xm1;
    if (n > 0) forward += n / a * charlier(n - 1, x - 1.0, params);
    const double backward = cn_x - x / a * cn_xm1 - charlier(n + 1, x, params);
    return {forward, backward};
}

double charlier_squared_norm(unsigned n, const CharlierParams& params) {
    const double a = params.a();
    const double log_norm = -static_cast<double>(n) * std::log(a) + a + log_factorial(n);
    const double v = std::exp(log_norm);
    if (!std::isfinite(v)) throw NumericRangeError("charlier_squared_norm: value out of double range");
    return v;
}

TruncatedSum charlier_orthogonality_sum(unsigned m, unsigned n, const CharlierParams& params, double tail_eps,
                                        std::uint64_t hard_cap) {
    if (!(tail_eps > 0.0)) throw ParameterError("tail_eps must be positive");
    const double a = params.a();
    const double log_a = std::log(a);
    const unsigned degree = m + n;

    // |C_n(x)| <= (1 + x/a)^n on the nonnegative integers, so the summand is dominated by
    // b_x = a^x/x! (1 + x/a)^{m+n}; the ratio b_{x+1}/b_x is decreasing in x.
    auto log_bound = [&](double x) { return x * log_a - log_factorial(static_cast<unsigned long long>(x)) +
                                            degree * std::log1p(x / a); };
    auto ratio = [&](double x) { return a / (x + 1.0) * std::pow((a + x + 1.0) / (a + x), degree); };

    const auto start = std::min(
        hard_cap, static_cast<std::uint64_t>(std::max(std::ceil(a) + 10.0 * std::sqrt(a) + 10.0, 30.0)));

    long double sum = 0.0L;
    std::uint64_t x = 0;
    auto add_term = [&](std::uint64_t at) {
        const double xd = static_cast<double>(at);
        const SignedLog term = charlier_log(m, xd, params) * charlier_log(n, xd, params);
        sum += static_cast<long double>(term.scaled(xd * log_a - log_factorial(at)).value());
    };
    for (; x <= start; ++x) add_term(x);
    std::uint64_t last = start;

    double tail = std::numeric_limits<double>::infinity();
    while (true) {
        const double next = static_cast<double>(last + 1);
        const double r = ratio(next);
        if (r < 1.0) {
            tail = std::exp(log_bound(next)) / (1.0 - r);
            if (tail < tail_eps) break;
        }
        if (last + 1 > hard_cap) {
            throw TailBoundError("charlier_orthogonality_sum: tail bound not reached before hard cap");
        }
        ++last;
        add_term(last);
    }
    return {static_cast<double>(sum), last, tail};
}

// ---------------------------------------------------------------------------
// Krawtchouk
// ---------------------------------------------------------------------------

namespace {

long double krawtchouk_long(unsigned n, double x, const KrawtchoukParams& params) {
    const unsigned N = params.N();
    if (n > N) throw ParameterError("Krawtchouk degree n must not exceed N");
    if (is_nonnegative_integer(x) && x <= N) {
        const auto k = static_cast<unsigned>(x);
        return krawtchouk_degree_recurrence(std::min(n, k), std::max(n, k), params.p(), N);
    }
    return krawtchouk_degree_recurrence(n, x, params.p(), N);
}

}  // namespace

double krawtchouk(unsigned n, double x, const KrawtchoukParams& params) {
    return checked_double(krawtchouk_long(n, x, params), "krawtchouk");
}

SignedLog krawtchouk_log(unsigned n, double x, const KrawtchoukParams& params) {
    return checked_signed_log(krawtchouk_long(n, x, params), "krawtchouk_log");
}

ExactScalar krawtchouk_exact(unsigned n, const ExactScalar& x, const ExactScalar& p, unsigned N) {
    if (n > N) throw ParameterError("Krawtchouk degree n must not exceed N");
    if (p <= 0 || p >= 1) throw ParameterError("Krawtchouk parameter p must lie in (0, 1)");
    const ExactScalar inv_p = ExactScalar(1) / p;
    ExactScalar sum(1);
    ExactScalar term(1);
    for (unsigned k = 0; k < n; ++k) {
        term *= ExactScalar(static_cast<long long>(k) - static_cast<long long>(n)) * (ExactScalar(k) - x);
        term /= ExactScalar(static_cast<long long>(k) - static_cast<long long>(N)) * ExactScalar(k + 1);
        term *= inv_p;
        if (term == 0) break;
        sum += term;
    }
    return sum;
}

ExactScalar krawtchouk_weight_exact(unsigned x, const ExactScalar& p, unsigned N) {
    if (x > N) throw ParameterError("Krawtchouk weight: x must lie in [0, N]");
    return ExactScalar(exact_binomial(N, x)) * exact_power(p, x) * exact_power(ExactScalar(1) - p, N - x);
}

ExactScalar krawtchouk_gram_exact(unsigned m, unsigned n, const ExactScalar& p, unsigned N) {
    ExactScalar sum(0);
    for (unsigned x = 0; x <= N; ++x) {
        const ExactScalar xe(x);
        sum += krawtchouk_weight_exact(x, p, N) * krawtchouk_exact(m, xe, p, N) * krawtchouk_exact(n, xe, p, N);
    }
    return sum;
}

double krawtchouk_log_norm(unsigned n, const KrawtchoukParams& params) {
    const unsigned N = params.N();
    if (n > N) throw ParameterError("Krawtchouk degree n must not exceed N");
    const double p = params.p();
    return 0.5 * (n * (std::log1p(-p) - std::log(p)) - log_binomial(N, n));
}

double krawtchouk_normalized(unsigned n, unsigned x, const KrawtchoukParams& params) {
    const unsigned N = params.N();
    if (n > N || x > N) throw ParameterError("krawtchouk_normalized: n and x must lie in [0, N]");
    const double p = params.p();
    const double log_weight = log_binomial(N, x) + x * std::log(p) + (N - x) * std::log1p(-p);
    const SignedLog k = krawtchouk_log(n, static_cast<double>(x), params);
    return k.scaled(0.5 * log_weight - krawtchouk_log_norm(n, params)).value();
}

}  // namespace shosc
