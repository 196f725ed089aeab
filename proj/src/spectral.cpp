#include "shosc/spectral.hpp"

#include "shosc/log_space.hpp"
#include "shosc/special_polynomials.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace shosc {

namespace {

// The recessive solution loses roughly log10 of the dominant/recessive ratio in digits;
// 250 digits covers every degree the library asks for with a wide margin.
using WideFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;

CharlierParams charlier_params(const ModelParams& params) { return CharlierParams(params.a()); }

double log_gamma_abs(const ModelParams& params) { return std::log(params.gamma()); }

// p_n at a support point, as sign and log magnitude.
SignedLog p_closed_form_log(std::size_t n, const SupportPoint& x, const ModelParams& params) {
    const auto m = static_cast<unsigned>(n / 2);
    const double k = static_cast<double>(x.k());
    const double lg = log_gamma_abs(params);
    const double half_log_mfact = 0.5 * log_factorial(m);
    if (n % 2 == 0) {
        const SignedLog c = charlier_log(m, k, charlier_params(params));
        const int sign = (m % 2 == 0) ? 1 : -1;
        return SignedLog{sign, 0.0}.scaled(m * lg - half_log_mfact) * c;
    }
    if (x.is_origin()) return {};
    // -(-gamma)^{m-1} x = (-1)^m gamma^{m-1} x
    const SignedLog c = charlier_log(m, k - 1.0, charlier_params(params));
    const int sign = ((m % 2 == 0) ? 1 : -1) * x.sign();
    const double log_factor = (static_cast<double>(m) - 1.0) * lg + 0.5 * std::log(k) - half_log_mfact;
    return SignedLog{sign, 0.0}.scaled(log_factor) * c;
}

SignedLog p_tilde_log(std::size_t n, const SupportPoint& x, const ModelParams& params) {
    const SignedLog p = p_closed_form_log(n, x, params);
    return p.scaled(-0.5 * params.a() + 0.5 * log_weight(x, params));
}

}  // namespace

SupportPoint::SupportPoint(int sign, std::uint64_t k) : sign_(sign), k_(k) {
    if (sign < -1 || sign > 1) throw ParameterError("SupportPoint: sign must be -1, 0 or +1");
    if ((sign == 0) != (k == 0)) throw ParameterError("SupportPoint: sign must be 0 exactly when k = 0");
}

std::string to_string(const SupportPoint& x) {
    if (x.is_origin()) return "0";
    return std::string(x.sign() < 0 ? "-" : "+") + "sqrt(" + std::to_string(x.k()) + ")";
}

SpectrumWindow::SpectrumWindow(std::uint64_t k_max) : k_max_(k_max) {
    if (k_max == 0) throw ParameterError("SpectrumWindow: k_max must be positive");
}

SpectrumWindow SpectrumWindow::adaptive(const ModelParams& params, unsigned max_degree, double eps,
                                        std::uint64_t min_k_max) {
    if (!(eps > 0.0)) throw ParameterError("SpectrumWindow::adaptive: eps must be positive");
    const double a = params.a();
    const double log_a = std::log(a);
    const unsigned m_max = (max_degree + 1) / 2;
    const double log_eps = std::log(eps);
    constexpr std::uint64_t hard_cap = 1'000'000;

    // Both signs of p~_n(±sqrt k)^2 are bounded by
    //   b_k(m) = e^{-a} a^{k+m} / (m! k!) (1 + k/a)^{2m} max(1, k/a),  m = floor(n/2),
    // using |C_m(k; a)| <= (1 + k/a)^m. Once the ratio b_{k+1}/b_k = r < 1 and is
    // decreasing, the tail beyond K is at most b_{K+1} / (1 - r_{K+1}).
    auto log_b = [&](std::uint64_t k, unsigned m) {
        const double kd = static_cast<double>(k);
        return -a + (kd + m) * log_a - log_factorial(m) - log_factorial(k) + 2.0 * m * std::log1p(kd / a) +
               std::max(0.0, std::log(kd / a));
    };
    for (std::uint64_t K = std::max<std::uint64_t>(min_k_max, 1); K < hard_cap; ++K) {
        bool ok = true;
        for (unsigned m = 0; m <= m_max && ok; ++m) {
            const double lb1 = log_b(K + 1, m);
            const double lb2 = log_b(K + 2, m);
            const double log_ratio = lb2 - lb1;
            const double kd = static_cast<double>(K + 1);
            // every factor of the ratio decreases in k once k >= a
            if (!(log_ratio < 0.0) || kd < a) {
                ok = false;
                break;
            }
            const double tail = std::log(2.0) + lb1 - std::log1p(-std::exp(log_ratio));
            if (tail >= log_eps) ok = false;
        }
        if (ok) return SpectrumWindow(K);
    }
    throw TailBoundError("SpectrumWindow::adaptive: no window below the hard cap meets the tail bound");
}

std::vector<SupportPoint> SpectrumWindow::points() const {
    std::vector<SupportPoint> out;
    out.reserve(size());
    for (std::uint64_t k = k_max_; k >= 1; --k) out.push_back(SupportPoint::negative(k));
    out.push_back(SupportPoint::origin());
    for (std::uint64_t k = 1; k <= k_max_; ++k) out.push_back(SupportPoint::positive(k));
    return out;
}

namespace {

std::vector<double> round_to_double(const std::vector<WideFloat>& wide) {
    std::vector<double> out(wide.size());
    for (std::size_t i = 0; i < wide.size(); ++i) {
        out[i] = wide[i].convert_to<double>();
        if (!std::isfinite(out[i])) throw NumericRangeError("p_recurrence: value out of double range");
    }
    return out;
}

}  // namespace

std::vector<double> p_recurrence(std::size_t n_max, double x, const ModelParams& params) {
    return round_to_double(p_recurrence<WideFloat>(n_max, WideFloat(x), WideFloat(params.gamma())));
}

std::vector<double> p_recurrence(std::size_t n_max, const SupportPoint& x, const ModelParams& params) {
    const WideFloat value = x.sign() * sqrt(WideFloat(x.k()));
    return round_to_double(p_recurrence<WideFloat>(n_max, value, WideFloat(params.gamma())));
}

double ExactPValue::to_double() const {
    const std::size_t m = n / 2;
    if (n % 2 == 1 && x.is_origin()) return 0.0;
    const SignedLog c = SignedLog::from_value(static_cast<long double>(coefficient.convert_to<long double>()));
    double log_factor = -0.5 * log_factorial(m);
    int sign = 1;
    if (n % 2 == 1) {
        log_factor += 0.5 * std::log(static_cast<double>(x.k()));
        sign = x.sign();
    }
    return (SignedLog{sign, 0.0}.scaled(log_factor) * c).value();
}

std::vector<ExactPValue> p_recurrence_exact(std::size_t n_max, const SupportPoint& x, const ExactScalar& gamma) {
    if (gamma == 0) throw ParameterError("p_recurrence_exact: gamma must be nonzero");
    const ExactScalar k(static_cast<unsigned long long>(x.k()));
    std::vector<ExactScalar> P(n_max + 1);
    P[0] = 1;
    for (std::size_t i = 0; i < n_max; ++i) {
        const std::size_t m = i / 2;
        if (i % 2 == 0) {
            const ExactScalar previous = m > 0 ? P[i - 1] : ExactScalar(0);
            P[i + 1] = (P[i] - ExactScalar(static_cast<unsigned long long>(m)) * previous) / gamma;
        } else {
            P[i + 1] = k * P[i] - gamma * P[i - 1];
        }
    }
    std::vector<ExactPValue> out;
    out.reserve(P.size());
    for (std::size_t n = 0; n < P.size(); ++n) out.push_back({P[n], n, x});
    return out;
}

ExactPValue p_closed_form_exact(std::size_t n, const SupportPoint& x, const ExactScalar& gamma) {
    if (gamma == 0) throw ParameterError("p_closed_form_exact: gamma must be nonzero");
    const auto m = static_cast<unsigned>(n / 2);
    const ExactScalar a = gamma * gamma;
    const ExactScalar k(static_cast<unsigned long long>(x.k()));
    const ExactScalar minus_gamma = -gamma;
    ExactScalar power(1);
    if (n % 2 == 0) {
        for (unsigned i = 0; i < m; ++i) power *= minus_gamma;
        return {power * charlier_exact(m, k, a), n, x};
    }
    // -(-gamma)^{m-1}
    if (m == 0) {
        power = 1 / gamma;
    } else {
        for (unsigned i = 0; i + 1 < m; ++i) power *= minus_gamma;
        power = -power;
    }
    return {power * charlier_exact(m, k - 1, a), n, x};
}

double p_closed_form(std::size_t n, double x, const ModelParams& params) {
    const auto m = static_cast<unsigned>(n / 2);
    const double gamma = params.gamma();
    const double scale = std::exp(-0.5 * log_factorial(m));
    if (n % 2 == 0) {
        return std::pow(-gamma, static_cast<double>(m)) * scale * charlier(m, x * x, charlier_params(params));
    }
    return -std::pow(-gamma, static_cast<double>(m) - 1.0) * scale * x *
           charlier(m, x * x - 1.0, charlier_params(params));
}

double p_closed_form(std::size_t n, const SupportPoint& x, const ModelParams& params) {
    const double value = p_closed_form_log(n, x, params).value();
    if (!std::isfinite(value)) throw NumericRangeError("p_closed_form: value out of double range");
    return value;
}

double log_weight(const SupportPoint& x, const ModelParams& params) {
    if (x.is_origin()) return 0.0;
    const double k = static_cast<double>(x.k());
    return -std::log(2.0) + k * std::log(params.a()) - log_factorial(x.k());
}

double weight(const SupportPoint& x, const ModelParams& params) { return std::exp(log_weight(x, params)); }

double p_tilde(std::size_t n, const SupportPoint& x, const ModelParams& params) {
    const SignedLog v = p_tilde_log(n, x, params);
    if (v.sign != 0 && v.log_abs > std::log(std::numeric_limits<double>::max())) {
        throw NumericRangeError("p_tilde: value out of double range");
    }
    return v.value();
}

std::vector<double> p_tilde_sequence(std::size_t count, const SupportPoint& x, const ModelParams& params) {
    std::vector<double> out(count);
    for (std::size_t n = 0; n < count; ++n) out[n] = p_tilde(n, x, params);
    return out;
}

namespace {

// Sums f(x) over the window, adding f(sqrt k) + f(-sqrt k) first so odd summands cancel exactly.
template <class Term>
double symmetric_window_sum(const SpectrumWindow& window, Term term) {
    long double sum = term(SupportPoint::origin());
    for (std::uint64_t k = 1; k <= window.k_max(); ++k) {
        sum += term(SupportPoint::positive(k)) + term(SupportPoint::negative(k));
    }
    return static_cast<double>(sum);
}

}  // namespace

double orthogonality_sum(std::size_t m, std::size_t n, const ModelParams& params, const SpectrumWindow& window) {
    return symmetric_window_sum(window, [&](const SupportPoint& x) {
        const SignedLog term =
            p_closed_form_log(m, x, params) * p_closed_form_log(n, x, params) * SignedLog{1, log_weight(x, params)};
        return static_cast<long double>(term.value());
    });
}

double orthonormality_sum(std::size_t m, std::size_t n, const ModelParams& params, const SpectrumWindow& window) {
    return symmetric_window_sum(window, [&](const SupportPoint& x) {
        return static_cast<long double>(p_tilde(m, x, params)) * static_cast<long double>(p_tilde(n, x, params));
    });
}

EigenvectorExpansion eigenvector(const SupportPoint& x, const ModelParams& params, const FockTruncation& trunc) {
    return {x, p_tilde_sequence(trunc.size(), x, params)};
}

double eigenvector_residual(const EigenvectorExpansion& v, const ModelParams& params) {
    const auto& c = v.coefficients;
    if (c.size() < 3) throw ParameterError("eigenvector_residual: need at least 3 coefficients");
    const auto off = position_offdiagonal(params, c.size() - 1);
    const double x = v.x.value();
    double residual = 0.0;
    for (std::size_t n = 0; n + 2 < c.size(); ++n) {
        double qv = off[n] * c[n + 1];
        if (n > 0) qv += off[n - 1] * c[n - 1];
        residual = std::max(residual, std::fabs(qv - x * c[n]));
    }
    return residual;
}

SymmetricTridiagonal jacobi_matrix(const ModelParams& params, const FockTruncation& trunc) {
    const std::size_t dim = trunc.size() - 1;
    return SymmetricTridiagonal(std::vector<double>(dim, 0.0), position_offdiagonal(params, dim - 1));
}

std::vector<double> tridiagonal_eigenvalues(const ModelParams& params, const FockTruncation& trunc,
                                            std::size_t count, const BisectionOptions& options) {
    const SymmetricTridiagonal t = jacobi_matrix(params, trunc);
    if (count == 0 || count > t.size()) {
        throw ParameterError("tridiagonal_eigenvalues: count must lie in [1, N-1]");
    }
    return central_eigenvalues(t, count, options);
}

SupportPoint nearest_support_point(double value) {
    if (!std::isfinite(value)) throw ParameterError("nearest_support_point: value must be finite");
    const auto k = static_cast<std::uint64_t>(std::llround(value * value));
    if (k == 0) return SupportPoint::origin();
    return SupportPoint(value < 0 ? -1 : 1, k);
}

DiagonalizedEigenpair diagonalized_eigenpair(const SupportPoint& x, const ModelParams& params,
                                             const FockTruncation& trunc) {
    const SymmetricTridiagonal t = jacobi_matrix(params, trunc);
    const double target = x.value();
    const std::size_t below = t.count_below(target);
    double best = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t index : {below == 0 ? std::size_t{0} : below - 1, below}) {
        if (index >= t.size()) continue;
        const double lambda = bisect_eigenvalue(t, index);
        if (std::isnan(best) || std::fabs(lambda - target) < std::fabs(best - target)) best = lambda;
    }
    return {best, nearest_support_point(best), inverse_iteration(t, best)};
}

double offdiagonal_partial_sum(const ModelParams& params, const FockTruncation& trunc) {
    const auto off = position_offdiagonal(params, trunc.size() - 1);
    long double sum = 0.0L;
    for (double c : off) sum += c;
    return static_cast<double>(sum);
}

}  // namespace shosc
