#include "shosc/oscillator.hpp"

#include "shosc/exact.hpp"
#include "shosc/log_space.hpp"
#include "shosc/special_polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shosc {

namespace {

// (-i)^n
Complex minus_i_power(std::size_t n) {
    switch (n % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// i^n
Complex i_power(std::size_t n) { return std::conj(minus_i_power(n)); }

SignedLog signed_log_of(const ExactScalar& value) {
    return SignedLog::from_value(value.convert_to<long double>());
}

void require_interior(std::size_t n, const FockTruncation& trunc, const char* where) {
    if (n >= trunc.interior()) {
        throw ParameterError(std::string(where) + ": state index too close to the truncation edge");
    }
}

}  // namespace

double position_wavefunction(std::size_t n, const SupportPoint& x, const ModelParams& params) {
    return p_tilde(n, x, params);
}

WavefunctionTable wavefunction_table(const ModelParams& params, const std::vector<std::size_t>& n_list,
                                     const SpectrumWindow& window) {
    WavefunctionTable table{params.gamma(), n_list, window, window.points(), {}, {}, {}, {}};
    std::size_t max_degree = 0;
    for (std::size_t n : n_list) max_degree = std::max(max_degree, n);
    const SpectrumWindow outer =
        SpectrumWindow::adaptive(params, static_cast<unsigned>(max_degree), 1e-14, window.k_max());

    for (std::size_t n : n_list) {
        std::vector<double> row;
        row.reserve(table.points.size());
        long double norm = 0.0L;
        for (const SupportPoint& x : table.points) {
            const double v = position_wavefunction(n, x, params);
            row.push_back(v);
            norm += static_cast<long double>(v) * v;
        }
        long double tail = 0.0L;
        for (std::uint64_t k = window.k_max() + 1; k <= outer.k_max(); ++k) {
            const double v = position_wavefunction(n, SupportPoint::positive(k), params);
            tail += 2.0L * static_cast<long double>(v) * v;
        }
        std::size_t changes = 0;
        double previous = 0.0;
        for (const SupportPoint& x : table.points) {
            if (x.sign() < 0) continue;
            const double v = position_wavefunction(n, x, params);
            if (v != 0.0) {
                if (previous != 0.0 && (v > 0) != (previous > 0)) ++changes;
                previous = v;
            }
        }
        table.values.push_back(std::move(row));
        table.window_norm.push_back(static_cast<double>(norm));
        table.tail_mass.push_back(static_cast<double>(tail));
        table.positive_axis_sign_changes.push_back(changes);
    }
    return table;
}

std::vector<Complex> momentum_eigvec_coefficients(const SupportPoint& y, const ModelParams& params,
                                                  const FockTruncation& trunc) {
    const auto p = p_tilde_sequence(trunc.size(), y, params);
    std::vector<Complex> u(p.size());
    for (std::size_t n = 0; n < p.size(); ++n) u[n] = i_power(n) * p[n];
    return u;
}

double momentum_eigvec_residual(const SupportPoint& y, const ModelParams& params, const FockTruncation& trunc) {
    const auto u = momentum_eigvec_coefficients(y, params, trunc);
    const OperatorMatrix p = momentum_matrix(params, trunc);
    const auto pu = p.apply(u);
    const double value = y.value();
    double residual = 0.0;
    for (std::size_t n = 0; n < trunc.interior(); ++n) residual = std::max(residual, std::abs(pu[n] - value * u[n]));
    return residual;
}

Complex fourier_kernel_series(const SupportPoint& x, const SupportPoint& y, const ModelParams& params,
                              std::size_t n_max) {
    Complex sum = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        sum += minus_i_power(n) * (p_tilde(n, x, params) * p_tilde(n, y, params));
    }
    return sum;
}

KernelSeriesResult fourier_kernel_series(const SupportPoint& x, const SupportPoint& y, const ModelParams& params,
                                         const KernelSeriesOptions& options) {
    const std::size_t cap = options.n_cap;
    const auto px = p_tilde_sequence(cap + 1, x, params);
    const auto py = p_tilde_sequence(cap + 1, y, params);

    // tail_x[M] = sum_{n > M} px[n]^2 within the computed range
    std::vector<long double> tail_x(cap + 1, 0.0L), tail_y(cap + 1, 0.0L);
    for (std::size_t n = cap; n-- > 0;) {
        tail_x[n] = tail_x[n + 1] + static_cast<long double>(px[n + 1]) * px[n + 1];
        tail_y[n] = tail_y[n + 1] + static_cast<long double>(py[n + 1]) * py[n + 1];
    }
    std::size_t n_max = cap;
    for (std::size_t M = 0; M < cap; ++M) {
        if (std::sqrt(static_cast<double>(tail_x[M] * tail_y[M])) < options.tail_tolerance) {
            n_max = M;
            break;
        }
    }
    if (n_max == cap) {
        throw TailBoundError("fourier_kernel_series: tail bound not reached within " + std::to_string(cap) +
                             " terms");
    }
    Complex sum = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) sum += minus_i_power(n) * (px[n] * py[n]);
    return {sum, n_max, std::sqrt(static_cast<double>(tail_x[n_max] * tail_y[n_max]))};
}

Complex fourier_kernel_closed(const SupportPoint& x, const SupportPoint& y, const ModelParams& params) {
    const std::uint64_t k = x.k();
    const std::uint64_t l = y.k();
    const double a = params.a();
    const double log_prefactor = -2.0 * a + static_cast<double>(k + l) * std::log(2.0 * params.gamma()) -
                                 std::log(2.0) - 0.5 * (log_factorial(k) + log_factorial(l));

    const ExactScalar z = -1 / (4 * exact_from_double(a));
    const ExactScalar first = hyp2f0_terminating<ExactScalar>(static_cast<unsigned>(k),
                                                              ExactScalar(static_cast<unsigned long long>(l)), z);
    const double delta_factor = std::sqrt((x.is_origin() ? 2.0 : 1.0) * (y.is_origin() ? 2.0 : 1.0));
    const double re = signed_log_of(first).scaled(log_prefactor + std::log(delta_factor)).value();

    double im = 0.0;
    if (k > 0 && l > 0) {
        const ExactScalar second = hyp2f0_terminating<ExactScalar>(
            static_cast<unsigned>(k - 1), ExactScalar(static_cast<unsigned long long>(l - 1)), z);
        // -(x y / (4a)) times the second series
        const double log_xy = 0.5 * (std::log(static_cast<double>(k)) + std::log(static_cast<double>(l)));
        const SignedLog term = signed_log_of(second).scaled(log_prefactor + log_xy - std::log(4.0 * a));
        im = -x.sign() * y.sign() * term.value();
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw NumericRangeError("fourier_kernel_closed: value out of double range");
    }
    return {re, im};
}

SpectrumWindow kernel_window(const ModelParams& params, std::uint64_t l_max, double eps) {
    return SpectrumWindow::adaptive(ModelParams(2.0 * params.gamma()), static_cast<unsigned>(2 * l_max + 1), eps);
}

Complex kernel_unitarity_check(const SupportPoint& y, const SupportPoint& y2, const ModelParams& params,
                               const SpectrumWindow& window) {
    std::complex<long double> sum = 0.0L;
    for (const SupportPoint& x : window.points()) {
        const Complex term = std::conj(fourier_kernel_closed(x, y, params)) * fourier_kernel_closed(x, y2, params);
        sum += std::complex<long double>(term.real(), term.imag());
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

double uncertainty_product(std::size_t n, const ModelParams& params) {
    const double odd = (n % 2 == 1) ? 0.5 : 0.0;
    return params.a() + 0.5 * static_cast<double>(n) + odd;
}

double uncertainty_product_matrix(std::size_t n, const ModelParams& params, const FockTruncation& trunc) {
    require_interior(n, trunc, "uncertainty_product_matrix");
    const OperatorMatrix q = position_matrix(params, trunc);
    const OperatorMatrix p = momentum_matrix(params, trunc);
    const OperatorMatrix q2 = q * q;
    const OperatorMatrix p2 = p * p;
    const double var_q = q2(n, n).real() - std::norm(q(n, n));
    const double var_p = p2(n, n).real() - std::norm(p(n, n));
    return std::sqrt(var_q * var_p);
}

Complex commutator_qp_eigenvalue(std::size_t n, const ModelParams& params) {
    const double a = params.a();
    if (n % 2 == 0) return {0.0, 2.0 * (a - static_cast<double>(n / 2))};
    return {0.0, 2.0 * (static_cast<double>((n + 1) / 2) - a)};
}

CommutatorColumn commutator_qp_matrix(std::size_t n, const ModelParams& params, const FockTruncation& trunc) {
    require_interior(n, trunc, "commutator_qp_matrix");
    const OperatorMatrix c = commutator(position_matrix(params, trunc), momentum_matrix(params, trunc));
    double off = 0.0;
    for (std::size_t m = 0; m < trunc.interior(); ++m) {
        if (m != n) off = std::max(off, std::abs(c(m, n)));
    }
    return {c(n, n), off};
}

double energy_expectation_matrix(std::size_t n, const ModelParams& params, const FockTruncation& trunc) {
    require_interior(n, trunc, "energy_expectation_matrix");
    const OperatorMatrix q = position_matrix(params, trunc);
    const OperatorMatrix p = momentum_matrix(params, trunc);
    OperatorMatrix energy = p * p + q * q;
    energy *= 0.5;
    return energy(n, n).real();
}

Sl21Params::Sl21Params(unsigned j, double p) : j_(j), p_(p) {
    if (j == 0) throw ParameterError("sl(2|1) parameter j must be positive");
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("sl(2|1) parameter p must lie in (0, 1)");
}

Sl21Params Sl21Params::coupled(unsigned j, const ModelParams& params) {
    if (!(params.a() < static_cast<double>(j))) {
        throw ParameterError("limit coupling p = gamma^2/j requires gamma^2 < j");
    }
    return Sl21Params(j, params.a() / j);
}

double sl21_wavefunction(std::size_t n, const SupportPoint& x, const Sl21Params& params) {
    const unsigned j = params.j();
    if (x.k() > j) throw ParameterError("sl21_wavefunction: x^2 must not exceed j");
    const auto m = static_cast<unsigned>(n / 2);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (n % 2 == 0) {
        if (m > j) throw ParameterError("sl21_wavefunction: even degree needs n/2 <= j");
        const double delta_factor = x.is_origin() ? 1.0 : std::sqrt(0.5);
        return sign * delta_factor *
               krawtchouk_normalized(m, static_cast<unsigned>(x.k()), KrawtchoukParams(params.p(), j));
    }
    if (m > j - 1) throw ParameterError("sl21_wavefunction: odd degree needs (n-1)/2 <= j-1");
    if (x.is_origin()) return 0.0;
    return x.sign() * sign * std::sqrt(0.5) *
           krawtchouk_normalized(m, static_cast<unsigned>(x.k() - 1), KrawtchoukParams(params.p(), j - 1));
}

double limit_error(unsigned j, const ModelParams& params, std::size_t n_max, std::uint64_t k_max) {
    const Sl21Params sl21 = Sl21Params::coupled(j, params);
    if (k_max > j) throw ParameterError("limit_error: k_max must not exceed j");
    double error = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (std::uint64_t k = 0; k <= k_max; ++k) {
            for (int s : {-1, 1}) {
                if (k == 0 && s < 0) continue;
                const SupportPoint x = k == 0 ? SupportPoint::origin() : SupportPoint(s, k);
                error = std::max(error, std::fabs(sl21_wavefunction(n, x, sl21) - position_wavefunction(n, x, params)));
            }
        }
    }
    return error;
}

double fitted_decay_order(const std::vector<unsigned>& j_list, const std::vector<double>& errors) {
    if (j_list.size() != errors.size() || j_list.size() < 2) {
        throw ParameterError("fitted_decay_order: need at least two (j, error) pairs");
    }
    const std::size_t n = j_list.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(errors[i] > 0.0)) throw ParameterError("fitted_decay_order: errors must be positive");
        lx[i] = std::log(static_cast<double>(j_list[i]));
        ly[i] = std::log(errors[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return -sxy / sxx;
}

}  // namespace shosc
