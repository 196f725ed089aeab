#pragma once

// Charlier and Krawtchouk polynomials.
//
// Every quantity has two evaluation routes: a floating route built on stable
// three-term recurrences (long double accumulation, log-space assembly of
// factorial and power factors), and an exact route in rational arithmetic
// that sums the defining terminating hypergeometric series term by term.
// The exact route is the definitional oracle for the floating one.

#include "shosc/errors.hpp"
#include "shosc/exact.hpp"
#include "shosc/log_space.hpp"

#include <cmath>
#include <cstdint>
#include <type_traits>

namespace shosc {

class CharlierParams {
public:
    explicit CharlierParams(double a);
    double a() const noexcept { return a_; }

private:
    double a_;
};

class KrawtchoukParams {
public:
    KrawtchoukParams(double p, unsigned N);
    double p() const noexcept { return p_; }
    unsigned N() const noexcept { return N_; }

private:
    double p_;
    unsigned N_;
};

/// Rising factorial (q)_k = q (q+1) ... (q+k-1). Stops at the first exact zero factor,
/// so (-m)_k == 0 for every k > m without forming any gamma ratio.
template <class T>
T pochhammer(const T& q, unsigned k) {
    T result(1);
    for (unsigned i = 0; i < k; ++i) {
        const T factor = q + T(i);
        if (factor == T(0)) return T(0);
        result *= factor;
    }
    return result;
}

/// Terminating series 2F0(-n, -x; ; z) = sum_{k=0}^{n} (-n)_k (-x)_k z^k / k!.
///
/// The loop also stops early once (-x)_k vanishes, which happens exactly when x is a
/// nonnegative integer smaller than n.
template <class T>
T hyp2f0_terminating(unsigned n, const T& x, const T& z) {
    T sum(1);
    T term(1);
    for (unsigned k = 0; k < n; ++k) {
        term *= T(static_cast<long long>(k) - static_cast<long long>(n)) * (T(k) - x) * z / T(k + 1);
        if (term == T(0)) break;
        sum += term;
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(sum)) throw NumericRangeError("hyp2f0_terminating: value out of floating range");
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Charlier polynomials C_n(x; a) = 2F0(-n, -x; ; -1/a)
// ---------------------------------------------------------------------------

/// Floating evaluation. For integer x >= 0 the self-duality C_n(x) = C_x(n) is used to
/// run the degree recurrence to min(n, x) at the point max(n, x), which keeps the
/// computed solution dominant; other x use the degree recurrence directly.
double charlier(unsigned n, double x, const CharlierParams& params);

/// Same value as charlier(), returned as sign and log magnitude so callers can fold in
/// large factorial and power factors before exponentiating.
SignedLog charlier_log(unsigned n, double x, const CharlierParams& params);

/// Exact evaluation by summing the terminating 2F0 series. Requires a > 0.
ExactScalar charlier_exact(unsigned n, const ExactScalar& x, const ExactScalar& a);

template <class T>
struct ShiftResiduals {
    /// C_n(x) - C_n(x-1) + (n/a) C_{n-1}(x-1)
    T forward;
    /// C_n(x) - (x/a) C_n(x-1) - C_{n+1}(x)
    T backward;
};

ShiftResiduals<ExactScalar> charlier_shift_residuals_exact(unsigned n, const ExactScalar& x, const ExactScalar& a);
ShiftResiduals<double> charlier_shift_residuals(unsigned n, double x, const CharlierParams& params);

/// a^{-n} e^a n!, the squared norm in the Poisson-weighted orthogonality relation.
double charlier_squared_norm(unsigned n, const CharlierParams& params);

struct TruncatedSum {
    double value = 0.0;
    /// Last summation index included.
    std::uint64_t last_index = 0;
    /// Rigorous upper bound on the absolute value of the neglected tail.
    double tail_bound = 0.0;
};

/// sum_{x=0}^{X} (a^x / x!) C_m(x;a) C_n(x;a), with X extended until the neglected tail
/// is provably below tail_eps. Throws TailBoundError if X would exceed hard_cap.
TruncatedSum charlier_orthogonality_sum(unsigned m, unsigned n, const CharlierParams& params, double tail_eps,
                                        std::uint64_t hard_cap = 1'000'000);

// ---------------------------------------------------------------------------
// Krawtchouk polynomials K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)
// ---------------------------------------------------------------------------

/// Floating evaluation; integer x in [0, N] goes through the duality K_n(x) = K_x(n).
double krawtchouk(unsigned n, double x, const KrawtchoukParams& params);
SignedLog krawtchouk_log(unsigned n, double x, const KrawtchoukParams& params);

ExactScalar krawtchouk_exact(unsigned n, const ExactScalar& x, const ExactScalar& p, unsigned N);

/// Binomial weight C(N,x) p^x (1-p)^{N-x}, exact.
ExactScalar krawtchouk_weight_exact(unsigned x, const ExactScalar& p, unsigned N);

/// sum_x w(x) K_m(x) K_n(x) over x = 0..N, exact. The diagonal gives d_n^2.
ExactScalar krawtchouk_gram_exact(unsigned m, unsigned n, const ExactScalar& p, unsigned N);

/// log d_n with d_n^2 = ((1-p)/p)^n / C(N, n).
double krawtchouk_log_norm(unsigned n, const KrawtchoukParams& params);

/// sqrt(w(x)) K_n(x) / d_n, orthonormal over x = 0..N.
double krawtchouk_normalized(unsigned n, unsigned x, const KrawtchoukParams& params);

}  // namespace shosc
