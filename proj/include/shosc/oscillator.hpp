#pragma once

// Physical quantities of the oscillator model: wavefunctions in position and momentum,
// the Fourier kernel between the two eigenbases, observables, and the limit from the
// finite sl(2|1) oscillator.

#include "shosc/errors.hpp"
#include "shosc/fock_model.hpp"
#include "shosc/spectral.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace shosc {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Wavefunctions
// ---------------------------------------------------------------------------

/// phi_n(x) = p~_n(x).
double position_wavefunction(std::size_t n, const SupportPoint& x, const ModelParams& params);

struct WavefunctionTable {
    double gamma;
    std::vector<std::size_t> n_list;
    SpectrumWindow window;
    std::vector<SupportPoint> points;
    /// values[i][j] = phi_{n_list[i]}(points[j])
    std::vector<std::vector<double>> values;
    /// Sum of squares of each row over the window.
    std::vector<double> window_norm;
    /// Sum of squares of each row over the support points beyond the window (up to a
    /// window on which the remainder is below 1e-14), so window_norm + tail_mass ~ 1.
    std::vector<double> tail_mass;
    /// Sign changes of each row along x = 0, 1, sqrt 2, ..., sqrt(k_max). Descriptive only.
    std::vector<std::size_t> positive_axis_sign_changes;
};

WavefunctionTable wavefunction_table(const ModelParams& params, const std::vector<std::size_t>& n_list,
                                     const SpectrumWindow& window);

/// i^n p~_n(y) for n < N: the momentum eigenvector for eigenvalue y.
std::vector<Complex> momentum_eigvec_coefficients(const SupportPoint& y, const ModelParams& params,
                                                  const FockTruncation& trunc);

/// max over interior rows of |((p - y) u)_n|.
double momentum_eigvec_residual(const SupportPoint& y, const ModelParams& params, const FockTruncation& trunc);

// ---------------------------------------------------------------------------
// Fourier kernel K(x, y) = <v~(x), u~(y)>
// ---------------------------------------------------------------------------

struct KernelValue {
    SupportPoint x;
    SupportPoint y;
    Complex value;
};

struct KernelSeriesOptions {
    /// Largest degree the automatic truncation may reach.
    std::size_t n_cap = 600;
    /// Bound on the neglected tail, via Cauchy-Schwarz on the two coefficient tails.
    double tail_tolerance = 1e-12;
};

struct KernelSeriesResult {
    Complex value;
    /// Last degree included.
    std::size_t n_max;
    double tail_bound;
};

/// sum_{n=0}^{n_max} (-i)^n phi_n(x) phi_n(y) with a fixed n_max.
Complex fourier_kernel_series(const SupportPoint& x, const SupportPoint& y, const ModelParams& params,
                              std::size_t n_max);

/// Same sum, truncated at the smallest n_max whose tail bound is below the tolerance.
/// Throws TailBoundError if that needs more than n_cap terms.
KernelSeriesResult fourier_kernel_series(const SupportPoint& x, const SupportPoint& y, const ModelParams& params,
                                         const KernelSeriesOptions& options = {});

/// Closed form from the bilinear generating function of the Charlier polynomials:
///   e^{-2a} (2 gamma)^{k+l} / (2 sqrt(k! l!)) *
///   [ sqrt((1+d_x)(1+d_y)) 2F0(-k,-l;;-1/(4a)) - i (x y / (4a)) 2F0(1-k,1-l;;-1/(4a)) ]
/// with k = x^2, l = y^2, a = gamma^2. The 2F0 sums are evaluated exactly.
Complex fourier_kernel_closed(const SupportPoint& x, const SupportPoint& y, const ModelParams& params);

/// Window over x on which K(x, y) for every |y| <= sqrt(l_max) keeps its squared tail
/// below eps. |K(x, y)|^2 obeys the same bound as p~_m(x)^2 with gamma -> 2 gamma and
/// m -> l, by the duality of the Charlier factor.
SpectrumWindow kernel_window(const ModelParams& params, std::uint64_t l_max, double eps = 1e-14);

/// sum over the window of conj(K(x, y)) K(x, y2); approximately delta_{y, y2}.
Complex kernel_unitarity_check(const SupportPoint& y, const SupportPoint& y2, const ModelParams& params,
                               const SpectrumWindow& window);

// ---------------------------------------------------------------------------
// Observables
// ---------------------------------------------------------------------------

/// gamma^2 + n/2 + (1 - (-1)^n)/4
double uncertainty_product(std::size_t n, const ModelParams& params);

/// sqrt(var_q var_p) in state |n>, from truncated matrices. n must lie in the interior.
double uncertainty_product_matrix(std::size_t n, const ModelParams& params, const FockTruncation& trunc);

/// Eigenvalue of [q, p] on |n>: 2i(gamma^2 - k) for n = 2k, -2i(gamma^2 - k) for n = 2k - 1.
Complex commutator_qp_eigenvalue(std::size_t n, const ModelParams& params);

struct CommutatorColumn {
    /// <n|[q,p]|n>
    Complex eigenvalue;
    /// max |<m|[q,p]|n>| over m != n
    double offdiagonal;
};

/// Column n of the truncated [q, p]. n must lie in the interior.
CommutatorColumn commutator_qp_matrix(std::size_t n, const ModelParams& params, const FockTruncation& trunc);

/// <n|(p^2 + q^2)/2|n>; equals uncertainty_product(n) by the energy identity.
double energy_expectation_matrix(std::size_t n, const ModelParams& params, const FockTruncation& trunc);

// ---------------------------------------------------------------------------
// Limit from the finite sl(2|1) oscillator
// ---------------------------------------------------------------------------

class Sl21Params {
public:
    Sl21Params(unsigned j, double p);
    /// p = gamma^2 / j; requires gamma^2 < j.
    static Sl21Params coupled(unsigned j, const ModelParams& params);
    unsigned j() const noexcept { return j_; }
    double p() const noexcept { return p_; }

private:
    unsigned j_;
    double p_;
};

/// Finite-oscillator wavefunction on the support {±sqrt k : k <= j}:
///   phi_{2m}(x)   = (-1)^m sqrt((1 + d_x)/2) K~_m(x^2; p, j)
///   phi_{2m+1}(x) = sign(x) (-1)^m sqrt((1 - d_x)/2) K~_m(x^2 - 1; p, j - 1)
/// with K~ the orthonormal Krawtchouk functions.
double sl21_wavefunction(std::size_t n, const SupportPoint& x, const Sl21Params& params);

/// max over n <= n_max and |x| <= sqrt(k_max) of |phi^{(gamma^2/j, j)}_n(x) - phi_n(x)|.
double limit_error(unsigned j, const ModelParams& params, std::size_t n_max, std::uint64_t k_max);

/// Least-squares slope of -log(error) against log(j).
double fitted_decay_order(const std::vector<unsigned>& j_list, const std::vector<double>& errors);

}  // namespace shosc
