#pragma once

// Spectral problem of the position operator q: the recurrence polynomials p_n(x), their
// closed Charlier form, the discrete weight on S = {±sqrt(k)}, the orthonormal functions
// p~_n(x), and the truncated Jacobi matrix solved numerically.

#include "shosc/errors.hpp"
#include "shosc/exact.hpp"
#include "shosc/fock_model.hpp"
#include "shosc/tridiagonal.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace shosc {

/// A point x = sign * sqrt(k) of the support S, stored exactly.
class SupportPoint {
public:
    /// sign must be -1, 0 or +1, with sign == 0 exactly when k == 0.
    SupportPoint(int sign, std::uint64_t k);

    static SupportPoint origin() { return SupportPoint(0, 0); }
    static SupportPoint positive(std::uint64_t k) { return k == 0 ? origin() : SupportPoint(1, k); }
    static SupportPoint negative(std::uint64_t k) { return k == 0 ? origin() : SupportPoint(-1, k); }

    int sign() const noexcept { return sign_; }
    std::uint64_t k() const noexcept { return k_; }
    bool is_origin() const noexcept { return k_ == 0; }
    double value() const { return sign_ * std::sqrt(static_cast<double>(k_)); }
    SupportPoint negated() const { return SupportPoint(-sign_, k_); }

    friend bool operator==(const SupportPoint&, const SupportPoint&) = default;

private:
    int sign_;
    std::uint64_t k_;
};

std::string to_string(const SupportPoint& x);

/// Finite view {-sqrt(k_max), ..., -1, 0, 1, ..., sqrt(k_max)} of S.
class SpectrumWindow {
public:
    explicit SpectrumWindow(std::uint64_t k_max);

    /// Smallest window (at least min_k_max) whose neglected weight mass satisfies
    /// e^{-a} sum_{k > k_max} a^k/k! < eps, and on which every p~_n with n <= max_degree
    /// keeps its squared-norm tail below eps (polynomial growth bounded explicitly).
    static SpectrumWindow adaptive(const ModelParams& params, unsigned max_degree = 0, double eps = 1e-14,
                                   std::uint64_t min_k_max = 40);

    std::uint64_t k_max() const noexcept { return k_max_; }
    std::size_t size() const noexcept { return 2 * k_max_ + 1; }
    /// Points in increasing order of value.
    std::vector<SupportPoint> points() const;

private:
    std::uint64_t k_max_;
};

// ---------------------------------------------------------------------------
// Polynomials p_n(x)
// ---------------------------------------------------------------------------

/// p_0 .. p_{n_max} from p_{-1} = 0, p_0 = 1 and the split recurrence
///   x p_{2m}   = sqrt(m)   p_{2m-1} + gamma p_{2m+1}
///   x p_{2m+1} = gamma p_{2m} + sqrt(m+1) p_{2m+2}.
/// Generic in the scalar so the same recurrence can run in extended precision. At points
/// of S the wanted solution is the recessive one, so forward recursion in double loses
/// digits quickly; use a wide Real (or the exact route below) where accuracy matters.
template <class Real>
std::vector<Real> p_recurrence(std::size_t n_max, const Real& x, const Real& gamma) {
    using std::sqrt;
    std::vector<Real> p(n_max + 1);
    p[0] = Real(1);
    Real previous(0);
    for (std::size_t i = 0; i < n_max; ++i) {
        const std::size_t m = i / 2;
        if (i % 2 == 0) {
            p[i + 1] = (x * p[i] - sqrt(Real(m)) * previous) / gamma;
        } else {
            p[i + 1] = (x * p[i] - gamma * previous) / sqrt(Real(m + 1));
        }
        previous = p[i];
    }
    return p;
}

/// Double interface to the recurrence; runs internally with 250 significant digits and
/// rounds the results.
std::vector<double> p_recurrence(std::size_t n_max, double x, const ModelParams& params);

/// Same, with x = sign sqrt(k) formed in the wide type so the input carries no rounding.
std::vector<double> p_recurrence(std::size_t n_max, const SupportPoint& x, const ModelParams& params);

/// Exact value of p_n at a support point: p_n(x) = coefficient * x^{n mod 2} / sqrt(floor(n/2)!).
/// The coefficient depends only on k = x^2 and is rational when gamma is.
struct ExactPValue {
    ExactScalar coefficient;
    std::size_t n;
    SupportPoint x;

    double to_double() const;
};

/// Exact recurrence at x = ±sqrt(k) for rational gamma. In the scaled variables P_n the
/// recurrence becomes P_{2m+1} = (P_{2m} - m P_{2m-1}) / gamma and
/// P_{2m+2} = k P_{2m+1} - gamma P_{2m}, so no square roots appear.
std::vector<ExactPValue> p_recurrence_exact(std::size_t n_max, const SupportPoint& x, const ExactScalar& gamma);

/// Closed form: p_{2m} = (-gamma)^m / sqrt(m!) C_m(x^2; gamma^2),
///              p_{2m+1} = -(-gamma)^{m-1} / sqrt(m!) x C_m(x^2 - 1; gamma^2).
ExactPValue p_closed_form_exact(std::size_t n, const SupportPoint& x, const ExactScalar& gamma);
double p_closed_form(std::size_t n, double x, const ModelParams& params);
double p_closed_form(std::size_t n, const SupportPoint& x, const ModelParams& params);

// ---------------------------------------------------------------------------
// Weight and orthonormal functions
// ---------------------------------------------------------------------------

/// w(0) = 1, w(±sqrt k) = gamma^{2k} / (2 k!) for k >= 1.
double weight(const SupportPoint& x, const ModelParams& params);
double log_weight(const SupportPoint& x, const ModelParams& params);

/// p~_n(x) = e^{-gamma^2/2} sqrt(w(x)) p_n(x), assembled in log space.
double p_tilde(std::size_t n, const SupportPoint& x, const ModelParams& params);

/// p~_0(x) .. p~_{count-1}(x).
std::vector<double> p_tilde_sequence(std::size_t count, const SupportPoint& x, const ModelParams& params);

/// sum over the window of w(x) p_m(x) p_n(x); approximates e^{gamma^2} delta_mn.
double orthogonality_sum(std::size_t m, std::size_t n, const ModelParams& params, const SpectrumWindow& window);

/// sum over the window of p~_m(x) p~_n(x); approximates delta_mn.
double orthonormality_sum(std::size_t m, std::size_t n, const ModelParams& params, const SpectrumWindow& window);

struct EigenvectorExpansion {
    SupportPoint x;
    /// p~_0(x) .. p~_{N-1}(x)
    std::vector<double> coefficients;
};

/// First N coefficients of the normalized q-eigenvector for eigenvalue x.
EigenvectorExpansion eigenvector(const SupportPoint& x, const ModelParams& params, const FockTruncation& trunc);

/// max over interior rows of |((q - x) v)_n|.
double eigenvector_residual(const EigenvectorExpansion& v, const ModelParams& params);

// ---------------------------------------------------------------------------
// Truncated Jacobi matrix
// ---------------------------------------------------------------------------

/// The Jacobi matrix used for numerical diagonalization: the leading (N-1) x (N-1) block
/// of q. An even truncation ends on a gamma link, leaving |N-1> weakly attached; keeping
/// it would add a spurious eigenvalue next to 0 localized on that last state.
SymmetricTridiagonal jacobi_matrix(const ModelParams& params, const FockTruncation& trunc);

/// The count eigenvalues of the truncated Jacobi matrix closest to zero, ascending.
std::vector<double> tridiagonal_eigenvalues(const ModelParams& params, const FockTruncation& trunc,
                                            std::size_t count, const BisectionOptions& options = {});

/// Nearest point of S to a real number.
SupportPoint nearest_support_point(double value);

struct DiagonalizedEigenpair {
    double eigenvalue;
    SupportPoint nearest;
    /// Unit eigenvector, sign-aligned so the first component above 1e-8 in magnitude is positive.
    std::vector<double> vector;
};

/// Numerically diagonalized eigenpair of the truncated Jacobi matrix closest to x.
DiagonalizedEigenpair diagonalized_eigenpair(const SupportPoint& x, const ModelParams& params,
                                             const FockTruncation& trunc);

/// Sum of the above-diagonal entries of the truncated band. It grows without bound in N,
/// the cited sufficient condition for a determinate moment problem.
double offdiagonal_partial_sum(const ModelParams& params, const FockTruncation& trunc);

}  // namespace shosc
