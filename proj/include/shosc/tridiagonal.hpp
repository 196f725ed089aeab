#pragma once

// Real symmetric tridiagonal eigenproblem: Sturm-sequence bisection for eigenvalues and
// inverse iteration for eigenvectors.

#include "shosc/errors.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace shosc {

class SymmetricTridiagonal {
public:
    /// diagonal has length n, offdiagonal length n - 1.
    SymmetricTridiagonal(std::vector<double> diagonal, std::vector<double> offdiagonal);

    std::size_t size() const noexcept { return diagonal_.size(); }
    std::span<const double> diagonal() const noexcept { return diagonal_; }
    std::span<const double> offdiagonal() const noexcept { return offdiagonal_; }

    /// Number of eigenvalues strictly less than x (Sturm count via the LDL^T pivots).
    std::size_t count_below(double x) const;

    /// Interval [lo, hi] containing the whole spectrum (Gershgorin).
    std::pair<double, double> gershgorin_bounds() const;

private:
    std::vector<double> diagonal_;
    std::vector<double> offdiagonal_;
};

struct BisectionOptions {
    /// Stop once the bracket is narrower than this (or cannot be split further in double).
    /// The default resolves eigenvalues to the last bit, so convergence studies measure
    /// truncation error rather than the stopping rule.
    double absolute_tolerance = 1e-16;
    std::size_t max_iterations = 200;
};

/// The index-th smallest eigenvalue (0-based).
double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index, const BisectionOptions& options = {});

/// The count eigenvalues closest to zero, sorted ascending.
std::vector<double> central_eigenvalues(const SymmetricTridiagonal& t, std::size_t count,
                                        const BisectionOptions& options = {});

/// Scratch space for inverse iteration, reusable across solves on matrices of the same size.
struct TridiagonalWorkspace {
    std::vector<double> lower, main, upper, upper2;
    std::vector<unsigned char> swapped;
    void resize(std::size_t n);
};

struct InverseIterationOptions {
    std::size_t max_iterations = 30;
    double residual_tolerance = 1e-12;
};

/// Unit eigenvector for a computed eigenvalue. Sign is normalized so that the first
/// component with |value| > 1e-8 is positive. Throws ConvergenceError if the residual
/// does not fall below the tolerance (scaled by the matrix norm).
std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue, TridiagonalWorkspace& work,
                                      const InverseIterationOptions& options = {});
std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                      const InverseIterationOptions& options = {});

}  // namespace shosc
