#include "shosc/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace shosc {

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> diagonal, std::vector<double> offdiagonal)
    : diagonal_(std::move(diagonal)), offdiagonal_(std::move(offdiagonal)) {
    if (diagonal_.empty()) throw ParameterError("tridiagonal matrix must be nonempty");
    if (offdiagonal_.size() + 1 != diagonal_.size()) {
        throw ParameterError("tridiagonal matrix: offdiagonal must have length n - 1");
    }
}

std::size_t SymmetricTridiagonal::count_below(double x) const {
    double max_off_sq = 1.0;
    for (double e : offdiagonal_) max_off_sq = std::max(max_off_sq, e * e);
    const double pivmin = std::numeric_limits<double>::min() * max_off_sq;

    std::size_t count = 0;
    double q = diagonal_[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < diagonal_.size(); ++i) {
        const double e = offdiagonal_[i - 1];
        q = diagonal_[i] - x - e * e / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
    }
    return count;
}

std::pair<double, double> SymmetricTridiagonal::gershgorin_bounds() const {
    const std::size_t n = diagonal_.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::fabs(offdiagonal_[i - 1]);
        if (i + 1 < n) radius += std::fabs(offdiagonal_[i]);
        lo = std::min(lo, diagonal_[i] - radius);
        hi = std::max(hi, diagonal_[i] + radius);
    }
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi)) +
                       std::numeric_limits<double>::min();
    return {lo - pad, hi + pad};
}

double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index, const BisectionOptions& options) {
    if (index >= t.size()) throw ParameterError("bisect_eigenvalue: index out of range");
    auto [lo, hi] = t.gershgorin_bounds();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        const double width = hi - lo;
        if (width <= options.absolute_tolerance || width <= 2.0 * eps * std::max(std::fabs(lo), std::fabs(hi))) {
            return 0.5 * (lo + hi);
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        if (t.count_below(mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    throw ConvergenceError("bisect_eigenvalue: iteration cap reached for index " + std::to_string(index));
}

std::vector<double> central_eigenvalues(const SymmetricTridiagonal& t, std::size_t count,
                                        const BisectionOptions& options) {
    const std::size_t n = t.size();
    if (count == 0 || count > n) throw ParameterError("central_eigenvalues: count must lie in [1, n]");
    const std::size_t negatives = t.count_below(0.0);
    const std::size_t first = negatives > count ? negatives - count : 0;
    const std::size_t last = std::min(n, negatives + count);

    std::vector<double> candidates;
    candidates.reserve(last - first);
    for (std::size_t i = first; i < last; ++i) candidates.push_back(bisect_eigenvalue(t, i, options));
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    candidates.resize(count);
    std::sort(candidates.begin(), candidates.end());
    return candidates;
}

void TridiagonalWorkspace::resize(std::size_t n) {
    lower.assign(n > 0 ? n - 1 : 0, 0.0);
    main.assign(n, 0.0);
    upper.assign(n > 0 ? n - 1 : 0, 0.0);
    upper2.assign(n > 1 ? n - 2 : 0, 0.0);
    swapped.assign(n > 0 ? n - 1 : 0, 0);
}

namespace {

// LU factorization of (T - shift I) with partial pivoting (same scheme as LAPACK dgttrf).
void factor_shifted(const SymmetricTridiagonal& t, double shift, TridiagonalWorkspace& w) {
    const std::size_t n = t.size();
    w.resize(n);
    const auto d = t.diagonal();
    const auto e = t.offdiagonal();
    for (std::size_t i = 0; i < n; ++i) w.main[i] = d[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        w.lower[i] = e[i];
        w.upper[i] = e[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(w.main[i]) >= std::fabs(w.lower[i])) {
            if (w.main[i] != 0.0) {
                const double fact = w.lower[i] / w.main[i];
                w.lower[i] = fact;
                w.main[i + 1] -= fact * w.upper[i];
            }
        } else {
            const double fact = w.main[i] / w.lower[i];
            w.main[i] = w.lower[i];
            w.lower[i] = fact;
            const double temp = w.upper[i];
            w.upper[i] = w.main[i + 1];
            w.main[i + 1] = temp - fact * w.main[i + 1];
            if (i + 2 < n) {
                w.upper2[i] = w.upper[i + 1];
                w.upper[i + 1] = -fact * w.upper[i + 1];
            }
            w.swapped[i] = 1;
        }
    }
}

void solve_factored(TridiagonalWorkspace& w, std::span<double> b, double tiny) {
    const std::size_t n = b.size();
    for (double& pivot : w.main) {
        if (std::fabs(pivot) < tiny) pivot = pivot < 0 ? -tiny : tiny;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!w.swapped[i]) {
            b[i + 1] -= w.lower[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - w.lower[i] * b[i];
        }
    }
    b[n - 1] /= w.main[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - w.upper[n - 2] * b[n - 1]) / w.main[n - 2];
    for (std::size_t k = n > 2 ? n - 2 : 0; k-- > 0;) {
        b[k] = (b[k] - w.upper[k] * b[k + 1] - w.upper2[k] * b[k + 2]) / w.main[k];
    }
}

double normalize(std::span<double> v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return norm;
}

}  // namespace

std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue, TridiagonalWorkspace& work,
                                      const InverseIterationOptions& options) {
    const std::size_t n = t.size();
    const auto d = t.diagonal();
    const auto e = t.offdiagonal();
    auto [lo, hi] = t.gershgorin_bounds();
    const double scale = std::max({std::fabs(lo), std::fabs(hi), 1.0});
    const double tiny = std::numeric_limits<double>::epsilon() * scale;

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    normalize(v);

    factor_shifted(t, eigenvalue, work);
    const std::vector<double> pivots = work.main;

    double residual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        work.main = pivots;
        solve_factored(work, v, tiny);
        normalize(v);

        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double tv = d[i] * v[i];
            if (i > 0) tv += e[i - 1] * v[i - 1];
            if (i + 1 < n) tv += e[i] * v[i + 1];
            residual = std::max(residual, std::fabs(tv - eigenvalue * v[i]));
        }
        if (residual <= options.residual_tolerance * scale) {
            const auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::fabs(x) > 1e-8; });
            if (first != v.end() && *first < 0) {
                for (double& x : v) x = -x;
            }
            return v;
        }
    }
    throw ConvergenceError("inverse_iteration: residual " + std::to_string(residual) + " above tolerance");
}

std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                      const InverseIterationOptions& options) {
    TridiagonalWorkspace work;
    return inverse_iteration(t, eigenvalue, work, options);
}

}  // namespace shosc
