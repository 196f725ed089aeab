// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.

#include "shosc/cli/commands.hpp"
#include "shosc/fock_model.hpp"
#include "shosc/oscillator.hpp"
#include "shosc/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace shosc;

namespace {

constexpr double kRelationTolerance = 1e-12;
constexpr double kOrthogonalityTolerance = 1e-10;
// Largest central-eigenvalue error at N = 2048, gamma = 1, from the convergence study.
constexpr double kSpectrumBound = 1e-15;
constexpr double kResidualTolerance = 1e-9;
constexpr double kKernelTwoPathTolerance = 1e-10;
constexpr double kKernelOriginTolerance = 1e-12;
constexpr double kUnitarityTolerance = 1e-8;
constexpr double kObservableTolerance = 1e-12;
constexpr double kSlopeLow = 0.8;
constexpr double kSlopeHigh = 1.2;
constexpr double kNormTolerance = 1e-12;

const double kGammas[] = {0.5, 1.0, 2.0};

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::vector<SupportPoint> window_points(std::uint64_t k_max) { return SpectrumWindow(k_max).points(); }

Outcome algebraic_identities() {
    double worst = 0.0;
    for (std::size_t N : {16u, 64u, 256u}) {
        const FockTruncation trunc(N);
        for (const auto& r : relation_residuals(trunc)) worst = std::max(worst, r.residual);
        for (double gamma : kGammas) {
            const auto lie = hamilton_lie_residuals(ModelParams(gamma), trunc);
            worst = std::max({worst, lie.position_equation, lie.momentum_equation});
        }
    }
    return {worst <= kRelationTolerance, "max residual " + sci(worst)};
}

Outcome recurrence_equals_closed_form() {
    std::size_t compared = 0, mismatched = 0;
    for (const ExactScalar& gamma : {rational(1, 2), rational(1), rational(2)}) {
        for (std::uint64_t k = 0; k <= 12; ++k) {
            for (const auto& x : {SupportPoint::positive(k), SupportPoint::negative(k)}) {
                const auto rec = p_recurrence_exact(12, x, gamma);
                for (std::size_t n = 0; n <= 12; ++n) {
                    const auto closed = p_closed_form_exact(n, x, gamma);
                    ++compared;
                    if (rec[n].coefficient != closed.coefficient || rec[n].to_double() != closed.to_double()) ++mismatched;
                }
            }
        }
    }
    return {mismatched == 0, std::to_string(compared) + " exact comparisons, " + std::to_string(mismatched) + " mismatched"};
}

Outcome orthogonality() {
    double relative = 0.0, normal = 0.0;
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        const auto window = SpectrumWindow::adaptive(params, 20);
        const double mass = std::exp(gamma * gamma);
        for (std::size_t m = 0; m <= 20; ++m) {
            for (std::size_t n = 0; n <= 20; ++n) {
                const double delta = m == n ? 1.0 : 0.0;
                relative = std::max(relative, std::fabs(orthogonality_sum(m, n, params, window) / mass - delta));
                normal = std::max(normal, std::fabs(orthonormality_sum(m, n, params, window) - delta));
            }
        }
    }
    return {relative <= kOrthogonalityTolerance && normal <= kOrthogonalityTolerance,
            "weighted " + sci(relative) + ", orthonormal " + sci(normal)};
}

Outcome spectrum() {
    const ModelParams params(1.0);
    std::vector<double> errors;
    bool matched = true;
    for (std::size_t N : {128u, 256u, 512u, 1024u, 2048u}) {
        const auto ev = tridiagonal_eigenvalues(params, FockTruncation(N), 21);
        double worst = 0.0;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            const int offset = static_cast<int>(i) - 10;
            const SupportPoint expected = offset < 0 ? SupportPoint::negative(-offset) : SupportPoint::positive(offset);
            if (!(nearest_support_point(ev[i]) == expected)) matched = false;
            worst = std::max(worst, std::fabs(ev[i] - expected.value()));
        }
        errors.push_back(worst);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < errors.size(); ++i) monotone = monotone && errors[i] <= errors[i - 1];
    std::string detail = "errors N=128..2048:";
    for (double e : errors) detail += " " + sci(e);
    detail += monotone ? " (non-increasing)" : " (NOT monotone)";
    return {matched && monotone && errors.back() <= kSpectrumBound, detail};
}

Outcome eigenvector_residuals() {
    double q_worst = 0.0, p_worst = 0.0;
    const FockTruncation trunc(400);
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        for (const auto& x : window_points(10)) {
            q_worst = std::max(q_worst, eigenvector_residual(eigenvector(x, params, trunc), params));
            p_worst = std::max(p_worst, momentum_eigvec_residual(x, params, trunc));
        }
    }
    return {q_worst <= kResidualTolerance && p_worst <= kResidualTolerance,
            "position " + sci(q_worst) + ", momentum " + sci(p_worst)};
}

Outcome fourier_kernel() {
    double two_path = 0.0, origin = 0.0, unitarity = 0.0;
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        for (const auto& x : window_points(12)) {
            for (const auto& y : window_points(12)) {
                two_path = std::max(two_path, std::abs(fourier_kernel_series(x, y, params).value -
                                                       fourier_kernel_closed(x, y, params)));
            }
        }
        const auto o = SupportPoint::origin();
        const double expected = std::exp(-2.0 * gamma * gamma);
        origin = std::max({origin, std::abs(fourier_kernel_closed(o, o, params) - expected),
                           std::abs(fourier_kernel_series(o, o, params).value - expected)});
        const auto window = kernel_window(params, 8);
        for (const auto& y : window_points(8)) {
            for (const auto& y2 : window_points(8)) {
                const Complex delta = y == y2 ? 1.0 : 0.0;
                unitarity = std::max(unitarity, std::abs(kernel_unitarity_check(y, y2, params, window) - delta));
            }
        }
    }
    return {two_path <= kKernelTwoPathTolerance && origin <= kKernelOriginTolerance && unitarity <= kUnitarityTolerance,
            "two-path " + sci(two_path) + ", K(0,0) " + sci(origin) + ", unitarity " + sci(unitarity)};
}

Outcome observables() {
    double worst = 0.0;
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        const FockTruncation trunc(128);
        for (std::size_t n = 0; n <= 40; ++n) {
            const double formula = uncertainty_product(n, params);
            const auto column = commutator_qp_matrix(n, params, trunc);
            worst = std::max({worst, std::fabs(uncertainty_product_matrix(n, params, trunc) - formula),
                              std::abs(column.eigenvalue - commutator_qp_eigenvalue(n, params)), column.offdiagonal,
                              std::fabs(energy_expectation_matrix(n, params, trunc) - formula)});
        }
    }
    return {worst <= kObservableTolerance, "max difference " + sci(worst)};
}

Outcome limit_relation() {
    const std::vector<unsigned> ladder = {30, 100, 300, 1000, 3000};
    const ModelParams params(1.0);
    std::vector<double> errors;
    for (unsigned j : ladder) errors.push_back(limit_error(j, params, 3, 8));
    bool decreasing = true;
    for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
    const double slope = fitted_decay_order(ladder, errors);

    // Comparison grid for j in {5, 10, 20, 30}, n in {0, 1}: finite-support norms and parity.
    cli::LimitArgs args;
    args.gamma = 1.0;
    args.j_list = {5, 10, 20, 30};
    args.n_max = 1;
    args.k_max = 30;
    args.table = "grid";
    const cli::OutputRecord grid = cli::run_limit(args);
    double norm_error = 0.0;
    bool parity = true;
    for (unsigned j : args.j_list) {
        const Sl21Params sl21 = Sl21Params::coupled(j, params);
        for (std::size_t n = 0; n <= 1; ++n) {
            double norm = 0.0;
            for (const auto& x : window_points(j)) {
                const double v = sl21_wavefunction(n, x, sl21);
                norm += v * v;
                if (sl21_wavefunction(n, x.negated(), sl21) != (n % 2 == 0 ? v : -v)) parity = false;
            }
            norm_error = std::max(norm_error, std::fabs(norm - 1.0));
        }
    }
    std::size_t expected_rows = 0;
    for (unsigned j : args.j_list) expected_rows += 2 * (2 * j + 1);
    const bool grid_ok = grid.rows.size() == expected_rows;

    std::string detail = "errors";
    for (double e : errors) detail += " " + sci(e);
    detail += ", slope " + std::to_string(slope) + ", grid rows " + std::to_string(grid.rows.size()) +
              ", norm error " + sci(norm_error);
    return {decreasing && slope >= kSlopeLow && slope <= kSlopeHigh && grid_ok && norm_error <= kNormTolerance && parity,
            detail};
}

Outcome figure_wavefunctions() {
    double norm_error = 0.0;
    bool parity = true, positive = true;
    for (double gamma : kGammas) {
        cli::WavefunctionArgs args;
        args.gamma = gamma;
        args.n_list = {0, 1, 2, 3};
        args.k_max = 10;
        const cli::OutputRecord table = cli::run_wavefunction(args);
        const ModelParams params(gamma);
        const auto summary = wavefunction_table(params, args.n_list, SpectrumWindow(args.k_max));
        const std::size_t n_col = table.column_index("n");
        const std::size_t phi_col = table.column_index("phi");
        const std::size_t width = 2 * args.k_max + 1;
        for (std::size_t i = 0; i < args.n_list.size(); ++i) {
            double norm = 0.0;
            for (std::size_t j = 0; j < width; ++j) {
                const auto& row = table.rows[i * width + j];
                const auto& mirror = table.rows[i * width + (width - 1 - j)];
                const double v = cli::cell_real(row[phi_col]);
                const double w = cli::cell_real(mirror[phi_col]);
                norm += v * v;
                const auto n = cli::cell_integer(row[n_col]);
                if (w != (n % 2 == 0 ? v : -v)) parity = false;
                if (n == 0 && !(v > 0.0)) positive = false;
            }
            norm_error = std::max(norm_error, std::fabs(norm + summary.tail_mass[i] - 1.0));
        }
    }
    return {norm_error <= kNormTolerance && parity && positive,
            "tail-adjusted norm error " + sci(norm_error) + (parity ? ", parity ok" : ", parity broken") +
                (positive ? ", phi_0 > 0" : ", phi_0 not positive")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"algebraic identities", algebraic_identities},
        {"exact recurrence equals closed form", recurrence_equals_closed_form},
        {"discrete orthogonality", orthogonality},
        {"spectrum reproduction", spectrum},
        {"eigenvector residuals", eigenvector_residuals},
        {"Fourier kernel", fourier_kernel},
        {"observables", observables},
        {"limit relation", limit_relation},
        {"wavefunction tables", figure_wavefunctions},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!outcome.pass) ++failures;
        std::printf("criterion %zu: %s  %s: %s (%.2f s)\n", i + 1, outcome.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), outcome.detail.c_str(), seconds);
    }
    return failures == 0 ? 0 : 1;
}
