#include "oracles.hpp"

#include "shosc/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace shosc;

namespace {

const double kGammas[] = {0.5, 1.0, 2.0};

ExactScalar exact_gamma(double gamma) {
    return gamma == 0.5 ? rational(1, 2) : rational(static_cast<std::int64_t>(gamma));
}

}  // namespace

TEST_CASE("support points and windows") {
    CHECK_THROWS_AS(SupportPoint(0, 3), ParameterError);
    CHECK_THROWS_AS(SupportPoint(1, 0), ParameterError);
    CHECK_THROWS_AS(SupportPoint(2, 4), ParameterError);
    CHECK(SupportPoint::negative(4).value() == -2.0);
    CHECK(SupportPoint::positive(0) == SupportPoint::origin());
    CHECK(SupportPoint::positive(3).negated() == SupportPoint::negative(3));
    const SpectrumWindow w(3);
    CHECK(w.size() == 7);
    const auto pts = w.points();
    REQUIRE(pts.size() == 7);
    CHECK(pts.front() == SupportPoint::negative(3));
    CHECK(pts[3].is_origin());
    CHECK(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.value() < b.value(); }));
    CHECK_THROWS_AS(SpectrumWindow(0), ParameterError);
    CHECK(SpectrumWindow::adaptive(ModelParams(1.0)).k_max() >= 40);
    CHECK(SpectrumWindow::adaptive(ModelParams(2.0), 40).k_max() >= SpectrumWindow::adaptive(ModelParams(2.0)).k_max());
}

TEST_CASE("recurrence examples") {
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        for (double x : {-1.7, 0.0, 0.3, std::sqrt(5.0)}) {
            const auto p = p_recurrence(6, x, params);
            CHECK(p[0] == 1.0);
            CHECK(p[1] == doctest::Approx(x / gamma).epsilon(1e-15));
            CHECK(p[2] == doctest::Approx(x * x / gamma - gamma).epsilon(1e-14));
            CHECK(p_closed_form(1, x, params) == doctest::Approx(x / gamma).epsilon(1e-15));
        }
        const auto at_zero = p_recurrence(30, 0.0, params);
        for (std::size_t n = 1; n <= 30; n += 2) CHECK(at_zero[n] == 0.0);
        for (std::size_t m = 0; m <= 10; ++m) {
            const double expected = std::pow(-gamma, static_cast<double>(m)) / std::sqrt(std::tgamma(m + 1.0));
            CHECK(p_closed_form(2 * m, 0.0, params) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("exact recurrence equals the exact closed form") {
    for (const ExactScalar& gamma : {rational(1, 2), rational(1), rational(2), rational(3, 7)}) {
        for (std::uint64_t k = 0; k <= 12; ++k) {
            for (int sign : {-1, 1}) {
                const SupportPoint x = sign > 0 ? SupportPoint::positive(k) : SupportPoint::negative(k);
                const auto rec = p_recurrence_exact(12, x, gamma);
                for (std::size_t n = 0; n <= 12; ++n) {
                    const auto closed = p_closed_form_exact(n, x, gamma);
                    CHECK(rec[n].coefficient == closed.coefficient);
                }
            }
        }
    }
}

TEST_CASE("parity p_n(-x) = (-1)^n p_n(x)") {
    const ExactScalar gamma = rational(3, 2);
    for (std::uint64_t k = 1; k <= 10; ++k) {
        const auto plus = p_recurrence_exact(15, SupportPoint::positive(k), gamma);
        const auto minus = p_recurrence_exact(15, SupportPoint::negative(k), gamma);
        for (std::size_t n = 0; n <= 15; ++n) {
            // the coefficient depends only on k; the sign sits in the x^{n mod 2} factor
            CHECK(plus[n].coefficient == minus[n].coefficient);
            CHECK(minus[n].to_double() == (n % 2 == 0 ? 1.0 : -1.0) * plus[n].to_double());
        }
    }
    const ModelParams params(0.8);
    for (double x : {0.4, 1.0, 2.5}) {
        const auto plus = p_recurrence(25, x, params);
        const auto minus = p_recurrence(25, -x, params);
        for (std::size_t n = 0; n <= 25; ++n) CHECK(minus[n] == (n % 2 == 0 ? 1.0 : -1.0) * plus[n]);
    }
}

TEST_CASE("closed form agrees with a wide-precision recurrence") {
    double worst = 0.0;
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        for (std::uint64_t k = 0; k <= 40; ++k) {
            for (int sign : {-1, 1}) {
                if (k == 0 && sign < 0) continue;
                const SupportPoint x = k == 0 ? SupportPoint::origin() : SupportPoint(sign, k);
                const auto reference = oracle::p_by_recurrence(40, x.sign(), static_cast<unsigned>(k), oracle::Wide(gamma));
                const auto library = p_recurrence(40, x, params);
                for (std::size_t n = 0; n <= 40; ++n) {
                    const double ref = reference[n].convert_to<double>();
                    if (ref == 0.0) {
                        CHECK(p_closed_form(n, x, params) == 0.0);
                        continue;
                    }
                    // exact zeros of p_n leave ~1e-100 residue in the oracle
                    const double scale = std::max(std::fabs(ref), 1e-30);
                    worst = std::max(worst, std::fabs(p_closed_form(n, x, params) - ref) / scale);
                    worst = std::max(worst, std::fabs(library[n] - ref) / scale);
                }
            }
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("weights") {
    const ModelParams params(1.0);
    CHECK(weight(SupportPoint::origin(), params) == 1.0);
    CHECK(weight(SupportPoint::positive(1), params) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(weight(SupportPoint::negative(1), params) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(weight(SupportPoint::positive(3), ModelParams(2.0)) == doctest::Approx(0.5 * 64.0 / 6.0).epsilon(1e-14));
    for (double gamma : kGammas) {
        const ModelParams p(gamma);
        long double mass = 0.0L;
        for (const auto& x : SpectrumWindow::adaptive(p).points()) mass += weight(x, p);
        CHECK(static_cast<double>(mass) == doctest::Approx(std::exp(gamma * gamma)).epsilon(1e-13));
    }
}

TEST_CASE("orthonormal functions") {
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        CHECK(p_tilde(0, SupportPoint::origin(), params) == doctest::Approx(std::exp(-gamma * gamma / 2)).epsilon(1e-15));
        for (std::size_t n = 1; n < 30; n += 2) CHECK(p_tilde(n, SupportPoint::origin(), params) == 0.0);
        for (std::uint64_t k = 0; k <= 20; ++k) {
            const auto x = SupportPoint::positive(k);
            const auto seq = p_tilde_sequence(30, x, params);
            for (std::size_t n = 0; n < 30; ++n) {
                CHECK(seq[n] == p_tilde(n, x, params));
                CHECK(p_tilde(n, x.negated(), params) == (n % 2 == 0 ? 1.0 : -1.0) * seq[n]);
                const double direct = std::exp(-gamma * gamma / 2) * std::sqrt(weight(x, params)) * p_closed_form(n, x, params);
                CHECK(std::fabs(seq[n] - direct) <= 1e-13 * std::max(1.0, std::fabs(direct)));
            }
        }
    }
}

TEST_CASE("orthogonality examples") {
    const ModelParams one(1.0);
    const auto w1 = SpectrumWindow::adaptive(one, 1);
    CHECK(orthogonality_sum(0, 0, one, w1) == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
    for (double gamma : kGammas) {
        const ModelParams p(gamma);
        CHECK(orthogonality_sum(0, 1, p, SpectrumWindow::adaptive(p, 1)) == 0.0);
    }
    const ModelParams two(2.0);
    CHECK(std::fabs(orthogonality_sum(3, 3, two, SpectrumWindow::adaptive(two, 3)) - std::exp(4.0)) <= 1e-8);
}

TEST_CASE("orthogonality and orthonormality, m, n <= 20") {
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        const auto window = SpectrumWindow::adaptive(params, 20);
        const double mass = std::exp(gamma * gamma);
        double worst_relative = 0.0;
        double worst_normal = 0.0;
        for (std::size_t m = 0; m <= 20; ++m) {
            for (std::size_t n = 0; n <= 20; ++n) {
                const double expected = m == n ? 1.0 : 0.0;
                worst_relative = std::max(worst_relative, std::fabs(orthogonality_sum(m, n, params, window) / mass - expected));
                worst_normal = std::max(worst_normal, std::fabs(orthonormality_sum(m, n, params, window) - expected));
            }
        }
        CHECK(worst_relative <= 1e-10);
        CHECK(worst_normal <= 1e-10);
    }
}

TEST_CASE("eigenvectors") {
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        const FockTruncation trunc(400);
        for (std::uint64_t k = 0; k <= 10; ++k) {
            for (const auto& x : {SupportPoint::positive(k), SupportPoint::negative(k)}) {
                const auto v = eigenvector(x, params, trunc);
                REQUIRE(v.coefficients.size() == 400);
                CHECK(eigenvector_residual(v, params) <= 1e-9);
                long double sum = 0.0L;
                for (double c : v.coefficients) sum += static_cast<long double>(c) * c;
                CHECK(std::fabs(1.0 - static_cast<double>(sum)) <= 1e-12);
            }
        }
        const auto origin = eigenvector(SupportPoint::origin(), params, FockTruncation(64));
        for (std::size_t n = 1; n < 64; n += 2) CHECK(origin.coefficients[n] == 0.0);
    }
    SUBCASE("partial norms increase towards 1") {
        const ModelParams params(1.0);
        const auto x = SupportPoint::positive(5);
        double previous = 0.0;
        for (std::size_t N : {8u, 16u, 32u, 64u}) {
            const auto v = eigenvector(x, params, FockTruncation(N));
            double sum = 0.0;
            for (double c : v.coefficients) sum += c * c;
            CHECK(sum > previous);
            CHECK(sum <= 1.0 + 1e-14);
            previous = sum;
        }
    }
}

TEST_CASE("Jacobi matrix spectrum") {
    SUBCASE("matrix shape") {
        const auto t = jacobi_matrix(ModelParams(0.5), FockTruncation(8));
        CHECK(t.size() == 7);
        CHECK(t.offdiagonal()[0] == 0.5);
        CHECK(t.offdiagonal()[1] == 1.0);
    }
    SUBCASE("symmetry under negation") {
        for (double gamma : kGammas) {
            const auto ev = tridiagonal_eigenvalues(ModelParams(gamma), FockTruncation(512), 41);
            for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::fabs(ev[i] + ev[ev.size() - 1 - i]) <= 1e-12);
        }
    }
    SUBCASE("central eigenvalues approach the support") {
        const auto ev = tridiagonal_eigenvalues(ModelParams(1.0), FockTruncation(2048), 21);
        REQUIRE(ev.size() == 21);
        for (std::size_t i = 0; i < 21; ++i) {
            const int offset = static_cast<int>(i) - 10;
            const double expected = (offset < 0 ? -1.0 : 1.0) * std::sqrt(static_cast<double>(std::abs(offset)));
            CHECK(std::fabs(ev[i] - expected) <= 1e-12);
            CHECK(nearest_support_point(ev[i]).k() == static_cast<std::uint64_t>(std::abs(offset)));
        }
    }
    SUBCASE("agreement with a dense solver at small N") {
        const ModelParams params(0.7);
        const FockTruncation trunc(60);
        const auto t = jacobi_matrix(params, trunc);
        const auto reference = oracle::dense_eigenvalues({t.diagonal().begin(), t.diagonal().end()},
                                                         {t.offdiagonal().begin(), t.offdiagonal().end()});
        const auto ev = tridiagonal_eigenvalues(params, trunc, 59);
        for (std::size_t i = 0; i < 59; ++i) CHECK(std::fabs(ev[i] - reference[i]) <= 1e-12);
        CHECK_THROWS_AS(tridiagonal_eigenvalues(params, trunc, 60), ParameterError);
    }
    SUBCASE("nearest support point") {
        CHECK(nearest_support_point(0.1) == SupportPoint::origin());
        CHECK(nearest_support_point(-1.45) == SupportPoint::negative(2));
        CHECK(nearest_support_point(3.01) == SupportPoint::positive(9));
    }
    SUBCASE("off-diagonal partial sums grow") {
        const ModelParams params(1.0);
        double previous = 0.0;
        for (std::size_t N : {16u, 64u, 256u, 1024u}) {
            const double s = offdiagonal_partial_sum(params, FockTruncation(N));
            CHECK(s > previous + 1.0);
            previous = s;
        }
    }
}

TEST_CASE("three-way agreement of eigenvector components") {
    for (double gamma : kGammas) {
        const ModelParams params(gamma);
        const FockTruncation trunc(2048);
        double worst = 0.0;
        for (std::uint64_t k = 0; k <= 10; ++k) {
            for (const auto& x : {SupportPoint::positive(k), SupportPoint::negative(k)}) {
                const auto pair = diagonalized_eigenpair(x, params, trunc);
                CHECK(pair.nearest == x);
                const auto recurrence = p_recurrence(60, x, params);
                const double scale = std::exp(-gamma * gamma / 2) * std::sqrt(weight(x, params));
                const auto exact = p_recurrence_exact(60, x, exact_gamma(gamma));
                for (std::size_t n = 0; n <= 60; ++n) {
                    const double from_closed = p_tilde(n, x, params);
                    const double from_recurrence = scale * recurrence[n];
                    const double from_exact = scale * exact[n].to_double();
                    worst = std::max({worst, std::fabs(pair.vector[n] - from_closed),
                                      std::fabs(from_recurrence - from_closed), std::fabs(from_exact - from_closed)});
                }
            }
        }
        CHECK(worst <= 1e-6);
    }
}
