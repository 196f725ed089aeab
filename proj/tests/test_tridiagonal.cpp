#include "oracles.hpp"

#include "shosc/tridiagonal.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace shosc;

namespace {

SymmetricTridiagonal random_matrix(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> d(n), e(n - 1);
    for (auto& v : d) v = dist(rng);
    for (auto& v : e) v = dist(rng);
    return {d, e};
}

double residual(const SymmetricTridiagonal& t, double lambda, const std::vector<double>& v) {
    const auto d = t.diagonal();
    const auto e = t.offdiagonal();
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double r = (d[i] - lambda) * v[i];
        if (i > 0) r += e[i - 1] * v[i - 1];
        if (i + 1 < t.size()) r += e[i] * v[i + 1];
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

}  // namespace

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(SymmetricTridiagonal({1.0, 2.0}, {1.0, 2.0}), ParameterError);
    CHECK_THROWS_AS(SymmetricTridiagonal({}, {}), ParameterError);
}

TEST_CASE("Sturm counts on a known spectrum") {
    // diag(0) with unit off-diagonals, n = 3: eigenvalues -sqrt2, 0, sqrt2
    const SymmetricTridiagonal t({0.0, 0.0, 0.0}, {1.0, 1.0});
    CHECK(t.count_below(-2.0) == 0);
    CHECK(t.count_below(-1.0) == 1);
    CHECK(t.count_below(0.5) == 2);
    CHECK(t.count_below(2.0) == 3);
    CHECK(bisect_eigenvalue(t, 0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::fabs(bisect_eigenvalue(t, 1)) < 1e-15);
    CHECK(bisect_eigenvalue(t, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto [lo, hi] = t.gershgorin_bounds();
    CHECK(lo <= -std::sqrt(2.0));
    CHECK(hi >= std::sqrt(2.0));
    CHECK_THROWS_AS(bisect_eigenvalue(t, 3), ParameterError);
}

TEST_CASE("bisection agrees with a dense solver") {
    std::mt19937 rng(20240611);
    for (std::size_t n : {1u, 2u, 5u, 17u, 64u, 150u}) {
        const auto t = random_matrix(n, rng);
        const std::vector<double> d(t.diagonal().begin(), t.diagonal().end());
        const std::vector<double> e(t.offdiagonal().begin(), t.offdiagonal().end());
        const auto reference = oracle::dense_eigenvalues(d, e);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(bisect_eigenvalue(t, i) - reference[i]) < 1e-12);
    }
}

TEST_CASE("central eigenvalues") {
    std::vector<double> d(41, 0.0);
    std::vector<double> e(40);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::sqrt(static_cast<double>(i + 1));
    const SymmetricTridiagonal t(d, e);
    const auto all = oracle::dense_eigenvalues(d, e);
    const auto central = central_eigenvalues(t, 5);
    REQUIRE(central.size() == 5);
    CHECK(std::is_sorted(central.begin(), central.end()));
    // odd size with zero diagonal: 0 is an eigenvalue and the spectrum is symmetric
    CHECK(std::fabs(central[2]) < 1e-14);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::fabs(central[i] - all[18 + i]) < 1e-12);
    CHECK(std::fabs(central[0] + central[4]) < 1e-13);
    CHECK_THROWS_AS(central_eigenvalues(t, 0), ParameterError);
    CHECK_THROWS_AS(central_eigenvalues(t, 42), ParameterError);
}

TEST_CASE("inverse iteration") {
    std::mt19937 rng(7);
    for (std::size_t n : {3u, 20u, 100u}) {
        const auto t = random_matrix(n, rng);
        TridiagonalWorkspace work;
        for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 7)) {
            const double lambda = bisect_eigenvalue(t, i);
            const auto v = inverse_iteration(t, lambda, work);
            double norm = 0.0;
            for (double x : v) norm += x * x;
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(residual(t, lambda, v) < 1e-12);
            const auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::fabs(x) > 1e-8; });
            REQUIRE(first != v.end());
            CHECK(*first > 0.0);
        }
    }
}
