#pragma once

// Matrices of the superalgebra generators F±, Q±, E±, H, 1 (and the parity R) on the
// truncated Fock basis |0>, ..., |N-1>, with |2m> = (b+)^m/sqrt(m!) |0> and
// |2m+1> = (b+)^m/sqrt(m!) a+ |0>.

#include "shosc/errors.hpp"

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace shosc {

enum class Generator { Fplus, Fminus, Qplus, Qminus, Eplus, Eminus, H, One, R };

std::string to_string(Generator g);

/// The model parameter gamma. Negative input is replaced by |gamma| (only gamma^2 enters
/// the spectral data); gamma == 0 is rejected.
class ModelParams {
public:
    explicit ModelParams(double gamma);
    double gamma() const noexcept { return gamma_; }
    /// The Charlier parameter a = gamma^2.
    double a() const noexcept { return gamma_ * gamma_; }

private:
    double gamma_;
};

/// Basis size N of the truncated Fock space. N >= 4 and even.
class FockTruncation {
public:
    explicit FockTruncation(std::size_t N);
    std::size_t size() const noexcept { return N_; }
    /// Rows/columns 0 .. N-3; identities between products of generators hold exactly there.
    std::size_t interior() const noexcept { return N_ - 2; }

private:
    std::size_t N_;
};

enum class Structure { diagonal, tridiagonal, pentadiagonal, dense };

std::string to_string(Structure s);

/// Square complex matrix stored by diagonals (offset = col - row). Entries outside the
/// stored bands are zero; products of banded operands stay banded.
class OperatorMatrix {
public:
    using Entry = std::complex<double>;

    explicit OperatorMatrix(std::size_t dim);
    static OperatorMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    Entry operator()(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, Entry value);

    /// Offsets of the bands holding at least one nonzero entry.
    std::vector<int> offsets() const;
    Structure structure() const;
    bool is_real() const;

    /// Diagonal at the given offset (length dim - |offset|); all zeros when absent.
    std::vector<Entry> band(int offset) const;

    OperatorMatrix transpose() const;
    OperatorMatrix adjoint() const;

    /// Largest |entry| over the leading block rows/cols [0, block).
    double max_abs(std::size_t block) const;
    double max_abs() const { return max_abs(dim_); }

    std::vector<Entry> apply(std::span<const Entry> v) const;

    OperatorMatrix& operator+=(const OperatorMatrix& other);
    OperatorMatrix& operator-=(const OperatorMatrix& other);
    OperatorMatrix& operator*=(Entry scale);

    friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
    friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
    friend OperatorMatrix operator*(Entry scale, OperatorMatrix m) { return m *= scale; }
    friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

private:
    std::size_t dim_;
    std::map<int, std::vector<Entry>> bands_;

    static std::size_t band_index(std::size_t row, std::size_t col) { return row < col ? row : col; }
    std::vector<Entry>& band_storage(int offset);
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Matrix of a generator; raising entries that would leave the truncation are dropped.
OperatorMatrix generator_matrix(Generator id, const FockTruncation& trunc);

/// Off-diagonal sequence (gamma, sqrt 1, gamma, sqrt 2, ...) of the position operator.
std::vector<double> position_offdiagonal(const ModelParams& params, std::size_t count);

/// q = gamma F+ + Q+ + gamma F- + Q-; real symmetric tridiagonal with zero diagonal.
OperatorMatrix position_matrix(const ModelParams& params, const FockTruncation& trunc);

/// p = i gamma F+ + i Q+ - i gamma F- - i Q-; <n+1|p|n> = i c_n, <n|p|n+1> = -i c_n.
OperatorMatrix momentum_matrix(const ModelParams& params, const FockTruncation& trunc);

/// 2H + R/2 = diag(n + 1/2).
OperatorMatrix hamiltonian_matrix(const FockTruncation& trunc);

/// diag(i^n); conjugating q by it gives p.
OperatorMatrix phase_matrix(const FockTruncation& trunc);

struct NamedResidual {
    std::string name;
    double residual;
};

/// Max-abs residual of every (anti)commutation relation of the algebra, on the interior block.
std::vector<NamedResidual> relation_residuals(const FockTruncation& trunc);

/// Same relations evaluated on the given leading block (block == N gives the full matrix).
std::vector<NamedResidual> relation_residuals(const FockTruncation& trunc, std::size_t block);

struct HamiltonLieResiduals {
    /// max |[H, q] + i p|
    double position_equation;
    /// max |[H, p] - i q|
    double momentum_equation;
};

HamiltonLieResiduals hamilton_lie_residuals(const ModelParams& params, const FockTruncation& trunc);
HamiltonLieResiduals hamilton_lie_residuals(const OperatorMatrix& hamiltonian, const OperatorMatrix& position,
                                            const OperatorMatrix& momentum, std::size_t block);

/// max |(p^2 + q^2)/2 - gamma^2 - H| on the interior block.
double energy_identity_residual(const ModelParams& params, const FockTruncation& trunc);

}  // namespace shosc
