#include "shosc/fock_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace shosc {

namespace {

using Entry = OperatorMatrix::Entry;

bool is_even(std::size_t n) { return n % 2 == 0; }

}  // namespace

std::string to_string(Generator g) {
    switch (g) {
        case Generator::Fplus: return "F+";
        case Generator::Fminus: return "F-";
        case Generator::Qplus: return "Q+";
        case Generator::Qminus: return "Q-";
        case Generator::Eplus: return "E+";
        case Generator::Eminus: return "E-";
        case Generator::H: return "H";
        case Generator::One: return "1";
        case Generator::R: return "R";
    }
    return "?";
}

std::string to_string(Structure s) {
    switch (s) {
        case Structure::diagonal: return "diagonal";
        case Structure::tridiagonal: return "tridiagonal";
        case Structure::pentadiagonal: return "pentadiagonal";
        case Structure::dense: return "dense";
    }
    return "?";
}

ModelParams::ModelParams(double gamma) : gamma_(std::fabs(gamma)) {
    if (!std::isfinite(gamma)) throw ParameterError("gamma must be finite");
    if (gamma == 0.0) {
        throw ParameterError("gamma must be nonzero (gamma = 0 splits the position operator into 2x2 blocks)");
    }
}

FockTruncation::FockTruncation(std::size_t N) : N_(N) {
    if (N < 4) throw ParameterError("Fock truncation N must be at least 4");
    if (N % 2 != 0) throw ParameterError("Fock truncation N must be even");
}

// ---------------------------------------------------------------------------
// OperatorMatrix
// ---------------------------------------------------------------------------

OperatorMatrix::OperatorMatrix(std::size_t dim) : dim_(dim) {}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
    OperatorMatrix m(dim);
    m.bands_[0] = std::vector<Entry>(dim, Entry(1.0));
    return m;
}

Entry OperatorMatrix::operator()(std::size_t row, std::size_t col) const {
    if (row >= dim_ || col >= dim_) throw std::out_of_range("OperatorMatrix index out of range");
    const int offset = static_cast<int>(col) - static_cast<int>(row);
    const auto it = bands_.find(offset);
    if (it == bands_.end()) return Entry(0.0);
    return it->second[band_index(row, col)];
}

std::vector<Entry>& OperatorMatrix::band_storage(int offset) {
    auto [it, inserted] = bands_.try_emplace(offset);
    if (inserted) it->second.assign(dim_ - static_cast<std::size_t>(std::abs(offset)), Entry(0.0));
    return it->second;
}

void OperatorMatrix::set(std::size_t row, std::size_t col, Entry value) {
    if (row >= dim_ || col >= dim_) throw std::out_of_range("OperatorMatrix index out of range");
    const int offset = static_cast<int>(col) - static_cast<int>(row);
    band_storage(offset)[band_index(row, col)] = value;
}

std::vector<int> OperatorMatrix::offsets() const {
    std::vector<int> result;
    for (const auto& [offset, values] : bands_) {
        if (std::any_of(values.begin(), values.end(), [](Entry e) { return e != Entry(0.0); })) {
            result.push_back(offset);
        }
    }
    return result;
}

Structure OperatorMatrix::structure() const {
    int width = 0;
    for (int offset : offsets()) width = std::max(width, std::abs(offset));
    switch (width) {
        case 0: return Structure::diagonal;
        case 1: return Structure::tridiagonal;
        case 2: return Structure::pentadiagonal;
        default: return Structure::dense;
    }
}

bool OperatorMatrix::is_real() const {
    for (const auto& [offset, values] : bands_) {
        for (Entry e : values) {
            if (e.imag() != 0.0) return false;
        }
    }
    return true;
}

std::vector<Entry> OperatorMatrix::band(int offset) const {
    const auto it = bands_.find(offset);
    if (it != bands_.end()) return it->second;
    if (static_cast<std::size_t>(std::abs(offset)) >= dim_) return {};
    return std::vector<Entry>(dim_ - static_cast<std::size_t>(std::abs(offset)), Entry(0.0));
}

OperatorMatrix OperatorMatrix::transpose() const {
    OperatorMatrix t(dim_);
    for (const auto& [offset, values] : bands_) t.bands_[-offset] = values;
    return t;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix t(dim_);
    for (const auto& [offset, values] : bands_) {
        auto& dst = t.bands_[-offset];
        dst.resize(values.size());
        std::transform(values.begin(), values.end(), dst.begin(), [](Entry e) { return std::conj(e); });
    }
    return t;
}

double OperatorMatrix::max_abs(std::size_t block) const {
    block = std::min(block, dim_);
    double result = 0.0;
    for (const auto& [offset, values] : bands_) {
        const std::size_t shift = static_cast<std::size_t>(std::abs(offset));
        // entry i sits at (i, i + shift) or (i + shift, i); both indices must be < block
        for (std::size_t i = 0; i + shift < block && i < values.size(); ++i) {
            result = std::max(result, std::abs(values[i]));
        }
    }
    return result;
}

std::vector<Entry> OperatorMatrix::apply(std::span<const Entry> v) const {
    if (v.size() != dim_) throw std::invalid_argument("OperatorMatrix::apply: dimension mismatch");
    std::vector<Entry> out(dim_, Entry(0.0));
    for (const auto& [offset, values] : bands_) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            const std::size_t row = offset >= 0 ? i : i + static_cast<std::size_t>(-offset);
            const std::size_t col = offset >= 0 ? i + static_cast<std::size_t>(offset) : i;
            out[row] += values[i] * v[col];
        }
    }
    return out;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("OperatorMatrix: dimension mismatch");
    for (const auto& [offset, values] : other.bands_) {
        auto& dst = band_storage(offset);
        for (std::size_t i = 0; i < values.size(); ++i) dst[i] += values[i];
    }
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("OperatorMatrix: dimension mismatch");
    for (const auto& [offset, values] : other.bands_) {
        auto& dst = band_storage(offset);
        for (std::size_t i = 0; i < values.size(); ++i) dst[i] -= values[i];
    }
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Entry scale) {
    for (auto& [offset, values] : bands_) {
        for (Entry& e : values) e *= scale;
    }
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("OperatorMatrix: dimension mismatch");
    const auto n = static_cast<long>(lhs.dim_);
    OperatorMatrix result(lhs.dim_);
    for (const auto& [da, va] : lhs.bands_) {
        for (const auto& [db, vb] : rhs.bands_) {
            const int dc = da + db;
            if (std::abs(dc) >= n) continue;
            auto& dst = result.band_storage(dc);
            // C(r, r+da+db) += A(r, r+da) * B(r+da, r+da+db)
            const long lo = std::max({0L, -static_cast<long>(da), -static_cast<long>(dc)});
            const long hi = std::min({n, n - da, n - dc});
            for (long r = lo; r < hi; ++r) {
                const long mid = r + da;
                const long col = r + dc;
                const Entry a = va[OperatorMatrix::band_index(r, mid)];
                const Entry b = vb[OperatorMatrix::band_index(mid, col)];
                dst[OperatorMatrix::band_index(r, col)] += a * b;
            }
        }
    }
    return result;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b + b * a; }

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

OperatorMatrix generator_matrix(Generator id, const FockTruncation& trunc) {
    const std::size_t N = trunc.size();
    OperatorMatrix m(N);
    for (std::size_t n = 0; n < N; ++n) {
        const double nd = static_cast<double>(n);
        switch (id) {
            case Generator::Fplus:
                if (is_even(n) && n + 1 < N) m.set(n + 1, n, 1.0);
                break;
            case Generator::Fminus:
                if (!is_even(n)) m.set(n - 1, n, 1.0);
                break;
            case Generator::Qplus:
                if (!is_even(n) && n + 1 < N) m.set(n + 1, n, std::sqrt((nd + 1.0) / 2.0));
                break;
            case Generator::Qminus:
                if (is_even(n) && n > 0) m.set(n - 1, n, std::sqrt(nd / 2.0));
                break;
            case Generator::Eplus:
                if (n + 2 < N) m.set(n + 2, n, is_even(n) ? std::sqrt((nd + 2.0) / 2.0) : std::sqrt((nd + 1.0) / 2.0));
                break;
            case Generator::Eminus:
                if (n >= 2) m.set(n - 2, n, is_even(n) ? std::sqrt(nd / 2.0) : std::sqrt((nd - 1.0) / 2.0));
                break;
            case Generator::H:
                m.set(n, n, nd / 2.0 + (is_even(n) ? 0.0 : 0.5));
                break;
            case Generator::One:
                m.set(n, n, 1.0);
                break;
            case Generator::R:
                m.set(n, n, is_even(n) ? 1.0 : -1.0);
                break;
        }
    }
    return m;
}

std::vector<double> position_offdiagonal(const ModelParams& params, std::size_t count) {
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) {
        c[i] = is_even(i) ? params.gamma() : std::sqrt(static_cast<double>((i + 1) / 2));
    }
    return c;
}

OperatorMatrix position_matrix(const ModelParams& params, const FockTruncation& trunc) {
    const std::size_t N = trunc.size();
    const auto c = position_offdiagonal(params, N - 1);
    OperatorMatrix q(N);
    for (std::size_t n = 0; n + 1 < N; ++n) {
        q.set(n + 1, n, c[n]);
        q.set(n, n + 1, c[n]);
    }
    return q;
}

OperatorMatrix momentum_matrix(const ModelParams& params, const FockTruncation& trunc) {
    const std::size_t N = trunc.size();
    const auto c = position_offdiagonal(params, N - 1);
    OperatorMatrix p(N);
    for (std::size_t n = 0; n + 1 < N; ++n) {
        p.set(n + 1, n, Entry(0.0, c[n]));
        p.set(n, n + 1, Entry(0.0, -c[n]));
    }
    return p;
}

OperatorMatrix hamiltonian_matrix(const FockTruncation& trunc) {
    OperatorMatrix h(trunc.size());
    for (std::size_t n = 0; n < trunc.size(); ++n) h.set(n, n, static_cast<double>(n) + 0.5);
    return h;
}

OperatorMatrix phase_matrix(const FockTruncation& trunc) {
    static const Entry powers[4] = {Entry(1, 0), Entry(0, 1), Entry(-1, 0), Entry(0, -1)};
    OperatorMatrix d(trunc.size());
    for (std::size_t n = 0; n < trunc.size(); ++n) d.set(n, n, powers[n % 4]);
    return d;
}

// ---------------------------------------------------------------------------
// Relations
// ---------------------------------------------------------------------------

std::vector<NamedResidual> relation_residuals(const FockTruncation& trunc) {
    return relation_residuals(trunc, trunc.interior());
}

std::vector<NamedResidual> relation_residuals(const FockTruncation& trunc, std::size_t block) {
    const std::size_t N = trunc.size();
    const auto Fp = generator_matrix(Generator::Fplus, trunc);
    const auto Fm = generator_matrix(Generator::Fminus, trunc);
    const auto Qp = generator_matrix(Generator::Qplus, trunc);
    const auto Qm = generator_matrix(Generator::Qminus, trunc);
    const auto Ep = generator_matrix(Generator::Eplus, trunc);
    const auto Em = generator_matrix(Generator::Eminus, trunc);
    const auto H = generator_matrix(Generator::H, trunc);
    const auto One = generator_matrix(Generator::One, trunc);
    const OperatorMatrix Zero(N);

    std::vector<NamedResidual> out;
    auto check = [&](std::string name, const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
        out.push_back({std::move(name), (lhs - rhs).max_abs(block)});
    };

    // odd-odd
    check("{F+,F+}=0", anticommutator(Fp, Fp), Zero);
    check("{F-,F-}=0", anticommutator(Fm, Fm), Zero);
    check("{Q+,Q+}=0", anticommutator(Qp, Qp), Zero);
    check("{Q-,Q-}=0", anticommutator(Qm, Qm), Zero);
    check("{F+,F-}=1", anticommutator(Fp, Fm), One);
    check("{Q+,Q-}=H", anticommutator(Qp, Qm), H);
    check("{F+,Q-}=0", anticommutator(Fp, Qm), Zero);
    check("{F-,Q+}=0", anticommutator(Fm, Qp), Zero);
    check("{F+,Q+}=E+", anticommutator(Fp, Qp), Ep);
    check("{F-,Q-}=E-", anticommutator(Fm, Qm), Em);

    // even-even
    check("[E-,E+]=1", commutator(Em, Ep), One);
    check("[H,E+]=E+", commutator(H, Ep), Ep);
    check("[H,E-]=-E-", commutator(H, Em), -1.0 * Em);

    // even-odd
    check("[E+,F+]=0", commutator(Ep, Fp), Zero);
    check("[E-,F-]=0", commutator(Em, Fm), Zero);
    check("[E+,F-]=0", commutator(Ep, Fm), Zero);
    check("[E-,F+]=0", commutator(Em, Fp), Zero);
    check("[E+,Q+]=0", commutator(Ep, Qp), Zero);
    check("[E-,Q-]=0", commutator(Em, Qm), Zero);
    check("[E+,Q-]=-F+", commutator(Ep, Qm), -1.0 * Fp);
    check("[E-,Q+]=F-", commutator(Em, Qp), Fm);
    check("[H,F+]=F+", commutator(H, Fp), Fp);
    check("[H,F-]=-F-", commutator(H, Fm), -1.0 * Fm);
    check("[H,Q+]=0", commutator(H, Qp), Zero);
    check("[H,Q-]=0", commutator(H, Qm), Zero);

    return out;
}

HamiltonLieResiduals hamilton_lie_residuals(const OperatorMatrix& hamiltonian, const OperatorMatrix& position,
                                            const OperatorMatrix& momentum, std::size_t block) {
    const Entry i(0.0, 1.0);
    return {(commutator(hamiltonian, position) + i * momentum).max_abs(block),
            (commutator(hamiltonian, momentum) - i * position).max_abs(block)};
}

HamiltonLieResiduals hamilton_lie_residuals(const ModelParams& params, const FockTruncation& trunc) {
    return hamilton_lie_residuals(hamiltonian_matrix(trunc), position_matrix(params, trunc),
                                  momentum_matrix(params, trunc), trunc.interior());
}

double energy_identity_residual(const ModelParams& params, const FockTruncation& trunc) {
    const auto q = position_matrix(params, trunc);
    const auto p = momentum_matrix(params, trunc);
    const auto lhs = 0.5 * (p * p + q * q);
    const auto rhs = params.a() * OperatorMatrix::identity(trunc.size()) + generator_matrix(Generator::H, trunc);
    return (lhs - rhs).max_abs(trunc.interior());
}

}  // namespace shosc
