#include "shosc/cli/commands.hpp"

#include "shosc/errors.hpp"
#include "shosc/fock_model.hpp"
#include "shosc/oscillator.hpp"
#include "shosc/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace shosc::cli {

namespace {

Cell integer(std::uint64_t v) { return static_cast<std::int64_t>(v); }
Cell signed_integer(int v) { return static_cast<std::int64_t>(v); }

std::size_t parse_size(const std::string& text) {
    std::size_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParameterError("not a nonnegative integer: '" + text + "'");
    return value;
}

std::vector<SupportPoint> window_points(std::uint64_t k_max) {
    std::vector<SupportPoint> points;
    for (std::uint64_t k = k_max; k >= 1; --k) points.push_back(SupportPoint::negative(k));
    points.push_back(SupportPoint::origin());
    for (std::uint64_t k = 1; k <= k_max; ++k) points.push_back(SupportPoint::positive(k));
    return points;
}

std::string join(const std::vector<std::size_t>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    return out.str();
}

std::string join(const std::vector<unsigned>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    return out.str();
}

class CheckTable {
public:
    explicit CheckTable(OutputRecord& record) : record_(record) {
        record_.columns = {"check", "value", "tolerance", "pass"};
    }

    void add(const std::string& name, double value, double tolerance) {
        const bool pass = std::isfinite(value) && value <= tolerance;
        record_.add_row({name, value, tolerance, Cell(std::int64_t{pass ? 1 : 0})});
        if (!pass && first_failure_.empty()) first_failure_ = name;
    }

    const std::string& first_failure() const { return first_failure_; }

private:
    OutputRecord& record_;
    std::string first_failure_;
};

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_size(item));
            continue;
        }
        const std::size_t lo = parse_size(item.substr(0, dots));
        const std::size_t hi = parse_size(item.substr(dots + 2));
        if (hi < lo) throw ParameterError("empty index range '" + item + "'");
        for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    }
    if (out.empty()) throw ParameterError("index list is empty");
    return out;
}

OutputRecord run_wavefunction(const WavefunctionArgs& args) {
    const ModelParams params(args.gamma);
    const SpectrumWindow window(args.k_max);
    OutputRecord record;
    record.command = "wavefunction";
    record.parameters = {{"gamma", args.gamma}, {"n", join(args.n_list)}, {"k_max", integer(args.k_max)}};
    record.columns = {"n", "sign", "k", "x_value", "phi"};
    const auto points = window.points();
    for (std::size_t n : args.n_list) {
        for (const SupportPoint& x : points) {
            record.add_row({integer(n), signed_integer(x.sign()), integer(x.k()), x.value(),
                            position_wavefunction(n, x, params)});
        }
    }
    return record;
}

OutputRecord run_spectrum(const SpectrumArgs& args) {
    const ModelParams params(args.gamma);
    const FockTruncation trunc(args.N);
    OutputRecord record;
    record.command = "spectrum";
    record.parameters = {{"gamma", args.gamma}, {"N", integer(args.N)}, {"count", integer(args.count)}};
    record.columns = {"index", "eigenvalue", "nearest_sign", "nearest_k", "nearest_sqrt_k", "abs_error"};
    const auto eigenvalues = tridiagonal_eigenvalues(params, trunc, args.count);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const SupportPoint nearest = nearest_support_point(eigenvalues[i]);
        record.add_row({integer(i), eigenvalues[i], signed_integer(nearest.sign()), integer(nearest.k()),
                        nearest.value(), std::fabs(eigenvalues[i] - nearest.value())});
    }
    return record;
}

OutputRecord run_kernel(const KernelArgs& args) {
    if (args.mode != "series" && args.mode != "closed" && args.mode != "both") {
        throw ParameterError("mode must be series, closed or both");
    }
    const ModelParams params(args.gamma);
    OutputRecord record;
    record.command = "kernel";
    record.parameters = {{"gamma", args.gamma}, {"k_max", integer(args.k_max)}, {"mode", args.mode}};
    record.columns = {"x_sign", "x_k", "y_sign", "y_k", "re", "im"};
    const bool both = args.mode == "both";
    if (both) {
        record.columns.insert(record.columns.end(), {"re2", "im2", "abs_diff"});
    }
    const auto points = window_points(args.k_max);
    for (const SupportPoint& x : points) {
        for (const SupportPoint& y : points) {
            std::vector<Cell> row{signed_integer(x.sign()), integer(x.k()), signed_integer(y.sign()), integer(y.k())};
            if (args.mode == "closed") {
                const Complex c = fourier_kernel_closed(x, y, params);
                row.insert(row.end(), {c.real(), c.imag()});
            } else {
                const Complex s = fourier_kernel_series(x, y, params).value;
                row.insert(row.end(), {s.real(), s.imag()});
                if (both) {
                    const Complex c = fourier_kernel_closed(x, y, params);
                    row.insert(row.end(), {c.real(), c.imag(), std::abs(s - c)});
                }
            }
            record.add_row(std::move(row));
        }
    }
    return record;
}

VerifyResult run_verify(const VerifyArgs& args) {
    if (args.level != "quick" && args.level != "full") throw ParameterError("level must be quick or full");
    const bool full = args.level == "full";
    const ModelParams params(args.gamma);
    const FockTruncation trunc(args.N);

    VerifyResult result;
    OutputRecord& record = result.record;
    record.command = "verify";
    record.parameters = {{"gamma", args.gamma},
                         {"N", integer(args.N)},
                         {"level", args.level},
                         {"perturb", Cell(std::int64_t{args.perturb ? 1 : 0})}};
    CheckTable checks(record);

    for (const auto& r : relation_residuals(trunc)) checks.add("relation " + r.name, r.residual, 1e-12);

    OperatorMatrix hamiltonian = hamiltonian_matrix(trunc);
    if (args.perturb) hamiltonian.set(1, 1, hamiltonian(1, 1) + 1e-6);
    const auto lie = hamilton_lie_residuals(hamiltonian, position_matrix(params, trunc),
                                            momentum_matrix(params, trunc), trunc.interior());
    checks.add("dynamics [H,q]=-ip", lie.position_equation, 1e-12);
    checks.add("dynamics [H,p]=iq", lie.momentum_equation, 1e-12);
    checks.add("energy (p^2+q^2)/2=gamma^2+H", energy_identity_residual(params, trunc), 1e-12);

    const unsigned degree = full ? 20 : 10;
    const SpectrumWindow window = SpectrumWindow::adaptive(params, degree);
    double orthonormality = 0.0;
    for (unsigned m = 0; m <= degree; ++m) {
        for (unsigned n = 0; n <= degree; ++n) {
            orthonormality =
                std::max(orthonormality, std::fabs(orthonormality_sum(m, n, params, window) - (m == n ? 1.0 : 0.0)));
        }
    }
    checks.add("orthonormality sum p~_m p~_n", orthonormality, 1e-10);

    const std::uint64_t k_top = full ? 10 : 4;
    double q_residual = 0.0;
    double p_residual = 0.0;
    for (const SupportPoint& x : window_points(k_top)) {
        q_residual = std::max(q_residual, eigenvector_residual(eigenvector(x, params, trunc), params));
        p_residual = std::max(p_residual, momentum_eigvec_residual(x, params, trunc));
    }
    checks.add("position eigenvector residual", q_residual, 1e-9);
    checks.add("momentum eigenvector residual", p_residual, 1e-9);

    double uncertainty = 0.0, commutator_value = 0.0, commutator_off = 0.0, energy = 0.0;
    const std::size_t n_top = std::min<std::size_t>(40, trunc.interior() - 1);
    for (std::size_t n = 0; n <= n_top; ++n) {
        uncertainty = std::max(uncertainty,
                               std::fabs(uncertainty_product_matrix(n, params, trunc) - uncertainty_product(n, params)));
        const CommutatorColumn column = commutator_qp_matrix(n, params, trunc);
        commutator_value = std::max(commutator_value, std::abs(column.eigenvalue - commutator_qp_eigenvalue(n, params)));
        commutator_off = std::max(commutator_off, column.offdiagonal);
        energy = std::max(energy, std::fabs(energy_expectation_matrix(n, params, trunc) - uncertainty_product(n, params)));
    }
    checks.add("uncertainty product formula vs matrix", uncertainty, kObservableTolerance);
    checks.add("commutator [q,p] eigenvalue formula vs matrix", commutator_value, kObservableTolerance);
    checks.add("commutator [q,p] off-diagonal", commutator_off, kObservableTolerance);
    checks.add("energy expectation formula vs matrix", energy, kObservableTolerance);

    const std::uint64_t kernel_top = full ? 12 : 4;
    double kernel = 0.0;
    for (const SupportPoint& x : window_points(kernel_top)) {
        for (const SupportPoint& y : window_points(kernel_top)) {
            kernel = std::max(kernel, std::abs(fourier_kernel_series(x, y, params).value -
                                               fourier_kernel_closed(x, y, params)));
        }
    }
    checks.add("kernel series vs closed form", kernel, 1e-10);

    const std::size_t count = std::min<std::size_t>(21, trunc.size() - 1);
    const auto eigenvalues = tridiagonal_eigenvalues(params, trunc, count);
    double symmetry = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        symmetry = std::max(symmetry, std::fabs(eigenvalues[i] + eigenvalues[eigenvalues.size() - 1 - i]));
    }
    checks.add("spectrum symmetric under negation", symmetry, 1e-12);

    if (full) {
        const SpectrumWindow kwindow = kernel_window(params, 2);
        double unitarity = 0.0;
        for (const SupportPoint& y : window_points(2)) {
            for (const SupportPoint& y2 : window_points(2)) {
                const Complex expected = y == y2 ? 1.0 : 0.0;
                unitarity = std::max(unitarity, std::abs(kernel_unitarity_check(y, y2, params, kwindow) - expected));
            }
        }
        checks.add("kernel unitarity", unitarity, 1e-8);

        double recurrence = 0.0;
        for (const SupportPoint& x : window_points(10)) {
            const auto p = p_recurrence(20, x, params);
            for (std::size_t n = 0; n <= 20; ++n) {
                const double closed = p_closed_form(n, x, params);
                const double scale = std::max(1.0, std::fabs(closed));
                recurrence = std::max(recurrence, std::fabs(p[n] - closed) / scale);
            }
        }
        checks.add("recurrence vs closed form", recurrence, 1e-10);
    }

    result.first_failure = checks.first_failure();
    return result;
}

OutputRecord run_limit(const LimitArgs& args) {
    if (args.table != "summary" && args.table != "grid") throw ParameterError("table must be summary or grid");
    if (args.j_list.empty()) throw ParameterError("j list is empty");
    const ModelParams params(args.gamma);
    OutputRecord record;
    record.command = "limit";
    record.parameters = {{"gamma", args.gamma},
                         {"j_list", join(args.j_list)},
                         {"n_max", integer(args.n_max)},
                         {"k_max", integer(args.k_max)},
                         {"table", args.table}};
    if (args.table == "summary") {
        record.columns = {"j", "p", "max_error"};
        for (unsigned j : args.j_list) {
            const Sl21Params sl21 = Sl21Params::coupled(j, params);
            record.add_row({integer(j), sl21.p(), limit_error(j, params, args.n_max, args.k_max)});
        }
        return record;
    }
    record.columns = {"j", "p", "n", "sign", "k", "x_value", "phi_finite", "phi_limit", "abs_diff"};
    for (unsigned j : args.j_list) {
        const Sl21Params sl21 = Sl21Params::coupled(j, params);
        const std::uint64_t k_top = std::min<std::uint64_t>(args.k_max, j);
        for (std::size_t n = 0; n <= args.n_max; ++n) {
            for (const SupportPoint& x : window_points(k_top)) {
                const double finite = sl21_wavefunction(n, x, sl21);
                const double limit = position_wavefunction(n, x, params);
                record.add_row({integer(j), sl21.p(), integer(n), signed_integer(x.sign()), integer(x.k()), x.value(),
                                finite, limit, std::fabs(finite - limit)});
            }
        }
    }
    return record;
}

ObservablesResult run_observables(const ObservablesArgs& args) {
    const ModelParams params(args.gamma);
    const FockTruncation trunc(args.N);
    ObservablesResult result;
    OutputRecord& record = result.record;
    record.command = "observables";
    record.parameters = {{"gamma", args.gamma}, {"n_max", integer(args.n_max)}, {"N", integer(args.N)}};
    record.columns = {"n",
                      "uncertainty_formula",
                      "uncertainty_matrix",
                      "commutator_im_formula",
                      "commutator_im_matrix",
                      "energy_matrix"};
    for (std::size_t n = 0; n <= args.n_max; ++n) {
        const double u_formula = uncertainty_product(n, params);
        const double u_matrix = uncertainty_product_matrix(n, params, trunc);
        const Complex c_formula = commutator_qp_eigenvalue(n, params);
        const CommutatorColumn c_matrix = commutator_qp_matrix(n, params, trunc);
        const double energy = energy_expectation_matrix(n, params, trunc);
        record.add_row({integer(n), u_formula, u_matrix, c_formula.imag(), c_matrix.eigenvalue.imag(), energy});
        result.max_difference = std::max({result.max_difference, std::fabs(u_formula - u_matrix),
                                          std::abs(c_formula - c_matrix.eigenvalue), c_matrix.offdiagonal,
                                          std::fabs(energy - u_formula)});
    }
    return result;
}

std::pair<std::string, int> classify_exception(const std::exception& error) {
    if (dynamic_cast<const ParameterError*>(&error)) return {"parameter_error", exit_parameter_error};
    // NumericRangeError, TailBoundError, ConvergenceError and anything unexpected
    return {"numeric_error", exit_numeric_error};
}

}  // namespace shosc::cli
