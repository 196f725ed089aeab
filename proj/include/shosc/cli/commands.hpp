#pragma once

// Subcommand implementations. Each returns the record to emit; the executable only parses
// flags and writes the result.

#include "shosc/cli/output.hpp"

#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <vector>

namespace shosc::cli {

enum ExitCode : int { exit_ok = 0, exit_invariant_failure = 1, exit_parameter_error = 2, exit_numeric_error = 3 };

/// Parses "0,1,2", "0..3" or a mix such as "0..2,7".
std::vector<std::size_t> parse_index_list(const std::string& text);

struct WavefunctionArgs {
    double gamma = 1.0;
    std::vector<std::size_t> n_list{0, 1, 2, 3};
    std::uint64_t k_max = 10;
};
OutputRecord run_wavefunction(const WavefunctionArgs& args);

struct SpectrumArgs {
    double gamma = 1.0;
    std::size_t N = 2048;
    std::size_t count = 21;
};
OutputRecord run_spectrum(const SpectrumArgs& args);

struct KernelArgs {
    double gamma = 1.0;
    std::uint64_t k_max = 8;
    /// series, closed or both
    std::string mode = "both";
};
OutputRecord run_kernel(const KernelArgs& args);

struct VerifyArgs {
    double gamma = 1.0;
    std::size_t N = 64;
    /// quick or full
    std::string level = "quick";
    /// Test hook: perturbs one Hamiltonian entry so the dynamics check must fail.
    bool perturb = false;
};

struct VerifyResult {
    OutputRecord record;
    /// Name of the first check outside its tolerance; empty when all pass.
    std::string first_failure;
};
VerifyResult run_verify(const VerifyArgs& args);

struct LimitArgs {
    double gamma = 1.0;
    std::vector<unsigned> j_list{30, 100, 300, 1000, 3000};
    std::size_t n_max = 3;
    std::uint64_t k_max = 8;
    /// summary: one (j, max_error) row per j. grid: every point with k <= min(k_max, j).
    std::string table = "summary";
};
OutputRecord run_limit(const LimitArgs& args);

struct ObservablesArgs {
    double gamma = 1.0;
    std::size_t n_max = 40;
    std::size_t N = 128;
};

struct ObservablesResult {
    OutputRecord record;
    /// Largest formula-vs-matrix difference over all rows and quantities.
    double max_difference = 0.0;
};
ObservablesResult run_observables(const ObservablesArgs& args);

/// Tolerance used by run_observables and run_verify for the two-path observable checks.
inline constexpr double kObservableTolerance = 1e-12;

/// Maps a caught exception to (error kind, exit code).
std::pair<std::string, int> classify_exception(const std::exception& error);

}  // namespace shosc::cli
