// Command-line front end: evaluation, verification and plot-data emission.

#include "shosc/cli/commands.hpp"
#include "shosc/cli/output.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

namespace cli = shosc::cli;

namespace {

struct Common {
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", common.out, "Write the table to this path instead of stdout");
}

std::vector<unsigned> parse_j_list(const std::string& text) {
    std::vector<unsigned> out;
    for (std::size_t j : cli::parse_index_list(text)) out.push_back(static_cast<unsigned>(j));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerics of the sh(2|2) oscillator model"};
    app.require_subcommand(1);

    Common common;
    std::string command;
    // Runs the selected command, writes its table and returns the exit status.
    std::function<int(std::ostream&)> run;

    cli::WavefunctionArgs wave;
    std::string wave_n = "0..3";
    auto* wave_cmd = app.add_subcommand("wavefunction", "Position wavefunctions over a window of the support");
    wave_cmd->add_option("--gamma", wave.gamma)->required();
    wave_cmd->add_option("--n", wave_n, "Mode indices, e.g. 0,1,2 or 0..3");
    wave_cmd->add_option("--k-max", wave.k_max);
    add_common(wave_cmd, common);
    wave_cmd->callback([&] {
        command = "wavefunction";
        run = [&](std::ostream& os) {
            wave.n_list = cli::parse_index_list(wave_n);
            cli::write(cli::run_wavefunction(wave), cli::parse_format(common.format), os);
            return int{cli::exit_ok};
        };
    });

    cli::SpectrumArgs spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Central eigenvalues of the truncated Jacobi matrix");
    spectrum_cmd->add_option("--gamma", spectrum.gamma)->required();
    spectrum_cmd->add_option("--N", spectrum.N, "Fock truncation size (even, >= 4)");
    spectrum_cmd->add_option("--count", spectrum.count);
    add_common(spectrum_cmd, common);
    spectrum_cmd->callback([&] {
        command = "spectrum";
        run = [&](std::ostream& os) {
            cli::write(cli::run_spectrum(spectrum), cli::parse_format(common.format), os);
            return int{cli::exit_ok};
        };
    });

    cli::KernelArgs kernel;
    auto* kernel_cmd = app.add_subcommand("kernel", "Fourier kernel over a window of support pairs");
    kernel_cmd->add_option("--gamma", kernel.gamma)->required();
    kernel_cmd->add_option("--k-max", kernel.k_max);
    kernel_cmd->add_option("--mode", kernel.mode)->check(CLI::IsMember({"series", "closed", "both"}));
    add_common(kernel_cmd, common);
    kernel_cmd->callback([&] {
        command = "kernel";
        run = [&](std::ostream& os) {
            cli::write(cli::run_kernel(kernel), cli::parse_format(common.format), os);
            return int{cli::exit_ok};
        };
    });

    cli::VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites and report named residuals");
    verify_cmd->add_option("--gamma", verify.gamma);
    verify_cmd->add_option("--N", verify.N);
    verify_cmd->add_option("--level", verify.level)->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_flag("--perturb", verify.perturb, "Test hook: perturb the Hamiltonian")->group("");
    add_common(verify_cmd, common);
    verify_cmd->callback([&] {
        command = "verify";
        run = [&](std::ostream& os) {
            const cli::VerifyResult result = cli::run_verify(verify);
            cli::write(result.record, cli::parse_format(common.format), os);
            if (!result.first_failure.empty()) {
                std::cerr << "verify: first failed invariant: " << result.first_failure << '\n';
                return int{cli::exit_invariant_failure};
            }
            return int{cli::exit_ok};
        };
    });

    cli::LimitArgs limit;
    std::string j_list;
    unsigned single_j = 0;
    auto* limit_cmd = app.add_subcommand("limit", "Finite-oscillator wavefunctions against their limit");
    limit_cmd->add_option("--gamma", limit.gamma)->required();
    auto* j_list_opt = limit_cmd->add_option("--j-list", j_list, "Values of j, e.g. 30,100,300");
    limit_cmd->add_option("--j", single_j, "A single value of j")->excludes(j_list_opt);
    limit_cmd->add_option("--n-max", limit.n_max);
    limit_cmd->add_option("--k-max", limit.k_max);
    limit_cmd->add_option("--table", limit.table)->check(CLI::IsMember({"summary", "grid"}));
    add_common(limit_cmd, common);
    limit_cmd->callback([&] {
        command = "limit";
        run = [&](std::ostream& os) {
            if (!j_list.empty()) limit.j_list = parse_j_list(j_list);
            if (single_j != 0) limit.j_list = {single_j};
            cli::write(cli::run_limit(limit), cli::parse_format(common.format), os);
            return int{cli::exit_ok};
        };
    });

    cli::ObservablesArgs observables;
    auto* observables_cmd = app.add_subcommand("observables", "Uncertainty products and [q,p] eigenvalues");
    observables_cmd->add_option("--gamma", observables.gamma)->required();
    observables_cmd->add_option("--n-max", observables.n_max);
    observables_cmd->add_option("--N", observables.N);
    add_common(observables_cmd, common);
    observables_cmd->callback([&] {
        command = "observables";
        run = [&](std::ostream& os) {
            const cli::ObservablesResult result = cli::run_observables(observables);
            cli::write(result.record, cli::parse_format(common.format), os);
            if (!(result.max_difference <= cli::kObservableTolerance)) {
                std::cerr << "observables: formula and matrix paths differ by " << result.max_difference << '\n';
                return int{cli::exit_invariant_failure};
            }
            return int{cli::exit_ok};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : int{cli::exit_parameter_error};
    }

    const cli::Format format = common.format == "json" ? cli::Format::json : cli::Format::csv;
    std::unique_ptr<std::ofstream> file;
    if (!common.out.empty()) {
        file = std::make_unique<std::ofstream>(common.out);
        if (!*file) {
            std::cerr << "cannot open output file " << common.out << '\n';
            return cli::exit_parameter_error;
        }
    }
    std::ostream& os = file ? static_cast<std::ostream&>(*file) : std::cout;

    try {
        return run(os);
    } catch (const std::exception& e) {
        const auto [kind, status] = cli::classify_exception(e);
        if (format == cli::Format::json) {
            cli::write_error({command, kind, e.what()}, format, os);
        }
        std::cerr << command << ": " << kind << ": " << e.what() << '\n';
        return status;
    }
}
