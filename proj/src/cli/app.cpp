#include "iqy/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace iqy::cli {

namespace {

struct FlagSpec {
    const char* name;
    const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"symmetry", "spin or pspin"},
    {"mass", "fermion mass M (fm^-1)"},
    {"v0", "potential depth V0"},
    {"screening", "screening parameter alpha (fm^-1)"},
    {"cs", "spin constant Cs"},
    {"cps", "pseudospin constant Cps"},
    {"n-min", "lowest radial quantum number"},
    {"n-max", "highest radial quantum number"},
    {"kappa", "comma-separated kappa list"},
    {"window", "energy window lo,hi"},
    {"tol", "root tolerance"},
    {"scan-step", "sign-change scan step"},
    {"mode", "strict or relaxed"},
    {"potential", "iqy or mie"},
    {"mie-a", "Mie-type coefficient A"},
    {"mie-b", "Mie-type coefficient B"},
    {"mie-c", "Mie-type coefficient C"},
    {"oracle-step", "shooting step size"},
    {"out", "output path (default stdout)"},
    {"format", "csv or json"},
    {"inject-residual-offset", "test hook: constant added to the quantization residual"},
};

int write_output(const RunConfig& config, const std::string& text) {
    if (!config.out) {
        std::cout << text << std::flush;
        return kExitOk;
    }
    std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
    file << text;
    file.close();
    if (!file) {
        std::cerr << "error: cannot write '" << *config.out << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Bound-state spectra of the Dirac equation with an inversely quadratic Yukawa "
                 "potential and a Coulomb-like tensor term"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "iqy-spectra 1.0.0");

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const FlagSpec& f : kFlags) {
        options[f.name] = app.add_option(std::string("--") + f.name, values[f.name], f.help);
    }
    std::vector<std::string> tensor_h;
    CLI::Option* tensor_opt =
        app.add_option("--tensor-h", tensor_h, "tensor coupling H (repeatable or comma list)")
            ->expected(1, CLI::detail::expected_max_vector_size)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    CLI::App* spectrum = app.add_subcommand("spectrum", "energy eigenvalues over an (n, kappa, H) sweep");
    CLI::App* tables = app.add_subcommand("reproduce-tables", "diagnose the embedded doublet tables");
    CLI::App* crosscheck = app.add_subcommand("crosscheck", "compare closed form against direct shooting");
    CLI::App* wavefunction = app.add_subcommand("wavefunction", "radial spinor components for one state");
    for (CLI::App* sub : {spectrum, tables, crosscheck, wavefunction}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) {
            apply_config_file(config, config_path);
        }
        for (const FlagSpec& f : kFlags) {
            if (options[f.name]->count() > 0) {
                apply_setting(config, f.name, values[f.name]);
            }
        }
        if (tensor_opt->count() > 0) {
            std::string joined;
            for (const std::string& t : tensor_h) {
                joined += (joined.empty() ? "" : ",") + t;
            }
            apply_setting(config, "tensor-h", joined);
        }

        CommandResult result;
        if (spectrum->parsed()) {
            result = cmd_spectrum(config);
        } else if (tables->parsed()) {
            result = cmd_reproduce_tables(config);
        } else if (crosscheck->parsed()) {
            result = cmd_crosscheck(config);
        } else {
            result = cmd_wavefunction(config);
        }
        const int io = write_output(config, result.output);
        return io != kExitOk ? io : result.exit_code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoRoot;
    }
}

}  // namespace iqy::cli
