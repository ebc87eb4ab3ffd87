#pragma once

// Front end of the iqy-spectra executable. Commands return their whole output
// as a string so tests can run them in-process; run() adds argument parsing,
// file output and the exit-code mapping.
//
// Exit codes: 0 success, 1 no usable root, 2 configuration error,
// 3 cross-check failure, 4 I/O error.

#include "iqy/dirac_iqy.hpp"
#include "iqy/errors.hpp"
#include "iqy/limits.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iqy::cli {

enum class Format { csv, json };
enum class Potential { iqy, mie };

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoRoot = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCrosscheck = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
    dirac::Symmetry symmetry = dirac::Symmetry::pspin;
    dirac::PhysicalParams params;             // tensor_h here is ignored; see tensor_h below
    std::vector<double> tensor_h{0.0, 5.0};
    std::optional<int> n_min;                 // default 1 (pspin) or 0 (spin)
    std::optional<int> n_max;                 // default n_min + 1
    std::optional<std::vector<int>> kappas;   // default: the doublet table layout
    std::optional<dirac::EnergyWindow> window;
    std::optional<double> scan_step;
    double tol = 1e-12;
    dirac::SolveMode mode = dirac::SolveMode::strict;
    Potential potential = Potential::iqy;
    std::optional<limits::MieParams> mie;     // default: derived from V0 and screening
    std::optional<double> oracle_step;
    std::optional<std::string> out;           // stdout when unset
    Format format = Format::csv;
    double fault_offset = 0.0;                // test hook, shifts the quantization condition
    bool fault_offset_set = false;

    int resolved_n_min() const;
    int resolved_n_max() const;
    std::vector<int> resolved_kappas() const;
    limits::MieParams resolved_mie() const;

    /// Throws ConfigError on any inconsistency.
    void validate() const;
};

/// Applies one key=value setting (keys match the long flag names without the
/// leading dashes). Throws ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads a flat key=value file; blank lines and lines starting with '#' are skipped.
/// Throws IoError when unreadable and ConfigError on malformed lines.
void apply_config_file(RunConfig& config, const std::string& path);

std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);
dirac::EnergyWindow parse_window(std::string_view text);

/// %.9g; NaN prints as "nan", infinities as "inf" / "-inf".
std::string format_number(double x);

struct CommandResult {
    std::string output;
    int exit_code = kExitOk;
};

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_reproduce_tables(const RunConfig& config);
CommandResult cmd_crosscheck(const RunConfig& config);
CommandResult cmd_wavefunction(const RunConfig& config);

int exit_code_for(ErrorCode code) noexcept;

/// Worker count: SPECTRA_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

int run(int argc, char** argv);

}  // namespace iqy::cli
