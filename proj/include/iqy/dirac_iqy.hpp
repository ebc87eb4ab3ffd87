#pragma once

// Dirac bound states for the inversely quadratic Yukawa potential
//   V(r) = -V0 exp(-2 alpha r) / r^2
// with a Coulomb-like tensor term U(r) = -H / r, under spin symmetry
// (Delta = V - S = Cs) or pseudospin symmetry (Sigma = V + S = Cps).
//
// Units: hbar = c = 1, masses and energies in fm^-1, V0 in fm (it always appears
// multiplied by an energy).
//
// Pseudospin: gamma~ = E - M - Cps, beta~^2 = (M + E)(M - E + Cps), Lambda = kappa + H.
// Spin:       gamma  = M + E - Cs,  beta^2  = (M - E)(M + E - Cs),  eta    = kappa + H + 1.

#include "iqy/kernels.hpp"
#include "iqy/nu_engine.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iqy::dirac {

enum class Symmetry { spin, pspin };

std::string_view to_string(Symmetry s) noexcept;
std::optional<Symmetry> parse_symmetry(std::string_view text) noexcept;

struct PhysicalParams {
    double mass = 5.0;       // fm^-1
    double v0 = 1.0;         // fm
    double screening = 0.05; // alpha, fm^-1
    double tensor_h = 0.0;   // H, dimensionless
    double cs = 6.0;         // fm^-1
    double cps = -5.5;       // fm^-1
    // Bookkeeping only; never enters a formula.
    std::optional<double> coulomb_radius;
    std::optional<double> charge_a;
    std::optional<double> charge_b;

    /// Throws InvalidParameter unless M > 0, V0 >= 0, alpha > 0, H >= 0, all finite.
    void validate() const;
};

struct QuantumNumbers {
    int n = 0;        // NU radial number (polynomial degree)
    int kappa = 0;
    int l = 0;
    int l_tilde = 0;
    int twice_j = 0;
    int n_spect = 0;  // spectroscopic radial label
    std::string label;  // e.g. "0d3/2"; no radial prefix until n is assigned

    double j() const { return 0.5 * twice_j; }
};

/// l, l~, j and the orbital label for kappa. Throws ZeroKappa.
QuantumNumbers quantum_number_map(int kappa);

/// Assigns the NU number and the spectroscopic label. Pseudospin states with
/// kappa > 0 are labelled n - 1; everything else keeps n. A negative
/// spectroscopic number (n = 0, kappa > 0) drops the numeric prefix.
QuantumNumbers with_radial(QuantumNumbers q, int n, Symmetry symmetry);

/// Lambda = kappa + H (pspin) or eta = kappa + H + 1 (spin).
double effective_centrifugal(int kappa, double tensor_h, Symmetry symmetry);

/// Partner with the same centrifugal barrier at H = 0: 1 - kappa (pspin), -1 - kappa (spin).
int doublet_partner(int kappa, Symmetry symmetry);

struct EnergySymbols {
    double gamma = 0.0;    // gamma~ or gamma
    double beta_sq = 0.0;  // beta~^2 or beta^2
    double lambda = 0.0;   // Lambda or eta
};

EnergySymbols energy_symbols(const PhysicalParams& p, int kappa, double energy, Symmetry symmetry);

nu::NUCoefficients pspin_nu_coefficients(const PhysicalParams& p, int kappa, double energy);
nu::NUCoefficients spin_nu_coefficients(const PhysicalParams& p, int kappa, double energy);
nu::NUCoefficients nu_coefficients(const PhysicalParams& p, int kappa, double energy,
                                   Symmetry symmetry);

/// Residual of the closed-form energy equation, principal square roots, read
/// exactly as printed. Throws NegativeRadicand naming the failing radicand.
double energy_residual_raw(const PhysicalParams& p, int n, int kappa, double energy,
                           Symmetry symmetry);

struct RearrangedResidual {
    double residual = 0.0;
    bool sign_ok = false;
};

/// beta^2 - 4 alpha^2 [(gamma V0 + P^2) / (2P)]^2 with the sign condition that
/// separates true roots (sign_ok) from roots of the squared equation.
/// Throws NegativeRadicand or DegenerateP.
RearrangedResidual energy_residual_rearranged(const PhysicalParams& p, int n, int kappa,
                                              double energy, Symmetry symmetry);

/// Parameters for the batched residual kernel; fault_offset shifts gamma V0 in
/// the quantization condition and exists only to exercise failure paths.
kernels::ResidualModel residual_model(const PhysicalParams& p, int n, int kappa, Symmetry symmetry,
                                      double fault_offset = 0.0);

struct EnergyWindow {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

/// Open interval where beta^2 > 0; may be empty (lo >= hi).
EnergyWindow strict_domain(const PhysicalParams& p, Symmetry symmetry);

/// strict_domain shrunk by margin at each end.
EnergyWindow default_window(const PhysicalParams& p, Symmetry symmetry, double margin = 1e-9);

enum class SolveMode { strict, relaxed };

std::string_view to_string(SolveMode m) noexcept;

struct SolveOptions {
    std::optional<EnergyWindow> window;  // defaults to default_window
    std::optional<double> scan_step;     // defaults to window width / 2000
    double tol = 1e-12;
    SolveMode mode = SolveMode::strict;
    double fault_offset = 0.0;
};

struct EnergySolution {
    double energy = 0.0;
    Symmetry symmetry = Symmetry::pspin;
    int n = 0;
    int kappa = 0;
    double tensor_h = 0.0;
    double residual = 0.0;      // rearranged residual at the root
    double raw_residual = 0.0;  // closed-form residual (NaN if beta^2 < 0)
    double beta_sq = 0.0;
    double lambda_or_eta = 0.0;
    bool sign_ok = false;
    bool strict_valid = false;
    std::optional<int> node_count;
};

/// Brackets sign changes of the rearranged residual on a uniform scan, refines
/// each by bisection to tol and returns them ascending in E. Strict mode clips
/// the window to the beta^2 > 0 domain and keeps strict_valid roots only;
/// relaxed mode keeps every root with its flags.
/// Throws EmptyWindow when nothing is left to scan.
std::vector<EnergySolution> solve_energies(const PhysicalParams& p, int n, int kappa,
                                           Symmetry symmetry, const SolveOptions& options = {});

/// The root a spectrum row reports: the lowest strict root (negative for
/// pspin) if there is one, otherwise the relaxed root closest to the
/// threshold where gamma vanishes (M + Cps for pspin, Cs - M for spin).
std::optional<EnergySolution> select_reported(const std::vector<EnergySolution>& roots,
                                              const PhysicalParams& p, Symmetry symmetry);

struct CentrifugalApproximation {
    double approx = 0.0;
    double exact = 0.0;
    double rel_error = 0.0;
};

/// 1/r^2 against 4 alpha^2 e^{-2 alpha r} / (1 - e^{-2 alpha r})^2. Throws NonpositiveR.
CentrifugalApproximation greene_aldrich(double r, double screening);

struct DoubletRow {
    Symmetry symmetry = Symmetry::pspin;
    int n = 0;
    int kappa = 0;
    int partner = 0;
    double tensor_h = 0.0;
    std::optional<EnergySolution> member;
    std::optional<EnergySolution> partner_member;
    std::optional<double> split;  // E(kappa) - E(partner)
    // Sign of E(kappa, H) - E(kappa, 0) and of the partner's shift; zero when
    // H == 0 or a root is missing.
    int kappa_shift_sign = 0;
    int partner_shift_sign = 0;
};

/// Splitting of (kappa, partner) doublets across H values, one row per (pair, H).
std::vector<DoubletRow> doublet_splitting_report(const PhysicalParams& p, Symmetry symmetry,
                                                 const std::vector<std::pair<int, int>>& pairs,
                                                 const std::vector<double>& h_values,
                                                 const SolveOptions& options = {});

}  // namespace iqy::dirac
