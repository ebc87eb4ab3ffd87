#pragma once

// Parametric Nikiforov-Uvarov solver core.
//
// Works on the generic equation
//
//   psi'' + (a1 - a2 s) / (s (1 - a3 s)) psi'
//         + (-xi1 s^2 + xi2 s - xi3) / (s (1 - a3 s))^2 psi = 0
//
// and knows nothing about the potential that produced the six coefficients.
// All functions are pure.

#include <optional>

namespace iqy::nu {

/// Radicands in [-kRadicandSlack, 0) are clamped to zero.
inline constexpr double kRadicandSlack = 1e-12;

struct NUCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;
};

enum class Branch { first, second };

struct NUDerived {
    double a4 = 0.0;
    double a5 = 0.0;
    double a6 = 0.0;
    double a7 = 0.0;
    double a8 = 0.0;
    double a9 = 0.0;
    std::optional<double> k;
    Branch branch = Branch::first;
};

/// Exponents and polynomial parameters of the closed-form solution
/// (starred variants when the derived set carries the second branch).
struct WavefunctionParameters {
    double a10 = 0.0;
    double a11 = 0.0;
    double a12 = 0.0;
    double a13 = 0.0;
};

NUDerived derive_parameters(const NUCoefficients& c);

/// Sets k for the chosen branch. Throws NegativeDiscriminant when a8 * a9 < 0.
NUDerived select_k(NUDerived d, const NUCoefficients& c, Branch branch);

/// Quantization condition for radial number n; zero exactly on an eigenvalue.
/// Uses the branch stored in d. Throws NegativeRadicand if a8 or a9 < 0.
double energy_residual(const NUDerived& d, const NUCoefficients& c, int n);

WavefunctionParameters wavefunction_parameters(const NUDerived& d, const NUCoefficients& c);

/// First Jacobi parameter a10 - 1 and second parameter a11 / a3 - a10 - 1.
/// The second one is undefined for a3 == 0 (Laguerre form).
struct JacobiParameters {
    double alpha = 0.0;
    double beta = 0.0;
};
JacobiParameters jacobi_parameters(const WavefunctionParameters& w, const NUCoefficients& c);

/// psi(s) = phi(s) y_n(s); Laguerre form when a3 == 0.
/// Domain: s in (0, 1/a3) for a3 > 0, s > 0 for a3 == 0.
double evaluate_nu_wavefunction(const NUDerived& d, const NUCoefficients& c, int n, double s);

/// d psi / ds, analytic.
double evaluate_nu_wavefunction_derivative(const NUDerived& d, const NUCoefficients& c, int n,
                                           double s);

/// Slope of tau(s); a valid construction needs it negative.
double tau_slope(const NUDerived& d, const NUCoefficients& c);

/// Clamp-and-check helper used by the radicand-sensitive operations.
double checked_sqrt(double value, const char* what);

}  // namespace iqy::nu
