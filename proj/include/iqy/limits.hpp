#pragma once

// Small-screening limit of the IQY problem: expanding -V0 e^{-2 alpha r} / r^2
// to second order gives the Mie-type form A / r^2 - B / r + C, whose pseudospin
// spectrum is known in closed form, and with A = C = 0, Cps = 0 reduces to a
// Coulomb-like formula. These serve as anchors for the main solver.

#include "iqy/dirac_iqy.hpp"
#include "iqy/nu_engine.hpp"
#include "iqy/oracle.hpp"
#include "iqy/wavefunction.hpp"

#include <vector>

namespace iqy::limits {

struct MieParams {
    double a = 0.0;  // weight of 1/r^2
    double b = 0.0;  // weight of -1/r
    double c = 0.0;  // constant
};

/// A = -V0, B = -2 alpha V0, C = -2 alpha^2 V0.
MieParams iqy_to_mie(double v0, double screening);

/// A / r^2 - B / r + C.
double mie_potential(const MieParams& m, double r);

/// sqrt(gamma C + beta^2) - gamma B / (1 + 2n + 2 sqrt((kappa - 1/2)^2 + gamma A)),
/// with gamma = E - M - Cps and beta^2 = (M + E)(M - E + Cps).
/// Throws NegativeRadicand.
double mie_energy_residual(double mass, double cps, const MieParams& m, int n, int kappa,
                           double energy);

/// E = -M (4(n + kappa)^2 - B^2) / (4(n + kappa)^2 + B^2). Throws DegenerateDenominator.
double coulomb_energy(double mass, double b, int n, int kappa);

struct MieSolveOptions {
    std::optional<double> scan_step;  // defaults to window width / 4000
    double tol = 1e-13;
};

/// Sign changes of mie_energy_residual on a uniform scan of the window,
/// bisected to tol; points where a radicand is negative are skipped.
std::vector<double> solve_mie_roots(double mass, double cps, const MieParams& m, int n, int kappa,
                                    dirac::EnergyWindow window, const MieSolveOptions& options = {});

/// NU coefficients of the same problem in s = r (a1 = a2 = a3 = 0):
/// xi1 = gamma C + beta^2, xi2 = gamma B, xi3 = kappa(kappa - 1) + gamma A.
nu::NUCoefficients mie_nu_coefficients(double mass, double cps, const MieParams& m, int kappa,
                                       double energy);

/// Quantization condition from the NU engine (first branch).
double mie_nu_residual(double mass, double cps, const MieParams& m, int n, int kappa, double energy);

/// Shooting family for the Mie-type pseudospin equation:
/// W = (beta^2 + gamma C) + (kappa(kappa - 1) + gamma A) / r^2 - gamma B / r.
oracle::RadialFamily mie_family(double mass, double cps, const MieParams& m, int kappa, double r_max,
                                double step);

/// Both spinor components for a Mie-type pseudospin state (G from the
/// Laguerre closed form, F from the first-order system) with the same
/// contract figures as the IQY states.
dirac::RadialWavefunction mie_wavefunction(double mass, double cps, const MieParams& m, int n,
                                           int kappa, double energy,
                                           const std::vector<double>& r_grid);

/// Decay constant sqrt(beta^2 + gamma C) of a Mie-type state. Throws ExponentNotReal.
double mie_decay(double mass, double cps, const MieParams& m, double energy);

}  // namespace iqy::limits
