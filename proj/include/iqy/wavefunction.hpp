#pragma once

// Both radial spinor components on an r grid.
//
// The dominant component (G for pseudospin, F for spin) comes from the NU
// closed form; the other one follows from the first-order Dirac system:
//   (d/dr + kappa/r - U) F = (M + E - Delta) G
//   (d/dr - kappa/r + U) G = (M - E + Sigma) F
// with U = -H/r. Normalization is numerical (trapezoidal L^2 on the grid).

#include "iqy/dirac_iqy.hpp"
#include "iqy/nu_engine.hpp"

#include <functional>
#include <vector>

namespace iqy::dirac {

struct ComponentSamples {
    std::vector<double> value;
    std::vector<double> derivative;  // d/dr, analytic
};

using RadialFunction = std::function<double(double)>;

/// psi(s(r)) and its r-derivative for an NU solution, unnormalized.
/// Throws DomainError where s(r) leaves the NU domain.
ComponentSamples sample_nu_component(const nu::NUDerived& d, const nu::NUCoefficients& c, int n,
                                     const std::vector<double>& r_grid, const RadialFunction& s_of_r,
                                     const RadialFunction& ds_dr);

/// Trapezoidal L^2 norm of values on the grid.
double l2_norm(const std::vector<double>& values, const std::vector<double>& r_grid);

/// Scales value and derivative to unit L^2 norm; returns the factor applied.
double normalize(ComponentSamples& samples, const std::vector<double>& r_grid);

/// Branch whose quantization condition is best satisfied at sol.energy.
/// Throws ExponentNotReal if neither branch has real exponents.
nu::NUDerived solution_branch(const nu::NUCoefficients& c, int n);

/// Normalized G for a pseudospin solution, s = exp(-2 alpha r). Throws ExponentNotReal.
ComponentSamples lower_component_pspin(const PhysicalParams& p, const EnergySolution& sol,
                                       const std::vector<double>& r_grid);

/// Normalized F for a spin solution. Throws ExponentNotReal.
ComponentSamples upper_component_spin(const PhysicalParams& p, const EnergySolution& sol,
                                      const std::vector<double>& r_grid);

/// F = [G' - (kappa/r) G + U G] / (M - E + Cps). Throws EnergyAtThreshold.
std::vector<double> upper_from_lower(const PhysicalParams& p, const EnergySolution& sol,
                                     const ComponentSamples& lower,
                                     const std::vector<double>& r_grid);

/// G = [F' + (kappa/r) F - U F] / (M + E - Cs). Throws EnergyAtThreshold.
std::vector<double> lower_from_upper(const PhysicalParams& p, const EnergySolution& sol,
                                     const ComponentSamples& upper,
                                     const std::vector<double>& r_grid);

/// Central-difference derivative on an arbitrary increasing grid; one-sided
/// second-order three-point formulas at the ends.
std::vector<double> finite_difference(const std::vector<double>& f, const std::vector<double>& r_grid);

struct BackSubstitution {
    double first = 0.0;   // relative residual of (d/dr + kappa/r - U) F = (M + E - Delta) G
    double second = 0.0;  // relative residual of (d/dr - kappa/r + U) G = (M - E + Sigma) F
};

/// Substitutes (F, G) into the first-order system using central differences.
/// Each figure is max |lhs - rhs| / max |rhs| over interior points.
BackSubstitution back_substitution(double mass, double energy, int kappa, double tensor_h,
                                   const RadialFunction& delta, const RadialFunction& sigma,
                                   const std::vector<double>& r_grid, const std::vector<double>& upper,
                                   const std::vector<double>& lower);

/// -V0 exp(-2 alpha r) / r^2.
double iqy_potential(const PhysicalParams& p, double r);

/// Uniform grid of `points` values on [r_min, r_max].
std::vector<double> uniform_grid(double r_min, double r_max, std::size_t points);

/// Geometric spacing r_{i+1} = ratio * r_i from r_min until the spacing
/// reaches h, uniform spacing h after that; the last point is r_max, so the
/// final cell is between 0.5 h and 1.5 h wide.
std::vector<double> graded_grid(double r_min, double r_max, double h, double ratio = 1.0005);

/// Graded grid from 1e-10 / decay to (40 + 4n) / decay with 20000 uniform cells.
std::vector<double> decay_grid(double decay, int n);

/// decay_grid with decay = sqrt(beta^2). Throws ExponentNotReal for beta^2 <= 0.
std::vector<double> default_radial_grid(const EnergySolution& sol);

struct RadialWavefunction {
    Symmetry symmetry = Symmetry::pspin;
    std::vector<double> r_grid;
    std::vector<double> s_map;
    std::vector<double> upper;  // F
    std::vector<double> lower;  // G
    double norm = 0.0;        // L^2 norm of the dominant component (1 up to rounding)
    int nodes = 0;            // sign changes of the dominant component
    double edge_ratio = 0.0;  // max(|first|, |last|) / max of the dominant component
    BackSubstitution backsub;
};

/// Both components plus the contract figures.
RadialWavefunction assemble_wavefunction(const PhysicalParams& p, const EnergySolution& sol,
                                         const std::vector<double>& r_grid);

/// Sign changes of samples, ignoring magnitudes below 1e-12 of the maximum.
int sign_changes(const std::vector<double>& samples);

/// max(|first|, |last|) / max |samples|.
double edge_ratio(const std::vector<double>& samples);

}  // namespace iqy::dirac
