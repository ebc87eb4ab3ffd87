#pragma once

// Shooting eigenvalue solver for u'' = W(r, E) u on (0, inf).
//
// W is a linear combination of fixed radial shapes with energy-dependent
// weights,
//   W(r, E) = g_0(E) + sum_k g_k(E) f_k(r),
// so the shapes are tabulated once per grid and many trial energies run
// through the batched RK4 kernel together. The outward leg integrates in
// x = ln r with u = sqrt(r) w, which turns the r^nu behaviour at the origin
// into a plain exponential; the inward leg starts from exp(-beta r) at r_max.
// Both meet at the minimum of W (or at 1/alpha when W has no interior minimum).

#include "iqy/dirac_iqy.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace iqy::oracle {

enum class Centrifugal { approximated, exact };

struct RadialShape {
    std::function<double(double)> f;
    double origin_weight = 0.0;  // lim_{r->0} r^2 f(r)
};

struct RadialFamily {
    std::vector<RadialShape> shapes;
    std::function<std::vector<double>(double)> coefficients;  // E -> g_0 .. g_K
    double r_min = 1e-8;
    double r_max = 0.0;
    double step = 0.0;          // r step of the inward leg; the outward leg uses step / r_match in ln r
    double fallback_match = 0.0;
    std::string description;

    double potential(double r, double energy) const;
    /// lim r^2 W near the origin.
    double origin_strength(double energy) const;
};

/// Radial equation for G (pseudospin) or F (spin) with the exact 1/r^2 or its exponential
/// approximation in both the barrier and the potential. Built from the
/// physical definitions directly, not from the NU coefficients.
/// Defaults: r_max = 14 / alpha, step = 1e-3 / alpha.
RadialFamily iqy_family(const dirac::PhysicalParams& p, int kappa, dirac::Symmetry symmetry,
                        Centrifugal centrifugal, std::optional<double> step = std::nullopt);

struct SampledSolution {
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> du;
    int nodes = 0;
};

/// Outward solution on [r_min, r_end], seeded with r^nu where nu(nu - 1) equals
/// the origin strength. Throws SeedUndefined if that strength is below -1/4.
SampledSolution integrate_outward(const RadialFamily& family, double energy, double r_end);

/// Inward solution on [r_end, r_max] (returned in increasing r), seeded with
/// exp(-beta r). Throws SeedUndefined when beta^2 = g_0(E) <= 0.
SampledSolution integrate_inward(const RadialFamily& family, double energy, double r_end);

struct MatchState {
    double wronskian = 0.0;      // normalized, in [-1, 1]; zero on an eigenvalue
    double log_derivative = 0.0; // u_out'/u_out - u_in'/u_in
    int nodes = 0;               // interior nodes of the glued solution
    bool defined = false;
};

/// Match point: the interior minimum of W(., energy) on the inward grid, else
/// the family fallback.
double match_point(const RadialFamily& family, double energy);

MatchState match(const RadialFamily& family, double energy, double r_match);

struct ShootOptions {
    std::optional<double> match_point;
    int scan_points = 400;
    double energy_tol = 1e-13;
};

struct Eigenvalue {
    double energy = 0.0;
    int nodes = 0;
    double log_derivative = 0.0;
    double match_point = 0.0;
};

/// Every sign change of the normalized Wronskian on a uniform scan, refined by
/// bisection, ascending in E.
std::vector<Eigenvalue> find_bound_states(const RadialFamily& family, dirac::EnergyWindow window,
                                          const ShootOptions& options = {});

/// The eigenvalue with node_target nodes. Throws NoRootInWindow when the
/// window holds none at all and NodeMismatch when none has the right count.
Eigenvalue shoot_eigenvalue(const RadialFamily& family, dirac::EnergyWindow window, int node_target,
                            const ShootOptions& options = {});

/// Strict sign changes, ignoring samples with magnitude below 1e-12.
int count_nodes(std::span<const double> samples);

}  // namespace iqy::oracle
