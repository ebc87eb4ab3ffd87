#include "iqy/limits.hpp"

#include "iqy/errors.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace iqy::limits {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double gamma_of(double mass, double cps, double e) {
    return e - mass - cps;
}

double beta_sq_of(double mass, double cps, double e) {
    return (mass + e) * (mass - e + cps);
}

// Residual or NaN where a radicand is negative.
double residual_or_nan(double mass, double cps, const MieParams& m, int n, int kappa, double e) {
    const double g = gamma_of(mass, cps, e);
    const double outer = g * m.c + beta_sq_of(mass, cps, e);
    const double k = kappa;
    const double inner = (k - 0.5) * (k - 0.5) + g * m.a;
    if (outer < 0.0 || inner < 0.0) {
        return kNaN;
    }
    return std::sqrt(outer) - g * m.b / (1.0 + 2.0 * n + 2.0 * std::sqrt(inner));
}

}  // namespace

MieParams iqy_to_mie(double v0, double screening) {
    return {-v0, -2.0 * screening * v0, -2.0 * screening * screening * v0};
}

double mie_potential(const MieParams& m, double r) {
    return m.a / (r * r) - m.b / r + m.c;
}

double mie_energy_residual(double mass, double cps, const MieParams& m, int n, int kappa,
                           double energy) {
    const double g = gamma_of(mass, cps, energy);
    const double outer = g * m.c + beta_sq_of(mass, cps, energy);
    const double k = kappa;
    const double inner = (k - 0.5) * (k - 0.5) + g * m.a;
    if (outer < 0.0) {
        throw Error(ErrorCode::NegativeRadicand, "gamma C + beta^2 = " + std::to_string(outer));
    }
    if (inner < 0.0) {
        throw Error(ErrorCode::NegativeRadicand,
                    "(kappa - 1/2)^2 + gamma A = " + std::to_string(inner));
    }
    return residual_or_nan(mass, cps, m, n, kappa, energy);
}

double coulomb_energy(double mass, double b, int n, int kappa) {
    const double nk = static_cast<double>(n) + static_cast<double>(kappa);
    const double four = 4.0 * nk * nk;
    const double denom = four + b * b;
    if (denom == 0.0) {
        throw Error(ErrorCode::DegenerateDenominator, "4(n + kappa)^2 + B^2 = 0");
    }
    return -mass * (four - b * b) / denom;
}

std::vector<double> solve_mie_roots(double mass, double cps, const MieParams& m, int n, int kappa,
                                    dirac::EnergyWindow window, const MieSolveOptions& options) {
    if (!(window.lo < window.hi)) {
        throw Error(ErrorCode::EmptyWindow, "Mie window is empty");
    }
    const double step = options.scan_step.value_or(window.width() / 4000.0);
    if (!(step > 0.0) || !(options.tol > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "scan step and tolerance must be > 0");
    }
    const auto count = static_cast<std::size_t>(std::ceil(window.width() / step)) + 1;
    const double spacing = window.width() / static_cast<double>(count - 1);
    auto f = [&](double e) { return residual_or_nan(mass, cps, m, n, kappa, e); };

    std::vector<double> roots;
    double e_prev = window.lo;
    double f_prev = f(e_prev);
    for (std::size_t i = 1; i < count; ++i) {
        const double e = i + 1 == count ? window.hi : window.lo + spacing * static_cast<double>(i);
        const double fe = f(e);
        if (f_prev == 0.0) {
            roots.push_back(e_prev);
        } else if (!std::isnan(f_prev) && !std::isnan(fe) && fe != 0.0 &&
                   std::signbit(f_prev) != std::signbit(fe)) {
            double lo = e_prev;
            double hi = e;
            double flo = f_prev;
            bool ok = true;
            while (hi - lo > options.tol) {
                const double mid = lo + 0.5 * (hi - lo);
                if (!(mid > lo && mid < hi)) {
                    break;
                }
                const double fm = f(mid);
                if (std::isnan(fm)) {
                    ok = false;
                    break;
                }
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            if (ok) {
                roots.push_back(lo + 0.5 * (hi - lo));
            }
        }
        e_prev = e;
        f_prev = fe;
    }
    if (f_prev == 0.0) {
        roots.push_back(e_prev);
    }
    return roots;
}

nu::NUCoefficients mie_nu_coefficients(double mass, double cps, const MieParams& m, int kappa,
                                       double energy) {
    const double g = gamma_of(mass, cps, energy);
    const double k = kappa;
    nu::NUCoefficients c;
    c.xi1 = g * m.c + beta_sq_of(mass, cps, energy);
    c.xi2 = g * m.b;
    c.xi3 = k * (k - 1.0) + g * m.a;
    return c;
}

double mie_nu_residual(double mass, double cps, const MieParams& m, int n, int kappa, double energy) {
    const nu::NUCoefficients c = mie_nu_coefficients(mass, cps, m, kappa, energy);
    const nu::NUDerived d = nu::select_k(nu::derive_parameters(c), c, nu::Branch::first);
    return nu::energy_residual(d, c, n);
}

oracle::RadialFamily mie_family(double mass, double cps, const MieParams& m, int kappa, double r_max,
                                double step) {
    if (kappa == 0) {
        throw Error(ErrorCode::ZeroKappa, "kappa must be nonzero");
    }
    oracle::RadialFamily f;
    f.shapes.push_back({[](double r) { return 1.0 / (r * r); }, 1.0});
    f.shapes.push_back({[](double r) { return 1.0 / r; }, 0.0});
    const double k = kappa;
    f.coefficients = [=](double e) {
        const double g = gamma_of(mass, cps, e);
        return std::vector<double>{beta_sq_of(mass, cps, e) + g * m.c, k * (k - 1.0) + g * m.a,
                                   -g * m.b};
    };
    f.r_max = r_max;
    f.step = step;
    f.fallback_match = 0.25 * r_max;
    f.description = "pspin Mie-type, kappa " + std::to_string(kappa);
    return f;
}

double mie_decay(double mass, double cps, const MieParams& m, double energy) {
    const double q = beta_sq_of(mass, cps, energy) + gamma_of(mass, cps, energy) * m.c;
    if (!(q > 0.0)) {
        throw Error(ErrorCode::ExponentNotReal, "beta^2 + gamma C <= 0");
    }
    return std::sqrt(q);
}

dirac::RadialWavefunction mie_wavefunction(double mass, double cps, const MieParams& m, int n,
                                           int kappa, double energy,
                                           const std::vector<double>& r_grid) {
    const nu::NUCoefficients c = mie_nu_coefficients(mass, cps, m, kappa, energy);
    const nu::NUDerived d = dirac::solution_branch(c, n);
    dirac::ComponentSamples g = dirac::sample_nu_component(
        d, c, n, r_grid, [](double r) { return r; }, [](double) { return 1.0; });
    dirac::normalize(g, r_grid);

    dirac::PhysicalParams p;
    p.mass = mass;
    p.cps = cps;
    p.tensor_h = 0.0;
    dirac::EnergySolution sol;
    sol.energy = energy;
    sol.symmetry = dirac::Symmetry::pspin;
    sol.n = n;
    sol.kappa = kappa;

    dirac::RadialWavefunction wf;
    wf.symmetry = dirac::Symmetry::pspin;
    wf.r_grid = r_grid;
    wf.s_map = r_grid;
    wf.upper = dirac::upper_from_lower(p, sol, g, r_grid);
    wf.lower = std::move(g.value);
    wf.norm = dirac::l2_norm(wf.lower, r_grid);
    wf.nodes = dirac::sign_changes(wf.lower);
    wf.edge_ratio = dirac::edge_ratio(wf.lower);
    wf.backsub = dirac::back_substitution(
        mass, energy, kappa, 0.0, [m](double r) { return mie_potential(m, r); },
        [cps](double) { return cps; }, r_grid, wf.upper, wf.lower);
    return wf;
}

}  // namespace iqy::limits
