#include "iqy/wavefunction.hpp"

#include "iqy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace iqy::dirac {

namespace {

constexpr double kThresholdGuard = 1e-12;

double abs_max(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::fabs(x));
    }
    return m;
}

void check_grid(const std::vector<double>& r_grid) {
    if (r_grid.size() < 3) {
        throw Error(ErrorCode::InvalidParameter, "radial grid needs at least 3 points");
    }
    if (!(r_grid.front() > 0.0)) {
        throw Error(ErrorCode::NonpositiveR, "radial grid must start above r = 0");
    }
    for (std::size_t i = 1; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > r_grid[i - 1])) {
            throw Error(ErrorCode::InvalidParameter, "radial grid must be strictly increasing");
        }
    }
}

ComponentSamples dominant_component(const PhysicalParams& p, const EnergySolution& sol,
                                    const std::vector<double>& r_grid) {
    check_grid(r_grid);
    const nu::NUCoefficients c = nu_coefficients(p, sol.kappa, sol.energy, sol.symmetry);
    const nu::NUDerived d = solution_branch(c, sol.n);
    const double two_alpha = 2.0 * p.screening;
    ComponentSamples out = sample_nu_component(
        d, c, sol.n, r_grid, [two_alpha](double r) { return std::exp(-two_alpha * r); },
        [two_alpha](double r) { return -two_alpha * std::exp(-two_alpha * r); });
    normalize(out, r_grid);
    return out;
}

}  // namespace

ComponentSamples sample_nu_component(const nu::NUDerived& d, const nu::NUCoefficients& c, int n,
                                     const std::vector<double>& r_grid, const RadialFunction& s_of_r,
                                     const RadialFunction& ds_dr) {
    ComponentSamples out;
    out.value.resize(r_grid.size());
    out.derivative.resize(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double s = s_of_r(r_grid[i]);
        out.value[i] = nu::evaluate_nu_wavefunction(d, c, n, s);
        out.derivative[i] = nu::evaluate_nu_wavefunction_derivative(d, c, n, s) * ds_dr(r_grid[i]);
    }
    return out;
}

double l2_norm(const std::vector<double>& values, const std::vector<double>& r_grid) {
    double sum = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double h = r_grid[i] - r_grid[i - 1];
        sum += 0.5 * h * (values[i - 1] * values[i - 1] + values[i] * values[i]);
    }
    return std::sqrt(sum);
}

double normalize(ComponentSamples& samples, const std::vector<double>& r_grid) {
    const double norm = l2_norm(samples.value, r_grid);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::DomainError, "component has no finite nonzero norm on the grid");
    }
    const double factor = 1.0 / norm;
    for (double& v : samples.value) {
        v *= factor;
    }
    for (double& v : samples.derivative) {
        v *= factor;
    }
    return factor;
}

nu::NUDerived solution_branch(const nu::NUCoefficients& c, int n) {
    const nu::NUDerived base = nu::derive_parameters(c);
    if (base.a8 < -nu::kRadicandSlack || base.a9 < -nu::kRadicandSlack) {
        throw Error(ErrorCode::ExponentNotReal,
                    "a8 = " + std::to_string(base.a8) + ", a9 = " + std::to_string(base.a9));
    }
    nu::NUDerived first = nu::select_k(base, c, nu::Branch::first);
    nu::NUDerived second = nu::select_k(base, c, nu::Branch::second);
    const double r1 = std::fabs(nu::energy_residual(first, c, n));
    const double r2 = std::fabs(nu::energy_residual(second, c, n));
    return r2 < r1 ? second : first;
}

ComponentSamples lower_component_pspin(const PhysicalParams& p, const EnergySolution& sol,
                                       const std::vector<double>& r_grid) {
    if (sol.symmetry != Symmetry::pspin) {
        throw Error(ErrorCode::InvalidParameter, "lower_component_pspin needs a pspin solution");
    }
    return dominant_component(p, sol, r_grid);
}

ComponentSamples upper_component_spin(const PhysicalParams& p, const EnergySolution& sol,
                                      const std::vector<double>& r_grid) {
    if (sol.symmetry != Symmetry::spin) {
        throw Error(ErrorCode::InvalidParameter, "upper_component_spin needs a spin solution");
    }
    return dominant_component(p, sol, r_grid);
}

std::vector<double> upper_from_lower(const PhysicalParams& p, const EnergySolution& sol,
                                     const ComponentSamples& lower,
                                     const std::vector<double>& r_grid) {
    const double denom = p.mass - sol.energy + p.cps;
    if (std::fabs(denom) < kThresholdGuard) {
        throw Error(ErrorCode::EnergyAtThreshold, "E = M + Cps");
    }
    const double kappa = sol.kappa;
    std::vector<double> upper(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        const double u = -p.tensor_h / r;
        upper[i] = (lower.derivative[i] - (kappa / r) * lower.value[i] + u * lower.value[i]) / denom;
    }
    return upper;
}

std::vector<double> lower_from_upper(const PhysicalParams& p, const EnergySolution& sol,
                                     const ComponentSamples& upper,
                                     const std::vector<double>& r_grid) {
    const double denom = p.mass + sol.energy - p.cs;
    if (std::fabs(denom) < kThresholdGuard) {
        throw Error(ErrorCode::EnergyAtThreshold, "E = -M + Cs");
    }
    const double kappa = sol.kappa;
    std::vector<double> lower(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        const double u = -p.tensor_h / r;
        lower[i] = (upper.derivative[i] + (kappa / r) * upper.value[i] - u * upper.value[i]) / denom;
    }
    return lower;
}

std::vector<double> finite_difference(const std::vector<double>& f, const std::vector<double>& r) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) {
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        d[i] = (hm * hm * f[i + 1] - hp * hp * f[i - 1] + (hp * hp - hm * hm) * f[i]) /
               (hm * hp * (hm + hp));
    }
    // Second-order one-sided three-point formulas.
    const double a0 = r[1] - r[0];
    const double b0 = r[2] - r[1];
    d[0] = -(2.0 * a0 + b0) / (a0 * (a0 + b0)) * f[0] + (a0 + b0) / (a0 * b0) * f[1] -
           a0 / (b0 * (a0 + b0)) * f[2];
    const double a1 = r[n - 1] - r[n - 2];
    const double b1 = r[n - 2] - r[n - 3];
    d[n - 1] = (2.0 * a1 + b1) / (a1 * (a1 + b1)) * f[n - 1] - (a1 + b1) / (a1 * b1) * f[n - 2] +
               a1 / (b1 * (a1 + b1)) * f[n - 3];
    return d;
}

BackSubstitution back_substitution(double mass, double energy, int kappa, double tensor_h,
                                   const RadialFunction& delta, const RadialFunction& sigma,
                                   const std::vector<double>& r_grid, const std::vector<double>& upper,
                                   const std::vector<double>& lower) {
    check_grid(r_grid);
    const std::vector<double> df = finite_difference(upper, r_grid);
    const std::vector<double> dg = finite_difference(lower, r_grid);
    const double k = kappa;
    double gap_a = 0.0;
    double gap_b = 0.0;
    double scale_a = 0.0;
    double scale_b = 0.0;
    for (std::size_t i = 1; i + 1 < r_grid.size(); ++i) {
        const double r = r_grid[i];
        const double u = -tensor_h / r;
        const double lhs_a = df[i] + (k / r) * upper[i] - u * upper[i];
        const double rhs_a = (mass + energy - delta(r)) * lower[i];
        const double lhs_b = dg[i] - (k / r) * lower[i] + u * lower[i];
        const double rhs_b = (mass - energy + sigma(r)) * upper[i];
        gap_a = std::max(gap_a, std::fabs(lhs_a - rhs_a));
        gap_b = std::max(gap_b, std::fabs(lhs_b - rhs_b));
        scale_a = std::max(scale_a, std::fabs(rhs_a));
        scale_b = std::max(scale_b, std::fabs(rhs_b));
    }
    BackSubstitution b;
    b.first = scale_a > 0.0 ? gap_a / scale_a : gap_a;
    b.second = scale_b > 0.0 ? gap_b / scale_b : gap_b;
    return b;
}

double iqy_potential(const PhysicalParams& p, double r) {
    return -p.v0 * std::exp(-2.0 * p.screening * r) / (r * r);
}

std::vector<double> uniform_grid(double r_min, double r_max, std::size_t points) {
    if (points < 3 || !(r_max > r_min)) {
        throw Error(ErrorCode::InvalidParameter, "uniform grid needs r_max > r_min and >= 3 points");
    }
    std::vector<double> grid(points);
    const double h = (r_max - r_min) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = r_min + h * static_cast<double>(i);
    }
    grid.back() = r_max;
    return grid;
}

std::vector<double> graded_grid(double r_min, double r_max, double h, double ratio) {
    if (!(r_min > 0.0) || !(r_max > r_min) || !(h > 0.0) || !(ratio > 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "graded grid needs 0 < r_min < r_max, h > 0, ratio > 1");
    }
    std::vector<double> grid{r_min};
    double r = r_min;
    while (true) {
        const double next = r + std::min(r * (ratio - 1.0), h);
        if (next >= r_max - 0.5 * h) {
            break;
        }
        grid.push_back(next);
        r = next;
    }
    grid.push_back(r_max);
    return grid;
}

std::vector<double> decay_grid(double decay, int n) {
    if (!(decay > 0.0)) {
        throw Error(ErrorCode::ExponentNotReal, "decay constant must be > 0");
    }
    const double r_max = (40.0 + 4.0 * n) / decay;
    return graded_grid(1e-10 / decay, r_max, r_max / 20000.0);
}

std::vector<double> default_radial_grid(const EnergySolution& sol) {
    if (!(sol.beta_sq > 0.0)) {
        throw Error(ErrorCode::ExponentNotReal, "beta^2 <= 0, no decaying tail");
    }
    return decay_grid(std::sqrt(sol.beta_sq), sol.n);
}

int sign_changes(const std::vector<double>& samples) {
    const double floor = 1e-12 * abs_max(samples);
    int count = 0;
    int last = 0;
    for (double v : samples) {
        if (std::fabs(v) <= floor) {
            continue;
        }
        const int sign = v > 0.0 ? 1 : -1;
        if (last != 0 && sign != last) {
            ++count;
        }
        last = sign;
    }
    return count;
}

double edge_ratio(const std::vector<double>& samples) {
    const double m = abs_max(samples);
    if (!(m > 0.0) || samples.empty()) {
        return 0.0;
    }
    return std::max(std::fabs(samples.front()), std::fabs(samples.back())) / m;
}

RadialWavefunction assemble_wavefunction(const PhysicalParams& p, const EnergySolution& sol,
                                         const std::vector<double>& r_grid) {
    RadialWavefunction wf;
    wf.symmetry = sol.symmetry;
    wf.r_grid = r_grid;
    wf.s_map.resize(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        wf.s_map[i] = std::exp(-2.0 * p.screening * r_grid[i]);
    }
    const PhysicalParams q = p;
    RadialFunction delta;
    RadialFunction sigma;
    if (sol.symmetry == Symmetry::pspin) {
        ComponentSamples g = lower_component_pspin(p, sol, r_grid);
        wf.upper = upper_from_lower(p, sol, g, r_grid);
        wf.lower = std::move(g.value);
        delta = [q](double r) { return iqy_potential(q, r); };
        sigma = [q](double) { return q.cps; };
    } else {
        ComponentSamples f = upper_component_spin(p, sol, r_grid);
        wf.lower = lower_from_upper(p, sol, f, r_grid);
        wf.upper = std::move(f.value);
        delta = [q](double) { return q.cs; };
        sigma = [q](double r) { return iqy_potential(q, r); };
    }
    const std::vector<double>& dominant = sol.symmetry == Symmetry::pspin ? wf.lower : wf.upper;
    wf.norm = l2_norm(dominant, r_grid);
    wf.nodes = sign_changes(dominant);
    wf.edge_ratio = edge_ratio(dominant);
    wf.backsub = back_substitution(p.mass, sol.energy, sol.kappa, p.tensor_h, delta, sigma, r_grid,
                                   wf.upper, wf.lower);
    return wf;
}

}  // namespace iqy::dirac
