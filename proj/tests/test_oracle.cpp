#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iqy/errors.hpp"
#include "iqy/nu_engine.hpp"
#include "iqy/oracle.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace iqy::oracle;
using iqy::dirac::EnergyWindow;
using iqy::dirac::PhysicalParams;
using iqy::dirac::Symmetry;

namespace {

template <class F>
iqy::ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const iqy::Error& e) {
        return e.code();
    }
    return iqy::ErrorCode::IoError;
}

// s-wave Hulthen problem u'' = (-E - V0 e^{-d r} / (1 - e^{-d r})) u.
// Exact levels: E_m = -((V0 - m^2 d^2) / (2 m d))^2, m = 1, 2, ...
constexpr double kHulthenV0 = 2.0;
constexpr double kHulthenDelta = 0.5;

double hulthen_exact(int m) {
    const double k = (kHulthenV0 - m * m * kHulthenDelta * kHulthenDelta) / (2.0 * m * kHulthenDelta);
    return -k * k;
}

RadialFamily hulthen_family(double step = 1e-3) {
    RadialFamily f;
    f.shapes.push_back({[](double r) { return std::exp(-kHulthenDelta * r) / -std::expm1(-kHulthenDelta * r); }, 0.0});
    f.coefficients = [](double e) { return std::vector<double>{-e, -kHulthenV0}; };
    f.r_max = 60.0;
    f.step = step;
    f.fallback_match = 1.0 / kHulthenDelta;
    f.description = "Hulthen";
    return f;
}

// The same problem through the NU engine in s = exp(-d r):
// a1 = a2 = a3 = 1, xi1 = v - eps, xi2 = v - 2 eps, xi3 = -eps with eps = E / d^2, v = V0 / d^2.
double hulthen_nu_residual(int n, double e) {
    const double eps = e / (kHulthenDelta * kHulthenDelta);
    const double v = kHulthenV0 / (kHulthenDelta * kHulthenDelta);
    const iqy::nu::NUCoefficients c{1, 1, 1, v - eps, v - 2 * eps, -eps};
    return iqy::nu::energy_residual(iqy::nu::select_k(iqy::nu::derive_parameters(c), c, iqy::nu::Branch::first), c, n);
}

RadialFamily free_family(double beta_sq, double barrier) {
    RadialFamily f;
    f.shapes.push_back({[](double r) { return 1.0 / (r * r); }, 1.0});
    f.coefficients = [=](double) { return std::vector<double>{beta_sq, barrier}; };
    f.r_min = 1e-6;
    f.r_max = 20.0;
    f.step = 1e-3;
    f.fallback_match = 1.0;
    return f;
}

}  // namespace

TEST_CASE("count_nodes") {
    const std::vector<double> flat{1, 2, 3, 4};
    CHECK(count_nodes(flat) == 0);
    const double pi = std::acos(-1.0);
    std::vector<double> s(300);
    for (int i = 0; i < 300; ++i) {
        s[i] = std::sin(3 * pi * i / 299.0);
    }
    CHECK(count_nodes(s) == 2);
}

TEST_CASE("free outward solution follows sinh") {
    const double beta = 1.3;
    const RadialFamily f = free_family(beta * beta, 0.0);
    const SampledSolution out = integrate_outward(f, 0.0, 1.0);
    REQUIRE(out.r.back() == doctest::Approx(1.0));
    // u ~ sinh(beta r) up to a constant: compare ratios at r = 1 and r = 0.5.
    std::size_t mid = 0;
    while (out.r[mid] < 0.5) {
        ++mid;
    }
    const double ratio = out.u.back() / out.u[mid];
    const double exact = std::sinh(beta * out.r.back()) / std::sinh(beta * out.r[mid]);
    CHECK(std::fabs(ratio - exact) <= 1e-8 * exact);
    const double dlog = out.du.back() / out.u.back();
    CHECK(dlog == doctest::Approx(beta / std::tanh(beta)).epsilon(1e-8));
}

TEST_CASE("outward seed carries the r^nu exponent") {
    for (double c : {0.0, 2.0, 12.0, -0.2}) {
        const RadialFamily f = free_family(0.01, c);
        const double nu = 0.5 + std::sqrt(0.25 + c);
        const SampledSolution out = integrate_outward(f, 0.0, 1e-3);
        // First sample after doubling r_min.
        std::size_t i = 0;
        while (out.r[i] < 2 * f.r_min * (1 - 1e-12)) {
            ++i;
        }
        const double ratio = out.u[i] / out.u[0] * std::pow(out.r[0] * 2 / out.r[i], nu);
        CHECK(ratio == doctest::Approx(std::pow(2.0, nu)).epsilon(1e-6));
    }
    CHECK(code_of([] { integrate_outward(free_family(1.0, -1.0), 0.0, 1.0); }) == iqy::ErrorCode::SeedUndefined);
    CHECK(code_of([] { integrate_inward(free_family(-1.0, 0.0), 0.0, 1.0); }) == iqy::ErrorCode::SeedUndefined);
}

TEST_CASE("Hulthen levels: closed form, NU engine and shooting agree") {
    const RadialFamily f = hulthen_family();
    const auto states = find_bound_states(f, EnergyWindow{-5.0, -1e-3});
    REQUIRE(states.size() == 2);
    for (int m = 1; m <= 2; ++m) {
        const double exact = hulthen_exact(m);
        const double nu_root = oracle_ref::bisect([&](double e) { return hulthen_nu_residual(m - 1, e); },
                                                  exact - 0.01, exact + 0.01);
        CHECK(nu_root == doctest::Approx(exact).epsilon(1e-10));
        CHECK(std::fabs(states[m - 1].energy - exact) <= 1e-8);
        CHECK(states[m - 1].nodes == m - 1);
        const Eigenvalue ev = shoot_eigenvalue(f, EnergyWindow{-5.0, -1e-3}, m - 1);
        CHECK(ev.energy == states[m - 1].energy);
    }
    CHECK(states[0].energy < states[1].energy);
}

TEST_CASE("grid convergence and match-point independence") {
    const EnergyWindow w{-5.0, -1e-3};
    for (int nodes : {0, 1}) {
        const double coarse = shoot_eigenvalue(hulthen_family(2e-3), w, nodes).energy;
        const double fine = shoot_eigenvalue(hulthen_family(1e-3), w, nodes).energy;
        CHECK(std::fabs(coarse - fine) < 1e-8);

        const RadialFamily f = hulthen_family();
        const Eigenvalue base = shoot_eigenvalue(f, w, nodes);
        const double well = f.fallback_match;
        for (double shift : {-0.2, 0.2}) {
            ShootOptions o;
            o.match_point = base.match_point + shift * well;
            CHECK(std::fabs(shoot_eigenvalue(f, w, nodes, o).energy - base.energy) < 1e-8);
        }
    }
}

TEST_CASE("shooting errors") {
    const RadialFamily f = hulthen_family();
    CHECK(code_of([&] { shoot_eigenvalue(f, EnergyWindow{-0.2, -0.01}, 0); }) == iqy::ErrorCode::NoRootInWindow);
    CHECK(code_of([&] { shoot_eigenvalue(f, EnergyWindow{-5.0, -1e-3}, 4); }) == iqy::ErrorCode::NodeMismatch);
}

TEST_CASE("IQY families") {
    PhysicalParams p;
    p.tensor_h = 5.0;
    const int k = -1;
    for (auto sym : {Symmetry::pspin, Symmetry::spin}) {
        const double lam = sym == Symmetry::pspin ? k + p.tensor_h : k + p.tensor_h + 1;
        const RadialFamily approx = iqy_family(p, k, sym, Centrifugal::approximated);
        const RadialFamily exact = iqy_family(p, k, sym, Centrifugal::exact);
        CHECK(approx.r_max == doctest::Approx(14.0 / p.screening));
        CHECK(approx.step == doctest::Approx(1e-3 / p.screening));
        for (double e : {-2.0, 2.0}) {
            const double g = sym == Symmetry::pspin ? e - p.mass - p.cps : p.mass + e - p.cs;
            const double b2 = sym == Symmetry::pspin ? (p.mass + e) * (p.mass - e + p.cps)
                                                     : (p.mass - e) * (p.mass + e - p.cs);
            for (double r : {0.3, 2.0, 15.0}) {
                const double a = p.screening;
                const double s = std::exp(-2 * a * r);
                const double ga = 4 * a * a * s / ((1 - s) * (1 - s));
                const double w_exact = b2 + lam * (lam - 1) / (r * r) - g * p.v0 * s / (r * r);
                const double w_approx = b2 + lam * (lam - 1) * ga - g * p.v0 * s * ga;
                CHECK(exact.potential(r, e) == doctest::Approx(w_exact).epsilon(1e-12));
                CHECK(approx.potential(r, e) == doctest::Approx(w_approx).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("no bound states for the captioned IQY parameters") {
    for (auto sym : {Symmetry::pspin, Symmetry::spin}) {
        for (double h : {0.0, 5.0}) {
            PhysicalParams p;
            p.tensor_h = h;
            const auto w = iqy::dirac::default_window(p, sym);
            const int k = sym == Symmetry::pspin ? -1 : -2;
            for (auto cent : {Centrifugal::approximated, Centrifugal::exact}) {
                CHECK(find_bound_states(iqy_family(p, k, sym, cent), w).empty());
            }
        }
    }
    // V0 = 0 leaves a pure barrier.
    PhysicalParams p;
    p.v0 = 0.0;
    const auto w = iqy::dirac::default_window(p, Symmetry::pspin);
    CHECK(code_of([&] { shoot_eigenvalue(iqy_family(p, -1, Symmetry::pspin, Centrifugal::approximated), w, 0); }) ==
          iqy::ErrorCode::NoRootInWindow);
}
