#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iqy/errors.hpp"
#include "iqy/limits.hpp"
#include "iqy/oracle.hpp"
#include "iqy/wavefunction.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace iqy::limits;
using iqy::dirac::EnergyWindow;

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

// A Mie-type well deep enough to bind several pseudospin states.
constexpr double kMass = 1.0;
constexpr double kCps = 0.0;
const MieParams kWell{-0.1, -1.0, -0.01};

EnergyWindow mie_window() {
    return {-kMass + 1e-9, kMass + kCps - 1e-9};
}

}  // namespace

TEST_CASE("small-screening expansion coefficients") {
    const MieParams m = iqy_to_mie(1.0, 0.05);
    CHECK(m.a == -1.0);
    CHECK(m.b == doctest::Approx(-0.1));
    CHECK(m.c == doctest::Approx(-0.005));
    const MieParams z = iqy_to_mie(2.0, 1e-9);
    CHECK(z.a == -2.0);
    CHECK(std::fabs(z.b) < 1e-8);
    CHECK(std::fabs(z.c) < 1e-17);
    // Second-order Taylor: the remainder of -V0 e^{-2 a r}/r^2 is O(a^3 r).
    for (double a : {0.01, 0.005, 0.0025}) {
        const MieParams t = iqy_to_mie(1.0, a);
        const double r = 1.0;
        const double gap = std::fabs(-std::exp(-2 * a * r) / (r * r) - mie_potential(t, r));
        CHECK(gap == doctest::Approx(4.0 / 3.0 * a * a * a * r).epsilon(0.05));
    }
}

TEST_CASE("Coulomb-like closed form") {
    CHECK(coulomb_energy(1.0, 1.0, 0, 1) == doctest::Approx(-0.6));
    for (int n = 0; n < 3; ++n) {
        CHECK(coulomb_energy(2.0, 0.0, n, 1) == -2.0);
    }
    double prev = coulomb_energy(1.0, 1.0, 1, 1);
    for (int n = 2; n <= 100; ++n) {
        const double e = coulomb_energy(1.0, 1.0, n, 1);
        CHECK(e < prev);
        CHECK(e > -1.0);
        prev = e;
    }
    CHECK(code_of([] { coulomb_energy(1.0, 0.0, 1, -1); }) == iqy::ErrorCode::DegenerateDenominator);
}

TEST_CASE("Mie residual with the Coulomb reduction reproduces the closed form") {
    // The printed residual carries -gamma B; it binds for B < 0 in the
    // A/r^2 - B/r + C convention, so the Coulomb strength enters as -|B|.
    for (double b : {0.5, 1.0}) {
        for (int n = 0; n < 3; ++n) {
            for (int k = 1; k <= 3; ++k) {
                const double expected = coulomb_energy(1.0, b, n, k);
                const auto roots = solve_mie_roots(1.0, 0.0, MieParams{0.0, -b, 0.0}, n, k, {-1 + 1e-12, 1 - 1e-12});
                REQUIRE(roots.size() == 1);
                CHECK(std::fabs(roots[0] - expected) <= 1e-9);
                // The opposite sign of B does not vanish there.
                CHECK(std::fabs(mie_energy_residual(1.0, 0.0, MieParams{0.0, b, 0.0}, n, k, expected)) > 1e-3);
            }
        }
    }
}

TEST_CASE("Mie residual edge cases") {
    // Zero potential: sqrt((M + E)(M - E)) vanishes only at |E| = M.
    for (double e : {-0.9, 0.0, 0.7}) {
        CHECK(mie_energy_residual(1.0, 0.0, {}, 0, 1, e) == doctest::Approx(std::sqrt(1 - e * e)));
    }
    CHECK(mie_energy_residual(1.0, 0.0, {}, 0, 1, 1.0) == 0.0);
    CHECK(code_of([] { mie_energy_residual(1.0, 0.0, {}, 0, 1, 1.5); }) == iqy::ErrorCode::NegativeRadicand);
    CHECK(code_of([] { mie_energy_residual(1.0, 0.0, {10.0, 0.0, 0.0}, 0, 1, -0.5); }) ==
          iqy::ErrorCode::NegativeRadicand);
}

TEST_CASE("Mie spectrum: printed residual, NU engine and shooting agree") {
    for (int k : {-1, 1, 2}) {
        double prev = INFINITY;
        for (int n = 0; n <= 2; ++n) {
            const auto roots = solve_mie_roots(kMass, kCps, kWell, n, k, mie_window());
            REQUIRE(roots.size() == 1);
            const double e = roots[0];
            CHECK(std::fabs(mie_energy_residual(kMass, kCps, kWell, n, k, e)) <= 1e-10);

            const double nu_root = oracle_ref::bisect(
                [&](double x) { return mie_nu_residual(kMass, kCps, kWell, n, k, x); }, e - 1e-4, e + 1e-4);
            CHECK(std::fabs(nu_root - e) <= 1e-10);

            const double decay = mie_decay(kMass, kCps, kWell, e);
            const double r_max = (60.0 + 4.0 * n) / decay;
            const auto family = mie_family(kMass, kCps, kWell, k, r_max, r_max / 20000.0);
            const auto ev = iqy::oracle::shoot_eigenvalue(family, mie_window(), n);
            CHECK(std::fabs(ev.energy - e) <= 1e-6);
            CHECK(ev.nodes == n);

            // More nodes, less binding: pseudospin levels run toward E = -M.
            CHECK(e < prev);
            prev = e;
        }
    }
    // kappa and 1 - kappa share the barrier when Cps = 0 and H = 0.
    const auto a = solve_mie_roots(kMass, kCps, kWell, 1, -1, mie_window());
    const auto b = solve_mie_roots(kMass, kCps, kWell, 1, 2, mie_window());
    CHECK(a[0] == b[0]);
}

TEST_CASE("Mie wavefunction contract") {
    for (int k : {-1, 1}) {
        for (int n = 0; n <= 2; ++n) {
            const double e = solve_mie_roots(kMass, kCps, kWell, n, k, mie_window()).at(0);
            const double decay = mie_decay(kMass, kCps, kWell, e);
            const auto wf = mie_wavefunction(kMass, kCps, kWell, n, k, e, iqy::dirac::decay_grid(decay, n));
            CHECK(wf.nodes == n);
            CHECK(wf.edge_ratio < 1e-6);
            CHECK(wf.norm == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(wf.backsub.first <= 1e-6);
            CHECK(wf.backsub.second <= 1e-6);
        }
    }
}

TEST_CASE("limit coherence is vacuous for the captioned parameters") {
    // Neither side has a root: the IQY problem never binds on the principal
    // branch, and the expanded well is too shallow at M = 5, Cps = -5.5.
    iqy::dirac::PhysicalParams p;
    for (double a : {0.02, 0.01, 0.005}) {
        p.screening = a;
        const auto w = iqy::dirac::default_window(p, iqy::dirac::Symmetry::pspin);
        CHECK(solve_mie_roots(p.mass, p.cps, iqy_to_mie(p.v0, a), 0, -1, w).empty());
        CHECK(iqy::dirac::solve_energies(p, 0, -1, iqy::dirac::Symmetry::pspin).empty());
    }
}
