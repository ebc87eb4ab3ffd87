#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iqy/dirac_iqy.hpp"
#include "iqy/errors.hpp"
#include "iqy/nu_engine.hpp"

#include <cmath>
#include <random>

using namespace iqy::dirac;

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

SolveOptions relaxed() {
    SolveOptions o;
    o.mode = SolveMode::relaxed;
    return o;
}

}  // namespace

TEST_CASE("quantum numbers") {
    const QuantumNumbers a = quantum_number_map(-1);
    CHECK(a.l == 0);
    CHECK(a.l_tilde == 1);
    CHECK(a.j() == 0.5);
    CHECK(a.label == "s1/2");
    const QuantumNumbers b = quantum_number_map(2);
    CHECK(b.l == 2);
    CHECK(b.l_tilde == 1);
    CHECK(b.j() == 1.5);
    CHECK(b.label == "d3/2");
    for (int k = -10; k <= 10; ++k) {
        if (k == 0) {
            CHECK(code_of([&] { quantum_number_map(k); }) == iqy::ErrorCode::ZeroKappa);
            continue;
        }
        const QuantumNumbers q = quantum_number_map(k);
        CHECK(k * (k - 1) == q.l_tilde * (q.l_tilde + 1));
        CHECK(k * (k + 1) == q.l * (q.l + 1));
        CHECK(q.twice_j == 2 * std::abs(k) - 1);
    }
    CHECK(with_radial(quantum_number_map(2), 1, Symmetry::pspin).label == "0d3/2");
    CHECK(with_radial(quantum_number_map(-1), 1, Symmetry::pspin).label == "1s1/2");
    CHECK(with_radial(quantum_number_map(1), 1, Symmetry::spin).label == "1p1/2");
    CHECK(with_radial(quantum_number_map(2), 0, Symmetry::pspin).n_spect == -1);
}

TEST_CASE("effective centrifugal index") {
    CHECK(effective_centrifugal(-1, 0.0, Symmetry::pspin) == -1.0);
    const double lam = effective_centrifugal(-1, 5.0, Symmetry::pspin);
    CHECK(lam == 4.0);
    CHECK(lam * (lam - 1) == (-1.0) * (-2.0) + 2 * (-1.0) * 5 - 5 + 25);
    const double eta = effective_centrifugal(-2, 5.0, Symmetry::spin);
    CHECK(eta == 4.0);
    CHECK(eta * (eta - 1) == (-2.0) * (-1.0) + 2 * (-2.0) * 5 + 5 + 25);
    for (int k = -10; k <= 10; ++k) {
        for (double h : {0.0, 0.5, 5.0}) {
            const double l = effective_centrifugal(k, h, Symmetry::pspin);
            CHECK(l * (l - 1) == doctest::Approx(k * (k - 1.0) + 2 * k * h - h + h * h));
            const double e = effective_centrifugal(k, h, Symmetry::spin);
            CHECK(e * (e - 1) == doctest::Approx(k * (k + 1.0) + 2 * k * h + h + h * h));
        }
    }
    CHECK(doublet_partner(-1, Symmetry::pspin) == 2);
    CHECK(doublet_partner(-2, Symmetry::spin) == 1);
}

TEST_CASE("pseudospin NU coefficients") {
    PhysicalParams p;
    const auto c = pspin_nu_coefficients(p, -1, -1.0);
    const EnergySymbols s = energy_symbols(p, -1, -1.0, Symmetry::pspin);
    CHECK(s.gamma == doctest::Approx(-0.5));
    CHECK(s.beta_sq == doctest::Approx(2.0));
    CHECK(c.a1 == 1.0);
    CHECK(c.a2 == 1.0);
    CHECK(c.a3 == 1.0);
    CHECK(c.xi3 == doctest::Approx(200.0));
    CHECK(c.xi1 == doctest::Approx(200.5));
    CHECK(c.xi2 == doctest::Approx(-2.0 + 400.0));

    const auto t = pspin_nu_coefficients(p, -1, p.mass + p.cps);
    CHECK(t.xi1 == 0.0);
    CHECK(t.xi3 == 0.0);
    CHECK(t.xi2 == -2.0);

    for (double e : {-4.0, -1.0, -0.3}) {
        const auto a = pspin_nu_coefficients(p, -1, e);
        const auto b = pspin_nu_coefficients(p, 2, e);
        CHECK(a.xi1 == b.xi1);
        CHECK(a.xi2 == b.xi2);
        CHECK(a.xi3 == b.xi3);
    }
}

TEST_CASE("spin NU coefficients") {
    PhysicalParams p;
    const EnergySymbols s = energy_symbols(p, -2, 2.0, Symmetry::spin);
    CHECK(s.gamma == doctest::Approx(1.0));
    CHECK(s.beta_sq == doctest::Approx(3.0));
    for (double e : {1.5, 3.0}) {
        const auto a = spin_nu_coefficients(p, -2, e);
        const auto b = spin_nu_coefficients(p, 1, e);
        CHECK(a.xi1 == b.xi1);
        CHECK(a.xi2 == b.xi2);
        CHECK(a.xi3 == b.xi3);
    }
    CHECK(energy_symbols(p, -2, -p.mass + p.cs, Symmetry::spin).beta_sq == 0.0);
}

TEST_CASE("derived NU parameters follow the closed-form mapping on random tuples") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mass(1.0, 10.0), v0(0.0, 5.0), alpha(0.01, 1.0), h(0.0, 6.0),
        cps(-10.0, 0.0), unit(0.0, 1.0);
    std::uniform_int_distribution<int> kap(-6, 6);
    for (int i = 0; i < 100; ++i) {
        PhysicalParams p;
        p.mass = mass(rng);
        p.v0 = v0(rng);
        p.screening = alpha(rng);
        p.tensor_h = h(rng);
        p.cps = cps(rng);
        int k = 0;
        while (k == 0) {
            k = kap(rng);
        }
        const double e = -p.mass + unit(rng) * (2 * p.mass + p.cps);
        // Independent evaluation of the mapping in terms of the physical symbols.
        const double g = e - p.mass - p.cps;
        const double b2 = (p.mass + e) * (p.mass - e + p.cps) / (4 * p.screening * p.screening);
        const double lam = k + p.tensor_h;
        const auto d = iqy::nu::derive_parameters(pspin_nu_coefficients(p, k, e));
        auto rel = [](double x, double y) { return std::fabs(x - y) / std::max(1.0, std::fabs(y)); };
        CHECK(d.a4 == 0.0);
        CHECK(d.a5 == -0.5);
        CHECK(rel(d.a6, 0.25 + b2 - g * p.v0) <= 1e-12);
        CHECK(rel(d.a7, lam * (lam - 1) - 2 * b2) <= 1e-12);
        CHECK(rel(d.a8, b2) <= 1e-12);
        CHECK(rel(d.a9, (lam - 0.5) * (lam - 0.5) - g * p.v0) <= 1e-12);
    }
}

TEST_CASE("raw residual errors and symmetry") {
    PhysicalParams p;
    CHECK(code_of([&] { energy_residual_raw(p, 1, -1, 0.0, Symmetry::pspin); }) ==
          iqy::ErrorCode::NegativeRadicand);
    CHECK(code_of([&] { energy_residual_raw(p, 1, 0, -1.0, Symmetry::pspin); }) == iqy::ErrorCode::ZeroKappa);
    for (double e = -4.9; e < -0.51; e += 0.05) {
        CHECK(energy_residual_raw(p, 1, -1, e, Symmetry::pspin) == energy_residual_raw(p, 1, 2, e, Symmetry::pspin));
    }
}

TEST_CASE("degeneracy identity at 10^4 energies") {
    for (auto sym : {Symmetry::pspin, Symmetry::spin}) {
        for (double h : {0.0, 5.0}) {
            PhysicalParams p;
            p.tensor_h = h;
            const EnergyWindow w = default_window(p, sym);
            for (int k : {-3, -1, 2}) {
                const int partner = sym == Symmetry::pspin ? 1 - 2 * static_cast<int>(h) - k
                                                           : -1 - 2 * static_cast<int>(h) - k;
                if (partner == 0) {
                    continue;
                }
                int equal = 0;
                for (int i = 0; i < 10000; ++i) {
                    const double e = w.lo + w.width() * (i + 0.5) / 10000.0;
                    const auto a = energy_residual_rearranged(p, 1, k, e, sym);
                    const auto b = energy_residual_rearranged(p, 1, partner, e, sym);
                    equal += (a.residual == b.residual && a.sign_ok == b.sign_ok) ? 1 : 0;
                }
                CHECK(equal == 10000);
            }
        }
    }
}

TEST_CASE("negative beta^2 at the tabulated energies") {
    PhysicalParams p;
    CHECK(energy_symbols(p, -1, -0.491129, Symmetry::pspin).beta_sq == doctest::Approx(-0.0400).epsilon(1e-3));
    CHECK(energy_symbols(p, -2, 0.994385, Symmetry::spin).beta_sq == doctest::Approx(-0.0225).epsilon(1e-3));
    CHECK(energy_symbols(p, -1, -0.491129, Symmetry::pspin).beta_sq ==
          doctest::Approx(4.508871 * -0.008871).epsilon(1e-12));
}

TEST_CASE("sign condition never holds: the principal branch admits no bound state") {
    // gamma V0 + P^2 > 0 because P^2 >= (Lambda - 1/2)^2 - gamma V0 + 1/4 + ...
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto sym : {Symmetry::pspin, Symmetry::spin}) {
        for (int i = 0; i < 2000; ++i) {
            PhysicalParams p;
            p.v0 = 10.0 * unit(rng);
            p.screening = 0.01 + unit(rng);
            p.tensor_h = 5.0 * unit(rng);
            const EnergyWindow w = default_window(p, sym);
            const double e = w.lo + unit(rng) * w.width();
            bool sign_ok = false;
            try {
                sign_ok = energy_residual_rearranged(p, i % 3, -1 - i % 4, e, sym).sign_ok;
            } catch (const iqy::Error& err) {
                CHECK(err.code() == iqy::ErrorCode::NegativeRadicand);
            }
            CHECK_FALSE(sign_ok);
        }
    }
}

TEST_CASE("solve_energies") {
    PhysicalParams p;
    for (auto sym : {Symmetry::pspin, Symmetry::spin}) {
        CHECK(solve_energies(p, 1, -1, sym).empty());
    }
    SolveOptions bad;
    bad.window = EnergyWindow{0.0, 1.0};
    CHECK(code_of([&] { solve_energies(p, 1, -1, Symmetry::pspin, bad); }) == iqy::ErrorCode::EmptyWindow);

    const auto roots = solve_energies(p, 1, -1, Symmetry::pspin, relaxed());
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].energy < roots[1].energy);
    for (const auto& r : roots) {
        CHECK_FALSE(r.sign_ok);
        CHECK_FALSE(r.strict_valid);
        CHECK(std::fabs(r.residual) < 1e-9);
        // The squared equation is satisfied; the printed one is not.
        CHECK(std::fabs(r.raw_residual) > 1.0);
        CHECK(energy_residual_rearranged(p, 1, -1, r.energy, Symmetry::pspin).residual ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
    const auto reported = select_reported(roots, p, Symmetry::pspin);
    REQUIRE(reported);
    CHECK(reported->energy == doctest::Approx(-0.505006).epsilon(1e-6));
    CHECK(reported->beta_sq == doctest::Approx(0.0225).epsilon(1e-4));
}

TEST_CASE("partner roots: degenerate at H = 0, split at H = 5") {
    for (auto sym : {Symmetry::pspin, Symmetry::spin}) {
        PhysicalParams p;
        const int k = sym == Symmetry::pspin ? -1 : -2;
        const int partner = doublet_partner(k, sym);
        const auto a = select_reported(solve_energies(p, 1, k, sym, relaxed()), p, sym);
        const auto b = select_reported(solve_energies(p, 1, partner, sym, relaxed()), p, sym);
        REQUIRE(a);
        REQUIRE(b);
        CHECK(std::fabs(a->energy - b->energy) <= 1e-9);
        p.tensor_h = 5.0;
        const auto c = select_reported(solve_energies(p, 1, k, sym, relaxed()), p, sym);
        const auto d = select_reported(solve_energies(p, 1, partner, sym, relaxed()), p, sym);
        REQUIRE(c);
        REQUIRE(d);
        CHECK(std::fabs(c->energy - d->energy) > 10 * 1e-12);
    }
}

TEST_CASE("doublet splitting report") {
    PhysicalParams p;
    const auto rows = doublet_splitting_report(p, Symmetry::pspin, {{1, -1}, {1, -2}}, {0.0, 5.0}, relaxed());
    REQUIRE(rows.size() == 4);
    auto sign = [](double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
    for (const auto& r : rows) {
        REQUIRE(r.split);
        REQUIRE(r.member);
        REQUIRE(r.partner_member);
        if (r.tensor_h == 0.0) {
            CHECK(std::fabs(*r.split) <= 1e-9);
            CHECK(r.kappa_shift_sign == 0);
            continue;
        }
        CHECK(std::fabs(*r.split) > 1e-11);
        const double base = rows[&r - &rows[0] - 1].member->energy;
        const double base_partner = rows[&r - &rows[0] - 1].partner_member->energy;
        CHECK(r.kappa_shift_sign == sign(r.member->energy - base));
        CHECK(r.partner_shift_sign == sign(r.partner_member->energy - base_partner));
    }
    // kappa = -2 at H = 5 has (kappa + H - 1/2)^2 = (kappa - 1/2)^2, so it does not move at all.
    CHECK(rows[3].kappa_shift_sign == 0);
    // Relaxed roots: the kappa < 0 member ends up above its partner.
    CHECK(*rows[1].split > 0.0);
    CHECK(*rows[3].split > 0.0);

    // Strict mode has no roots for these parameters, so the rows stay empty.
    const auto strict = doublet_splitting_report(p, Symmetry::pspin, {{1, -1}}, {0.0, 5.0});
    CHECK_FALSE(strict[0].member.has_value());
    CHECK_FALSE(strict[1].split.has_value());
}

TEST_CASE("Greene-Aldrich approximation") {
    const auto g = greene_aldrich(1.0, 0.05);
    CHECK(g.approx == doctest::Approx(0.01 * std::exp(-0.1) / std::pow(1 - std::exp(-0.1), 2)).epsilon(1e-14));
    CHECK(g.approx == doctest::Approx(0.999167).epsilon(1e-6));
    // x^2 / sinh^2 x = 1 - x^2/3 + 2 x^4/45 - ..., x = alpha r
    const double x = 0.05;
    CHECK(g.rel_error == doctest::Approx(x * x / 3 - 2 * std::pow(x, 4) / 45).epsilon(1e-6));
    CHECK(g.rel_error == doctest::Approx(8.3e-4).epsilon(0.01));
    CHECK(greene_aldrich(1e-4, 0.05).rel_error < 1e-10);
    double prev = 0.0;
    for (int i = 1; i <= 3000; ++i) {
        const double e = greene_aldrich(i * 1e-3, 1.0).rel_error;
        CHECK(e > prev);
        prev = e;
    }
    CHECK(code_of([] { greene_aldrich(0.0, 0.05); }) == iqy::ErrorCode::NonpositiveR);
}

TEST_CASE("domains and parameter validation") {
    PhysicalParams p;
    CHECK(strict_domain(p, Symmetry::pspin).lo == -5.0);
    CHECK(strict_domain(p, Symmetry::pspin).hi == -0.5);
    CHECK(strict_domain(p, Symmetry::spin).lo == 1.0);
    CHECK(strict_domain(p, Symmetry::spin).hi == 5.0);
    CHECK(default_window(p, Symmetry::spin).lo == doctest::Approx(1.0 + 1e-9).epsilon(1e-15));
    PhysicalParams bad = p;
    bad.screening = 0.0;
    CHECK(code_of([&] { bad.validate(); }) == iqy::ErrorCode::InvalidParameter);
    bad = p;
    bad.tensor_h = -1.0;
    CHECK(code_of([&] { bad.validate(); }) == iqy::ErrorCode::InvalidParameter);
    CHECK(parse_symmetry("pspin") == Symmetry::pspin);
    CHECK_FALSE(parse_symmetry("both"));
}
