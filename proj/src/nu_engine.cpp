#include "iqy/nu_engine.hpp"

#include "iqy/errors.hpp"
#include "iqy/special_fn.hpp"

#include <cmath>
#include <string>

namespace iqy::nu {

double checked_sqrt(double value, const char* what) {
    if (value < 0.0) {
        if (value >= -kRadicandSlack) {
            return 0.0;
        }
        throw Error(ErrorCode::NegativeRadicand,
                    std::string(what) + " = " + std::to_string(value) + " < 0");
    }
    return std::sqrt(value);
}

NUDerived derive_parameters(const NUCoefficients& c) {
    NUDerived d;
    d.a4 = 0.5 * (1.0 - c.a1);
    d.a5 = 0.5 * (c.a2 - 2.0 * c.a3);
    d.a6 = d.a5 * d.a5 + c.xi1;
    d.a7 = 2.0 * d.a4 * d.a5 - c.xi2;
    d.a8 = d.a4 * d.a4 + c.xi3;
    d.a9 = c.a3 * d.a7 + c.a3 * c.a3 * d.a8 + d.a6;
    return d;
}

NUDerived select_k(NUDerived d, const NUCoefficients& c, Branch branch) {
    const double product = d.a8 * d.a9;
    if (product < 0.0) {
        throw Error(ErrorCode::NegativeDiscriminant,
                    "a8 * a9 = " + std::to_string(product) + " has no real square root");
    }
    const double root = 2.0 * std::sqrt(product);
    const double base = -(d.a7 + 2.0 * c.a3 * d.a8);
    d.k = branch == Branch::first ? base - root : base + root;
    d.branch = branch;
    return d;
}

double energy_residual(const NUDerived& d, const NUCoefficients& c, int n) {
    if (n < 0) {
        throw Error(ErrorCode::DomainError, "negative radial number");
    }
    const double r8 = checked_sqrt(d.a8, "a8");
    const double r9 = checked_sqrt(d.a9, "a9");
    const double nd = n;
    // lambda = k + pi' set equal to lambda_n = -n tau' - n(n-1) sigma'' / 2.
    // The second branch flips the sign of every sqrt(a8) contribution.
    const double sign = d.branch == Branch::first ? 1.0 : -1.0;
    return c.a2 * nd - (2.0 * nd + 1.0) * d.a5 + (2.0 * nd + 1.0) * (r9 + sign * c.a3 * r8) +
           nd * (nd - 1.0) * c.a3 + d.a7 + 2.0 * c.a3 * d.a8 + sign * 2.0 * r8 * r9;
}

WavefunctionParameters wavefunction_parameters(const NUDerived& d, const NUCoefficients& c) {
    const double r8 = checked_sqrt(d.a8, "a8");
    const double r9 = checked_sqrt(d.a9, "a9");
    const double sign = d.branch == Branch::first ? 1.0 : -1.0;
    WavefunctionParameters w;
    w.a10 = c.a1 + 2.0 * d.a4 + sign * 2.0 * r8;
    w.a11 = c.a2 - 2.0 * d.a5 + 2.0 * (r9 + sign * c.a3 * r8);
    w.a12 = d.a4 + sign * r8;
    w.a13 = d.a5 - (r9 + sign * c.a3 * r8);
    return w;
}

JacobiParameters jacobi_parameters(const WavefunctionParameters& w, const NUCoefficients& c) {
    JacobiParameters p;
    p.alpha = w.a10 - 1.0;
    // The weight (1 - a3 s)^q solves (sigma rho)' = tau rho only for
    // q = a11 / a3 - a10 - 1; this equals (a11 - a10 - 1) / a3 when a3 = 1.
    p.beta = c.a3 != 0.0 ? w.a11 / c.a3 - w.a10 - 1.0 : 0.0;
    return p;
}

namespace {

void check_domain(const NUCoefficients& c, double s) {
    if (c.a3 < 0.0) {
        throw Error(ErrorCode::DomainError, "a3 must be >= 0");
    }
    if (!(s > 0.0) || (c.a3 > 0.0 && !(s < 1.0 / c.a3))) {
        throw Error(ErrorCode::DomainError, "s = " + std::to_string(s) + " outside the NU domain");
    }
}

}  // namespace

double evaluate_nu_wavefunction(const NUDerived& d, const NUCoefficients& c, int n, double s) {
    check_domain(c, s);
    const WavefunctionParameters w = wavefunction_parameters(d, c);
    if (c.a3 == 0.0) {
        return std::pow(s, w.a12) * std::exp(w.a13 * s) *
               special::laguerre(n, w.a10 - 1.0, w.a11 * s);
    }
    const JacobiParameters jp = jacobi_parameters(w, c);
    const double envelope =
        std::pow(s, w.a12) * std::pow(1.0 - c.a3 * s, -w.a12 - w.a13 / c.a3);
    return envelope * special::jacobi(n, jp.alpha, jp.beta, 1.0 - 2.0 * c.a3 * s);
}

double evaluate_nu_wavefunction_derivative(const NUDerived& d, const NUCoefficients& c, int n,
                                           double s) {
    check_domain(c, s);
    const WavefunctionParameters w = wavefunction_parameters(d, c);
    if (c.a3 == 0.0) {
        const double envelope = std::pow(s, w.a12) * std::exp(w.a13 * s);
        const double a = w.a10 - 1.0;
        const double poly = special::laguerre(n, a, w.a11 * s);
        const double dpoly = w.a11 * special::laguerre_derivative(n, a, w.a11 * s);
        return envelope * ((w.a12 / s + w.a13) * poly + dpoly);
    }
    const JacobiParameters jp = jacobi_parameters(w, c);
    const double e2 = -w.a12 - w.a13 / c.a3;
    const double envelope = std::pow(s, w.a12) * std::pow(1.0 - c.a3 * s, e2);
    const double x = 1.0 - 2.0 * c.a3 * s;
    const double poly = special::jacobi(n, jp.alpha, jp.beta, x);
    const double dpoly = -2.0 * c.a3 * special::jacobi_derivative(n, jp.alpha, jp.beta, x);
    const double log_slope = w.a12 / s - e2 * c.a3 / (1.0 - c.a3 * s);
    return envelope * (log_slope * poly + dpoly);
}

double tau_slope(const NUDerived& d, const NUCoefficients& c) {
    const double r8 = checked_sqrt(d.a8, "a8");
    const double r9 = checked_sqrt(d.a9, "a9");
    const double sign = d.branch == Branch::first ? 1.0 : -1.0;
    return -2.0 * c.a3 - 2.0 * (r9 + sign * c.a3 * r8);
}

}  // namespace iqy::nu
