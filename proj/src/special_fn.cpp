#include "iqy/special_fn.hpp"

#include "iqy/errors.hpp"

#include <cmath>
#include <string>

namespace iqy::special {

void check_jacobi_query(int n, double a, double b) {
    if (n < 0) {
        throw Error(ErrorCode::DomainError, "negative Jacobi degree " + std::to_string(n));
    }
    if (n > kMaxDegree) {
        throw Error(ErrorCode::DegreeCapExceeded,
                    "Jacobi degree " + std::to_string(n) + " exceeds " + std::to_string(kMaxDegree));
    }
    if (!(a > -1.0) || !(b > -1.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::DomainError, "Jacobi parameters must be finite and > -1");
    }
}

void check_laguerre_query(int n, double a) {
    if (n < 0) {
        throw Error(ErrorCode::DomainError, "negative Laguerre degree " + std::to_string(n));
    }
    if (n > kMaxDegree) {
        throw Error(ErrorCode::DegreeCapExceeded,
                    "Laguerre degree " + std::to_string(n) + " exceeds " + std::to_string(kMaxDegree));
    }
    if (!(a > -1.0) || !std::isfinite(a)) {
        throw Error(ErrorCode::DomainError, "Laguerre parameter must be finite and > -1");
    }
}

JacobiStep jacobi_step(int k, double a, double b) {
    const double kd = k;
    const double c = 2.0 * kd + a + b;
    const double denom = 2.0 * kd * (kd + a + b) * (c - 2.0);
    return JacobiStep{
        (c - 1.0) * c * (c - 2.0) / denom,
        (c - 1.0) * (a * a - b * b) / denom,
        2.0 * (kd + a - 1.0) * (kd + b - 1.0) * c / denom,
    };
}

double jacobi(int n, double a, double b, double x) {
    check_jacobi_query(n, a, b);
    if (n == 0) {
        return 1.0;
    }
    double p0 = 1.0;
    double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        const JacobiStep s = jacobi_step(k, a, b);
        const double p2 = (s.x_coeff * x + s.constant) * p1 - s.previous * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double jacobi_derivative(int n, double a, double b, double x) {
    check_jacobi_query(n, a, b);
    if (n == 0) {
        return 0.0;
    }
    return 0.5 * (n + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x);
}

double laguerre(int n, double a, double x) {
    check_laguerre_query(n, a);
    if (n == 0) {
        return 1.0;
    }
    double l0 = 1.0;
    double l1 = 1.0 + a - x;
    for (int k = 2; k <= n; ++k) {
        const double kd = k;
        const double l2 = ((2.0 * kd - 1.0 + a - x) * l1 - (kd - 1.0 + a) * l0) / kd;
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double laguerre_derivative(int n, double a, double x) {
    check_laguerre_query(n, a);
    if (n == 0) {
        return 0.0;
    }
    return -laguerre(n - 1, a + 1.0, x);
}

}  // namespace iqy::special
