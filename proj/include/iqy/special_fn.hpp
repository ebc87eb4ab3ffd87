#pragma once

// Jacobi and generalized Laguerre polynomials by forward three-term recurrence.
//
// Degrees are capped at kMaxDegree; past that the recurrence has not been
// checked against the series oracle and DegreeCapExceeded is thrown.
// Evaluation outside [-1, 1] is allowed (the wavefunction code needs it).

namespace iqy::special {

inline constexpr int kMaxDegree = 64;

/// P_n^{(a,b)}(x). Requires a > -1, b > -1.
double jacobi(int n, double a, double b, double x);

/// d/dx P_n^{(a,b)}(x) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(x); zero for n = 0.
double jacobi_derivative(int n, double a, double b, double x);

/// L_n^{(a)}(x). Requires a > -1.
double laguerre(int n, double a, double x);

/// d/dx L_n^{(a)}(x) = -L_{n-1}^{(a+1)}(x); zero for n = 0.
double laguerre_derivative(int n, double a, double x);

// Recurrence coefficients, shared with the batched kernels so the scalar and
// vector paths perform the same floating-point operations in the same order.
struct JacobiStep {
    double x_coeff;   // multiplies x * P_{k-1}
    double constant;  // multiplies P_{k-1}
    double previous;  // multiplies P_{k-2}
};

/// Coefficients for P_k from P_{k-1}, P_{k-2}, k >= 2.
JacobiStep jacobi_step(int k, double a, double b);

void check_jacobi_query(int n, double a, double b);
void check_laguerre_query(int n, double a);

}  // namespace iqy::special
