#pragma once

// Data-parallel inner loops with a scalar reference implementation and an AVX2
// variant picked at runtime. The AVX2 code performs exactly the same IEEE
// operations as the scalar code (no FMA contraction anywhere in the project),
// so the two paths are bitwise identical and are tested that way.
//
// SPECTRA_SIMD=scalar|avx2|auto selects the path; the default is auto.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace iqy::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when this binary carries AVX2 code and the CPU can run it.
bool avx2_available() noexcept;

/// Path used by the dispatching entry points.
Isa active_isa();

/// Test hook; std::nullopt restores environment/CPU based selection.
void set_isa_override(std::optional<Isa> isa);

// ---------------------------------------------------------------------------
// Jacobi polynomial over many arguments.

void jacobi_batch(Isa isa, int n, double a, double b, std::span<const double> x,
                  std::span<double> out);
void jacobi_batch(int n, double a, double b, std::span<const double> x, std::span<double> out);

// ---------------------------------------------------------------------------
// Energy equation residuals over many trial energies.
//
// gamma(E) = E + gamma0, beta^2(E) = (u0 + u1 E)(w0 + w1 E).
// inner(E) = centrifugal - gamma V0 with centrifugal = (Lambda - 1/2)^2,
// P(E) = n + 1/2 + sqrt(inner).
//   rearranged = beta^2 - 4 alpha^2 [(gamma V0 + P^2) / (2P)]^2
//   raw        = (P + sqrt(beta^2 / 4 alpha^2))^2 - (beta^2 / 4 alpha^2 - gamma V0)
//   sign_ok    = gamma V0 + P^2 <= 0
// Points with inner < -1e-12 give NaN for both residuals; raw is also NaN for
// beta^2 < -1e-12.
struct ResidualModel {
    double gamma0 = 0.0;
    double u0 = 0.0;
    double u1 = 0.0;
    double w0 = 0.0;
    double w1 = 0.0;
    double v0 = 0.0;
    double four_alpha_sq = 0.0;
    double centrifugal = 0.0;
    double n_half = 0.5;
    double raw_offset = 0.0;  // added to both residuals; zero outside fault-injection tests
};

struct ResidualPoint {
    double rearranged;
    double raw;
    double beta_sq;
    bool sign_ok;
};

ResidualPoint residual_point(const ResidualModel& m, double energy);

void residual_batch(Isa isa, const ResidualModel& m, std::span<const double> energy,
                    std::span<double> rearranged, std::span<double> raw,
                    std::span<std::uint8_t> sign_ok);
void residual_batch(const ResidualModel& m, std::span<const double> energy,
                    std::span<double> rearranged, std::span<double> raw,
                    std::span<std::uint8_t> sign_ok);

// ---------------------------------------------------------------------------
// Fixed-step RK4 for y'' = Q(t) y with
//   Q(t_j) = g[0] + sum_k g[k+1] * terms[k][j],
// where terms are tabulated at the half-step points t_0, t_0 + h/2, ..., in
// integration order (h may be negative). Solutions are rescaled by 1e-64
// whenever |y| exceeds 1e64 (and up by 1e64 below 1e-64); log_scale
// accumulates the natural log of the removed factor.

struct SweepTables {
    double h = 0.0;
    int steps = 0;
    std::vector<std::vector<double>> terms;  // each of size 2 * steps + 1
};

struct SweepLane {
    std::vector<double> g;  // size terms.size() + 1
    double y0 = 0.0;
    double dy0 = 0.0;
};

struct SweepState {
    double y = 0.0;
    double dy = 0.0;
    double log_scale = 0.0;
    int nodes = 0;
};

void sweep_batch(Isa isa, const SweepTables& tables, std::span<const SweepLane> lanes,
                 std::span<SweepState> out);
void sweep_batch(const SweepTables& tables, std::span<const SweepLane> lanes,
                 std::span<SweepState> out);

/// Scalar sweep that also records the state after every full step
/// (index 0 is the seed). Final entry equals sweep_batch's result.
std::vector<SweepState> sweep_record(const SweepTables& tables, const SweepLane& lane);

namespace detail {
void jacobi_scalar(int n, double a, double b, std::span<const double> x, std::span<double> out);
void residual_scalar(const ResidualModel& m, std::span<const double> energy,
                     std::span<double> rearranged, std::span<double> raw,
                     std::span<std::uint8_t> sign_ok);
void sweep_scalar(const SweepTables& tables, std::span<const SweepLane> lanes,
                  std::span<SweepState> out);
#if defined(IQY_HAVE_AVX2)
void jacobi_avx2(int n, double a, double b, std::span<const double> x, std::span<double> out);
void residual_avx2(const ResidualModel& m, std::span<const double> energy,
                   std::span<double> rearranged, std::span<double> raw,
                   std::span<std::uint8_t> sign_ok);
void sweep_avx2(const SweepTables& tables, std::span<const SweepLane> lanes,
                std::span<SweepState> out);
#endif
}  // namespace detail

}  // namespace iqy::kernels
