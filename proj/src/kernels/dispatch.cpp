#include "iqy/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace iqy::kernels {

namespace {

// -1: no override, otherwise static_cast<int>(Isa).
std::atomic<int> g_override{-1};

Isa from_environment() {
    const char* env = std::getenv("SPECTRA_SIMD");
    const std::string choice = env != nullptr ? env : "auto";
    if (choice == "scalar") {
        return Isa::scalar;
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept {
#if defined(IQY_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") != 0;
    return supported;
#else
    return false;
#endif
}

Isa active_isa() {
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced >= 0) {
        const Isa isa = static_cast<Isa>(forced);
        return isa == Isa::avx2 && !avx2_available() ? Isa::scalar : isa;
    }
    static const Isa chosen = from_environment();
    return chosen;
}

void set_isa_override(std::optional<Isa> isa) {
    g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void jacobi_batch(Isa isa, int n, double a, double b, std::span<const double> x,
                  std::span<double> out) {
#if defined(IQY_HAVE_AVX2)
    if (isa == Isa::avx2 && avx2_available()) {
        detail::jacobi_avx2(n, a, b, x, out);
        return;
    }
#endif
    (void)isa;
    detail::jacobi_scalar(n, a, b, x, out);
}

void jacobi_batch(int n, double a, double b, std::span<const double> x, std::span<double> out) {
    jacobi_batch(active_isa(), n, a, b, x, out);
}

void residual_batch(Isa isa, const ResidualModel& m, std::span<const double> energy,
                    std::span<double> rearranged, std::span<double> raw,
                    std::span<std::uint8_t> sign_ok) {
#if defined(IQY_HAVE_AVX2)
    if (isa == Isa::avx2 && avx2_available()) {
        detail::residual_avx2(m, energy, rearranged, raw, sign_ok);
        return;
    }
#endif
    (void)isa;
    detail::residual_scalar(m, energy, rearranged, raw, sign_ok);
}

void residual_batch(const ResidualModel& m, std::span<const double> energy,
                    std::span<double> rearranged, std::span<double> raw,
                    std::span<std::uint8_t> sign_ok) {
    residual_batch(active_isa(), m, energy, rearranged, raw, sign_ok);
}

void sweep_batch(Isa isa, const SweepTables& tables, std::span<const SweepLane> lanes,
                 std::span<SweepState> out) {
#if defined(IQY_HAVE_AVX2)
    if (isa == Isa::avx2 && avx2_available()) {
        detail::sweep_avx2(tables, lanes, out);
        return;
    }
#endif
    (void)isa;
    detail::sweep_scalar(tables, lanes, out);
}

void sweep_batch(const SweepTables& tables, std::span<const SweepLane> lanes,
                 std::span<SweepState> out) {
    sweep_batch(active_isa(), tables, lanes, out);
}

}  // namespace iqy::kernels
