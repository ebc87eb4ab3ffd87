// Compiled with -mavx2 -mno-fma; only reached after a runtime CPU check.
#include "iqy/kernels.hpp"
#include "iqy/special_fn.hpp"

#include <immintrin.h>

#include <array>
#include <cmath>
#include <limits>

namespace iqy::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;
constexpr double kSlack = 1e-12;
constexpr double kBig = 1e64;
constexpr double kSmall = 1e-64;

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

}  // namespace

void jacobi_avx2(int n, double a, double b, std::span<const double> x, std::span<double> out) {
    special::check_jacobi_query(n, a, b);
    const std::size_t full = x.size() / kLanes * kLanes;
    const __m256d c0 = _mm256_set1_pd(0.5 * (a - b));
    const __m256d c1 = _mm256_set1_pd(0.5 * (a + b + 2.0));
    for (std::size_t i = 0; i < full; i += kLanes) {
        if (n == 0) {
            _mm256_storeu_pd(&out[i], _mm256_set1_pd(1.0));
            continue;
        }
        const __m256d xv = _mm256_loadu_pd(&x[i]);
        __m256d p0 = _mm256_set1_pd(1.0);
        __m256d p1 = _mm256_add_pd(c0, _mm256_mul_pd(c1, xv));
        for (int k = 2; k <= n; ++k) {
            const special::JacobiStep s = special::jacobi_step(k, a, b);
            const __m256d lead = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(s.x_coeff), xv),
                                               _mm256_set1_pd(s.constant));
            const __m256d p2 = _mm256_sub_pd(_mm256_mul_pd(lead, p1),
                                             _mm256_mul_pd(_mm256_set1_pd(s.previous), p0));
            p0 = p1;
            p1 = p2;
        }
        _mm256_storeu_pd(&out[i], p1);
    }
    if (full < x.size()) {
        jacobi_scalar(n, a, b, x.subspan(full), out.subspan(full));
    }
}

void residual_avx2(const ResidualModel& m, std::span<const double> energy,
                   std::span<double> rearranged, std::span<double> raw,
                   std::span<std::uint8_t> sign_ok) {
    const std::size_t full = energy.size() / kLanes * kLanes;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
    const __m256d slack = _mm256_set1_pd(-kSlack);
    const __m256d gamma0 = _mm256_set1_pd(m.gamma0);
    const __m256d v0 = _mm256_set1_pd(m.v0);
    const __m256d offset = _mm256_set1_pd(m.raw_offset);
    const __m256d u0 = _mm256_set1_pd(m.u0);
    const __m256d u1 = _mm256_set1_pd(m.u1);
    const __m256d w0 = _mm256_set1_pd(m.w0);
    const __m256d w1 = _mm256_set1_pd(m.w1);
    const __m256d centrifugal = _mm256_set1_pd(m.centrifugal);
    const __m256d n_half = _mm256_set1_pd(m.n_half);
    const __m256d fa2 = _mm256_set1_pd(m.four_alpha_sq);
    const __m256d two = _mm256_set1_pd(2.0);

    for (std::size_t i = 0; i < full; i += kLanes) {
        const __m256d e = _mm256_loadu_pd(&energy[i]);
        const __m256d gamma = _mm256_add_pd(e, gamma0);
        const __m256d gv = _mm256_mul_pd(gamma, v0);
        const __m256d gvf = _mm256_add_pd(gv, offset);
        const __m256d beta_sq = _mm256_mul_pd(_mm256_add_pd(u0, _mm256_mul_pd(u1, e)),
                                              _mm256_add_pd(w0, _mm256_mul_pd(w1, e)));
        const __m256d inner = _mm256_sub_pd(centrifugal, gv);
        const __m256d inner_bad = _mm256_cmp_pd(inner, slack, _CMP_LT_OQ);
        const __m256d inner_neg = _mm256_cmp_pd(inner, zero, _CMP_LT_OQ);
        const __m256d p =
            _mm256_add_pd(n_half, _mm256_sqrt_pd(_mm256_blendv_pd(inner, zero, inner_neg)));
        const __m256d num = _mm256_add_pd(gvf, _mm256_mul_pd(p, p));
        const __m256d t = _mm256_div_pd(num, _mm256_mul_pd(two, p));
        __m256d re = _mm256_sub_pd(beta_sq, _mm256_mul_pd(fa2, _mm256_mul_pd(t, t)));
        re = _mm256_blendv_pd(re, nan, inner_bad);

        const __m256d beta_neg = _mm256_cmp_pd(beta_sq, zero, _CMP_LT_OQ);
        const __m256d beta_bad = _mm256_or_pd(_mm256_cmp_pd(beta_sq, slack, _CMP_LT_OQ), inner_bad);
        const __m256d b2 = _mm256_div_pd(_mm256_blendv_pd(beta_sq, zero, beta_neg), fa2);
        const __m256d bb = _mm256_sqrt_pd(b2);
        const __m256d pb = _mm256_add_pd(p, bb);
        __m256d rw = _mm256_sub_pd(_mm256_mul_pd(pb, pb), _mm256_sub_pd(b2, gvf));
        rw = _mm256_blendv_pd(rw, nan, beta_bad);

        const __m256d ok = _mm256_andnot_pd(inner_bad, _mm256_cmp_pd(num, zero, _CMP_LE_OQ));
        const int mask = _mm256_movemask_pd(ok);

        _mm256_storeu_pd(&rearranged[i], re);
        _mm256_storeu_pd(&raw[i], rw);
        for (std::size_t l = 0; l < kLanes; ++l) {
            sign_ok[i + l] = static_cast<std::uint8_t>((mask >> l) & 1);
        }
    }
    if (full < energy.size()) {
        residual_scalar(m, energy.subspan(full), rearranged.subspan(full), raw.subspan(full),
                        sign_ok.subspan(full));
    }
}

namespace {

// Coefficient k of lane l lives at g[kLanes * k + l].
struct LaneBlock {
    std::vector<double> g;
};

inline __m256d q_at(const SweepTables& t, const LaneBlock& b, std::size_t j) {
    __m256d q = _mm256_loadu_pd(&b.g[0]);
    for (std::size_t k = 0; k < t.terms.size(); ++k) {
        const __m256d gk = _mm256_loadu_pd(&b.g[kLanes * (k + 1)]);
        q = _mm256_add_pd(q, _mm256_mul_pd(gk, _mm256_set1_pd(t.terms[k][j])));
    }
    return q;
}

}  // namespace

void sweep_avx2(const SweepTables& tables, std::span<const SweepLane> lanes,
                std::span<SweepState> out) {
    const std::size_t n_lanes = lanes.size();
    const std::size_t n_terms = tables.terms.size() + 1;
    const __m256d h = _mm256_set1_pd(tables.h);
    const __m256d hh = _mm256_set1_pd(0.5 * tables.h);
    const __m256d h6 = _mm256_set1_pd(tables.h / 6.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d big = _mm256_set1_pd(kBig);
    const __m256d small = _mm256_set1_pd(kSmall);
    const __m256d log_big = _mm256_set1_pd(64.0 * std::log(10.0));

    for (std::size_t base = 0; base < n_lanes; base += kLanes) {
        // Pad a short final block with copies of its last lane.
        std::array<std::size_t, kLanes> idx{};
        for (std::size_t l = 0; l < kLanes; ++l) {
            idx[l] = std::min(base + l, n_lanes - 1);
        }
        LaneBlock block;
        block.g.resize(kLanes * n_terms);
        for (std::size_t k = 0; k < n_terms; ++k) {
            for (std::size_t l = 0; l < kLanes; ++l) {
                block.g[kLanes * k + l] = lanes[idx[l]].g[k];
            }
        }
        __m256d y = _mm256_setr_pd(lanes[idx[0]].y0, lanes[idx[1]].y0, lanes[idx[2]].y0,
                                   lanes[idx[3]].y0);
        __m256d z = _mm256_setr_pd(lanes[idx[0]].dy0, lanes[idx[1]].dy0, lanes[idx[2]].dy0,
                                   lanes[idx[3]].dy0);
        __m256d log_scale = zero;
        __m256d nodes = zero;

        for (int i = 0; i < tables.steps; ++i) {
            const std::size_t j = 2 * static_cast<std::size_t>(i);
            const __m256d q0 = q_at(tables, block, j);
            const __m256d qm = q_at(tables, block, j + 1);
            const __m256d q1 = q_at(tables, block, j + 2);

            const __m256d k1y = z;
            const __m256d k1z = _mm256_mul_pd(q0, y);
            const __m256d y2 = _mm256_add_pd(y, _mm256_mul_pd(hh, k1y));
            const __m256d z2 = _mm256_add_pd(z, _mm256_mul_pd(hh, k1z));
            const __m256d k2y = z2;
            const __m256d k2z = _mm256_mul_pd(qm, y2);
            const __m256d y3 = _mm256_add_pd(y, _mm256_mul_pd(hh, k2y));
            const __m256d z3 = _mm256_add_pd(z, _mm256_mul_pd(hh, k2z));
            const __m256d k3y = z3;
            const __m256d k3z = _mm256_mul_pd(qm, y3);
            const __m256d y4 = _mm256_add_pd(y, _mm256_mul_pd(h, k3y));
            const __m256d z4 = _mm256_add_pd(z, _mm256_mul_pd(h, k3z));
            const __m256d k4y = z4;
            const __m256d k4z = _mm256_mul_pd(q1, y4);

            const __m256d sum_y = _mm256_add_pd(
                _mm256_add_pd(_mm256_add_pd(k1y, _mm256_mul_pd(two, k2y)), _mm256_mul_pd(two, k3y)),
                k4y);
            const __m256d sum_z = _mm256_add_pd(
                _mm256_add_pd(_mm256_add_pd(k1z, _mm256_mul_pd(two, k2z)), _mm256_mul_pd(two, k3z)),
                k4z);
            const __m256d y_new = _mm256_add_pd(y, _mm256_mul_pd(h6, sum_y));
            const __m256d z_new = _mm256_add_pd(z, _mm256_mul_pd(h6, sum_z));

            const __m256d crossed = _mm256_cmp_pd(_mm256_mul_pd(y, y_new), zero, _CMP_LT_OQ);
            nodes = _mm256_add_pd(nodes, _mm256_and_pd(crossed, one));
            y = y_new;
            z = z_new;

            const __m256d mag = abs_pd(y);
            const __m256d too_big = _mm256_cmp_pd(mag, big, _CMP_GT_OQ);
            const __m256d too_small =
                _mm256_and_pd(_mm256_cmp_pd(mag, small, _CMP_LT_OQ),
                              _mm256_cmp_pd(abs_pd(z), small, _CMP_LT_OQ));
            __m256d factor = _mm256_blendv_pd(one, small, too_big);
            factor = _mm256_blendv_pd(factor, big, _mm256_andnot_pd(too_big, too_small));
            const __m256d any = _mm256_or_pd(too_big, too_small);
            if (_mm256_movemask_pd(any) != 0) {
                y = _mm256_blendv_pd(y, _mm256_mul_pd(y, factor), any);
                z = _mm256_blendv_pd(z, _mm256_mul_pd(z, factor), any);
                __m256d shift = _mm256_and_pd(too_big, log_big);
                shift = _mm256_blendv_pd(shift, _mm256_sub_pd(zero, log_big),
                                         _mm256_andnot_pd(too_big, too_small));
                log_scale = _mm256_blendv_pd(log_scale, _mm256_add_pd(log_scale, shift), any);
            }
        }

        alignas(32) std::array<double, kLanes> ys{};
        alignas(32) std::array<double, kLanes> zs{};
        alignas(32) std::array<double, kLanes> ls{};
        alignas(32) std::array<double, kLanes> ns{};
        _mm256_store_pd(ys.data(), y);
        _mm256_store_pd(zs.data(), z);
        _mm256_store_pd(ls.data(), log_scale);
        _mm256_store_pd(ns.data(), nodes);
        for (std::size_t l = 0; l < kLanes && base + l < n_lanes; ++l) {
            out[base + l] = SweepState{ys[l], zs[l], ls[l], static_cast<int>(ns[l])};
        }
    }
}

}  // namespace iqy::kernels::detail
