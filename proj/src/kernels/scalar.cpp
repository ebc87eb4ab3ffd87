#include "iqy/kernels.hpp"
#include "iqy/special_fn.hpp"

#include <cmath>
#include <limits>

namespace iqy::kernels {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSlack = 1e-12;
constexpr double kBig = 1e64;
constexpr double kSmall = 1e-64;
const double kLogBig = 64.0 * std::log(10.0);

}  // namespace

ResidualPoint residual_point(const ResidualModel& m, double e) {
    const double gamma = e + m.gamma0;
    const double gv = gamma * m.v0;
    const double gvf = gv + m.raw_offset;
    const double beta_sq = (m.u0 + m.u1 * e) * (m.w0 + m.w1 * e);
    const double inner = m.centrifugal - gv;
    if (inner < -kSlack) {
        return {kNaN, kNaN, beta_sq, false};
    }
    const double p = m.n_half + std::sqrt(inner < 0.0 ? 0.0 : inner);
    const double num = gvf + p * p;
    const double t = num / (2.0 * p);
    const double rearranged = beta_sq - m.four_alpha_sq * (t * t);
    double raw = kNaN;
    if (!(beta_sq < -kSlack)) {
        const double b2 = (beta_sq < 0.0 ? 0.0 : beta_sq) / m.four_alpha_sq;
        const double b = std::sqrt(b2);
        raw = (p + b) * (p + b) - (b2 - gvf);
    }
    return {rearranged, raw, beta_sq, num <= 0.0};
}

namespace detail {

void jacobi_scalar(int n, double a, double b, std::span<const double> x, std::span<double> out) {
    special::check_jacobi_query(n, a, b);
    const double c0 = 0.5 * (a - b);
    const double c1 = 0.5 * (a + b + 2.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (n == 0) {
            out[i] = 1.0;
            continue;
        }
        double p0 = 1.0;
        double p1 = c0 + c1 * x[i];
        for (int k = 2; k <= n; ++k) {
            const special::JacobiStep s = special::jacobi_step(k, a, b);
            const double p2 = (s.x_coeff * x[i] + s.constant) * p1 - s.previous * p0;
            p0 = p1;
            p1 = p2;
        }
        out[i] = p1;
    }
}

void residual_scalar(const ResidualModel& m, std::span<const double> energy,
                     std::span<double> rearranged, std::span<double> raw,
                     std::span<std::uint8_t> sign_ok) {
    for (std::size_t i = 0; i < energy.size(); ++i) {
        const ResidualPoint p = residual_point(m, energy[i]);
        rearranged[i] = p.rearranged;
        raw[i] = p.raw;
        sign_ok[i] = p.sign_ok ? 1 : 0;
    }
}

namespace {

inline double q_at(const SweepTables& t, const std::vector<double>& g, std::size_t j) {
    double q = g[0];
    for (std::size_t k = 0; k < t.terms.size(); ++k) {
        q = q + g[k + 1] * t.terms[k][j];
    }
    return q;
}

// One RK4 step from half-step index 2*i to 2*i+2.
inline void rk4_step(const SweepTables& t, const std::vector<double>& g, int i, SweepState& s) {
    const double h = t.h;
    const double hh = 0.5 * h;
    const double h6 = h / 6.0;
    const std::size_t j = 2 * static_cast<std::size_t>(i);
    const double q0 = q_at(t, g, j);
    const double qm = q_at(t, g, j + 1);
    const double q1 = q_at(t, g, j + 2);

    const double k1y = s.dy;
    const double k1z = q0 * s.y;
    const double y2 = s.y + hh * k1y;
    const double z2 = s.dy + hh * k1z;
    const double k2y = z2;
    const double k2z = qm * y2;
    const double y3 = s.y + hh * k2y;
    const double z3 = s.dy + hh * k2z;
    const double k3y = z3;
    const double k3z = qm * y3;
    const double y4 = s.y + h * k3y;
    const double z4 = s.dy + h * k3z;
    const double k4y = z4;
    const double k4z = q1 * y4;

    const double y_new = s.y + h6 * (((k1y + 2.0 * k2y) + 2.0 * k3y) + k4y);
    const double z_new = s.dy + h6 * (((k1z + 2.0 * k2z) + 2.0 * k3z) + k4z);
    if (s.y * y_new < 0.0) {
        s.nodes += 1;
    }
    s.y = y_new;
    s.dy = z_new;
    const double mag = std::fabs(s.y);
    if (mag > kBig) {
        s.y = s.y * kSmall;
        s.dy = s.dy * kSmall;
        s.log_scale = s.log_scale + kLogBig;
    } else if (mag < kSmall && std::fabs(s.dy) < kSmall) {
        s.y = s.y * kBig;
        s.dy = s.dy * kBig;
        s.log_scale = s.log_scale - kLogBig;
    }
}

}  // namespace

void sweep_scalar(const SweepTables& tables, std::span<const SweepLane> lanes,
                  std::span<SweepState> out) {
    for (std::size_t l = 0; l < lanes.size(); ++l) {
        SweepState s{lanes[l].y0, lanes[l].dy0, 0.0, 0};
        for (int i = 0; i < tables.steps; ++i) {
            rk4_step(tables, lanes[l].g, i, s);
        }
        out[l] = s;
    }
}

}  // namespace detail

std::vector<SweepState> sweep_record(const SweepTables& tables, const SweepLane& lane) {
    std::vector<SweepState> samples;
    samples.reserve(static_cast<std::size_t>(tables.steps) + 1);
    SweepState s{lane.y0, lane.dy0, 0.0, 0};
    samples.push_back(s);
    for (int i = 0; i < tables.steps; ++i) {
        detail::rk4_step(tables, lane.g, i, s);
        samples.push_back(s);
    }
    return samples;
}

}  // namespace iqy::kernels
