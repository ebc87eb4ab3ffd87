#include "iqy/dirac_iqy.hpp"

#include "iqy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

namespace iqy::dirac {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxScanPoints = 50'000'000;

void require_kappa(int kappa) {
    if (kappa == 0) {
        throw Error(ErrorCode::ZeroKappa, "kappa must be nonzero");
    }
}

void require_n(int n) {
    if (n < 0) {
        throw Error(ErrorCode::InvalidParameter, "radial number n must be >= 0, got " + std::to_string(n));
    }
}

char orbital_letter(int l) {
    static const char kLetters[] = "spdfghiklmnoqrtuv";
    constexpr int kCount = static_cast<int>(sizeof(kLetters)) - 1;
    return l < kCount ? kLetters[l] : '?';
}

std::string orbital_label(int l, int twice_j) {
    std::string label(1, orbital_letter(l));
    label += std::to_string(twice_j) + "/2";
    return label;
}

double threshold_energy(const PhysicalParams& p, Symmetry symmetry) {
    return symmetry == Symmetry::pspin ? p.mass + p.cps : p.cs - p.mass;
}

}  // namespace

std::string_view to_string(Symmetry s) noexcept {
    return s == Symmetry::spin ? "spin" : "pspin";
}

std::optional<Symmetry> parse_symmetry(std::string_view text) noexcept {
    if (text == "spin") {
        return Symmetry::spin;
    }
    if (text == "pspin") {
        return Symmetry::pspin;
    }
    return std::nullopt;
}

std::string_view to_string(SolveMode m) noexcept {
    return m == SolveMode::strict ? "strict" : "relaxed";
}

void PhysicalParams::validate() const {
    const auto bad = [](const std::string& what) {
        throw Error(ErrorCode::InvalidParameter, what);
    };
    if (!std::isfinite(mass) || !std::isfinite(v0) || !std::isfinite(screening) ||
        !std::isfinite(tensor_h) || !std::isfinite(cs) || !std::isfinite(cps)) {
        bad("physical parameters must be finite");
    }
    if (!(mass > 0.0)) {
        bad("mass must be > 0");
    }
    if (!(v0 >= 0.0)) {
        bad("V0 must be >= 0");
    }
    if (!(screening > 0.0)) {
        bad("screening must be > 0");
    }
    if (!(tensor_h >= 0.0)) {
        bad("tensor strength H must be >= 0");
    }
}

QuantumNumbers quantum_number_map(int kappa) {
    require_kappa(kappa);
    QuantumNumbers q;
    q.kappa = kappa;
    if (kappa < 0) {
        q.l = -kappa - 1;
        q.l_tilde = -kappa;
    } else {
        q.l = kappa;
        q.l_tilde = kappa - 1;
    }
    q.twice_j = 2 * std::abs(kappa) - 1;
    q.label = orbital_label(q.l, q.twice_j);
    return q;
}

QuantumNumbers with_radial(QuantumNumbers q, int n, Symmetry symmetry) {
    require_n(n);
    q.n = n;
    q.n_spect = (symmetry == Symmetry::pspin && q.kappa > 0) ? n - 1 : n;
    const std::string orbital = orbital_label(q.l, q.twice_j);
    q.label = q.n_spect < 0 ? orbital : std::to_string(q.n_spect) + orbital;
    return q;
}

double effective_centrifugal(int kappa, double tensor_h, Symmetry symmetry) {
    const double k = static_cast<double>(kappa);
    return symmetry == Symmetry::pspin ? k + tensor_h : k + tensor_h + 1.0;
}

int doublet_partner(int kappa, Symmetry symmetry) {
    return symmetry == Symmetry::pspin ? 1 - kappa : -1 - kappa;
}

EnergySymbols energy_symbols(const PhysicalParams& p, int kappa, double energy, Symmetry symmetry) {
    EnergySymbols s;
    s.lambda = effective_centrifugal(kappa, p.tensor_h, symmetry);
    if (symmetry == Symmetry::pspin) {
        s.gamma = energy - p.mass - p.cps;
        s.beta_sq = (p.mass + energy) * (p.mass - energy + p.cps);
    } else {
        s.gamma = p.mass + energy - p.cs;
        s.beta_sq = (p.mass - energy) * (p.mass + energy - p.cs);
    }
    return s;
}

namespace {

// Both symmetries reduce to the same NU form once (gamma, beta^2, Lambda or eta) are fixed.
nu::NUCoefficients coefficients_from_symbols(const PhysicalParams& p, const EnergySymbols& s) {
    const double b2 = s.beta_sq / (4.0 * p.screening * p.screening);
    nu::NUCoefficients c;
    c.a1 = 1.0;
    c.a2 = 1.0;
    c.a3 = 1.0;
    c.xi1 = b2 - s.gamma * p.v0;
    c.xi2 = -s.lambda * (s.lambda - 1.0) + 2.0 * b2;
    c.xi3 = b2;
    return c;
}

}  // namespace

nu::NUCoefficients pspin_nu_coefficients(const PhysicalParams& p, int kappa, double energy) {
    return coefficients_from_symbols(p, energy_symbols(p, kappa, energy, Symmetry::pspin));
}

nu::NUCoefficients spin_nu_coefficients(const PhysicalParams& p, int kappa, double energy) {
    return coefficients_from_symbols(p, energy_symbols(p, kappa, energy, Symmetry::spin));
}

nu::NUCoefficients nu_coefficients(const PhysicalParams& p, int kappa, double energy,
                                   Symmetry symmetry) {
    return symmetry == Symmetry::pspin ? pspin_nu_coefficients(p, kappa, energy)
                                       : spin_nu_coefficients(p, kappa, energy);
}

kernels::ResidualModel residual_model(const PhysicalParams& p, int n, int kappa, Symmetry symmetry,
                                      double fault_offset) {
    kernels::ResidualModel m;
    if (symmetry == Symmetry::pspin) {
        m.gamma0 = -p.mass - p.cps;
        m.u0 = p.mass;
        m.u1 = 1.0;
        m.w0 = p.mass + p.cps;
        m.w1 = -1.0;
    } else {
        m.gamma0 = p.mass - p.cs;
        m.u0 = p.mass;
        m.u1 = -1.0;
        m.w0 = p.mass - p.cs;
        m.w1 = 1.0;
    }
    const double shifted = effective_centrifugal(kappa, p.tensor_h, symmetry) - 0.5;
    m.v0 = p.v0;
    m.four_alpha_sq = 4.0 * p.screening * p.screening;
    m.centrifugal = shifted * shifted;
    m.n_half = static_cast<double>(n) + 0.5;
    m.raw_offset = fault_offset;
    return m;
}

double energy_residual_raw(const PhysicalParams& p, int n, int kappa, double energy,
                           Symmetry symmetry) {
    require_kappa(kappa);
    require_n(n);
    const kernels::ResidualModel m = residual_model(p, n, kappa, symmetry);
    const double gv = (energy + m.gamma0) * m.v0;
    if (m.centrifugal - gv < -kSlack) {
        throw Error(ErrorCode::NegativeRadicand,
                    "(Lambda - 1/2)^2 - gamma V0 < 0 at E = " + std::to_string(energy));
    }
    const kernels::ResidualPoint r = kernels::residual_point(m, energy);
    if (r.beta_sq < -kSlack) {
        throw Error(ErrorCode::NegativeRadicand,
                    "beta^2 < 0 at E = " + std::to_string(energy));
    }
    return r.raw;
}

RearrangedResidual energy_residual_rearranged(const PhysicalParams& p, int n, int kappa,
                                              double energy, Symmetry symmetry) {
    require_kappa(kappa);
    require_n(n);
    const kernels::ResidualModel m = residual_model(p, n, kappa, symmetry);
    const double inner = m.centrifugal - (energy + m.gamma0) * m.v0;
    if (inner < -kSlack) {
        throw Error(ErrorCode::NegativeRadicand,
                    "(Lambda - 1/2)^2 - gamma V0 < 0 at E = " + std::to_string(energy));
    }
    const double big_p = m.n_half + std::sqrt(std::max(inner, 0.0));
    if (!(big_p > 0.0)) {
        throw Error(ErrorCode::DegenerateP, "P <= 0");
    }
    const kernels::ResidualPoint r = kernels::residual_point(m, energy);
    return {r.rearranged, r.sign_ok};
}

EnergyWindow strict_domain(const PhysicalParams& p, Symmetry symmetry) {
    if (symmetry == Symmetry::pspin) {
        return {-p.mass, p.mass + p.cps};
    }
    return {p.cs - p.mass, p.mass};
}

EnergyWindow default_window(const PhysicalParams& p, Symmetry symmetry, double margin) {
    const EnergyWindow d = strict_domain(p, symmetry);
    return {d.lo + margin, d.hi - margin};
}

namespace {

struct Sample {
    double e;
    double f;
};

// Bisection on the rearranged residual. Returns NaN when the bracket straddles
// an undefined region instead of a root.
double bisect(const kernels::ResidualModel& m, Sample lo, Sample hi, double tol) {
    while (hi.e - lo.e > tol) {
        const double mid = lo.e + 0.5 * (hi.e - lo.e);
        if (!(mid > lo.e && mid < hi.e)) {
            break;
        }
        const double fm = kernels::residual_point(m, mid).rearranged;
        if (std::isnan(fm)) {
            return kNaN;
        }
        if (fm == 0.0) {
            return mid;
        }
        if (std::signbit(fm) == std::signbit(lo.f)) {
            lo = {mid, fm};
        } else {
            hi = {mid, fm};
        }
    }
    return std::fabs(lo.f) <= std::fabs(hi.f) ? lo.e : hi.e;
}

EnergySolution make_solution(const PhysicalParams& p, const kernels::ResidualModel& m, int n,
                             int kappa, Symmetry symmetry, double e) {
    const kernels::ResidualPoint r = kernels::residual_point(m, e);
    EnergySolution s;
    s.energy = e;
    s.symmetry = symmetry;
    s.n = n;
    s.kappa = kappa;
    s.tensor_h = p.tensor_h;
    s.residual = r.rearranged;
    s.raw_residual = r.raw;
    s.beta_sq = r.beta_sq;
    s.lambda_or_eta = effective_centrifugal(kappa, p.tensor_h, symmetry);
    s.sign_ok = r.sign_ok;
    s.strict_valid = r.beta_sq > 0.0 && r.sign_ok;
    return s;
}

}  // namespace

std::vector<EnergySolution> solve_energies(const PhysicalParams& p, int n, int kappa,
                                           Symmetry symmetry, const SolveOptions& options) {
    p.validate();
    require_kappa(kappa);
    require_n(n);
    if (!(options.tol > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "tolerance must be > 0");
    }
    EnergyWindow w = options.window.value_or(default_window(p, symmetry));
    if (options.mode == SolveMode::strict) {
        const EnergyWindow d = strict_domain(p, symmetry);
        w.lo = std::max(w.lo, d.lo);
        w.hi = std::min(w.hi, d.hi);
    }
    if (!(w.lo < w.hi)) {
        throw Error(ErrorCode::EmptyWindow, "energy window [" + std::to_string(w.lo) + ", " +
                                                std::to_string(w.hi) + "] is empty");
    }
    const double step = options.scan_step.value_or(w.width() / 2000.0);
    if (!(step > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "scan step must be > 0");
    }
    const double intervals = std::ceil(w.width() / step);
    if (!(intervals < static_cast<double>(kMaxScanPoints))) {
        throw Error(ErrorCode::InvalidParameter, "scan step too small for the window");
    }
    const std::size_t count = static_cast<std::size_t>(intervals) + 1;

    std::vector<double> grid(count);
    const double spacing = w.width() / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = w.lo + spacing * static_cast<double>(i);
    }
    grid.back() = w.hi;

    const kernels::ResidualModel m = residual_model(p, n, kappa, symmetry, options.fault_offset);
    std::vector<double> rearranged(count);
    std::vector<double> raw(count);
    std::vector<std::uint8_t> sign_ok(count);
    kernels::residual_batch(m, grid, rearranged, raw, sign_ok);

    std::vector<EnergySolution> roots;
    for (std::size_t i = 0; i < count; ++i) {
        const double f = rearranged[i];
        if (std::isnan(f)) {
            continue;
        }
        if (f == 0.0) {
            roots.push_back(make_solution(p, m, n, kappa, symmetry, grid[i]));
            continue;
        }
        if (i + 1 >= count) {
            continue;
        }
        const double g = rearranged[i + 1];
        if (std::isnan(g) || g == 0.0 || std::signbit(f) == std::signbit(g)) {
            continue;
        }
        const double e = bisect(m, {grid[i], f}, {grid[i + 1], g}, options.tol);
        if (!std::isnan(e)) {
            roots.push_back(make_solution(p, m, n, kappa, symmetry, e));
        }
    }

    if (options.mode == SolveMode::strict) {
        std::erase_if(roots, [](const EnergySolution& s) { return !s.strict_valid; });
    }
    std::sort(roots.begin(), roots.end(),
              [](const EnergySolution& a, const EnergySolution& b) { return a.energy < b.energy; });
    return roots;
}

std::optional<EnergySolution> select_reported(const std::vector<EnergySolution>& roots,
                                              const PhysicalParams& p, Symmetry symmetry) {
    const EnergySolution* pick = nullptr;
    for (const EnergySolution& s : roots) {
        if (!s.strict_valid) {
            continue;
        }
        if (symmetry == Symmetry::pspin && !(s.energy < 0.0)) {
            continue;
        }
        pick = &s;
        break;
    }
    if (pick == nullptr) {
        const double threshold = threshold_energy(p, symmetry);
        for (const EnergySolution& s : roots) {
            if (pick == nullptr ||
                std::fabs(s.energy - threshold) < std::fabs(pick->energy - threshold)) {
                pick = &s;
            }
        }
    }
    if (pick == nullptr) {
        return std::nullopt;
    }
    return *pick;
}

CentrifugalApproximation greene_aldrich(double r, double screening) {
    if (!(r > 0.0)) {
        throw Error(ErrorCode::NonpositiveR, "r must be > 0");
    }
    if (!(screening > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "screening must be > 0");
    }
    const double x = 2.0 * screening * r;
    const double s = std::exp(-x);
    const double one_minus_s = -std::expm1(-x);
    CentrifugalApproximation g;
    g.approx = 4.0 * screening * screening * s / (one_minus_s * one_minus_s);
    g.exact = 1.0 / (r * r);
    g.rel_error = std::fabs(g.approx - g.exact) / g.exact;
    return g;
}

namespace {

std::optional<EnergySolution> reported_or_none(PhysicalParams p, double h, int n, int kappa,
                                               Symmetry symmetry, const SolveOptions& options) {
    p.tensor_h = h;
    try {
        return select_reported(solve_energies(p, n, kappa, symmetry, options), p, symmetry);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::EmptyWindow || e.code() == ErrorCode::NoRoot) {
            return std::nullopt;
        }
        throw;
    }
}

int sign_of(double x) {
    return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0);
}

}  // namespace

std::vector<DoubletRow> doublet_splitting_report(const PhysicalParams& p, Symmetry symmetry,
                                                 const std::vector<std::pair<int, int>>& pairs,
                                                 const std::vector<double>& h_values,
                                                 const SolveOptions& options) {
    std::vector<DoubletRow> rows;
    for (const auto& [n, kappa] : pairs) {
        const int partner = doublet_partner(kappa, symmetry);
        const auto base = reported_or_none(p, 0.0, n, kappa, symmetry, options);
        const auto base_partner = reported_or_none(p, 0.0, n, partner, symmetry, options);
        for (double h : h_values) {
            DoubletRow row;
            row.symmetry = symmetry;
            row.n = n;
            row.kappa = kappa;
            row.partner = partner;
            row.tensor_h = h;
            row.member = h == 0.0 ? base : reported_or_none(p, h, n, kappa, symmetry, options);
            row.partner_member =
                h == 0.0 ? base_partner : reported_or_none(p, h, n, partner, symmetry, options);
            if (row.member && row.partner_member) {
                row.split = row.member->energy - row.partner_member->energy;
            }
            if (h != 0.0 && row.member && base) {
                row.kappa_shift_sign = sign_of(row.member->energy - base->energy);
            }
            if (h != 0.0 && row.partner_member && base_partner) {
                row.partner_shift_sign = sign_of(row.partner_member->energy - base_partner->energy);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace iqy::dirac
