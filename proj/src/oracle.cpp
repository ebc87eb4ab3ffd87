#include "iqy/oracle.hpp"

#include "iqy/errors.hpp"
#include "iqy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace iqy::oracle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Legs {
    kernels::SweepTables outward;
    kernels::SweepTables inward;
    double x0 = 0.0;
    double x1 = 0.0;
    double r_match = 0.0;
};

void check_family(const RadialFamily& f) {
    if (!(f.r_min > 0.0) || !(f.r_max > f.r_min) || !(f.step > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "radial family needs 0 < r_min < r_max and step > 0");
    }
}

kernels::SweepTables outward_table(const RadialFamily& f, double r_end, double& x0, double& x1) {
    x0 = std::log(f.r_min);
    x1 = std::log(r_end);
    const double dx_target = std::min(f.step / r_end, 0.01);
    const int steps = std::max(1, static_cast<int>(std::ceil((x1 - x0) / dx_target)));
    kernels::SweepTables t;
    t.h = (x1 - x0) / steps;
    t.steps = steps;
    const std::size_t points = 2 * static_cast<std::size_t>(steps) + 1;
    t.terms.assign(f.shapes.size() + 1, std::vector<double>(points));
    for (std::size_t j = 0; j < points; ++j) {
        const double x = x0 + 0.5 * t.h * static_cast<double>(j);
        const double r = std::exp(x);
        const double r2 = r * r;
        t.terms[0][j] = r2;
        for (std::size_t k = 0; k < f.shapes.size(); ++k) {
            t.terms[k + 1][j] = r2 * f.shapes[k].f(r);
        }
    }
    return t;
}

kernels::SweepTables inward_table(const RadialFamily& f, double r_end) {
    const int steps = std::max(1, static_cast<int>(std::ceil((f.r_max - r_end) / f.step)));
    kernels::SweepTables t;
    t.h = -(f.r_max - r_end) / steps;
    t.steps = steps;
    const std::size_t points = 2 * static_cast<std::size_t>(steps) + 1;
    t.terms.assign(f.shapes.size(), std::vector<double>(points));
    for (std::size_t j = 0; j < points; ++j) {
        const double r = f.r_max + 0.5 * t.h * static_cast<double>(j);
        for (std::size_t k = 0; k < f.shapes.size(); ++k) {
            t.terms[k][j] = f.shapes[k].f(r);
        }
    }
    return t;
}

Legs build_legs(const RadialFamily& f, double r_match) {
    check_family(f);
    if (!(r_match > f.r_min) || !(r_match < f.r_max)) {
        throw Error(ErrorCode::InvalidParameter, "match point outside (r_min, r_max)");
    }
    Legs legs;
    legs.r_match = r_match;
    legs.outward = outward_table(f, r_match, legs.x0, legs.x1);
    legs.inward = inward_table(f, r_match);
    return legs;
}

// Lanes for one trial energy; false when a seed is undefined.
bool make_lanes(const RadialFamily& f, double energy, kernels::SweepLane& out,
                kernels::SweepLane& in) {
    const std::vector<double> g = f.coefficients(energy);
    const double c0 = f.origin_strength(energy);
    if (!(g[0] > 0.0) || !(c0 >= -0.25)) {
        return false;
    }
    out.g.assign(1, 0.25);
    out.g.insert(out.g.end(), g.begin(), g.end());
    out.y0 = 1.0;
    out.dy0 = std::sqrt(0.25 + c0);
    in.g = g;
    in.y0 = 1.0;
    in.dy0 = -std::sqrt(g[0]);
    return true;
}

MatchState glue(const Legs& legs, const kernels::SweepState& o, const kernels::SweepState& i) {
    const double rm = legs.r_match;
    const double half = 0.5 * legs.x1;
    const double u_o = std::exp(half) * o.y;
    const double du_o = std::exp(-half) * (0.5 * o.y + o.dy);
    const double u_i = i.y;
    const double du_i = i.dy;
    MatchState m;
    m.wronskian = (du_o * u_i - u_o * du_i) * rm /
                  (std::hypot(u_o, du_o * rm) * std::hypot(u_i, du_i * rm));
    m.log_derivative = du_o / u_o - du_i / u_i;
    m.nodes = o.nodes + i.nodes;
    m.defined = std::isfinite(m.wronskian);
    return m;
}

std::vector<MatchState> evaluate(const RadialFamily& f, const Legs& legs,
                                 const std::vector<double>& energies) {
    std::vector<kernels::SweepLane> outs;
    std::vector<kernels::SweepLane> ins;
    std::vector<std::size_t> slot;
    for (std::size_t e = 0; e < energies.size(); ++e) {
        kernels::SweepLane o;
        kernels::SweepLane i;
        if (make_lanes(f, energies[e], o, i)) {
            outs.push_back(std::move(o));
            ins.push_back(std::move(i));
            slot.push_back(e);
        }
    }
    std::vector<kernels::SweepState> so(outs.size());
    std::vector<kernels::SweepState> si(ins.size());
    kernels::sweep_batch(legs.outward, outs, so);
    kernels::sweep_batch(legs.inward, ins, si);
    std::vector<MatchState> result(energies.size());
    for (std::size_t k = 0; k < slot.size(); ++k) {
        result[slot[k]] = glue(legs, so[k], si[k]);
    }
    return result;
}

MatchState evaluate_one(const RadialFamily& f, const Legs& legs, double energy) {
    return evaluate(f, legs, std::vector<double>{energy})[0];
}

Eigenvalue refine(const RadialFamily& f, const Legs& legs, double lo, MatchState flo, double hi,
                  double tol) {
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        const MatchState m = evaluate_one(f, legs, mid);
        if (!m.defined) {
            break;
        }
        if (m.wronskian == 0.0) {
            lo = hi = mid;
            break;
        }
        if (std::signbit(m.wronskian) == std::signbit(flo.wronskian)) {
            lo = mid;
            flo = m;
        } else {
            hi = mid;
        }
    }
    const double e = lo + 0.5 * (hi - lo);
    const MatchState m = evaluate_one(f, legs, e);
    return {e, m.nodes, m.log_derivative, legs.r_match};
}

}  // namespace

double RadialFamily::potential(double r, double energy) const {
    const std::vector<double> g = coefficients(energy);
    double w = g[0];
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        w += g[k + 1] * shapes[k].f(r);
    }
    return w;
}

double RadialFamily::origin_strength(double energy) const {
    const std::vector<double> g = coefficients(energy);
    double c0 = 0.0;
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        c0 += g[k + 1] * shapes[k].origin_weight;
    }
    return c0;
}

RadialFamily iqy_family(const dirac::PhysicalParams& p, int kappa, dirac::Symmetry symmetry,
                        Centrifugal centrifugal, std::optional<double> step) {
    p.validate();
    if (kappa == 0) {
        throw Error(ErrorCode::ZeroKappa, "kappa must be nonzero");
    }
    const double alpha = p.screening;
    const double k = kappa;
    const double h = p.tensor_h;
    const bool pspin = symmetry == dirac::Symmetry::pspin;
    // Barrier weight with the tensor term expanded as in the decoupled equations.
    const double barrier = pspin ? k * (k - 1.0) + 2.0 * k * h - h + h * h
                                 : k * (k + 1.0) + 2.0 * k * h + h + h * h;

    RadialFamily f;
    if (centrifugal == Centrifugal::approximated) {
        const double fa2 = 4.0 * alpha * alpha;
        f.shapes.push_back({[alpha, fa2](double r) {
                                const double s = std::exp(-2.0 * alpha * r);
                                const double d = -std::expm1(-2.0 * alpha * r);
                                return fa2 * s / (d * d);
                            },
                            1.0});
        f.shapes.push_back({[alpha, fa2](double r) {
                                const double s = std::exp(-2.0 * alpha * r);
                                const double d = -std::expm1(-2.0 * alpha * r);
                                return fa2 * s * s / (d * d);
                            },
                            1.0});
    } else {
        f.shapes.push_back({[](double r) { return 1.0 / (r * r); }, 1.0});
        f.shapes.push_back({[alpha](double r) { return std::exp(-2.0 * alpha * r) / (r * r); }, 1.0});
    }
    const double mass = p.mass;
    const double v0 = p.v0;
    const double cps = p.cps;
    const double cs = p.cs;
    f.coefficients = [=](double e) {
        double gamma;
        double beta_sq;
        if (pspin) {
            gamma = e - mass - cps;
            beta_sq = (mass + e) * (mass - e + cps);
        } else {
            gamma = mass + e - cs;
            beta_sq = (mass - e) * (mass + e - cs);
        }
        return std::vector<double>{beta_sq, barrier, -v0 * gamma};
    };
    f.r_max = 14.0 / alpha;
    f.step = step.value_or(1e-3 / alpha);
    f.fallback_match = 1.0 / alpha;
    f.description = std::string(dirac::to_string(symmetry)) + " IQY, " +
                    (centrifugal == Centrifugal::approximated ? "approximated" : "exact") +
                    " centrifugal, kappa " + std::to_string(kappa);
    return f;
}

SampledSolution integrate_outward(const RadialFamily& family, double energy, double r_end) {
    check_family(family);
    if (!(r_end > family.r_min)) {
        throw Error(ErrorCode::InvalidParameter, "r_end must exceed r_min");
    }
    kernels::SweepLane lane;
    kernels::SweepLane unused;
    const std::vector<double> g = family.coefficients(energy);
    const double c0 = family.origin_strength(energy);
    if (!(c0 >= -0.25)) {
        throw Error(ErrorCode::SeedUndefined, "origin strength below -1/4, r^nu seed is complex");
    }
    lane.g.assign(1, 0.25);
    lane.g.insert(lane.g.end(), g.begin(), g.end());
    lane.y0 = 1.0;
    lane.dy0 = std::sqrt(0.25 + c0);
    double x0 = 0.0;
    double x1 = 0.0;
    const kernels::SweepTables t = outward_table(family, r_end, x0, x1);
    const std::vector<kernels::SweepState> rec = kernels::sweep_record(t, lane);
    SampledSolution s;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        const double x = x0 + t.h * static_cast<double>(i);
        const double scale = std::exp(rec[i].log_scale);
        s.r.push_back(std::exp(x));
        s.u.push_back(std::exp(0.5 * x) * rec[i].y * scale);
        s.du.push_back(std::exp(-0.5 * x) * (0.5 * rec[i].y + rec[i].dy) * scale);
    }
    s.nodes = rec.back().nodes;
    return s;
}

SampledSolution integrate_inward(const RadialFamily& family, double energy, double r_end) {
    check_family(family);
    if (!(r_end < family.r_max)) {
        throw Error(ErrorCode::InvalidParameter, "r_end must be below r_max");
    }
    const std::vector<double> g = family.coefficients(energy);
    if (!(g[0] > 0.0)) {
        throw Error(ErrorCode::SeedUndefined, "beta^2 <= 0, no decaying seed");
    }
    kernels::SweepLane lane;
    lane.g = g;
    lane.y0 = 1.0;
    lane.dy0 = -std::sqrt(g[0]);
    const kernels::SweepTables t = inward_table(family, r_end);
    const std::vector<kernels::SweepState> rec = kernels::sweep_record(t, lane);
    SampledSolution s;
    for (std::size_t i = rec.size(); i-- > 0;) {
        const double scale = std::exp(rec[i].log_scale);
        s.r.push_back(family.r_max + t.h * static_cast<double>(i));
        s.u.push_back(rec[i].y * scale);
        s.du.push_back(rec[i].dy * scale);
    }
    s.nodes = rec.back().nodes;
    return s;
}

double match_point(const RadialFamily& family, double energy) {
    check_family(family);
    const int steps = std::max(2, static_cast<int>(std::ceil((family.r_max - family.r_min) / family.step)));
    const double h = (family.r_max - family.r_min) / steps;
    int best = -1;
    double best_w = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        const double w = family.potential(family.r_min + h * i, energy);
        if (w < best_w) {
            best_w = w;
            best = i;
        }
    }
    if (best <= 0 || best >= steps) {
        return family.fallback_match;
    }
    return family.r_min + h * best;
}

MatchState match(const RadialFamily& family, double energy, double r_match) {
    return evaluate_one(family, build_legs(family, r_match), energy);
}

std::vector<Eigenvalue> find_bound_states(const RadialFamily& family, dirac::EnergyWindow window,
                                          const ShootOptions& options) {
    if (!(window.lo < window.hi)) {
        throw Error(ErrorCode::EmptyWindow, "oracle window is empty");
    }
    if (options.scan_points < 2) {
        throw Error(ErrorCode::InvalidParameter, "scan needs at least 2 points");
    }
    const double mid = window.lo + 0.5 * window.width();
    const double rm = options.match_point.value_or(match_point(family, mid));
    const Legs legs = build_legs(family, rm);

    const int count = options.scan_points;
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid[static_cast<std::size_t>(i)] = window.lo + window.width() * i / (count - 1);
    }
    grid.back() = window.hi;
    const std::vector<MatchState> states = evaluate(family, legs, grid);

    std::vector<Eigenvalue> found;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const MatchState& a = states[i];
        const MatchState& b = states[i + 1];
        if (!a.defined || !b.defined) {
            continue;
        }
        if (a.wronskian == 0.0) {
            found.push_back({grid[i], a.nodes, a.log_derivative, rm});
            continue;
        }
        if (b.wronskian == 0.0 || std::signbit(a.wronskian) == std::signbit(b.wronskian)) {
            continue;
        }
        found.push_back(refine(family, legs, grid[i], a, grid[i + 1], options.energy_tol));
    }
    if (!states.empty() && states.back().defined && states.back().wronskian == 0.0) {
        found.push_back({grid.back(), states.back().nodes, states.back().log_derivative, rm});
    }
    return found;
}

Eigenvalue shoot_eigenvalue(const RadialFamily& family, dirac::EnergyWindow window, int node_target,
                            const ShootOptions& options) {
    const std::vector<Eigenvalue> all = find_bound_states(family, window, options);
    if (all.empty()) {
        throw Error(ErrorCode::NoRootInWindow, "no matching sign change in [" +
                                                   std::to_string(window.lo) + ", " +
                                                   std::to_string(window.hi) + "]");
    }
    for (const Eigenvalue& e : all) {
        if (e.nodes == node_target) {
            return e;
        }
    }
    throw Error(ErrorCode::NodeMismatch,
                "no eigenvalue with " + std::to_string(node_target) + " nodes in window");
}

int count_nodes(std::span<const double> samples) {
    int count = 0;
    int last = 0;
    for (double v : samples) {
        if (std::fabs(v) < 1e-12) {
            continue;
        }
        const int sign = v > 0.0 ? 1 : -1;
        if (last != 0 && sign != last) {
            ++count;
        }
        last = sign;
    }
    return count;
}

}  // namespace iqy::oracle
