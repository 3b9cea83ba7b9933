#include "qbound/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbound/quadrature.hpp"
#include "qbound/specfun.hpp"

namespace qbound::energy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_potential(const Potential& v) {
    double vmin = 0.0;
    for (const auto& p : v.pieces) {
        const double lo = std::isfinite(p.lo)
                              ? p.lo
                              : (std::isfinite(p.hi) ? p.hi : 0.0) - 100.0;
        const double cap = std::isfinite(p.hi) ? p.hi : lo + 100.0;
        for (int i = 0; i <= 64; ++i) {
            const double x = lo + (cap - lo) * (i + 0.5) / 65.0;
            vmin = std::min(vmin, p.expr->eval(x));
        }
    }
    return vmin;
}

}  // namespace

double outer_log_derivative(double nu, double kappa, double r) {
    const double z = kappa * r;
    if (z > 650.0) return -kappa;
    const double den = std::cyl_bessel_k(nu, z);
    const double num =
        std::cyl_bessel_k(std::abs(nu - 1.0), z) + std::cyl_bessel_k(nu + 1.0, z);
    if (std::isfinite(den) && std::isfinite(num) && den > 0.0)
        return 1.0 / (2.0 * r) - kappa * num / (2.0 * den);
    return (0.5 - nu) / r;  // tiny-z limit of the decaying power
}

double eigenvalue(const Potential& v, int dim, double m, int i,
                  const CountOptions& opt) {
    if (i < 0) throw std::invalid_argument("eigenvalue: i >= 0");
    const bool line = dim == 1;
    if (line && v.space != Space::Line)
        throw std::invalid_argument("eigenvalue: dim 1 needs a line potential");
    if (!line && v.space != Space::Radial)
        throw std::invalid_argument("eigenvalue: dim 2/3 needs a radial potential");
    if (v.pieces.empty()) throw std::domain_error("eigenvalue: no such state");
    const double nu = line ? 0.0 : (dim == 2 ? m : m + 0.5);

    double sup = 0.0;
    for (const auto& p : v.pieces) {
        if (!std::isfinite(p.hi)) {
            sup = kInf;
            break;
        }
        sup = std::max(sup, p.hi);
    }
    const double x_match = std::isfinite(sup) ? sup : opt.window;
    const double x_left = line ? line_start(v, opt.window) : opt.inner_factor;
    const auto breaks = v.breakpoints();

    auto phase_in = [&](double kappa) {
        const double e = -kappa * kappa;
        if (line) {
            auto tr = integrate_phase([&v](double x) { return v(x); }, e, x_left,
                                      x_match, std::atan(1.0 / kappa), breaks, opt);
            return tr.theta_end();
        }
        const double shift = nu * nu - 0.25;
        auto tr = integrate_phase(
            [&v, shift](double r) { return v(r) + shift / (r * r); }, e, x_left,
            x_match, std::atan(x_left / (nu + 0.5)), breaks, opt);
        return tr.theta_end();
    };
    auto mismatch = [&](double t) {
        const double kappa = std::exp(t);
        const double lout = line ? -kappa : outer_log_derivative(nu, kappa, x_match);
        const double theta_out = std::atan2(1.0, lout);
        return phase_in(kappa) - theta_out - i * M_PI;
    };

    const double kap_max = std::sqrt(2.0 * std::max(-min_potential(v), 1e-12)) + 1.0;
    double t_hi = std::log(kap_max), t_lo = -150.0;
    double f_lo = mismatch(t_lo);
    if (f_lo <= 0.0) throw std::domain_error("eigenvalue: no such state");
    double f_hi = mismatch(t_hi);
    if (f_hi > 0.0) throw std::runtime_error("eigenvalue: search cap too low");
    for (int it = 0; it < 240; ++it) {
        const double t = 0.5 * (t_lo + t_hi);
        if (mismatch(t) > 0.0)
            t_lo = t;
        else
            t_hi = t;
    }
    const double kappa = std::exp(0.5 * (t_lo + t_hi));
    return -kappa * kappa;
}

std::vector<double> spectrum_1d(const Potential& v, const CountOptions& opt) {
    std::vector<double> out;
    if (v.pieces.empty()) return out;
    auto c = count_bound_states_1d(v, opt);
    if (c.cls != Finiteness::Finite)
        throw std::domain_error("spectrum_1d: infinitely many states");
    for (long i = 0; i < c.count; ++i)
        out.push_back(eigenvalue(v, 1, 0.0, static_cast<int>(i), opt));
    std::sort(out.begin(), out.end());
    return out;
}

// ---- weak-coupling energy bracket ------------------------------------------

EnergyBracket ground_bracket_2d(const Potential& shape, double g,
                                const GridSpec& grid) {
    if (!(g > 0.0)) throw std::invalid_argument("ground_bracket_2d: g > 0");
    EnergyBracket out;
    const double k01 = specfun::bessel_k(0, 1.0).value;
    const double gamma = specfun::euler_gamma;

    GridSpec fine = grid;
    const double shape_sup = shape.support_end();
    if (std::isfinite(shape_sup) && shape_sup > 0.0)
        fine.r_max = std::min(fine.r_max, 1.02 * shape_sup);
    fine.nr = std::max(fine.nr, 4096);
    const Potential vr = decreasing_rearrangement(shape, fine);
    auto vr_minus = [&vr](double r) { return std::max(-vr(r), 0.0); };
    const double sup_r = vr.support_end();
    if (!(sup_r > 0.0)) {
        out.note = "V^- vanishes";
        return out;
    }
    // mass and log-weighted integrals of the rearranged profile
    auto mass = quad::integrate_split(
        [&](double r) { return 2.0 * M_PI * r * vr_minus(r); }, 0.0, sup_r,
        vr.breakpoints());
    auto logw = quad::integrate_split(
        [&](double r) { return 2.0 * M_PI * r * std::log(1.0 / r) * vr_minus(r); },
        0.0, std::min(sup_r, 1.0), vr.breakpoints());
    if (mass.value <= 0.0) {
        out.note = "V^- vanishes";
        return out;
    }
    out.x_value = (2.0 * M_PI - g * logw.value) / (g * mass.value);
    if (out.x_value > k01) {
        out.upper_kappa2 = std::exp(2.0 * (-out.x_value + k01));
        out.upper_ok = true;
    } else {
        out.note = "X <= K0(1): only the implicit K0 bound applies";
    }

    // lower bound: maximize exp(-2 gamma)/R^2 * exp(-4 pi/(g M(R))) over R
    auto low_at = [&](double R) {
        auto m_in = quad::integrate_split(
            [&](double r) { return 2.0 * M_PI * r * vr_minus(r); }, 0.0, R,
            vr.breakpoints());
        if (m_in.value <= 0.0) return 0.0;
        return std::exp(-2.0 * gamma) / (R * R) *
               std::exp(-4.0 * M_PI / (g * m_in.value));
    };
    // strictly attractive on some inner disk?
    bool attractive = true;
    for (int i = 1; i <= 16; ++i)
        if (vr_minus(sup_r * i / 20.0) <= 0.0) attractive = false;
    if (attractive) {
        double best_r = sup_r, best = low_at(sup_r);
        for (int i = 0; i < 32; ++i) {
            const double R = sup_r * std::pow(10.0, -2.0 * i / 31.0);
            const double val = low_at(R);
            if (val > best) {
                best = val;
                best_r = R;
            }
        }
        // golden-section polish around the grid optimum
        double a = best_r / 2.0, b = std::min(best_r * 2.0, sup_r * 1.0001);
        const double phi = 0.6180339887498949;
        double c = b - phi * (b - a), d = a + phi * (b - a);
        for (int it = 0; it < 60; ++it) {
            if (low_at(c) > low_at(d)) {
                b = d;
            } else {
                a = c;
            }
            c = b - phi * (b - a);
            d = a + phi * (b - a);
        }
        out.r_used = 0.5 * (a + b);
        out.lower_kappa2 = std::max(best, low_at(out.r_used));
        out.lower_ok = true;
    } else {
        out.note += (out.note.empty() ? "" : "; ");
        out.note += "V not strictly attractive on an inner disk";
    }
    return out;
}

ScalingFit exp_small_scaling(const Potential& shape,
                             const std::vector<double>& g_list) {
    if (shape.space != Space::Radial)
        throw std::invalid_argument("exp_small_scaling: radial shape expected");
    auto net = quad::integrate_split(
        [&shape](double r) { return 2.0 * M_PI * r * shape(r); }, 0.0,
        shape.support_end(), shape.breakpoints());
    if (!(net.value < 0.0))
        throw std::domain_error("exp_small_scaling: shape is not globally attractive");

    ScalingFit fit;
    for (double g : g_list) {
        Potential vg = shape;
        for (auto& p : vg.pieces) {
            p.expr = emul(enumber(g), p.expr);
            p.src = format_expr(p.expr);
        }
        for (auto& t : vg.tail) t.c *= g;
        const double e0 = eigenvalue(vg, 2, 0.0, 0);
        fit.samples.emplace_back(g, -e0);
    }
    // least squares: ln kappa^2 = a - c/g
    double s0 = 0, s1 = 0, s2 = 0, sy = 0, sxy = 0;
    for (const auto& [g, k2] : fit.samples) {
        const double x = 1.0 / g, y = std::log(k2);
        s0 += 1;
        s1 += x;
        s2 += x * x;
        sy += y;
        sxy += x * y;
    }
    const double det = s0 * s2 - s1 * s1;
    const double slope = (s0 * sxy - s1 * sy) / det;
    fit.a = (s2 * sy - s1 * sxy) / det;
    fit.c = -slope;
    for (const auto& [g, k2] : fit.samples) {
        const double pred = fit.a - fit.c / g;
        fit.residual = std::max(fit.residual,
                                std::abs(pred - std::log(k2)) / std::abs(std::log(k2)));
    }
    return fit;
}

}  // namespace qbound::energy
