#include "qbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qbound/energy.hpp"
#include "qbound/quadrature.hpp"

namespace qbound::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int w(x) * max(-V(x), 0) dx over all pieces; `splits` are extra abscissae
// (weight kinks) the quadrature should not straddle.
quad::QuadResult vminus_weighted(const Potential& v,
                                 const std::function<double(double)>& w,
                                 const std::vector<double>& splits = {}) {
    quad::QuadResult total;
    for (const auto& p : v.pieces) {
        auto f = [&](double x) {
            return w(x) * std::max(-p.expr->eval(x), 0.0);
        };
        quad::QuadResult r;
        if (std::isfinite(p.lo)) {
            std::vector<double> br;
            for (double s : splits)
                if (s > p.lo && s < p.hi) br.push_back(s);
            std::sort(br.begin(), br.end());
            r = quad::integrate_split(f, p.lo, p.hi, br);
        } else {
            // left-infinite piece: reflect onto [0, inf)
            const double hi = std::isfinite(p.hi) ? p.hi : 0.0;
            r = quad::integrate_to_inf([&](double t) { return f(hi - t); },
                                       std::isfinite(p.hi) ? 0.0 : -p.lo);
        }
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.converged = total.converged && r.converged;
    }
    return total;
}

// Does int x^{base_power} (ln x)^{log_power} V^- dx converge at infinity?
bool weight_converges(const Potential& v, double base_power, double log_power) {
    if (v.compact_support()) return true;
    std::vector<TailTerm> tail = v.tail;
    if (tail.empty()) {
        Potential tmp = v;
        if (!estimate_tail_numeric(tmp)) return false;
        tail = tmp.tail;
    }
    for (const auto& t : tail) {
        if (t.c == 0.0) continue;
        const double p = t.p + base_power, q = t.q + log_power;
        if (p < -1.0 - 1e-12) continue;
        if (std::abs(p + 1.0) <= 1e-12 && q < -1.0 - 1e-12) continue;
        return false;
    }
    return true;
}

BoundEntry not_applicable(std::string id, std::string why) {
    BoundEntry e;
    e.id = std::move(id);
    e.applicable = false;
    e.reason = std::move(why);
    return e;
}

double radial_sup(const Potential& v) {
    const double s = v.support_end();
    return std::isfinite(s) ? s : 1e4;
}

// (1/2pi) int w(r) V^-(x) d^2x: mean over angles of int r w(r) V^- dr.
quad::QuadResult plane_mean_integral(const Potential& v,
                                     const std::function<double(double)>& w,
                                     const GridSpec& grid,
                                     const std::vector<double>& splits = {}) {
    if (v.space == Space::Radial) {
        auto scaled = [&](double r) { return r * w(r); };
        return vminus_weighted(v, scaled, splits);
    }
    const double r_max = radial_sup(v);
    auto at_angles = [&](int n) {
        quad::QuadResult acc;
        for (int j = 0; j < n; ++j) {
            const double th = 2.0 * M_PI * (j + 0.5) / n;
            const double c = std::cos(th), s = std::sin(th);
            auto f = [&](double r) {
                return r * w(r) * std::max(-v.eval_xy(r * c, r * s), 0.0);
            };
            std::vector<double> br = splits;
            std::sort(br.begin(), br.end());
            br.erase(std::remove_if(br.begin(), br.end(),
                                    [&](double x) { return x <= 0.0 || x >= r_max; }),
                     br.end());
            auto r = quad::integrate_split(f, 0.0, r_max, br, 1e-10, 1e-10);
            acc.value += r.value / n;
            acc.abs_error += r.abs_error / n;
            acc.converged = acc.converged && r.converged;
        }
        return acc;
    };
    auto coarse = at_angles(std::max(grid.ntheta / 2, 8));
    auto fine = at_angles(std::max(grid.ntheta, 16));
    fine.abs_error += std::abs(fine.value - coarse.value);
    return fine;
}

}  // namespace

BoundEntry bargmann_channel(const Potential& v, int dim, double m_or_l) {
    BoundEntry e;
    e.id = "BARGMANN_CHANNEL";
    if (v.space != Space::Radial)
        return not_applicable(e.id, "needs a radial potential");
    const double denom = dim == 3 ? 2.0 * m_or_l + 1.0 : 2.0 * m_or_l;
    if (denom <= 0.0)
        return not_applicable(e.id, dim == 2 ? "2D m = 0: divisor vanishes"
                                             : "2l + 1 must be positive");
    if (!weight_converges(v, 1.0, 0.0))
        return not_applicable(e.id, "first moment diverges");
    auto moment = vminus_weighted(v, [](double r) { return r; });
    e.value = moment.value / denom;
    e.quadrature_error = moment.abs_error / denom;
    return e;
}

std::pair<BoundEntry, BoundEntry> one_d_bounds(const Potential& v) {
    BoundEntry lin, prod;
    lin.id = "ONE_D_LINEAR";
    prod.id = "ONE_D_PRODUCT";
    if (v.space != Space::Line)
        return {not_applicable(lin.id, "needs a line potential"),
                not_applicable(prod.id, "needs a line potential")};
    if (!weight_converges(v, 2.0, 0.0)) {
        lin = not_applicable(lin.id, "moment integrals diverge");
        prod = not_applicable(prod.id, "moment integrals diverge");
        return {lin, prod};
    }
    auto m1 = vminus_weighted(v, [](double x) { return std::abs(x); }, {0.0});
    auto m2 = vminus_weighted(v, [](double x) { return x * x; });
    auto m0 = vminus_weighted(v, [](double) { return 1.0; });
    lin.value = 1.0 + m1.value;
    lin.quadrature_error = m1.abs_error;
    prod.value = 1.0 + std::sqrt(2.0) * std::pow(m2.value * m0.value, 0.25);
    prod.quadrature_error =
        m2.abs_error + m0.abs_error;  // conservative: errors are tiny anyway
    return {lin, prod};
}

TwoDm0 two_d_m0_bounds(const Potential& v) {
    TwoDm0 out;
    if (v.space != Space::Radial) {
        out.ok = false;
        out.reason = "needs a radial potential";
        return out;
    }
    if (!weight_converges(v, 1.0, 2.0)) {
        out.ok = false;
        out.reason = "log-weighted moments diverge";
        return out;
    }
    auto total = vminus_weighted(v, [](double r) { return r; });
    if (total.value <= 0.0) {
        out.ok = false;
        out.reason = "V^- vanishes: R_min undefined";
        return out;
    }

    const Potential& vv = v;  // captured by the returned handle
    out.i_of_r = [&vv](double R) {
        auto r = vminus_weighted(
            vv, [R](double x) { return x * std::abs(std::log(x / R)); }, {R});
        return r.value;
    };

    // flux balance F(R) = 2 int_0^R r V^- - total, monotone nondecreasing
    auto inner = [&](double R) {
        quad::QuadResult acc;
        for (const auto& p : v.pieces) {
            if (p.lo >= R) continue;
            auto f = [&](double x) {
                return x * std::max(-p.expr->eval(x), 0.0);
            };
            auto r = quad::integrate(f, p.lo, std::min(p.hi, R));
            acc.value += r.value;
            acc.abs_error += r.abs_error;
        }
        return acc.value;
    };
    auto flux = [&](double R) { return 2.0 * inner(R) - total.value; };
    double hi = radial_sup(v);
    while (flux(hi) < 0.0) hi *= 2.0;
    // plateau-aware: locate both edges of {F = 0}
    double lo_a = 0.0, hi_a = hi, lo_b = 0.0, hi_b = hi;
    for (int i = 0; i < 100; ++i) {
        const double ma = 0.5 * (lo_a + hi_a);
        (flux(ma) < 0.0 ? lo_a : hi_a) = ma;
        const double mb = 0.5 * (lo_b + hi_b);
        (flux(mb) <= 0.0 ? lo_b : hi_b) = mb;
    }
    out.plateau_lo = 0.5 * (lo_a + hi_a);
    out.plateau_hi = 0.5 * (lo_b + hi_b);
    out.r_min = 0.5 * (out.plateau_lo + out.plateau_hi);
    out.i_at_rmin = out.i_of_r(out.r_min);

    auto mlog2 = vminus_weighted(v, [](double r) {
        const double l = std::log(r);
        return r * l * l;
    });
    out.product_bound =
        1.0 + std::sqrt(2.0) * std::pow(mlog2.value * total.value, 0.25);
    out.quadrature_error = total.abs_error + mlog2.abs_error;
    return out;
}

NewtonSetoResult newton_seto(const Potential& v) {
    NewtonSetoResult out;
    out.bound.id = "NEWTON_SETO";
    if (v.space != Space::Radial) {
        out.bound = not_applicable(out.bound.id, "needs a radial potential");
        return out;
    }
    if (!weight_converges(v, 1.0, 1.0)) {
        out.bound = not_applicable(out.bound.id, "double integral diverges");
        return out;
    }
    auto total = vminus_weighted(v, [](double r) { return r; });
    if (total.value <= 0.0) {
        out.bound = not_applicable(out.bound.id, "int r V^- vanishes");
        return out;
    }
    // outer r integral of r V^-(r) * int r' V^-(r') |ln(r/r')| dr'
    auto dbl = vminus_weighted(v, [&](double r) {
        auto in = vminus_weighted(
            v, [r](double rp) { return rp * std::abs(std::log(rp / r)); }, {r});
        return r * in.value;
    });
    out.j = 0.5 * dbl.value / total.value;
    out.bound.value = 1.0 + out.j;
    out.bound.quadrature_error =
        0.5 * (dbl.abs_error + out.j * total.abs_error) / total.value;
    return out;
}

BoundEntry total_2d(const Potential& v) {
    BoundEntry e;
    e.id = "TOTAL_2D";
    if (v.space != Space::Radial)
        return not_applicable(e.id, "needs a radial potential");
    auto m0 = two_d_m0_bounds(v);
    auto total = vminus_weighted(v, [](double r) { return r; });
    if (total.value == 0.0) {
        e.value = 1.0;  // vacuous
        return e;
    }
    if (!m0.ok) return not_applicable(e.id, m0.reason);
    e.value = 1.0 + m0.i_at_rmin + 2.0 / std::sqrt(3.0) * total.value;
    e.quadrature_error = m0.quadrature_error + total.abs_error;
    e.reason = "log origin at R_min";
    return e;
}

BoundEntry conjecture_rhs(const Potential& v, const GridSpec& grid) {
    BoundEntry e;
    e.id = "CONJECTURE_RHS";
    if (v.space == Space::Line)
        return not_applicable(e.id, "needs a 2D potential");
    Potential vr;
    try {
        vr = decreasing_rearrangement(v, grid);
    } catch (const std::exception& ex) {
        return not_applicable(e.id, ex.what());
    }
    auto m0 = two_d_m0_bounds(vr);
    if (!m0.ok) {
        if (m0.reason.find("vanishes") != std::string::npos) {
            e.value = 1.0;  // vacuous
            return e;
        }
        return not_applicable(e.id, m0.reason);
    }
    const double R = m0.r_min;
    // 2 int (d^2x/2pi) V_R ln^-(|x|/R), supported on r < R
    auto t1 = vminus_weighted(
        vr, [R](double r) { return 2.0 * r * std::max(-std::log(r / R), 0.0); },
        {R});
    // int (d^2x/2pi) V^- ln(|x|/R) over the original (possibly non-central) V
    auto t2 = plane_mean_integral(
        v, [R](double r) { return std::log(r / R); }, grid, {R});
    auto t3 = plane_mean_integral(v, [](double) { return 1.0; }, grid);
    e.value = 1.0 + t1.value + t2.value + 2.0 / std::sqrt(3.0) * t3.value;
    e.quadrature_error = t1.abs_error + t2.abs_error + t3.abs_error;
    e.reason = "ln^-(t) = max(-ln t, 0); log origin at the rearrangement's R_min";
    return e;
}

NonCentralBounds total_2d_noncentral(const Potential& v, const GridSpec& grid) {
    NonCentralBounds out;
    out.via_sup.id = "TOTAL_2D_NONCENTRAL";
    if (v.space == Space::Line) {
        out.via_sup = not_applicable(out.via_sup.id, "needs a 2D potential");
        out.conjecture_rhs = not_applicable("CONJECTURE_RHS", "needs a 2D potential");
        return out;
    }
    auto sup = sup_over_angle(v, grid);
    if (sup.unbounded) {
        out.via_sup = not_applicable(
            out.via_sup.id, "sup over angles is unbounded on some circle");
    } else {
        out.via_sup = total_2d(sup.radial);
        out.via_sup.id = "TOTAL_2D_NONCENTRAL";
    }
    out.conjecture_rhs = bounds::conjecture_rhs(v, grid);
    return out;
}

AuxBounds aux_bounds(const Potential& v, int n, double g, double b) {
    AuxBounds out;
    out.cohn_calogero.id = "COHN_CALOGERO";
    out.semiclassical.id = "SEMICLASSICAL";
    out.laptev_a.id = "LAPTEV";

    // Cohn-Calogero needs |V| monotone nonincreasing (V <= 0 rising to 0).
    if (v.space == Space::Line) {
        out.cohn_calogero = not_applicable(out.cohn_calogero.id,
                                           "stated for the half line");
    } else {
        const double sup = radial_sup(v);
        bool monotone = true;
        double prev = -kInf;
        for (int i = 0; i < 512 && monotone; ++i) {
            const double r = sup * (i + 0.5) / 512.0;
            const double val = v(r);
            if (val > 1e-12 || val < prev - 1e-9 * (std::abs(prev) + 1.0))
                monotone = false;
            prev = val;
        }
        if (!monotone) {
            out.cohn_calogero =
                not_applicable(out.cohn_calogero.id, "V is not monotone <= 0");
        } else {
            quad::QuadResult r;
            for (const auto& p : v.pieces) {
                auto f = [&](double x) {
                    return std::sqrt(std::max(-p.expr->eval(x), 0.0));
                };
                auto q = std::isfinite(p.hi) ? quad::integrate(f, p.lo, p.hi)
                                             : quad::integrate_to_inf(f, p.lo);
                r.value += q.value;
                r.abs_error += q.abs_error;
            }
            out.cohn_calogero.value = 2.0 / M_PI * r.value;
            out.cohn_calogero.quadrature_error = 2.0 / M_PI * r.abs_error;
        }
    }

    // semiclassical: C_n g^{n/2} int (V^-)^{n/2} d^n x
    const double cn =
        std::pow(2.0, -n) * std::pow(M_PI, -0.5 * n) / std::tgamma(1.0 + 0.5 * n);
    const double half_n = 0.5 * n;
    quad::QuadResult ph;
    if (v.space == Space::Line) {
        ph = vminus_weighted(v, [](double) { return 1.0; });
        if (half_n != 1.0) {
            quad::QuadResult acc;
            for (const auto& p : v.pieces) {
                auto f = [&](double x) {
                    return std::pow(std::max(-p.expr->eval(x), 0.0), half_n);
                };
                auto q = std::isfinite(p.lo) && std::isfinite(p.hi)
                             ? quad::integrate(f, p.lo, p.hi)
                             : quad::integrate_to_inf(f, std::max(p.lo, -1e6));
                acc.value += q.value;
                acc.abs_error += q.abs_error;
            }
            ph = acc;
        }
    } else {
        // d^n x with radial symmetry: surface factor 2pi (n=2) or 4pi r^2 (n=3)
        GridSpec grid;
        auto powed = [&](double r, double th) {
            const double vm =
                std::max(-v.eval_xy(r * std::cos(th), r * std::sin(th)), 0.0);
            return std::pow(vm, half_n);
        };
        if (n == 3 && v.space == Space::Radial) {
            quad::QuadResult acc;
            for (const auto& p : v.pieces) {
                auto f = [&](double x) {
                    return 4.0 * M_PI * x * x *
                           std::pow(std::max(-p.expr->eval(x), 0.0), half_n);
                };
                auto q = std::isfinite(p.hi) ? quad::integrate(f, p.lo, p.hi)
                                             : quad::integrate_to_inf(f, p.lo);
                acc.value += q.value;
                acc.abs_error += q.abs_error;
            }
            ph = acc;
        } else {
            const double r_max = radial_sup(v);
            const int nth = v.space == Space::Radial ? 1 : grid.ntheta;
            quad::QuadResult acc;
            for (int j = 0; j < nth; ++j) {
                const double th = 2.0 * M_PI * (j + 0.5) / nth;
                auto q = quad::integrate_split(
                    [&](double r) { return 2.0 * M_PI * r * powed(r, th); }, 0.0,
                    r_max, v.space == Space::Radial ? v.breakpoints()
                                                    : std::vector<double>{});
                acc.value += q.value / nth;
                acc.abs_error += q.abs_error / nth;
            }
            ph = acc;
        }
    }
    out.semiclassical.value = cn * std::pow(g, half_n) * ph.value;
    out.semiclassical.quadrature_error = cn * std::pow(g, half_n) * ph.abs_error;

    if (!(b > 0.0)) {
        out.laptev_a = not_applicable(out.laptev_a.id, "b must be positive");
    } else {
        out.laptev_a.value = 1.0 / std::sqrt(b) + 4.0 / std::sqrt(3.0);
    }
    return out;
}

LiebThirringCheck lieb_thirring_check(const Potential& u,
                                      const CountOptions& opt) {
    if (u.space != Space::Line)
        throw std::invalid_argument("lieb_thirring_check: needs a line potential");
    LiebThirringCheck out;
    auto es = energy::spectrum_1d(u, opt);
    for (double e : es) out.sum_sqrt += std::sqrt(-e);
    auto m0 = vminus_weighted(u, [](double) { return 1.0; });
    out.half_integral = 0.5 * m0.value;
    out.ok = out.sum_sqrt <= out.half_integral + 1e-9;
    return out;
}

BoundReport full_report(const Potential& v, const ReportOptions& opt) {
    BoundReport rep;
    auto put = [&rep](BoundEntry e) { rep.entries[e.id] = std::move(e); };

    if (v.space == Space::Line) {
        auto [lin, prod] = one_d_bounds(v);
        put(lin);
        put(prod);
        try {
            auto lt = lieb_thirring_check(v, opt.count);
            BoundEntry e;
            e.id = "LIEB_THIRRING_HALF";
            e.value = lt.half_integral;
            std::ostringstream os;
            os << "sum |e|^{1/2} = " << lt.sum_sqrt;
            e.reason = os.str();
            put(e);
        } catch (const std::exception& ex) {
            put(not_applicable("LIEB_THIRRING_HALF", ex.what()));
        }
        auto aux = aux_bounds(v, 1, opt.g, opt.b);
        put(aux.semiclassical);
        put(aux.laptev_a);
        return rep;
    }

    if (v.space == Space::Radial) {
        put(bargmann_channel(v, opt.dim, opt.m));
        auto m0 = two_d_m0_bounds(v);
        if (m0.ok) {
            BoundEntry log_b;
            log_b.id = "TWO_D_M0_LOG";
            log_b.value = 1.0 + m0.i_at_rmin;
            log_b.quadrature_error = m0.quadrature_error;
            put(log_b);
            BoundEntry prod_b;
            prod_b.id = "TWO_D_M0_PRODUCT";
            prod_b.value = m0.product_bound;
            prod_b.quadrature_error = m0.quadrature_error;
            put(prod_b);
        } else {
            put(not_applicable("TWO_D_M0_LOG", m0.reason));
            put(not_applicable("TWO_D_M0_PRODUCT", m0.reason));
        }
        put(newton_seto(v).bound);
        put(total_2d(v));
        put(conjecture_rhs(v, opt.grid));
        auto aux = aux_bounds(v, opt.dim, opt.g, opt.b);
        put(aux.cohn_calogero);
        put(aux.semiclassical);
        put(aux.laptev_a);
        return rep;
    }

    auto nc = total_2d_noncentral(v, opt.grid);
    put(nc.via_sup);
    put(nc.conjecture_rhs);
    auto aux = aux_bounds(v, 2, opt.g, opt.b);
    put(aux.semiclassical);
    put(aux.laptev_a);
    return rep;
}

std::string BoundReport::to_json() const {
    nlohmann::json j;
    for (const auto& [id, e] : entries) {
        j[id] = {{"value", e.value},
                 {"applicable", e.applicable},
                 {"error_estimate", e.quadrature_error},
                 {"reason", e.reason}};
    }
    return j.dump(2);
}

std::string BoundReport::to_csv() const {
    std::ostringstream os;
    os << "id,value,applicable,error_estimate\n";
    os.precision(17);
    for (const auto& [id, e] : entries)
        os << id << ',' << e.value << ',' << (e.applicable ? "true" : "false")
           << ',' << e.quadrature_error << '\n';
    return os.str();
}

}  // namespace qbound::bounds
