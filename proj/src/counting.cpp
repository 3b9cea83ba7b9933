#include "qbound/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbound/quadrature.hpp"

namespace qbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct State {
    double theta, lnrho;
};

State rhs(const std::function<double(double)>& v_eff, double e, double x, State y) {
    const double q = v_eff(x) - e;
    const double s = std::sin(y.theta), c = std::cos(y.theta);
    return {c * c - q * s * s, (1.0 + q) * s * c};
}

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,      500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784,  11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

// Cubic Hermite root of theta(x) - target inside one accepted step.
double hermite_cross(double x0, double h, double th0, double dth0, double th1,
                     double dth1, double target) {
    // normalized s in [0,1]
    auto val = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        return h00 * th0 + h10 * h * dth0 + h01 * th1 + h11 * h * dth1 - target;
    };
    double a = 0.0, b = 1.0;
    double fa = val(a);
    for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (a + b);
        if ((val(m) < 0.0) == (fa < 0.0)) {
            a = m;
            fa = val(m);
        } else {
            b = m;
        }
    }
    return x0 + 0.5 * (a + b) * h;
}

}  // namespace

SolutionTrace integrate_phase(const std::function<double(double)>& v_eff,
                              double e, double x0, double x1, double theta0,
                              const std::vector<double>& breaks,
                              const CountOptions& opt) {
    if (!(x1 > x0)) throw std::invalid_argument("integrate_phase: empty window");
    SolutionTrace tr;
    tr.x_min = x0;
    tr.x_max = x1;
    tr.energy = e;

    std::vector<double> stops;
    for (double b : breaks)
        if (b > x0 && b < x1 && std::isfinite(b)) stops.push_back(b);
    stops.push_back(x1);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    State y{theta0, 0.0};
    double x = x0;
    tr.abscissae.push_back(x);
    tr.theta.push_back(y.theta);
    tr.lnrho.push_back(y.lnrho);

    size_t stop_idx = 0;
    State f0 = rhs(v_eff, e, x, y);
    double h = std::min(stops[0] - x, opt.phase_cap / std::max(std::abs(f0.theta), 1e-3));

    while (stop_idx < stops.size()) {
        const double goal = stops[stop_idx];
        if (goal - x <= 1e-14 * (std::abs(goal) + std::abs(x) + 1.0)) {
            ++stop_idx;
            continue;
        }
        h = std::min(h, goal - x);
        const double h_min = 1e-14 * (std::abs(x) + 1.0);
        h = std::max(h, h_min);

        State k[7];
        k[0] = f0;
        for (int i = 1; i < 7; ++i) {
            State yi = y;
            for (int j = 0; j < i; ++j) {
                yi.theta += h * kA[i][j] * k[j].theta;
                yi.lnrho += h * kA[i][j] * k[j].lnrho;
            }
            k[i] = rhs(v_eff, e, x + kC[i] * h, yi);
        }
        State y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            y5.theta += h * kB5[i] * k[i].theta;
            y5.lnrho += h * kB5[i] * k[i].lnrho;
            y4.theta += h * kB4[i] * k[i].theta;
            y4.lnrho += h * kB4[i] * k[i].lnrho;
        }
        const double err = std::abs(y5.theta - y4.theta) +
                           1e-2 * std::abs(y5.lnrho - y4.lnrho);
        const double tol = opt.tol * (1.0 + std::abs(y.theta));
        const double dphase = std::abs(y5.theta - y.theta);

        if ((err <= tol && dphase <= opt.phase_cap * 1.5) || h <= h_min * 1.0001) {
            // accepted; count upward crossings of multiples of pi
            const long k0 = static_cast<long>(std::floor(y.theta / M_PI + 1e-12));
            const long k1 = static_cast<long>(std::floor(y5.theta / M_PI + 1e-12));
            const State f1 = rhs(v_eff, e, x + h, y5);
            for (long n = k0 + 1; n <= k1; ++n)
                tr.node_positions.push_back(hermite_cross(
                    x, h, y.theta, f0.theta, y5.theta, f1.theta, n * M_PI));
            x += h;
            y = y5;
            f0 = f1;
            tr.abscissae.push_back(x);
            tr.theta.push_back(y.theta);
            tr.lnrho.push_back(y.lnrho);
            double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
            if (dphase > 1e-12) grow = std::min(grow, opt.phase_cap / dphase);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            const double shrink = err > tol ? 0.9 * std::pow(tol / err, 0.2)
                                            : opt.phase_cap / dphase;
            h *= std::clamp(shrink, 0.1, 0.9);
        }
    }
    return tr;
}

SolutionTrace integrate_channel(const Potential& v, double nu, double e,
                                double r_max, const CountOptions& opt) {
    if (v.space == Space::Plane)
        throw std::invalid_argument("integrate_channel: needs a radial potential");
    const double shift = nu * nu - 0.25;
    auto v_eff = [&v, shift](double r) { return v(r) + shift / (r * r); };
    const double r0 = opt.inner_factor;
    const double theta0 = std::atan(r0 / (nu + 0.5));
    auto tr = integrate_phase(v_eff, e, r0, r_max, theta0, v.breakpoints(), opt);
    return tr;
}

double line_start(const Potential& v, double fallback) {
    double x0 = kInf;
    for (const auto& p : v.pieces) {
        if (std::isfinite(p.lo)) {
            x0 = std::min(x0, p.lo);
            continue;
        }
        // left-infinite piece: walk left until the tail is numerically gone
        double x = (std::isfinite(p.hi) ? p.hi : 0.0) - 1e-3;
        while (std::abs(p.expr->eval(x)) > 1e-16 && x > -1e6) x -= 2.5;
        x0 = std::min(x0, x);
    }
    return std::isfinite(x0) ? x0 : -std::abs(fallback);
}

int tail_node_correction(double x_sup, double theta, double nu_out) {
    const double u = std::sin(theta), du = std::cos(theta);
    if (u == 0.0) return 0;
    // on the line (nu = 1/2 about an arbitrary endpoint) a is just u'
    const double scale = x_sup > 0.0 ? x_sup : 1.0;
    const double a = scale * du - (0.5 - nu_out) * u;
    if (a == 0.0) return 0;
    return ((a > 0.0) != (u > 0.0)) ? 1 : 0;
}

// ---- tail classifier -------------------------------------------------------

namespace {

bool lex_before(const TailTerm& a, const TailTerm& b) {
    if (a.p != b.p) return a.p > b.p;
    if (a.q != b.q) return a.q > b.q;
    return a.s > b.s;
}

std::vector<TailTerm> merged(std::vector<TailTerm> t) {
    std::sort(t.begin(), t.end(), lex_before);
    std::vector<TailTerm> out;
    for (const auto& x : t) {
        if (x.c == 0.0) continue;
        if (!out.empty() && out.back().p == x.p && out.back().q == x.q &&
            out.back().s == x.s)
            out.back().c += x.c;
        else
            out.push_back(x);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const TailTerm& x) { return x.c == 0.0; }),
              out.end());
    return out;
}

double coeff_at(const std::vector<TailTerm>& t, double p, double q, double s) {
    for (const auto& x : t)
        if (x.p == p && x.q == q && x.s == s) return x.c;
    return 0.0;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

// The 1D rules: x^2 V below -1/4 infinitely often gives infinitely many
// states; above it, finitely many; at the border descend the log chain.
TailClass classify_terms(std::vector<TailTerm> terms) {
    terms = merged(terms);
    if (terms.empty()) return {Finiteness::Finite, "tail:zero"};

    const TailTerm lead = terms.front();
    if (lead.p > -2.0 || (lead.p == -2.0 && (lead.q > 0.0 || (lead.q == 0.0 && lead.s > 0.0)))) {
        return lead.c < 0.0 ? TailClass{Finiteness::Infinite, "tail:power-blowup"}
                            : TailClass{Finiteness::Finite, "tail:power-positive"};
    }
    if (lead.p < -2.0) return {Finiteness::Finite, "tail:decay"};

    const double lambda = -coeff_at(terms, -2.0, 0.0, 0.0);
    if (!near(lambda, 0.25)) {
        return lambda > 0.25 ? TailClass{Finiteness::Infinite, "tail:lambda"}
                             : TailClass{Finiteness::Finite, "tail:lambda"};
    }
    // lambda == 1/4: next order, coefficients of x^-2 (ln x)^q with q < 0
    TailTerm sub{0.0, 0.0, 0.0, 0.0};
    bool have_sub = false;
    for (const auto& t : terms)
        if (t.p == -2.0 && t.q < 0.0 && (!have_sub || lex_before(t, sub))) {
            sub = t;
            have_sub = true;
        }
    if (!have_sub) return {Finiteness::Finite, "tail:mu1"};
    if (sub.q > -2.0)
        return sub.c < 0.0 ? TailClass{Finiteness::Infinite, "tail:mu"}
                           : TailClass{Finiteness::Finite, "tail:mu"};
    if (sub.q < -2.0) return {Finiteness::Finite, "tail:mu1"};

    const double mu1 = -4.0 * coeff_at(terms, -2.0, -2.0, 0.0);
    if (!near(mu1, 1.0)) {
        return mu1 > 1.0 ? TailClass{Finiteness::Infinite, "tail:mu1"}
                         : TailClass{Finiteness::Finite, "tail:mu1"};
    }
    // mu1 == 1: descend to the ln ln level
    TailTerm sub2{0.0, 0.0, 0.0, 0.0};
    bool have2 = false;
    for (const auto& t : terms)
        if (t.p == -2.0 && t.q == -2.0 && t.s < 0.0 && (!have2 || lex_before(t, sub2))) {
            sub2 = t;
            have2 = true;
        }
    if (!have2) return {Finiteness::Finite, "tail:mu2"};
    if (sub2.s > -2.0)
        return sub2.c < 0.0 ? TailClass{Finiteness::Infinite, "tail:mu2"}
                            : TailClass{Finiteness::Finite, "tail:mu2"};
    if (sub2.s < -2.0) return {Finiteness::Finite, "tail:mu2"};
    const double mu2 = -4.0 * sub2.c;
    if (near(mu2, 1.0)) return {Finiteness::Marginal, "tail:mu2-borderline"};
    return mu2 > 1.0 ? TailClass{Finiteness::Infinite, "tail:mu2"}
                     : TailClass{Finiteness::Finite, "tail:mu2"};
}

std::vector<TailTerm> tail_or_estimate(const Potential& v, bool& numeric, bool& known) {
    numeric = false;
    known = true;
    if (!v.tail.empty()) return v.tail;
    Potential tmp = v;
    if (estimate_tail_numeric(tmp)) {
        numeric = true;
        return tmp.tail;
    }
    known = false;
    return {};
}

}  // namespace

TailClass classify_tail_channel(const Potential& v, double nu) {
    if (v.compact_support() && nu >= 0.0)
        return {Finiteness::Finite, "tail:compact"};
    bool numeric = false, known = true;
    auto terms = tail_or_estimate(v, numeric, known);
    if (!known) return {Finiteness::Marginal, "tail:unknown"};
    terms.push_back({nu * nu - 0.25, -2.0, 0.0, 0.0});
    auto r = classify_terms(std::move(terms));
    if (numeric) r.evidence += "+numeric";
    return r;
}

namespace {

// limit of x^2 V(x) as x -> -inf, probed numerically (left tails only arise
// from inverse log maps, where V decays superexponentially)
TailClass classify_left_probe(const Potential& v) {
    double worst = 0.0;
    for (double x : {-1e2, -1e4, -1e6}) worst = std::min(worst, x * x * v(x));
    if (worst > -0.25 + 1e-9) return {Finiteness::Finite, "tail:left-decay"};
    if (worst < -0.25 - 1e-9) return {Finiteness::Infinite, "tail:left-probe"};
    return {Finiteness::Marginal, "tail:left-probe"};
}

}  // namespace

TailClass classify_tail(const Potential& v) {
    if (v.compact_support()) return {Finiteness::Finite, "tail:compact"};
    if (v.space == Space::Line) {
        bool right_open = false, left_open = false;
        for (const auto& p : v.pieces) {
            if (!std::isfinite(p.hi)) right_open = true;
            if (!std::isfinite(p.lo)) left_open = true;
        }
        if (left_open) {
            TailClass left = classify_left_probe(v);
            if (!right_open || left.cls != Finiteness::Finite) return left;
        }
        bool numeric = false, known = true;
        auto terms = tail_or_estimate(v, numeric, known);
        if (!known) return {Finiteness::Marginal, "tail:unknown"};
        auto r = classify_terms(std::move(terms));
        if (numeric) r.evidence += "+numeric";
        return r;
    }
    // radial: s-channel decides (2D m = 0 carries -1/(4r^2); 3D l = 0 none)
    return classify_tail_channel(v, v.dimension == 2 ? 0.0 : 0.5);
}

// ---- counts ----------------------------------------------------------------

namespace {

// effective outer order sqrt(1/4 + x^2 V_eff) at the truncation point
double nu_out_at(const Potential& v, double shift, double x) {
    const double t = x * x * v(x) + shift;
    return std::sqrt(std::max(0.0, 0.25 + t));
}

CountResult infinite_result(const TailClass& tc) {
    CountResult r;
    r.cls = tc.cls;
    r.evidence = tc.evidence;
    r.count = -1;
    return r;
}

}  // namespace

CountResult count_bound_states_1d(const Potential& v, const CountOptions& opt) {
    if (v.space != Space::Line)
        throw std::invalid_argument("count_bound_states_1d: needs a line potential");
    CountResult r;
    if (v.pieces.empty()) {
        r.evidence = "tail:zero";
        return r;
    }
    const TailClass tc = classify_tail(v);
    r.evidence = tc.evidence;
    r.cls = tc.cls;
    if (tc.cls == Finiteness::Infinite) return infinite_result(tc);

    const double x_left = line_start(v, opt.window);
    double sup = 0.0;
    for (const auto& p : v.pieces) {
        if (!std::isfinite(p.hi)) {
            sup = kInf;
            break;
        }
        sup = std::max(sup, p.hi);
    }
    auto run = [&](double x_max) {
        auto tr = integrate_phase([&v](double x) { return v(x); }, 0.0, x_left,
                                  x_max, M_PI / 2.0, v.breakpoints(), opt);
        const double nu_out =
            std::isfinite(sup) ? 0.5 : nu_out_at(v, 0.0, x_max);
        return static_cast<long>(tr.nodes()) +
               tail_node_correction(x_max, tr.theta_end(), nu_out);
    };
    if (tc.cls == Finiteness::Marginal) {
        const double w = std::max(std::abs(x_left) * 2.0 + 10.0, opt.window);
        auto tr1 = integrate_phase([&v](double x) { return v(x); }, 0.0, x_left,
                                   w, M_PI / 2.0, v.breakpoints(), opt);
        auto tr2 = integrate_phase([&v](double x) { return v(x); }, 0.0, x_left,
                                   w * 1e4, M_PI / 2.0, v.breakpoints(), opt);
        r.lower = static_cast<long>(tr1.nodes());
        r.upper = static_cast<long>(tr2.nodes()) + 1;
        r.count = r.lower;
        r.x_min = x_left;
        r.x_max = w;
        return r;
    }
    const double x_max = std::isfinite(sup)
                             ? sup
                             : std::max(opt.window, std::abs(x_left) * 2.0 + 10.0);
    r.count = run(x_max);
    if (!std::isfinite(sup)) {
        const long again = run(x_max * 1e4);
        if (again != r.count) r.count = again;
    }
    r.x_min = x_left;
    r.x_max = x_max;
    return r;
}

CountResult count_channel(const Potential& v, int dim, double m,
                          const CountOptions& opt) {
    if (v.space != Space::Radial)
        throw std::invalid_argument("count_channel: needs a radial potential");
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("count_channel: dim must be 2 or 3");
    if (m < 0.0) throw std::invalid_argument("count_channel: m >= 0");
    const double nu = dim == 2 ? m : m + 0.5;

    CountResult r;
    if (v.pieces.empty()) {
        r.evidence = "tail:zero";
        return r;
    }
    const TailClass tc = classify_tail_channel(v, nu);
    r.evidence = tc.evidence;
    r.cls = tc.cls;
    if (tc.cls == Finiteness::Infinite) return infinite_result(tc);

    const double sup = v.support_end();
    const double shift = nu * nu - 0.25;
    auto run = [&](double r_max) {
        auto tr = integrate_channel(v, nu, 0.0, r_max, opt);
        const double nu_out =
            std::isfinite(sup) ? nu : nu_out_at(v, shift, r_max);
        return static_cast<long>(tr.nodes()) +
               tail_node_correction(r_max, tr.theta_end(), nu_out);
    };
    if (tc.cls == Finiteness::Marginal) {
        auto tr1 = integrate_channel(v, nu, 0.0, opt.window, opt);
        auto tr2 = integrate_channel(v, nu, 0.0, opt.window * 1e4, opt);
        r.lower = static_cast<long>(tr1.nodes());
        r.upper = static_cast<long>(tr2.nodes()) + 1;
        r.count = r.lower;
        r.x_max = opt.window;
        return r;
    }
    const double r_max = std::isfinite(sup) ? sup : opt.window;
    r.count = run(r_max);
    if (!std::isfinite(sup)) {
        const long again = run(r_max * 1e4);
        if (again != r.count) r.count = again;
    }
    r.x_min = 0.0;
    r.x_max = r_max;
    return r;
}

CountResult count_total_2d(const Potential& v, const CountOptions& opt) {
    if (v.space != Space::Radial || v.dimension != 2)
        throw std::invalid_argument("count_total_2d: needs a radial 2D potential");
    CountResult r;
    if (v.pieces.empty()) {
        r.evidence = "tail:zero";
        return r;
    }
    // Bargmann cutoff: channel m is empty once m >= (1/2) int r V^- dr
    auto integrand = [&v](double x) { return x * std::max(-v(x), 0.0); };
    auto moment = quad::integrate_split(integrand, 0.0, v.support_end(),
                                        v.breakpoints());
    const double m_cut = moment.value / 2.0;

    CountResult n0 = count_channel(v, 2, 0.0, opt);
    if (n0.cls != Finiteness::Finite) return n0;
    long total = n0.count;
    for (long m = 1; m < m_cut; ++m) {
        CountResult nm = count_channel(v, 2, static_cast<double>(m), opt);
        if (nm.cls != Finiteness::Finite) return nm;
        total += 2 * nm.count;
        if (nm.count == 0 && m * m > moment.value) break;
    }
    r.count = total;
    r.evidence = n0.evidence;
    r.x_max = n0.x_max;
    return r;
}

std::vector<std::pair<double, long>> node_growth_profile(
    const Potential& v, const std::vector<double>& windows,
    const CountOptions& opt) {
    std::vector<double> ws = windows;
    std::sort(ws.begin(), ws.end());
    if (ws.empty()) return {};
    SolutionTrace tr;
    if (v.space == Space::Line) {
        tr = integrate_phase([&v](double x) { return v(x); }, 0.0,
                             line_start(v, opt.window), ws.back(), M_PI / 2.0,
                             v.breakpoints(), opt);
    } else {
        tr = integrate_channel(v, v.dimension == 2 ? 0.0 : 0.5, 0.0, ws.back(), opt);
    }
    std::vector<std::pair<double, long>> out;
    for (double w : ws) {
        long n = static_cast<long>(
            std::upper_bound(tr.node_positions.begin(), tr.node_positions.end(), w) -
            tr.node_positions.begin());
        out.emplace_back(w, n);
    }
    return out;
}

}  // namespace qbound
