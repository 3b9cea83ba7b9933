#include "qbound/regge.hpp"

#include <cmath>
#include <stdexcept>

#include "qbound/energy.hpp"
#include "qbound/quadrature.hpp"
#include "qbound/transform.hpp"

namespace qbound::regge {

namespace {

long channel_count(const Potential& v, double m, const CountOptions& opt) {
    auto c = count_channel(v, 2, m, opt);
    if (c.cls != Finiteness::Finite)
        throw std::domain_error("regge: channel count not finite");
    return c.count;
}

}  // namespace

long floor_star(double m) {
    const double r = std::round(m);
    if (std::abs(m - r) < 1e-9) return static_cast<long>(r) - 1;
    return static_cast<long>(std::floor(m));
}

double intercept(const Potential& v, int i, const CountOptions& opt) {
    if (channel_count(v, 0.0, opt) <= i)
        throw std::domain_error("regge: no trajectory with this index");
    // count(m) > i holds at m = 0; find where it stops
    double lo = 0.0, hi = 1.0;
    while (channel_count(v, hi, opt) > i) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("regge: intercept out of range");
    }
    while (hi - lo > 1e-10 * (1.0 + hi)) {
        const double mid = 0.5 * (lo + hi);
        if (channel_count(v, mid, opt) > i)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> intercepts(const Potential& v, const CountOptions& opt) {
    const long n0 = channel_count(v, 0.0, opt);
    std::vector<double> out;
    for (long i = 0; i < n0; ++i) out.push_back(intercept(v, static_cast<int>(i), opt));
    return out;
}

Trajectory trace(const Potential& v, int i, std::vector<double> m_grid,
                 const CountOptions& opt) {
    Trajectory t;
    t.i = i;
    t.m_i = intercept(v, i, opt);
    if (m_grid.empty())
        for (double m = 0.0; m < t.m_i; m += 0.125) m_grid.push_back(m);
    for (double m : m_grid) {
        if (m < 0.0 || m >= t.m_i) continue;
        t.samples.emplace_back(m, energy::eigenvalue(v, 2, m, i, opt));
    }
    return t;
}

long count_via_trajectories(const Potential& v, const CountOptions& opt) {
    if (v.pieces.empty()) return 0;
    const auto ms = intercepts(v, opt);
    long n = static_cast<long>(ms.size());  // N_0: one state per trajectory at m = 0
    for (double mi : ms)
        if (mi >= 1.0) n += 2 * floor_star(mi);
    return n;
}

MomentChain moment_inequality_check(const Potential& v, const CountOptions& opt) {
    MomentChain c;
    if (v.pieces.empty()) {
        c.ok = true;
        return c;
    }
    const auto ms = intercepts(v, opt);
    const double k = 2.0 / std::sqrt(3.0);
    for (double mi : ms) {
        if (mi >= 1.0) c.lhs += static_cast<double>(floor_star(mi));
        if (mi >= 0.5) c.mid += k * std::sqrt(mi * mi - 0.25);
    }
    auto moment = quad::integrate_split(
        [&v](double r) { return r * std::max(-v(r), 0.0); }, 0.0, v.support_end(),
        v.breakpoints());
    c.rhs = k * 0.5 * moment.value;
    c.ok = c.lhs <= c.mid + 1e-9 && c.mid <= c.rhs + 1e-9;
    return c;
}

namespace {

// u, u' and the integrals int u^2/r^2, int u^2 over [r0, r_sup] by fixed-step
// RK4 on (u, u', I1, I2); u is integrated directly (no phase), fine steps.
struct WaveIntegrals {
    double u, du, i1, i2;
};

WaveIntegrals integrate_wave(const Potential& v, double nu, double e, double r0,
                             double r1) {
    auto q = [&](double r) { return v(r) + (nu * nu - 0.25) / (r * r) - e; };
    std::vector<double> edges{r0};
    for (double b : v.breakpoints())
        if (b > r0 && b < r1) edges.push_back(b);
    edges.push_back(r1);
    std::sort(edges.begin(), edges.end());

    double u = 1e-3, du = 1e-3 * (nu + 0.5) / r0;  // u ~ r^{nu+1/2}
    double i1 = 0.0, i2 = 0.0;
    for (size_t s = 0; s + 1 < edges.size(); ++s) {
        const double a = edges[s], b = edges[s + 1];
        const bool logstep = a < 0.05 * b;
        const int n = 3000;
        double x = a;
        for (int j = 0; j < n; ++j) {
            const double xn = logstep ? a * std::pow(b / a, (j + 1.0) / n)
                                      : a + (b - a) * (j + 1.0) / n;
            const double h = xn - x;
            auto f = [&](double xx, double uu, double dd, double& fu, double& fd,
                         double& f1, double& f2) {
                fu = dd;
                fd = q(xx) * uu;
                f1 = uu * uu / (xx * xx);
                f2 = uu * uu;
            };
            double k1u, k1d, k11, k12, k2u, k2d, k21, k22, k3u, k3d, k31, k32,
                k4u, k4d, k41, k42;
            f(x, u, du, k1u, k1d, k11, k12);
            f(x + h / 2, u + h / 2 * k1u, du + h / 2 * k1d, k2u, k2d, k21, k22);
            f(x + h / 2, u + h / 2 * k2u, du + h / 2 * k2d, k3u, k3d, k31, k32);
            f(x + h, u + h * k3u, du + h * k3d, k4u, k4d, k41, k42);
            i1 += h / 6 * (k11 + 2 * k21 + 2 * k31 + k41);
            i2 += h / 6 * (k12 + 2 * k22 + 2 * k32 + k42);
            u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
            du += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
            x = xn;
        }
    }
    return {u, du, i1, i2};
}

}  // namespace

FhCheck feynman_hellmann_check(const Potential& v, int i, double m,
                               const CountOptions& opt) {
    FhCheck c;
    const double dm = 1e-4 * std::max(1.0, m);
    const double ep = energy::eigenvalue(v, 2, m + dm, i, opt);
    const double em = energy::eigenvalue(v, 2, m - dm, i, opt);
    c.fd = (ep - em) / (2.0 * dm);

    const double e = energy::eigenvalue(v, 2, m, i, opt);
    const double kappa = std::sqrt(-e);
    double sup = 0.0;
    for (const auto& p : v.pieces) sup = std::max(sup, p.hi);
    if (!std::isfinite(sup))
        throw std::domain_error("feynman_hellmann_check: needs compact support");

    auto w = integrate_wave(v, m, e, opt.inner_factor, sup);
    // analytic tail u = C sqrt(r) K_m(kappa r) matched at sup
    const double km = std::cyl_bessel_k(m, kappa * sup);
    const double cc = w.u / (std::sqrt(sup) * km);
    auto k2 = [&](double r) {
        const double kv = std::cyl_bessel_k(m, kappa * r);
        return cc * cc * r * kv * kv;
    };
    auto tail2 = quad::integrate_to_inf(k2, sup);
    auto tail1 = quad::integrate_to_inf([&](double r) { return k2(r) / (r * r); }, sup);
    const double i1 = w.i1 + tail1.value, i2 = w.i2 + tail2.value;
    c.integral = 2.0 * m * i1 / i2;
    c.rel_err = std::abs(c.fd - c.integral) / std::max(std::abs(c.fd), 1e-300);
    return c;
}

std::vector<double> intercepts_via_spectrum(const Potential& v,
                                            const CountOptions& opt) {
    const Potential u = inverse_log_map(v, 1.0);
    auto es = energy::spectrum_1d(u, opt);
    // -psi'' + r^2 V psi = e psi on x = ln r gives e = -m^2; quoting the
    // operator with its +1/4 zero-point shift this reads m = sqrt(1/4 + |e|).
    std::vector<double> out;
    for (double e : es) out.push_back(std::sqrt(-e));  // e < 0
    return out;  // e ascending, so m_0 > m_1 > ... like the trajectory order
}

}  // namespace qbound::regge
