#include "qbound/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbound::specfun {

namespace {

constexpr double kSeamX = 2.0;      // branch switchover
constexpr double kOverflowX = 700.0;  // e^{-x} underflows usefully past here

// Ascending series. K0 = -(ln(x/2)+gamma) I0 + sum_k H_k q^k/(k!)^2,
// K1 = ln(x/2) I1 + 1/x - (x/4) sum_k (psi(k+1)+psi(k+2)) q^k/(k!(k+1)!),
// q = x^2/4. Cancellation grows with x; used only below the seam.
double k0_series(double x) {
    const double q = x * x / 4.0;
    double t = 1.0, i0 = 1.0, s = 0.0, hk = 0.0;
    for (int k = 1; k < 80; ++k) {
        t *= q / (static_cast<double>(k) * k);
        i0 += t;
        hk += 1.0 / k;
        s += t * hk;
        if (t * (hk + 1.0) < 1e-20 * (i0 + 1.0)) break;
    }
    return -(std::log(x / 2.0) + euler_gamma) * i0 + s;
}

double k1_series(double x) {
    const double q = x * x / 4.0;
    double t = 1.0, i1 = 1.0;
    double psi1 = -euler_gamma, psi2 = 1.0 - euler_gamma;
    double s = t * (psi1 + psi2);
    for (int k = 1; k < 80; ++k) {
        t *= q / (static_cast<double>(k) * (k + 1));
        i1 += t;
        psi1 += 1.0 / k;
        psi2 += 1.0 / (k + 1);
        s += t * (psi1 + psi2);
        if (t * 30.0 < 1e-20 * (i1 + 1.0)) break;
    }
    i1 *= x / 2.0;
    return std::log(x / 2.0) * i1 + 1.0 / x - (x / 4.0) * s;
}

// Trapezoidal rule on K_n(x) = int_0^inf cosh(n t) exp(-x cosh t) dt,
// exponentially scaled. The integrand is analytic and even, so the rule
// converges geometrically; the step shrinks like 1/sqrt(x) to track the
// narrowing peak.
double k_integral_scaled(int order, double x) {
    const double h = 0.25 / std::sqrt(std::max(1.0, x / 2.0));
    double s = 0.5;  // t = 0 term, cosh(0) = 1
    double t = h;
    for (int i = 0; i < 4000; ++i) {
        const double w = (order == 1) ? std::cosh(t) : 1.0;
        const double v = w * std::exp(-x * (std::cosh(t) - 1.0));
        s += v;
        if (v < 1e-20) break;
        t += h;
    }
    return s * h;
}

}  // namespace

double k_series(int order, double x) { return order == 0 ? k0_series(x) : k1_series(x); }

double k_integral(int order, double x) {
    return k_integral_scaled(order, x) * std::exp(-x);
}

double bessel_k_scaled(int order, double x) {
    if (x <= kSeamX) return k_series(order, x) * std::exp(x);
    return k_integral_scaled(order, x);
}

SpecFunResult bessel_k(int order, double x) {
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_k: order must be 0 or 1");
    if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
    SpecFunResult r;
    if (x > kOverflowX) {
        r.value = 0.0;
        r.underflow = true;
        r.est_rel_error = std::numeric_limits<double>::infinity();
        return r;
    }
    if (x <= kSeamX) {
        r.value = k_series(order, x);
        // cancellation between the log term and the sum
        r.est_rel_error = 1e-15 * std::max(1.0, std::exp(x));
    } else {
        r.value = k_integral(order, x);
        r.est_rel_error = 1e-13;
    }
    return r;
}

std::pair<SpecFunResult, SpecFunResult> bessel_jy(double nu, double x) {
    if (!(nu > 0.0) || nu > 10.0)
        throw std::domain_error("bessel_jy: requires 0 < nu <= 10");
    if (!(x > 0.0) || x > 1e3)
        throw std::domain_error("bessel_jy: requires 0 < x <= 1e3");
    SpecFunResult j, y;
    j.value = std::cyl_bessel_j(nu, x);
    y.value = std::cyl_neumann(nu, x);
    // Wronskian J_nu Y_nu' - J_nu' Y_nu = 2/(pi x); derivatives by recurrence.
    double jder, yder;
    if (nu >= 1.0) {
        jder = std::cyl_bessel_j(nu - 1.0, x) - (nu / x) * j.value;
        yder = std::cyl_neumann(nu - 1.0, x) - (nu / x) * y.value;
    } else {
        jder = (nu / x) * j.value - std::cyl_bessel_j(nu + 1.0, x);
        yder = (nu / x) * y.value - std::cyl_neumann(nu + 1.0, x);
    }
    const double wron = j.value * yder - jder * y.value;
    const double target = 2.0 / (M_PI * x);
    const double resid = std::abs(wron - target) / std::abs(target);
    j.est_rel_error = std::max(resid, 1e-15);
    y.est_rel_error = j.est_rel_error;
    return {j, y};
}

K0BoundCheck check_k0_bounds(double x, double a) {
    if (!(x > 0.0)) throw std::domain_error("check_k0_bounds: requires x > 0");
    if (!(a > 0.0) || a > 1.0) throw std::domain_error("check_k0_bounds: requires 0 < a <= 1");
    K0BoundCheck c;
    const double lnp = a < 1.0 ? std::log(1.0 / a) : 0.0;
    c.margin_i4 = lnp + bessel_k(0, x).value - bessel_k(0, a * x).value;
    c.margin_i8 = bessel_k(0, x).value - (std::log(1.0 / x) + std::log(2.0) - euler_gamma);
    c.holds = c.margin_i4 >= -1e-12 && c.margin_i8 > 0.0;
    return c;
}

}  // namespace qbound::specfun
