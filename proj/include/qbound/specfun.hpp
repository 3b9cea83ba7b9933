#ifndef QBOUND_SPECFUN_HPP
#define QBOUND_SPECFUN_HPP

#include <utility>

namespace qbound::specfun {

inline constexpr double euler_gamma = 0.577215664901532860606512090082;

struct SpecFunResult {
    double value{0.0};
    double est_rel_error{0.0};
    bool underflow{false};  // value flushed to zero (x beyond exp range)
};

// Modified Bessel K0/K1. Two branches: exact ascending series for x <= 2,
// exponentially scaled trapezoidal evaluation of the cosh integral above.
SpecFunResult bessel_k(int order, double x);

// Branch internals, exposed for the seam cross-check.
double k_series(int order, double x);
double k_integral(int order, double x);

// Scaled value e^x * K_order(x); safe for all x > 0 up to ~1e8.
double bessel_k_scaled(int order, double x);

// Ordinary Bessel functions of real order nu in (0, 10], x in (0, 1e3].
// Error estimate comes from the Wronskian residual.
std::pair<SpecFunResult, SpecFunResult> bessel_jy(double nu, double x);

struct K0BoundCheck {
    bool holds{false};
    double margin_i4{0.0};  // ln+(1/a) + K0(x) - K0(a*x)
    double margin_i8{0.0};  // K0(x) - (ln(1/x) + ln 2 - gamma)
};

// Verifies K0(a x) < ln+(1/a) + K0(x)  and  K0(x) > ln(1/x) + ln 2 - gamma.
K0BoundCheck check_k0_bounds(double x, double a);

}  // namespace qbound::specfun

#endif
