#ifndef QBOUND_QUADRATURE_HPP
#define QBOUND_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qbound::quad {

struct QuadResult {
    double value{0.0};
    double abs_error{0.0};
    bool converged{true};
};

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-9, double rel_tol = 1e-9,
                     int max_depth = 48);

// Semi-infinite [a, inf), via r = a + t/(1-t). Integrand must decay.
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            double abs_tol = 1e-9, double rel_tol = 1e-9);

// Splits at the supplied breakpoints (sorted, within [a,b]) before adapting;
// b may be +inf.
QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks,
                           double abs_tol = 1e-9, double rel_tol = 1e-9);

}  // namespace qbound::quad

#endif
