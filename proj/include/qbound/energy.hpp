#ifndef QBOUND_ENERGY_HPP
#define QBOUND_ENERGY_HPP

#include <string>
#include <vector>

#include "qbound/counting.hpp"
#include "qbound/potential.hpp"

namespace qbound::energy {

// Eigenvalue search runs in t = ln kappa (E = -kappa^2), so binding energies
// down to ~1e-130 resolve even though kappa^2 underflows any wave function.

// i-th eigenvalue (i = number of radial nodes) of one channel. dim 1 = line
// (m ignored), dim 2/3 = reduced radial channel; m may be non-integer.
double eigenvalue(const Potential& v, int dim, double m, int i,
                  const CountOptions& opt = {});

// All negative eigenvalues of a 1D line potential, ascending.
std::vector<double> spectrum_1d(const Potential& v, const CountOptions& opt = {});

struct EnergyBracket {
    double upper_kappa2{0.0};
    double lower_kappa2{0.0};
    double x_value{0.0};    // log-moment ratio X entering both endpoints
    double r_used{0.0};     // R at which the lower bound is largest
    bool upper_ok{false};   // requires X > K0(1)
    bool lower_ok{false};   // requires strictly attractive V on some disk
    std::string note;
};

// Ground-state binding-energy bracket for a weakly coupled 2D potential g*V.
EnergyBracket ground_bracket_2d(const Potential& shape, double g,
                                const GridSpec& grid = {});

struct ScalingFit {
    std::vector<std::pair<double, double>> samples;  // (g, kappa^2)
    double c{0.0};         // ln kappa^2 ~ a - c/g
    double a{0.0};
    double residual{0.0};  // max relative deviation of ln kappa^2 from the fit
};

// Weak-coupling decay of the ground state for couplings g_list.
ScalingFit exp_small_scaling(const Potential& shape,
                             const std::vector<double>& g_list);

// Outer log-derivative of the decaying channel solution u = sqrt(r) K_nu(kr).
double outer_log_derivative(double nu, double kappa, double r);

}  // namespace qbound::energy

#endif
