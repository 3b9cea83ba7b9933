#ifndef QBOUND_COUNTING_HPP
#define QBOUND_COUNTING_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qbound/potential.hpp"

namespace qbound {

// Prüfer phase integration: u = rho sin(theta), u' = rho cos(theta);
// theta' = cos^2(theta) - (V_eff - E) sin^2(theta). theta crosses multiples of
// pi only upward, so the node count is the number of such crossings.

struct SolutionTrace {
    std::vector<double> abscissae;
    std::vector<double> theta;
    std::vector<double> lnrho;
    std::vector<double> node_positions;
    double x_min{0.0}, x_max{0.0};
    double energy{0.0};

    std::size_t nodes() const { return node_positions.size(); }
    double theta_end() const { return theta.empty() ? 0.0 : theta.back(); }
};

enum class Finiteness { Finite, Infinite, Marginal };

struct CountResult {
    long count{0};                 // meaningful when cls == Finite
    Finiteness cls{Finiteness::Finite};
    long lower{0}, upper{0};       // window bracket, filled for Marginal
    std::string evidence;          // which tail test decided the class
    double x_min{0.0}, x_max{0.0};
};

struct CountOptions {
    double tol{1e-10};         // local error tolerance per step
    double phase_cap{0.392699081698724};  // max phase advance per step (pi/8)
    double window{1e4};        // outer truncation for non-compact tails
    double inner_factor{1e-6}; // inner start radius for radial channels
};

// Integrates theta, ln rho over [x0, x1] against an effective potential.
// `breaks` lists abscissae the stepper must land on exactly.
SolutionTrace integrate_phase(const std::function<double(double)>& v_eff,
                              double e, double x0, double x1, double theta0,
                              const std::vector<double>& breaks,
                              const CountOptions& opt = {});

// Zero-energy run of one reduced channel; nu = m (dim 2) or l + 1/2 (dim 3).
SolutionTrace integrate_channel(const Potential& v, double nu, double e,
                                double r_max, const CountOptions& opt = {});

CountResult count_bound_states_1d(const Potential& v, const CountOptions& opt = {});
CountResult count_channel(const Potential& v, int dim, double m,
                          const CountOptions& opt = {});
CountResult count_total_2d(const Potential& v, const CountOptions& opt = {});

struct TailClass {
    Finiteness cls{Finiteness::Finite};
    std::string evidence;
};

// Infinitude classifier from the asymptotic tail monomials.
TailClass classify_tail(const Potential& v);
// Same, with the channel's centrifugal term folded in (2D channel nu = m).
TailClass classify_tail_channel(const Potential& v, double nu);

// Node counts over nested windows [x_min, w] for each w; shows growth or
// saturation of the zero-energy node count.
std::vector<std::pair<double, long>> node_growth_profile(
    const Potential& v, const std::vector<double>& windows,
    const CountOptions& opt = {});

// Leftmost abscissa a line integration must start from: the smallest finite
// piece edge, or the point where a left-infinite tail drops below 1e-16.
double line_start(const Potential& v, double fallback);

// Extra zero-energy node beyond x_sup, where V_eff ~ T/x^2 outside:
// u = a x^{1/2+nu} + b x^{1/2-nu}, nu = sqrt(1/4 + T); one more node iff the
// growing-mode coefficient disagrees in sign with u(x_sup).
int tail_node_correction(double x_sup, double theta, double nu_out);

}  // namespace qbound

#endif
