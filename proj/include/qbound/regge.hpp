#ifndef QBOUND_REGGE_HPP
#define QBOUND_REGGE_HPP

#include <utility>
#include <vector>

#include "qbound/counting.hpp"
#include "qbound/potential.hpp"

namespace qbound::regge {

// E_i(m): the i-th channel eigenvalue continued in real angular momentum m.
// m_i is the zero-energy intercept; states on the trajectory with m >= 1
// contribute floor(m_i) bound states each (m_i exactly integer: one fewer,
// since a state at E = 0 is not bound).

struct Trajectory {
    int i{0};
    std::vector<std::pair<double, double>> samples;  // (m, E_i(m))
    double m_i{0.0};
};

// Zero-energy intercept of trajectory i, by bisection on the per-channel
// count; tolerance 1e-9 in m. Requires i < N_0.
double intercept(const Potential& v, int i, const CountOptions& opt = {});

// All intercepts m_0 > m_1 > ... (one per trajectory).
std::vector<double> intercepts(const Potential& v, const CountOptions& opt = {});

// Samples E_i(m) on m_grid (defaults to steps of 1/8 up to the intercept).
Trajectory trace(const Potential& v, int i,
                 std::vector<double> m_grid = {},
                 const CountOptions& opt = {});

long count_via_trajectories(const Potential& v, const CountOptions& opt = {});

struct MomentChain {
    double lhs{0.0};  // sum of floor*(m_i) over m_i >= 1
    double mid{0.0};  // (2/sqrt 3) sum sqrt(m_i^2 - 1/4)
    double rhs{0.0};  // (2/sqrt 3) * (1/2) int r V^- dr
    bool ok{false};
};
MomentChain moment_inequality_check(const Potential& v, const CountOptions& opt = {});

struct FhCheck {
    double fd{0.0};        // centered dE_i/dm
    double integral{0.0};  // 2m int u^2/r^2 dr with u normalized
    double rel_err{0.0};
};
// Feynman-Hellmann derivative check at one (i, m).
FhCheck feynman_hellmann_check(const Potential& v, int i, double m,
                               const CountOptions& opt = {});

// Intercepts through the 1D spectrum of U(x) = r^2 V(r) under x = ln r:
// m_i = sqrt(|e_i|) (equivalently sqrt(1/4 + |e_i'|) with the operator's
// +1/4 zero-point shift folded into e').
std::vector<double> intercepts_via_spectrum(const Potential& v,
                                            const CountOptions& opt = {});

// floor with the zero-energy tie rule above.
long floor_star(double m);

}  // namespace qbound::regge

#endif
