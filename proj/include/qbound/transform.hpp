#ifndef QBOUND_TRANSFORM_HPP
#define QBOUND_TRANSFORM_HPP

#include "qbound/potential.hpp"

namespace qbound {

// x = ln(r/R), U(x) = r^2 V(r): maps the 2D m = 0 radial problem to the line
// and back. Node positions transform as r = R e^x.

// line -> radial 2D: V(r) = U(ln(r/R)) / r^2
Potential log_map(const Potential& u, double R = 1.0);

// radial 2D -> line: U(x) = r^2 V(r) at r = R e^x
Potential inverse_log_map(const Potential& v, double R = 1.0);

// One more rung of the chain: W(r) = -1/(4 r^2 ln^2 r) + U(ln ln r)/(r^2 ln^2 r),
// defined for r >= r_min (> e so that ln ln r exists).
Potential iterated_log(const Potential& u, double r_min = 15.0);

// Radial problem in N dimensions recast in 2D form: adds (1 - N/2)^2 / r^2.
Potential nd_reduction(const Potential& v, int n_dim);

// Effective half-line potential of one angular channel:
// dim 2 adds (m^2 - 1/4)/r^2, dim 3 adds l(l+1)/r^2 with l = m.
Potential channel_reduction(const Potential& v, int dim, double m);

}  // namespace qbound

#endif
