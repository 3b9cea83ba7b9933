#ifndef QBOUND_ORACLE_HPP
#define QBOUND_ORACLE_HPP

#include "qbound/potential.hpp"

namespace qbound::oracle {

// Finite-difference ground truth, independent of the phase integrator.

struct OracleGrid {
    double x_min{0.0};
    double x_max{0.0};  // 0 = choose from the potential's support
    int points{4096};
};

struct OracleCount {
    long count{0};
    long refined{0};  // same computation at 2x points
    bool stable{true};
};

// Negative-eigenvalue count of the Dirichlet tridiagonal discretization of
// -u'' + V u on [x_min, x_max], by a single Sturm/LDL pass at shift 0.
OracleCount fd_count_1d(const Potential& v, OracleGrid grid = {});

// Same for one reduced radial channel (dim 2: m; dim 3: l = m).
OracleCount fd_count_radial(const Potential& v, int dim, double m,
                            OracleGrid grid = {});

// 5-point-Laplacian lattice on [-L, L]^2, negative eigenvalues by sparse
// LDL^T inertia. points is the number of interior points per side.
OracleCount fd_count_2d_lattice(const Potential& v, double half_width,
                                int points = 192);

// Closed-form transcendental counters for the square well.
long well_count_1d(double depth, double half_width);
long well_count_3d_l0(double depth, double radius);

// Ground-state kappa (E = -kappa^2) of the 2D well, channel m, from the
// J_m / K_m log-derivative match; solved in ln kappa so weak coupling works.
double well_kappa_2d(double depth, double radius, int m = 0);

}  // namespace qbound::oracle

#endif
