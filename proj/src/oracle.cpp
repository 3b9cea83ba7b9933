#include "qbound/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "qbound/specfun.hpp"

namespace qbound::oracle {

namespace {

// Negative-eigenvalue count of the symmetric tridiagonal FD matrix via one
// LDL (Sturm) pass at shift 0: no eigensolver, exact inertia.
long sturm_count(const std::function<double(double)>& q, double a, double b, int n) {
    const double h = (b - a) / (n + 1);
    const double off = 1.0 / (h * h);
    long neg = 0;
    double d = 1.0;
    for (int i = 1; i <= n; ++i) {
        const double ai = 2.0 * off + q(a + i * h);
        d = (i == 1) ? ai : ai - off * off / d;
        if (d == 0.0) d = 1e-12 * off;
        if (d < 0.0) ++neg;
    }
    return neg;
}

OracleCount refine_pair(const std::function<double(double)>& q, double a, double b,
                        int n) {
    OracleCount r;
    r.count = sturm_count(q, a, b, n);
    r.refined = sturm_count(q, a, b, 2 * n);
    r.stable = r.count == r.refined;
    return r;
}

double default_box(const Potential& v, double floor_width) {
    const double se = v.support_end();
    const double edge = std::isfinite(se) ? se : 100.0;
    return std::max(floor_width, 2.0 * edge);
}

}  // namespace

OracleCount fd_count_1d(const Potential& v, OracleGrid grid) {
    if (v.space != Space::Line)
        throw std::invalid_argument("fd_count_1d: needs a line potential");
    if (grid.x_max <= grid.x_min) {
        const double sb = v.support_begin();
        const double w = default_box(v, 40.0);
        grid.x_min = (std::isfinite(sb) ? sb : -w) - 0.5 * w;
        grid.x_max = grid.x_min + 2.0 * w;
    }
    if (grid.points < 64) grid.points = 64;
    return refine_pair([&v](double x) { return v(x); }, grid.x_min, grid.x_max,
                       grid.points);
}

OracleCount fd_count_radial(const Potential& v, int dim, double m, OracleGrid grid) {
    if (v.space != Space::Radial)
        throw std::invalid_argument("fd_count_radial: needs a radial potential");
    const double nu = dim == 2 ? m : m + 0.5;
    const double shift = nu * nu - 0.25;
    if (grid.x_max <= grid.x_min) {
        grid.x_min = 0.0;
        grid.x_max = default_box(v, 40.0);
    }
    if (grid.points < 64) grid.points = 64;
    // first interior point at h keeps the -1/(4r^2) singularity harmless
    return refine_pair([&v, shift](double r) { return v(r) + shift / (r * r); },
                       grid.x_min, grid.x_max, grid.points);
}

namespace {

long lattice_count(const Potential& v, double half_width, int n) {
    const double h = 2.0 * half_width / (n + 1);
    const double off = 1.0 / (h * h);
    const int big = n * n;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(big) * 5);
    auto idx = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i) {
        const double x = -half_width + (i + 1) * h;
        for (int j = 0; j < n; ++j) {
            const double y = -half_width + (j + 1) * h;
            trip.emplace_back(idx(i, j), idx(i, j), 4.0 * off + v.eval_xy(x, y));
            if (i + 1 < n) trip.emplace_back(idx(i, j), idx(i + 1, j), -off);
            if (i > 0) trip.emplace_back(idx(i, j), idx(i - 1, j), -off);
            if (j + 1 < n) trip.emplace_back(idx(i, j), idx(i, j + 1), -off);
            if (j > 0) trip.emplace_back(idx(i, j), idx(i, j - 1), -off);
        }
    }
    Eigen::SparseMatrix<double> a(big, big);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(a);
    if (ldlt.info() != Eigen::Success) return -1;
    const auto& d = ldlt.vectorD();
    long neg = 0;
    for (int i = 0; i < d.size(); ++i)
        if (d[i] < 0.0) ++neg;
    return neg;
}

}  // namespace

OracleCount fd_count_2d_lattice(const Potential& v, double half_width, int points) {
    if (points < 64) points = 64;
    if (points > 1024) throw std::invalid_argument("fd_count_2d_lattice: grid too large");
    OracleCount r;
    r.count = lattice_count(v, half_width, points);
    if (r.count < 0) r.count = lattice_count(v, half_width, points + 7);
    const int fine = std::min(1024, points + points / 2);
    r.refined = lattice_count(v, half_width, fine);
    if (r.refined < 0) r.refined = lattice_count(v, half_width, fine + 7);
    r.stable = r.count == r.refined && r.count >= 0;
    return r;
}

long well_count_1d(double depth, double half_width) {
    if (depth <= 0.0) return 0;
    const double t = 2.0 * half_width * std::sqrt(depth) / M_PI;
    // integer t: the newest state sits exactly at zero energy -> not bound
    if (std::abs(t - std::round(t)) < 1e-9) return static_cast<long>(std::round(t));
    return static_cast<long>(std::floor(t)) + 1;
}

long well_count_3d_l0(double depth, double radius) {
    if (depth <= 0.0) return 0;
    const double t = radius * std::sqrt(depth) / M_PI + 0.5;
    if (std::abs(t - std::round(t)) < 1e-9) return static_cast<long>(std::round(t)) - 1;
    return static_cast<long>(std::floor(t));
}

double well_kappa_2d(double depth, double radius, int m) {
    if (!(depth > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("well_kappa_2d: needs depth, radius > 0");
    const double g = depth, a = radius;

    // K_{m-1}(x)/K_m(x) by upward ratio recurrence from K0/K1 (K_{-1} = K_1)
    auto k_ratio = [m](double x) {
        const double k0 = specfun::bessel_k_scaled(0, x);
        const double k1 = specfun::bessel_k_scaled(1, x);
        if (m == 0) return k1 / k0;
        double r = k0 / k1;
        for (int j = 1; j < m; ++j) r = 1.0 / (r + 2.0 * j / x);
        return r;  // = K_{m-1}/K_m
    };
    // match psi'/psi at r=a between J_m(kr) inside and K_m(kappa r) outside
    auto f = [&](double t) {
        const double kap = std::exp(t);
        const double k = std::sqrt(std::max(g - kap * kap, 1e-300));
        const double x = k * a;
        double inner;
        if (m == 0)
            inner = -k * std::cyl_bessel_j(1.0, x) / std::cyl_bessel_j(0.0, x);
        else
            inner = k * std::cyl_bessel_j(m - 1.0, x) / std::cyl_bessel_j(m * 1.0, x) -
                    m / a;
        const double y = kap * a;
        const double outer = -kap * k_ratio(y) - m / a;
        return inner - outer;
    };

    const double t_hi = 0.5 * std::log(g) - 1e-9;
    const double t_lo = -120.0;
    // scan downward for the largest-kappa sign change (= ground state)
    const int ns = 4000;
    double prev_t = t_hi, prev_f = f(t_hi);
    for (int i = 1; i <= ns; ++i) {
        const double t = t_hi + (t_lo - t_hi) * i / ns;
        const double ft = f(t);
        if (std::isfinite(ft) && std::isfinite(prev_f) && (ft < 0) != (prev_f < 0)) {
            double lo = t, hi = prev_t, flo = ft;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((f(mid) < 0) == (flo < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return std::exp(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_f = ft;
    }
    throw std::runtime_error("well_kappa_2d: no matching root found");
}

}  // namespace qbound::oracle
