// End-to-end acceptance gate: one pass/fail line per criterion, exit 0 only
// when all twelve hold. Run via ctest or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"
#include "qbound/counting.hpp"
#include "qbound/energy.hpp"
#include "qbound/oracle.hpp"
#include "qbound/potential.hpp"
#include "qbound/regge.hpp"
#include "qbound/specfun.hpp"
#include "qbound/verify.hpp"

using namespace qbound;

namespace {

int g_failed = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, what,
                detail.c_str());
    if (!ok) ++g_failed;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Potential annulus_well(double depth, double lo, double hi) {
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    v.pieces.push_back({lo, hi, enumber(-depth), ""});
    return v;
}

Potential truncated_tail_line(double lambda, double lo, double hi) {
    Potential v;
    v.space = Space::Line;
    v.dimension = 1;
    v.pieces.push_back({lo, hi, parse_expr("-" + std::to_string(lambda) +
                                           "/x^2"),
                        ""});
    return v;
}

Potential double_well_line(double depth) {
    Potential v;
    v.space = Space::Line;
    v.dimension = 1;
    v.pieces.push_back({-2.0, -1.0, enumber(-depth), ""});
    v.pieces.push_back({1.0, 2.0, enumber(-depth), ""});
    return v;
}

Potential two_disks(double depth, double radius, double sep) {
    auto a = make_disk_well(depth, radius, -sep, 0.0);
    auto b = make_disk_well(depth, radius, sep, 0.0);
    a.features.push_back(b.features[0]);
    return a;
}

// ---- 1: phase counts equal finite-difference counts on the catalog ---------

struct CatalogCase {
    std::string name;
    Potential v;
    int dim;       // 1 = line, 2/3 = one radial channel
    double m;      // channel index when dim > 1
};

std::vector<CatalogCase> oracle_catalog() {
    return {
        {"well_1d_g41", make_square_well_1d(41.0, 1.0), 1, 0},
        {"well_1d_g1", make_square_well_1d(1.0, 1.0), 1, 0},
        {"double_well_1d", double_well_line(3.0), 1, 0},
        {"delta_line", make_delta_line(2.0, 0.05), 1, 0},
        {"well_2d_g1_m0", make_square_well(1.0, 1.0, 2), 2, 0},
        {"well_2d_g12_m1", make_square_well(12.0, 1.0, 2), 2, 1},
        {"well_2d_g100_m0", make_square_well(100.0, 1.0, 2), 2, 0},
        {"well_2d_g100_m3", make_square_well(100.0, 1.0, 2), 2, 3},
        {"well_3d_g100_l0", make_square_well(100.0, 1.0, 3), 3, 0},
        {"annulus_2_3", annulus_well(1.0, 2.0, 3.0), 2, 0},
        {"delta_shell", make_delta_shell(0.5, 1.0, 0.05), 2, 0},
        {"trunc_tail_1d", truncated_tail_line(0.6, 1.0, 50.0), 1, 0},
    };
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    int bad = 0;
    std::string detail;
    for (const auto& c : oracle_catalog()) {
        long phase = c.dim == 1 ? count_bound_states_1d(c.v).count
                                : count_channel(c.v, c.dim, c.m).count;
        auto fd = c.dim == 1 ? oracle::fd_count_1d(c.v)
                             : oracle::fd_count_radial(c.v, c.dim, c.m);
        if (phase != fd.count || !fd.stable) {
            ++bad;
            detail += c.name + ": phase " + std::to_string(phase) + " vs fd " +
                      std::to_string(fd.count) + "; ";
        }
    }
    double dt = seconds_since(t0);
    report(1, "phase counts equal FD oracle on 12-potential catalog",
           bad == 0 && dt < 10.0,
           bad ? detail : "12/12 exact, " + std::to_string(dt) + " s");
}

// ---- 2: bilinear/log-moment sandwich J <= I(R_min) <= 2J -------------------

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    auto suite = verify::suite_sandwich(200, 7);
    auto w = make_square_well(1.0, 1.0, 2);
    double j = bounds::newton_seto(w).j;
    double i = bounds::two_d_m0_bounds(w).i_at_rmin;
    bool anchors = std::abs(j - 0.125) < 1e-6 &&
                   std::abs(i - std::log(2.0) / 4.0) < 1e-6;
    double dt = seconds_since(t0);
    report(2, "J <= I(R_min) <= 2J on 200 random profiles + well anchors",
           suite.ok() && anchors && dt < 30.0,
           std::to_string(suite.passed) + "/200, J=" + std::to_string(j) +
               ", I=" + std::to_string(i) + ", " + std::to_string(dt) + " s");
}

// ---- 3: every applicable bound dominates the exact count -------------------

void criterion_3() {
    int violations = 0, checked = 0;
    std::string detail;
    auto note = [&](const std::string& name, const std::string& id,
                    double value, long count) {
        ++checked;
        if (value < double(count)) {
            ++violations;
            detail += name + "/" + id + ": " + std::to_string(value) + " < " +
                      std::to_string(count) + "; ";
        }
    };
    for (const auto& c : oracle_catalog()) {
        if (c.dim == 1) {
            long n = count_bound_states_1d(c.v).count;
            auto [lin, prod] = bounds::one_d_bounds(c.v);
            if (lin.applicable) note(c.name, lin.id, lin.value, n);
            if (prod.applicable) note(c.name, prod.id, prod.value, n);
        } else if (c.dim == 2) {
            long n0 = count_channel(c.v, 2, 0.0).count;
            auto m0 = bounds::two_d_m0_bounds(c.v);
            if (m0.ok) {
                note(c.name, "TWO_D_M0_LOG", 1.0 + m0.i_at_rmin, n0);
                note(c.name, "TWO_D_M0_PRODUCT", m0.product_bound, n0);
            }
            note(c.name, "NEWTON_SETO", bounds::newton_seto(c.v).bound.value, n0);
            note(c.name, "TOTAL_2D", bounds::total_2d(c.v).value,
                 count_total_2d(c.v).count);
            for (double m : {1.0, 2.0}) {
                auto b = bounds::bargmann_channel(c.v, 2, m);
                if (b.applicable)
                    note(c.name, b.id + "_m" + std::to_string(int(m)), b.value,
                         count_channel(c.v, 2, m).count);
            }
        } else {
            auto b = bounds::bargmann_channel(c.v, 3, c.m);
            if (b.applicable)
                note(c.name, b.id, b.value, count_channel(c.v, 3, c.m).count);
        }
    }
    report(3, "all applicable closed-form bounds >= exact counts",
           violations == 0,
           violations ? detail
                      : std::to_string(checked) + " comparisons, 0 violations");
}

// ---- 4: exact Bessel solution of the log-power tail ------------------------

void criterion_4() {
    auto v = make_log_power_tail(1.0, 2.0, 1.5);  // g=1, R=2, alpha=3/2
    CountOptions opt;
    opt.tol = 1e-12;
    auto tr = integrate_channel(v, 0.0, 0.0, 1e9, opt);
    // closed form beyond R: u = sqrt(r ln r)[A J_2(z) + B Y_2(z)],
    // z = 4 (ln r)^{1/4} (nu = 1/(2 - alpha) = 2)
    auto basis = [](double r, double& f1, double& f2) {
        double z = 4.0 * std::pow(std::log(r), 0.25);
        auto [j, y] = specfun::bessel_jy(2.0, z);
        double s = std::sqrt(r * std::log(r));
        f1 = s * j.value;
        f2 = s * y.value;
    };
    std::vector<double> rs, us;
    double ref = 0.0;
    for (size_t i = 0; i < tr.abscissae.size(); ++i) {
        if (tr.abscissae[i] < 2.0000001) continue;
        if (ref == 0.0) ref = tr.lnrho[i];
        rs.push_back(tr.abscissae[i]);
        us.push_back(std::exp(tr.lnrho[i] - ref) * std::sin(tr.theta[i]));
    }
    auto pick = [&](double target) {
        size_t best = 0;
        double bd = 1e300;
        for (size_t i = 0; i < rs.size(); ++i)
            if (std::abs(rs[i] - target) < bd) bd = std::abs(rs[i] - target), best = i;
        return best;
    };
    size_t i1 = pick(3.0), i2 = pick(6.0);
    double a1, b1, a2, b2;
    basis(rs[i1], a1, b1);
    basis(rs[i2], a2, b2);
    double det = a1 * b2 - a2 * b1;
    double A = (us[i1] * b2 - us[i2] * b1) / det;
    double B = (a1 * us[i2] - a2 * us[i1]) / det;
    double worst = 0.0;
    for (size_t i = 0; i < rs.size(); ++i) {
        double f1, f2;
        basis(rs[i], f1, f2);
        double fit = A * f1 + B * f2;
        double env = std::hypot(A * f1, B * f2) + std::abs(fit);
        worst = std::max(worst, std::abs(us[i] - fit) / env);
    }
    // zeros of A J_2 + B Y_2 mapped back to r, vs the integrated nodes
    auto comb = [&](double z) {
        auto [j, y] = specfun::bessel_jy(2.0, z);
        return A * j.value + B * y.value;
    };
    std::vector<double> zeros;
    for (double z = 4.0 * std::pow(std::log(2.0), 0.25);
         zeros.size() < tr.nodes() && z < 12.0; z += 1e-3) {
        if (comb(z) * comb(z + 1e-3) < 0.0) {
            double lo = z, hi = z + 1e-3;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                (comb(lo) * comb(mid) <= 0.0 ? hi : lo) = mid;
            }
            zeros.push_back(std::exp(std::pow(0.5 * (lo + hi) / 4.0, 4.0)));
        }
    }
    double node_err = 0.0;
    for (size_t k = 0; k < zeros.size(); ++k)
        node_err = std::max(node_err, std::abs(tr.node_positions[k] - zeros[k]) /
                                          zeros[k]);
    bool ok = tr.nodes() >= 2 && zeros.size() == tr.nodes() && worst < 1e-6 &&
              node_err < 1e-5;
    report(4, "log-power tail matches Bessel closed form", ok,
           "fit rel err " + fmt(worst) + ", node rel err " + fmt(node_err));
}

// ---- 5: delta-shell node at r0 e^{1/g} -------------------------------------

void criterion_5() {
    const double target = std::exp(2.0);  // g = 0.5, r0 = 1
    auto run = [&](double eps) {
        auto tr = integrate_channel(make_delta_shell(0.5, 1.0, eps), 0.0, 0.0,
                                    100.0);
        return tr.nodes() == 1 ? tr.node_positions[0] : -1.0;
    };
    double n3 = run(1e-3), n4 = run(1e-4);
    double e3 = std::abs(n3 - target) / target;
    double e4 = std::abs(n4 - target) / target;
    report(5, "delta-shell zero-energy node at e^2", n3 > 0 && n4 > 0 &&
               e3 < 0.01 && e4 < e3,
           "eps=1e-3: rel " + std::to_string(e3) + ", eps=1e-4: rel " +
               std::to_string(e4));
}

// ---- 6: node growth and the infinitude classifier --------------------------

void criterion_6() {
    bool ok = true;
    std::string detail;
    auto t = make_inverse_square_tail(1.25, 1.0);
    std::vector<double> windows;
    for (int k = 1; k <= 5; ++k) windows.push_back(std::exp(k * M_PI));
    auto prof = node_growth_profile(t, windows);
    for (int k = 1; k <= 5; ++k)
        if (prof[k - 1].second < k - 1 || prof[k - 1].second > k + 1) {
            ok = false;
            detail += "window e^{" + std::to_string(k) + "pi}: " +
                      std::to_string(prof[k - 1].second) + "; ";
        }
    auto expect = [&](const Potential& v, Finiteness want, const char* name) {
        if (classify_tail(v).cls != want) {
            ok = false;
            detail += std::string(name) + " misclassified; ";
        }
    };
    expect(t, Finiteness::Infinite, "lambda=5/4");
    expect(make_log_tail(2.0, 1.0, 2.0), Finiteness::Infinite, "log mu=2");
    expect(make_log_log_tail(2.0, 0.0, 10.0), Finiteness::Infinite, "loglog");
    expect(make_log_power_tail(1.0, 2.0, 1.5), Finiteness::Infinite,
           "log-power");
    expect(make_inverse_square_tail(0.125, 1.0), Finiteness::Finite,
           "lambda=1/8");
    report(6, "node growth k +/- 1 per e^pi window; classifier verdicts", ok,
           ok ? "5 windows + 5 verdicts" : detail);
}

// ---- 7: weak-coupling energy bracket and exponential scaling ---------------

void criterion_7() {
    auto shape = make_square_well(1.0, 1.0, 2);
    double kap2 = -energy::eigenvalue(make_square_well(0.1, 1.0, 2), 2, 0.0, 0);
    auto br = energy::ground_bracket_2d(shape, 0.1);
    bool inside = kap2 >= 1.3e-18 && kap2 <= 2.7e-17 &&
                  br.lower_kappa2 <= kap2 && kap2 <= br.upper_kappa2;
    bool logs_ok =
        std::abs(std::log(br.upper_kappa2) - std::log(2.6969e-17)) <
            0.05 * std::abs(std::log(2.6969e-17)) &&
        std::abs(std::log(br.lower_kappa2) - std::log(1.3474e-18)) <
            0.05 * std::abs(std::log(1.3474e-18));
    auto fit = energy::exp_small_scaling(shape, {0.05, 0.1, 0.2});
    bool scaling_ok = fit.residual < 0.05;
    report(7, "g=0.1 bracket containment and ln kappa^2 ~ -c/g scaling",
           inside && logs_ok && scaling_ok,
           "kappa^2=" + fmt(kap2) + ", c=" + fmt(fit.c) + ", residual=" +
               fmt(fit.residual));
}

// ---- 8: Lieb-Thirring with the optimal 1/2 constant ------------------------

void criterion_8() {
    auto lt = bounds::lieb_thirring_check(make_delta_line(2.0, 1e-4));
    double ratio = lt.sum_sqrt / lt.half_integral;
    bool ok = lt.ok && std::abs(ratio - 1.0) < 1e-3;
    std::string detail = "delta ratio " + std::to_string(ratio);
    for (double depth : {1.0, 41.0, 4.0 * M_PI * M_PI}) {
        auto c = bounds::lieb_thirring_check(make_square_well_1d(depth, 1.0));
        if (!c.ok || c.sum_sqrt >= c.half_integral) {
            ok = false;
            detail += "; well depth " + std::to_string(depth) + " not strict";
        }
    }
    report(8, "sum sqrt|e| saturates (1/2) int U^- only for the delta", ok,
           detail);
}

// ---- 9: Regge trajectory consistency ---------------------------------------

void criterion_9() {
    bool ok = true;
    std::string detail;
    for (double g : {1.0, 25.0}) {
        auto w = make_square_well(g, 1.0, 2);
        long via = regge::count_via_trajectories(w);
        long tot = count_total_2d(w).count;
        if (via != tot) {
            ok = false;
            detail += "g=" + std::to_string(g) + ": " + std::to_string(via) +
                      " vs " + std::to_string(tot) + "; ";
        }
    }
    auto w = make_square_well(25.0, 1.0, 2);
    auto ms = regge::intercepts(w);
    auto via = regge::intercepts_via_spectrum(w);
    double ierr = 0.0;
    for (size_t i = 0; i < ms.size() && i < via.size(); ++i)
        ierr = std::max(ierr, std::abs(ms[i] - via[i]));
    if (ms.size() != via.size() || ierr > 1e-6) ok = false;
    auto fh = regge::feynman_hellmann_check(w, 0, 1.0);
    if (fh.rel_err > 1e-4) ok = false;
    report(9, "trajectory counts, spectral intercepts, Feynman-Hellmann", ok,
           detail + "intercept err " + fmt(ierr) + ", dE/dm rel " +
               fmt(fh.rel_err));
}

// ---- 10: semiclassical trend N(g) ~ g/4 ------------------------------------

void criterion_10() {
    auto t0 = std::chrono::steady_clock::now();
    long n100 = count_total_2d(make_square_well(100.0, 1.0, 2)).count;
    long n400 = count_total_2d(make_square_well(400.0, 1.0, 2)).count;
    double r100 = n100 / 25.0, r400 = n400 / 100.0;
    double dt = seconds_since(t0);
    bool ok = r400 >= 0.6 && r400 <= 1.1 &&
              std::abs(r400 - 1.0) < std::abs(r100 - 1.0) && dt < 120.0;
    report(10, "N(g)/(g/4) in [0.6,1.1] at g=400, approaching 1 from g=100",
           ok,
           "N(100)=" + std::to_string(n100) + " (" + std::to_string(r100) +
               "), N(400)=" + std::to_string(n400) + " (" +
               std::to_string(r400) + "), " + std::to_string(dt) + " s");
}

// ---- 11: K0/K1 comparison inequalities -------------------------------------

void criterion_11() {
    auto suite = verify::suite_k0(40);
    double k01 = specfun::bessel_k(0, 1.0).value;
    bool ok = suite.ok() && std::abs(k01 - 0.4210) < 1e-4;
    report(11, "K0/K1 inequality grid non-negative; K0(1) anchor", ok,
           std::to_string(suite.passed) + " grid points, K0(1)=" +
               std::to_string(k01));
}

// ---- 12: rearrangement conjecture harness ----------------------------------

void criterion_12() {
    bool ok = true;
    std::string detail;
    // radial inputs: conjecture >= total, equality for decreasing profiles
    std::vector<std::pair<std::string, Potential>> radial = {
        {"well_g1", make_square_well(1.0, 1.0, 2)},
        {"well_g9", make_square_well(9.0, 1.0, 2)},
        {"annulus", annulus_well(1.0, 2.0, 3.0)},
    };
    for (auto& [name, v] : radial) {
        double conj = bounds::conjecture_rhs(v).value;
        double tot = bounds::total_2d(v).value;
        if (conj < tot - 1e-3) {
            ok = false;
            detail += name + ": conj " + std::to_string(conj) + " < total " +
                      std::to_string(tot) + "; ";
        }
    }
    double cw = bounds::conjecture_rhs(make_square_well(1.0, 1.0, 2)).value;
    double tw = bounds::total_2d(make_square_well(1.0, 1.0, 2)).value;
    if (std::abs(cw - tw) > 1e-3) {
        ok = false;
        detail += "decreasing profile not coincident: " + std::to_string(cw) +
                  " vs " + std::to_string(tw) + "; ";
    }
    // non-central lattice cases; a counterexample is reported, not failed
    std::vector<std::pair<std::string, Potential>> lattice = {
        {"disk_g5_off2", make_disk_well(5.0, 1.0, 2.0, 0.0)},
        {"disk_g1_off3", make_disk_well(1.0, 1.0, 3.0, 0.0)},
        {"disk_g10_center", make_disk_well(10.0, 0.8, 0.0, 0.0)},
        {"two_disks_g3", two_disks(3.0, 1.0, 2.5)},
        {"disk_g2_diag", make_disk_well(2.0, 1.5, 1.0, 1.0)},
    };
    int counterexamples = 0;
    for (auto& [name, v] : lattice) {
        GridSpec g;
        g.r_max = 8.0;
        g.nr = 1024;
        auto nc = bounds::total_2d_noncentral(v, g);
        auto lat = oracle::fd_count_2d_lattice(v, 8.0, 128);
        if (!lat.stable) {
            ok = false;
            detail += name + ": lattice count unstable; ";
        } else if (double(lat.count) > nc.conjecture_rhs.value) {
            ++counterexamples;
            std::printf("NOTE  conjecture counterexample candidate: %s count "
                        "%ld > rhs %.6f\n",
                        name.c_str(), lat.count, nc.conjecture_rhs.value);
        }
    }
    report(12, "conjecture >= total on radial inputs; lattice cases consistent",
           ok,
           detail + std::to_string(counterexamples) + " counterexamples among " +
               std::to_string(lattice.size()) + " non-central cases");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%s: %d/12 criteria passed\n", g_failed ? "FAILURE" : "SUCCESS",
                12 - g_failed);
    return g_failed ? 1 : 0;
}
