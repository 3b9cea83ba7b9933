#include "qbound/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qbound/bounds.hpp"
#include "qbound/counting.hpp"
#include "qbound/energy.hpp"
#include "qbound/oracle.hpp"
#include "qbound/potential.hpp"
#include "qbound/specfun.hpp"
#include "qbound/transform.hpp"

namespace qbound::verify {

namespace {

void check(SuiteResult& s, bool ok, const std::string& what) {
    if (ok) {
        ++s.passed;
    } else {
        ++s.failed;
        s.failures.push_back(what);
    }
}

Potential random_profile(std::mt19937& rng) {
    std::uniform_int_distribution<int> nseg(1, 5);
    std::uniform_real_distribution<double> depth(0.1, 3.0);
    std::uniform_real_distribution<double> width(0.2, 1.2);
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    double lo = 0.0;
    const int n = nseg(rng);
    for (int i = 0; i < n; ++i) {
        const double hi = lo + width(rng);
        v.pieces.push_back({lo, hi, enumber(-depth(rng)), ""});
        v.pieces.back().src = format_expr(v.pieces.back().expr);
        lo = hi;
    }
    return v;
}

}  // namespace

SuiteResult suite_sandwich(int trials, unsigned seed) {
    SuiteResult s{"sandwich"};
    std::mt19937 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Potential v = random_profile(rng);
        auto m0 = bounds::two_d_m0_bounds(v);
        auto ns = bounds::newton_seto(v);
        std::ostringstream os;
        os << "trial " << t << ": J=" << ns.j << " I=" << m0.i_at_rmin;
        check(s,
              m0.ok && ns.bound.applicable && ns.j < m0.i_at_rmin &&
                  m0.i_at_rmin < 2.0 * ns.j,
              os.str());
    }
    return s;
}

SuiteResult suite_bracket() {
    SuiteResult s{"bracket"};
    const Potential shape = make_square_well(1.0, 1.0, 2);
    for (double g : {0.05, 0.1, 0.2}) {
        const double kappa = oracle::well_kappa_2d(g, 1.0, 0);
        const double k2 = kappa * kappa;
        auto br = energy::ground_bracket_2d(shape, g);
        std::ostringstream os;
        os << "g=" << g << " kappa^2=" << k2 << " bracket=[" << br.lower_kappa2
           << ", " << br.upper_kappa2 << "]";
        check(s,
              br.lower_ok && br.upper_ok && br.lower_kappa2 <= k2 &&
                  k2 <= br.upper_kappa2,
              os.str());
    }
    return s;
}

SuiteResult suite_oracle() {
    SuiteResult s{"oracle"};
    auto agree_1d = [&](const Potential& v, const std::string& tag) {
        auto c = count_bound_states_1d(v);
        auto o = oracle::fd_count_1d(v);
        std::ostringstream os;
        os << tag << ": phase=" << c.count << " fd=" << o.count
           << " stable=" << o.stable;
        check(s, c.cls == Finiteness::Finite && o.stable && c.count == o.count,
              os.str());
    };
    auto agree_channel = [&](const Potential& v, int dim, double m,
                             const std::string& tag) {
        auto c = count_channel(v, dim, m);
        auto o = oracle::fd_count_radial(v, dim, m);
        std::ostringstream os;
        os << tag << ": phase=" << c.count << " fd=" << o.count;
        check(s, c.cls == Finiteness::Finite && o.stable && c.count == o.count,
              os.str());
    };
    agree_1d(make_square_well_1d(1.0, 1.0), "well 1D g=1");
    agree_1d(make_square_well_1d(41.0, 1.0), "well 1D g=41");
    agree_1d(make_delta_line(2.0, 0.05), "delta line g=2");
    for (int m = 0; m <= 3; ++m)
        agree_channel(make_square_well(12.0, 1.0, 2), 2, m, "well 2D g=12");
    agree_channel(make_square_well(1.0, 1.0, 2), 2, 0, "well 2D g=1 m=0");
    agree_channel(make_square_well(100.0, 1.0, 3), 3, 0, "well 3D g=100 l=0");
    agree_channel(make_delta_shell(0.5, 1.0, 0.05), 2, 0, "delta shell");
    return s;
}

SuiteResult suite_transform() {
    SuiteResult s{"transform"};
    std::vector<std::pair<Potential, std::string>> cases;
    cases.emplace_back(make_square_well_1d(1.0, 1.0), "well g=1");
    cases.emplace_back(make_square_well_1d(30.0, 0.7), "well g=30 w=0.7");
    cases.emplace_back(make_delta_line(2.0, 1e-3), "delta g=2");
    for (const auto& [u, tag] : cases) {
        const auto direct = count_bound_states_1d(u);
        for (double R : {0.5, 1.0, 2.0}) {
            const Potential v = log_map(u, R);
            const auto mapped = count_channel(v, 2, 0.0);
            std::ostringstream os;
            os << tag << " R=" << R << ": line=" << direct.count
               << " mapped=" << mapped.count;
            check(s,
                  direct.cls == Finiteness::Finite &&
                      mapped.cls == Finiteness::Finite &&
                      direct.count == mapped.count,
                  os.str());
        }
    }
    return s;
}

SuiteResult suite_node_comparison() {
    SuiteResult s{"node_comparison"};
    for (double g : {0.5, 2.0, 8.0, 32.0}) {
        const auto shallow = count_channel(make_square_well(g, 1.0, 2), 2, 0);
        const auto deep = count_channel(make_square_well(2.0 * g, 1.0, 2), 2, 0);
        std::ostringstream os;
        os << "g=" << g << ": N(g)=" << shallow.count
           << " N(2g)=" << deep.count;
        check(s, shallow.count <= deep.count, os.str());
    }
    for (double g : {1.0, 40.0}) {
        const auto a = count_bound_states_1d(make_square_well_1d(g, 1.0));
        const auto b = count_bound_states_1d(make_square_well_1d(2.0 * g, 1.0));
        std::ostringstream os;
        os << "1D g=" << g << ": " << a.count << " vs " << b.count;
        check(s, a.count <= b.count, os.str());
    }
    return s;
}

SuiteResult suite_lieb_thirring() {
    SuiteResult s{"lieb_thirring"};
    std::vector<std::pair<Potential, std::string>> cases;
    cases.emplace_back(make_square_well_1d(1.0, 1.0), "well g=1");
    cases.emplace_back(make_square_well_1d(4.0 * M_PI * M_PI, 1.0),
                       "well g=4pi^2");
    cases.emplace_back(make_delta_line(2.0, 1e-3), "delta g=2");
    for (const auto& [u, tag] : cases) {
        auto lt = bounds::lieb_thirring_check(u);
        std::ostringstream os;
        os << tag << ": sum=" << lt.sum_sqrt << " half=" << lt.half_integral;
        check(s, lt.ok, os.str());
    }
    return s;
}

SuiteResult suite_k0(int grid_n) {
    SuiteResult s{"k0"};
    for (int i = 0; i < grid_n; ++i) {
        const double x = 0.01 * std::pow(2000.0, double(i) / (grid_n - 1));
        for (int j = 1; j <= 20; ++j) {
            const double a = j / 20.0;
            auto c = specfun::check_k0_bounds(x, a);
            std::ostringstream os;
            os << "x=" << x << " a=" << a << " margins=" << c.margin_i4 << ","
               << c.margin_i8;
            check(s, c.holds && c.margin_i4 >= -1e-12, os.str());
        }
    }
    return s;
}

std::vector<SuiteResult> run_all(int trials, unsigned seed) {
    return {suite_sandwich(trials, seed), suite_bracket(),   suite_oracle(),
            suite_transform(),            suite_node_comparison(),
            suite_lieb_thirring(),        suite_k0()};
}

}  // namespace qbound::verify
