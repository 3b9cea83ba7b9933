#include <cmath>

#include <doctest.h>

#include "qbound/bounds.hpp"
#include "qbound/energy.hpp"
#include "qbound/oracle.hpp"
#include "qbound/potential.hpp"
#include "qbound/regge.hpp"
#include "qbound/transform.hpp"
#include "qbound/verify.hpp"

using namespace qbound;

TEST_CASE("2D well ground state vs transcendental oracle") {
    auto w = make_square_well(1.0, 1.0, 2);
    const double e0 = energy::eigenvalue(w, 2, 0.0, 0);
    CHECK(-e0 == doctest::Approx(0.04095042203684786).epsilon(1e-8));
    // weak coupling: kappa^2 ~ 1e-17 still resolved in ln kappa
    auto w01 = make_square_well(0.1, 1.0, 2);
    const double e01 = energy::eigenvalue(w01, 2, 0.0, 0);
    CHECK(-e01 == doctest::Approx(8.850652160648971e-18).epsilon(1e-6));
    const double kap = oracle::well_kappa_2d(0.1, 1.0, 0);
    CHECK(-e01 == doctest::Approx(kap * kap).epsilon(1e-6));
}

TEST_CASE("line spectrum of the log-mapped well is exactly Bessel") {
    // U(x) = -25 e^{2x}: bound solution J_m(5 e^x), eigenvalue -m^2 with
    // J_{m-1}(5) = 0
    auto u = inverse_log_map(make_square_well(25.0, 1.0, 2), 1.0);
    auto es = energy::spectrum_1d(u);
    REQUIRE(es.size() == 2);
    CHECK(es[0] == doctest::Approx(-8.371557478433928).epsilon(1e-8));
    CHECK(es[1] == doctest::Approx(-0.454428754088185).epsilon(1e-8));
    CHECK_THROWS_AS(energy::eigenvalue(u, 1, 0.0, 2), std::domain_error);
}

TEST_CASE("regularized line delta approaches -g^2/4") {
    auto d = make_delta_line(2.0, 1e-4);
    auto sp = energy::spectrum_1d(d);
    REQUIRE(sp.size() == 1);
    CHECK(sp[0] == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("weak-coupling energy bracket") {
    auto shape = make_square_well(1.0, 1.0, 2);
    auto br = energy::ground_bracket_2d(shape, 0.1);
    REQUIRE(br.upper_ok);
    REQUIRE(br.lower_ok);
    // closed forms for the unit well at g = 0.1:
    // X = (2pi - g pi/2) / (g pi) = 19.5, upper = exp(2(K0(1) - X))
    CHECK(br.x_value == doctest::Approx(19.5).epsilon(5e-3));
    CHECK(std::log(br.upper_kappa2) ==
          doctest::Approx(std::log(2.6969e-17)).epsilon(5e-3));
    CHECK(std::log(br.lower_kappa2) ==
          doctest::Approx(std::log(1.3474e-18)).epsilon(5e-3));
    const double kap = oracle::well_kappa_2d(0.1, 1.0, 0);
    CHECK(br.lower_kappa2 <= kap * kap);
    CHECK(kap * kap <= br.upper_kappa2);
}

TEST_CASE("exponential weak-coupling scaling ln kappa^2 ~ a - c/g") {
    auto fit = energy::exp_small_scaling(make_square_well(1.0, 1.0, 2),
                                         {0.05, 0.1, 0.2});
    CHECK(fit.c == doctest::Approx(4.0).epsilon(5e-2));
    CHECK(fit.residual < 0.05);
}

TEST_CASE("regge intercepts and trajectory counts") {
    auto w = make_square_well(25.0, 1.0, 2);
    auto ms = regge::intercepts(w);
    REQUIRE(ms.size() == 2);
    // thresholds at J_{m-1}(5) = 0
    CHECK(ms[0] == doctest::Approx(2.89336438742754).epsilon(1e-8));
    CHECK(ms[1] == doctest::Approx(0.674113309532).epsilon(1e-7));
    CHECK(regge::count_via_trajectories(w) == count_total_2d(w).count);

    // identity with the transformed 1D spectrum
    auto via = regge::intercepts_via_spectrum(w);
    REQUIRE(via.size() == 2);
    CHECK(std::abs(via[0] - ms[0]) < 1e-6);
    CHECK(std::abs(via[1] - ms[1]) < 1e-6);

    auto chain = regge::moment_inequality_check(w);
    CHECK(chain.ok);
    CHECK(chain.lhs == 2.0);
    CHECK(chain.rhs ==
          doctest::Approx(2.0 / std::sqrt(3.0) * 0.5 * 12.5).epsilon(1e-9));

    auto fh = regge::feynman_hellmann_check(w, 0, 1.0);
    CHECK(fh.fd > 0.0);
    CHECK(fh.rel_err < 1e-4);

    CHECK(regge::floor_star(3.0) == 2);
    CHECK(regge::floor_star(2.99999) == 2);
    CHECK(regge::floor_star(3.2) == 3);
    CHECK_THROWS(regge::intercept(make_square_well(25.0, 1.0, 2), 5));
}

TEST_CASE("trajectory monotonicity") {
    auto w = make_square_well(25.0, 1.0, 2);
    auto t = regge::trace(w, 0, {0.0, 0.5, 1.0, 1.5});
    REQUIRE(t.samples.size() == 4);
    for (size_t i = 1; i < t.samples.size(); ++i)
        CHECK(t.samples[i].second > t.samples[i - 1].second);
}

TEST_CASE("closed-form bound anchors") {
    auto w = make_square_well(1.0, 1.0, 2);
    auto m0 = bounds::two_d_m0_bounds(w);
    CHECK(m0.r_min == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(m0.i_at_rmin == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-8));
    auto ns = bounds::newton_seto(w);
    CHECK(ns.j == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(bounds::total_2d(w).value ==
          doctest::Approx(1.0 + std::log(2.0) / 4.0 + 1.0 / std::sqrt(3.0))
              .epsilon(1e-10));
    CHECK(bounds::bargmann_channel(make_square_well(4.0, 1.0, 3), 3, 0.0).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bounds::bargmann_channel(w, 2, 1.0).value ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(bounds::bargmann_channel(w, 2, 0.0).applicable);

    auto [lin, prod] = bounds::one_d_bounds(make_square_well_1d(1.0, 1.0));
    CHECK(lin.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(prod.value ==
          doctest::Approx(1.0 + std::sqrt(2.0) * std::pow(4.0 / 3.0, 0.25))
              .epsilon(1e-10));

    // minimality of R_min
    for (double f : {0.25, 0.5, 2.0, 4.0})
        CHECK(m0.i_of_r(f * m0.r_min) >= m0.i_at_rmin - 1e-12);

    // scaling degrees: linear ids scale with g, product ids with sqrt(g)
    auto w9 = make_square_well(9.0, 1.0, 2);
    auto ns9 = bounds::newton_seto(w9);
    CHECK(ns9.j == doctest::Approx(9.0 * ns.j).epsilon(1e-9));
    auto m09 = bounds::two_d_m0_bounds(w9);
    CHECK(m09.product_bound - 1.0 ==
          doctest::Approx(3.0 * (m0.product_bound - 1.0)).epsilon(1e-9));
}

TEST_CASE("annulus profile: flux balance inside the support") {
    Potential ann;
    ann.space = Space::Radial;
    ann.dimension = 2;
    ann.pieces.push_back({2.0, 3.0, enumber(-1.0), "-1"});
    auto m0 = bounds::two_d_m0_bounds(ann);
    CHECK(m0.r_min == doctest::Approx(std::sqrt(6.5)).epsilon(1e-8));
    CHECK(bounds::conjecture_rhs(ann).value >=
          bounds::total_2d(ann).value - 1e-6);
}

TEST_CASE("lieb-thirring near-optimality for the delta") {
    auto lt = bounds::lieb_thirring_check(make_delta_line(2.0, 1e-4));
    CHECK(lt.ok);
    CHECK(lt.sum_sqrt / lt.half_integral == doctest::Approx(1.0).epsilon(1e-3));
    auto lt2 =
        bounds::lieb_thirring_check(make_square_well_1d(4.0 * M_PI * M_PI, 1.0));
    CHECK(lt2.ok);
    CHECK(lt2.sum_sqrt < lt2.half_integral);
    CHECK(lt2.half_integral == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("bound report serialization") {
    auto rep = bounds::full_report(make_square_well(1.0, 1.0, 2));
    auto csv = rep.to_csv();
    CHECK(csv.find("id,value,applicable,error_estimate") == 0);
    CHECK(csv.find("TOTAL_2D") != std::string::npos);
    auto js = rep.to_json();
    CHECK(js.find("\"TOTAL_2D\"") != std::string::npos);
}

TEST_CASE("verification suites all green") {
    for (auto& s : verify::run_all(50, 7)) {
        INFO(s.name);
        CHECK(s.failed == 0);
        CHECK(s.passed > 0);
    }
}
