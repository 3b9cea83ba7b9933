#include <cmath>

#include <doctest.h>

#include "qbound/potential.hpp"
#include "qbound/transform.hpp"

using namespace qbound;

TEST_CASE("catalog constructors") {
    auto w = make_square_well(2.0, 1.5, 2);
    CHECK(w(1.0) == -2.0);
    CHECK(w(1.6) == 0.0);
    CHECK(w.support_end() == 1.5);
    CHECK(w.compact_support());

    auto d = make_delta_shell(0.5, 1.0, 1e-3);
    // area of the regularized shell equals the delta strength
    double area = 0.0;
    for (const auto& p : d.pieces) area += (p.hi - p.lo) * (-p.expr->eval(1.0));
    CHECK(area == doctest::Approx(0.5).epsilon(1e-12));

    auto t = make_inverse_square_tail(1.25, 1.0);
    CHECK_FALSE(t.compact_support());
    REQUIRE(!t.tail.empty());
    CHECK(t.tail[0].p == -2.0);

    CHECK_THROWS(make_square_well(-1.0, 1.0, 2));
}

TEST_CASE("shell array stays disjoint and countable") {
    auto arr = make_shell_array(1.0, 1.0, 4, 1e-3);
    REQUIRE(arr.features.size() == 4);
    // disks of radius r_n = exp(1/g_n) must not overlap
    double prev_edge = 0.0;
    for (size_t n = 0; n < arr.features.size(); ++n) {
        const double gn = std::exp(-double(n));
        const double rn = std::exp(1.0 / gn);
        CHECK(arr.features[n].cx - rn >= prev_edge - 1e-9 * (1.0 + prev_edge));
        prev_edge = arr.features[n].cx + rn;
    }
}

TEST_CASE("json round trip preserves evaluation and tails") {
    auto v = make_log_power_tail(1.0, 2.0, 1.5);
    auto v2 = potential_from_json(potential_to_json(v));
    for (double r : {2.5, 10.0, 1e4})
        CHECK(v2(r) == doctest::Approx(v(r)).epsilon(1e-14));
    CHECK(v2.tail.size() == v.tail.size());
    CHECK(v2.space == v.space);

    CHECK_THROWS(potential_from_json("{\"space\":\"radial\",\"pieces\":"
                                     "[{\"lo\":2,\"hi\":1,\"v\":\"-1\"}]}"));
}

TEST_CASE("negative part splits at sign changes") {
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    v.pieces.push_back({0.0, 4.0, parse_expr("x-2"), "x-2"});
    auto n = negative_part(v);
    CHECK(n(1.0) == doctest::Approx(1.0).epsilon(1e-9));  // stored as V^-
    CHECK(n(3.0) == doctest::Approx(0.0));
}

TEST_CASE("decreasing rearrangement of a centered well is the well") {
    auto w = make_square_well(1.0, 1.0, 2);
    GridSpec g;
    g.r_max = 2.0;
    g.nr = 2048;
    auto r = decreasing_rearrangement(w, g);
    CHECK(r(0.5) == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(r.support_end() == doctest::Approx(1.0).epsilon(1e-2));

    auto shifted = make_disk_well(1.0, 1.0, 3.0, 0.0);
    GridSpec g2;
    g2.r_max = 5.0;
    g2.nr = 1024;
    auto r2 = decreasing_rearrangement(shifted, g2);
    CHECK(r2(0.5) == doctest::Approx(-1.0).epsilon(1e-2));
    CHECK(r2.support_end() == doctest::Approx(1.0).epsilon(5e-2));
}

TEST_CASE("angular sup of a shifted disk") {
    auto shifted = make_disk_well(1.0, 1.0, 2.0, 0.0);
    GridSpec g;
    g.r_max = 5.0;
    g.nr = 1024;
    auto s = sup_over_angle(shifted, g);
    CHECK_FALSE(s.unbounded);
    CHECK(s.radial(2.0) == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(s.radial(4.0) == doctest::Approx(0.0));
}

TEST_CASE("first moment classification") {
    CHECK(first_moment_class(make_square_well(1.0, 1.0, 2)).cls ==
          MomentClass::Finite);
    CHECK(first_moment_class(make_inverse_square_tail(1.25, 1.0)).cls ==
          MomentClass::Infinite);
    // r^-2 (ln r)^-2 tail: first moment converges
    CHECK(first_moment_class(make_log_tail(2.0, 1.0, 2.0)).cls ==
          MomentClass::Finite);
}

TEST_CASE("log map round trip") {
    auto u = make_square_well_1d(3.0, 1.0);
    auto v = log_map(u, 1.0);
    auto u2 = inverse_log_map(v, 1.0);
    for (double x : {-0.9, -0.3, 0.5, 0.99})
        CHECK(u2(x) == doctest::Approx(u(x)).epsilon(1e-12));
    // mapped potential is U(ln r)/r^2
    CHECK(v(std::exp(0.5)) ==
          doctest::Approx(-3.0 / std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("channel and dimensional reductions") {
    auto w = make_square_well(1.0, 1.0, 2);
    auto c = channel_reduction(w, 2, 2.0);
    const double r = 0.5;
    CHECK(c(r) == doctest::Approx(-1.0 + (4.0 - 0.25) / (r * r)).epsilon(1e-12));
    auto c3 = channel_reduction(w, 3, 1.0);
    CHECK(c3(r) == doctest::Approx(-1.0 + 2.0 / (r * r)).epsilon(1e-12));
    auto n4 = nd_reduction(w, 4);
    CHECK(n4(r) == doctest::Approx(-1.0 + 1.0 / (r * r)).epsilon(1e-12));
}

TEST_CASE("iterated log rung") {
    auto u = make_square_well_1d(2.0, 1.0);
    auto w = iterated_log(u, 15.0);
    const double r = 40.0;  // ln ln 40 ~ 1.3 inside the well
    const double lr = std::log(r);
    const double expect =
        -1.0 / (4.0 * r * r * lr * lr) + u(std::log(lr)) / (r * r * lr * lr);
    CHECK(w(r) == doctest::Approx(expect).epsilon(1e-10));
}
