#include <doctest.h>

#include <cmath>

#include "parafloat/conditions.hpp"
#include "parafloat/oracle.hpp"

using namespace parafloat;

TEST_CASE("E at b = 0 equals half the right sector volume") {
    for (double X : {-0.8, 0.0, 0.6}) {
        CHECK(detail::equilibrium_E(2.0, X, 0.0)
              == doctest::Approx(right_sector_volume(2.0, X) / 2.0).epsilon(1e-14));
    }
}

TEST_CASE("F vanishes exactly at the implied density") {
    const double a = 2.7, X = -0.4, b = -1.3;
    const double sig = detail::sigma_implied(a, X, b);
    CHECK(sig > 0.0);
    CHECK(sig < 1.0);
    CHECK(std::abs(detail::floating_F(a, X, b, sig)) <= 1e-13);
    // moving the density by ds moves F by -ds V
    const double V = a * a * M_PI / 2.0;
    CHECK(detail::floating_F(a, X, b, sig - 0.01)
          == doctest::Approx(0.01 * V).epsilon(1e-10));
}

TEST_CASE("public evaluation bundles E, F, E-tilde, sigma") {
    SegmentShape s(2.0);
    WaterPlane p(-1.0, 0.3);
    const ConditionEval ev = evaluate_conditions(s, p, 0.5);
    CHECK(ev.E == doctest::Approx(equilibrium_E(s, p)).epsilon(1e-15));
    CHECK(ev.F == doctest::Approx(floating_F(s, p, 0.5)).epsilon(1e-15));
    CHECK(ev.sigma_implied > 0.0);
    CHECK(ev.sigma_implied < 1.0);
    CHECK_THROWS_AS(floating_F(s, p, 1.0), InvalidDensity);
    CHECK_THROWS_AS(floating_F(s, p, 0.0), InvalidDensity);
}

TEST_CASE("f poles exist exactly below the threshold") {
    CHECK_FALSE(f_poles(-1.0).exists);
    CHECK_FALSE(f_poles(0.5).exists);
    const double t = pole_threshold();
    CHECK_FALSE(f_poles(t + 1e-12).exists);
    const FPoles p = f_poles(t);
    CHECK(p.exists);
    CHECK(p.b1 == doctest::Approx(4.0 * t / 5.0).epsilon(1e-12));
    CHECK(p.b2 == doctest::Approx(4.0 * t / 5.0).epsilon(1e-12));
    const FPoles q = f_poles(-2.0);
    CHECK(q.exists);
    CHECK(q.b1 < q.b2);
    // both really are zeros of f = 5b^2/12 - 2bX/3 + 1/2
    for (double b : {q.b1, q.b2})
        CHECK(std::abs(5.0 * b * b / 12.0 - 2.0 * b * (-2.0) / 3.0 + 0.5) <= 1e-12);
}

TEST_CASE("E-tilde derivative matches finite differences away from poles") {
    SegmentShape s(3.1769091819828312);
    for (double X : {-1.6, -1.0, -0.3, 0.4}) {
        for (double b : {-3.0, -1.1, -0.4}) {
            const double f = 5.0 * b * b / 12.0 - 2.0 * b * X / 3.0 + 0.5;
            if (std::abs(f) <= 0.01) continue;
            const auto [et, det] = e_tilde_and_derivative(s, X, b);
            const double h = 1e-6;
            const double plus = e_tilde_and_derivative(s, X, b + h).first;
            const double minus = e_tilde_and_derivative(s, X, b - h).first;
            const double fd = (plus - minus) / (2.0 * h);
            CHECK(det == doctest::Approx(fd).epsilon(1e-6));
            CHECK(et == doctest::Approx(detail::equilibrium_E(s.a, X, b)
                                        / (f * std::pow(b * b / 4.0 - b * X + s.a, 2)))
                            .epsilon(1e-12));
        }
    }
}

TEST_CASE("E-tilde at a pole raises PoleError") {
    SegmentShape s(3.0);
    const FPoles p = f_poles(-1.5);
    REQUIRE(p.exists);
    CHECK_THROWS_AS(e_tilde_and_derivative(s, -1.5, p.b1), PoleError);
}

TEST_CASE("bracket polynomial: negative roots really are roots") {
    SegmentShape s(3.1769091819828312);
    for (double X : {-1.5, -1.0, -0.4, 0.3}) {
        const BracketPolynomial P = bracket_polynomial(s, X);
        for (double b : P.negative_roots) {
            CHECK(b < 0.0);
            const double scale = std::max({std::abs(P.c3 * b * b * b),
                                           std::abs(P.c2 * b * b), std::abs(P.c0)});
            CHECK(std::abs(P.eval(b)) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("bracket polynomial on the axis is the quadratic reduction") {
    // at X = 0 the cubic degenerates; one negative root iff a > 21/10
    SegmentShape small(2.0);
    CHECK(bracket_polynomial(small, 0.0).negative_roots.empty());
    SegmentShape big(2.5);
    const BracketPolynomial P = bracket_polynomial(big, 0.0);
    REQUIRE(P.negative_roots.size() == 1);
    CHECK(P.negative_roots[0] == doctest::Approx(-std::sqrt(12.0)).epsilon(1e-12));
}

TEST_CASE("condition partials match finite differences") {
    const double h = 1e-6;
    for (double a : {2.0, 3.1769091819828312}) {
        for (double X : {-1.2, -0.5, 0.2}) {
            for (double b : {-2.5, -0.9}) {
                const auto p = detail::condition_partials(a, X, b);
                const double eX = (detail::equilibrium_E(a, X + h, b)
                                   - detail::equilibrium_E(a, X - h, b)) / (2.0 * h);
                const double eb = (detail::equilibrium_E(a, X, b + h)
                                   - detail::equilibrium_E(a, X, b - h)) / (2.0 * h);
                const double fX = (detail::floating_F(a, X + h, b, 0.5)
                                   - detail::floating_F(a, X - h, b, 0.5)) / (2.0 * h);
                const double fb = (detail::floating_F(a, X, b + h, 0.5)
                                   - detail::floating_F(a, X, b - h, 0.5)) / (2.0 * h);
                CHECK(std::abs(p.dE_dX - eX) <= 1e-7 * std::max(1.0, std::abs(eX)));
                CHECK(std::abs(p.dE_db - eb) <= 1e-7 * std::max(1.0, std::abs(eb)));
                CHECK(std::abs(p.dF_dX - fX) <= 1e-7 * std::max(1.0, std::abs(fX)));
                CHECK(std::abs(p.dF_db - fb) <= 1e-7 * std::max(1.0, std::abs(fb)));
            }
        }
    }
}
