#include <doctest.h>

#include <cmath>

#include "parafloat/geometry.hpp"

using namespace parafloat;

TEST_CASE("segment volume and radius") {
    SegmentShape s(2.0);
    CHECK(s.volume() == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(s.basis_radius() == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(SegmentShape(0.0), DomainError);
    CHECK_THROWS_AS(SegmentShape(-1.0), DomainError);
}

TEST_CASE("water plane validation and height") {
    SegmentShape s(2.0);
    WaterPlane p(-1.0, 0.5);
    CHECK(p.c(s) == doctest::Approx(2.5));
    CHECK_THROWS_AS(WaterPlane(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(WaterPlane(-1.0, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("sin4 primitive: closed form and series meet smoothly") {
    // exact antiderivative at pi/2 is 3 pi / 16
    CHECK(sin4_primitive(M_PI / 2.0) == doctest::Approx(3.0 * M_PI / 16.0).epsilon(1e-14));
    CHECK(sin4_primitive(0.0) == 0.0);
    // values straddling the series/trig switchover agree with fine trapezoid sums
    for (double phi : {0.85, 0.9, 0.95}) {
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double t = phi * (i + 0.5) / n;
            sum += std::pow(std::sin(t), 4) * phi / n;
        }
        CHECK(sin4_primitive(phi) == doctest::Approx(sum).epsilon(1e-10));
    }
}

TEST_CASE("right sector volume: limits and a frozen interior value") {
    CHECK(right_sector_volume(1.0, -1.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    CHECK(right_sector_volume(1.0, 1.0) == doctest::Approx(0.0));
    CHECK(right_sector_volume(2.0, 0.5)
          == doctest::Approx(1.3715818451466438519).epsilon(1e-14));
    // half segment at X = 0
    CHECK(right_sector_volume(2.5, 0.0)
          == doctest::Approx(2.5 * 2.5 * M_PI / 4.0).epsilon(1e-14));
}

TEST_CASE("right sector moments against frozen quadrature values") {
    const SectorMoments m = right_sector_moments(2.5, -1.0);
    CHECK(m.volume == doctest::Approx(9.1917895555514668769).epsilon(1e-13));
    CHECK(m.moment_x == doctest::Approx(0.73484692283495342946).epsilon(1e-13));
    CHECK(m.moment_z == doctest::Approx(15.074700284974126985).epsilon(1e-13));
    // x-moment closed form (4/15) A^{5/2} at X = 0
    const SectorMoments h = right_sector_moments(1.0, 0.0);
    CHECK(h.moment_x == doctest::Approx(4.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("oblique sector volume: shear invariants and frozen values") {
    SegmentShape s(2.0);
    CHECK(oblique_sector_volume(s, WaterPlane(-1.0, 0.0))
          == doctest::Approx(1.8489663755179382663).epsilon(1e-13));
    const SectorMoments m = oblique_sector_moments(s, WaterPlane(-0.7, 0.3));
    CHECK(m.volume == doctest::Approx(1.4575061281680181038).epsilon(1e-13));
    CHECK(m.moment_x == doctest::Approx(0.83434605742213000006).epsilon(1e-13));
    CHECK(m.moment_z == doctest::Approx(1.7951378155660644732).epsilon(1e-13));
    // b = 0 degenerates to the right sector
    CHECK(oblique_sector_volume(s, WaterPlane(0.0, 0.4))
          == doctest::Approx(right_sector_volume(2.0, 0.4)).epsilon(1e-14));
}

TEST_CASE("derived geometry: exact A identity under shear") {
    SegmentShape s(3.0);
    const DerivedGeometry g = derived_geometry(s, WaterPlane(-2.0, -0.5));
    CHECK(g.A == doctest::Approx(3.0 - 0.25).epsilon(1e-15));
    CHECK(g.a_prime == doctest::Approx(1.0 - 1.0 + 3.0).epsilon(1e-15));
    CHECK(g.a_prime - g.X_prime * g.X_prime == doctest::Approx(g.A).epsilon(1e-12));
    CHECK_THROWS_AS(derived_geometry(s, WaterPlane(-1.0, 2.0)), DomainError);
}

TEST_CASE("steep planes keep full precision in the oblique volume") {
    // the naive a' - X'^2 route loses ~7 digits at b = -1e4; the threaded A must not
    SegmentShape s(2.0);
    const double v = oblique_sector_volume(s, WaterPlane(-1e4, 0.3));
    const DerivedGeometry g = derived_geometry(s, WaterPlane(-1e4, 0.3));
    const double direct = detail::sector_volume_from_angle(
        g.a_prime, std::atan2(std::sqrt(2.0 - 0.09), g.X_prime));
    CHECK(v == doctest::Approx(direct).epsilon(1e-13));
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}

TEST_CASE("submerged centroid of a frozen configuration") {
    SegmentShape s(2.0);
    const Centroid c = submerged_centroid(s, WaterPlane(-0.7, 0.3));
    CHECK(c.x == doctest::Approx(0.88257480856531671026).epsilon(1e-12));
    CHECK(c.z == doctest::Approx(1.8223499688378959712).epsilon(1e-12));
    CHECK(c.volume == doctest::Approx(0.57799875988761960998).epsilon(1e-12));
}
