#include "parafloat/geometry.hpp"

#include <cmath>

namespace parafloat {

namespace {

// Below this fraction of the axis, A = a - X^2 is treated as the degenerate
// boundary |X| = sqrt(a) and limit values are used.
constexpr double kDegenerateA = 1e-14;

double checked_A(double a, double X) {
    if (!(a > 0.0)) throw DomainError("segment axis must be positive");
    const double A = a - X * X;
    if (A < -kDegenerateA * a)
        throw DomainError("waterline abscissa lies outside the basis circle");
    return A;
}

} // namespace

double sin4_primitive(double phi) {
    // Closed form (3 phi - 2 sin 2phi + sin(4 phi)/4) / 8 cancels its O(phi)
    // terms down to the O(phi^5) value, so small angles use the Taylor series
    // of sin^4 t = (3 - 4 cos 2t + cos 4t)/8 integrated termwise.
    if (phi >= 0.9)
        return (3.0 * phi - 2.0 * std::sin(2.0 * phi) + std::sin(4.0 * phi) / 4.0) / 8.0;
    double sum = 0.0;
    double four_n = 16.0;       // 4^n, n = 2
    double sixteen_n = 256.0;   // 16^n
    double fact = 24.0;         // (2n)!
    double p = phi * phi * phi * phi * phi;  // phi^(2n+1)
    double sign = 1.0;
    for (int n = 2; n <= 40; ++n) {
        const double term = sign * (sixteen_n - 4.0 * four_n) / fact * p / (2 * n + 1) / 8.0;
        sum += term;
        if (std::abs(term) <= 1e-19 * std::abs(sum)) break;
        sign = -sign;
        four_n *= 4.0;
        sixteen_n *= 16.0;
        fact *= (2.0 * n + 2.0) * (2.0 * n + 1.0);
        p *= phi * phi;
    }
    return sum;
}

DerivedGeometry derived_geometry(const SegmentShape& shape, const WaterPlane& plane) {
    const double a = shape.a, b = plane.b, X = plane.X;
    const double A = a - X * X;
    if (!(A > 0.0))
        throw DomainError("waterline abscissa must lie strictly inside the basis circle");
    DerivedGeometry g;
    g.a = a;
    g.b = b;
    g.X = X;
    g.A = A;
    g.a_prime = b * b / 4.0 - b * X + a;
    g.X_prime = X - b / 2.0;
    g.beta = std::sqrt(b * b + 1.0);
    g.f = 5.0 * b * b / 12.0 - 2.0 * b * X / 3.0 + 0.5;
    return g;
}

double right_sector_volume(double a, double X) {
    const double A = checked_A(a, X);
    if (A < kDegenerateA * a)
        return X > 0.0 ? 0.0 : a * a * M_PI / 2.0;
    return detail::sector_volume_from_angle(a, std::atan2(std::sqrt(A), X));
}

double right_sector_volume(const SegmentShape& shape, double X) {
    return right_sector_volume(shape.a, X);
}

double oblique_sector_volume(const DerivedGeometry& g) {
    return detail::sector_volume_from_angle(
        g.a_prime, std::atan2(std::sqrt(g.A), g.X_prime));
}

double oblique_sector_volume(const SegmentShape& shape, const WaterPlane& plane) {
    return oblique_sector_volume(derived_geometry(shape, plane));
}

SectorMoments right_sector_moments(double a, double X) {
    const double A = checked_A(a, X);
    SectorMoments m;
    if (A < kDegenerateA * a) {
        if (X > 0.0) return {0.0, 0.0, 0.0};
        m.volume = a * a * M_PI / 2.0;
        m.moment_x = 0.0;
        m.moment_z = (2.0 * a / 3.0) * m.volume;
        return m;
    }
    const double A52 = A * A * std::sqrt(A);
    m.volume = detail::sector_volume_from_angle(a, std::atan2(std::sqrt(A), X));
    m.moment_x = (4.0 / 15.0) * A52;
    m.moment_z = (2.0 * a / 3.0) * m.volume + (4.0 * X / 45.0) * A52;
    return m;
}

SectorMoments right_sector_moments(const SegmentShape& shape, double X) {
    return right_sector_moments(shape.a, X);
}

SectorMoments oblique_sector_moments(const DerivedGeometry& g) {
    const double A52 = g.A * g.A * std::sqrt(g.A);
    const double v2 = oblique_sector_volume(g);
    SectorMoments m;
    m.volume = v2;
    m.moment_x = (g.b / 2.0) * v2 + (4.0 / 15.0) * A52;
    m.moment_z = (5.0 * g.b * g.b / 12.0 - 2.0 * g.b * g.X / 3.0 + 2.0 * g.a / 3.0) * v2
               + (4.0 * g.X / 45.0 + 2.0 * g.b / 9.0) * A52;
    return m;
}

SectorMoments oblique_sector_moments(const SegmentShape& shape, const WaterPlane& plane) {
    return oblique_sector_moments(derived_geometry(shape, plane));
}

Centroid submerged_centroid(const SegmentShape& shape, const WaterPlane& plane) {
    const DerivedGeometry g = derived_geometry(shape, plane);
    const SectorMoments m1 = right_sector_moments(shape.a, plane.X);
    const SectorMoments m2 = oblique_sector_moments(g);
    const double vol = m1.volume - m2.volume;
    if (!(vol > 1e-14 * shape.volume()))
        throw DegenerateError("submerged volume vanishes, centroid undefined");
    Centroid c;
    c.volume = vol;
    c.x = (m1.moment_x - m2.moment_x) / vol;
    c.z = (m1.moment_z - m2.moment_z) / vol;
    return c;
}

} // namespace parafloat
