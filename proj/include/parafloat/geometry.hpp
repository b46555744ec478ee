#pragma once

#include <cmath>

#include "parafloat/errors.hpp"

// Geometry of a solid paraboloid segment P = { x^2 + y^2 <= z <= a } cut by a
// water plane E = { z = b x + c } with b <= 0. The plane is parameterized by
// its slope b and the waterline abscissa X where it meets the rim plane z = a,
// so c = a - b X is never stored. The part of P on the dry side of the plane
// maps, by a volume-preserving affine shear, onto a "right" sector of a wider
// segment with axis a' = b^2/4 - b X + a cut by the vertical plane x = X' with
// X' = X - b/2; the identity a - X^2 = a' - X'^2 holds exactly and the common
// value A is always computed from the original pair (recomputing it from
// a', X' cancels catastrophically for steep planes).

namespace parafloat {

/// Which side of the body is down. A right-hand position submerges the
/// vertex side (x > X wet); a left-hand position is its mirror image.
enum class Side { LeftHand, RightHand };

/// The floating body: a paraboloid segment of axis length a > 0.
struct SegmentShape {
    double a;

    explicit SegmentShape(double axis) : a(axis) {
        if (!(axis > 0.0) || !std::isfinite(axis))
            throw DomainError("segment axis must be positive and finite");
    }

    double volume() const { return a * a * M_PI / 2.0; }
    double basis_radius() const { return std::sqrt(a); }
};

/// Water plane z = b x + c through the rim circle at abscissa X, with slope b <= 0.
struct WaterPlane {
    double b;
    double X;
    Side side;

    WaterPlane(double slope, double waterline_x, Side s = Side::LeftHand)
        : b(slope), X(waterline_x), side(s) {
        if (!(slope <= 0.0) || !std::isfinite(slope))
            throw DomainError("water plane slope must be <= 0 and finite");
        if (!std::isfinite(waterline_x))
            throw DomainError("waterline abscissa must be finite");
    }

    /// Height of the plane above the axis: c = a - b X.
    double c(const SegmentShape& shape) const { return shape.a - b * X; }
};

/// Quantities shared by every sector formula, computed once per (shape, plane).
struct DerivedGeometry {
    double a;        ///< axis of the segment
    double b;        ///< plane slope
    double X;        ///< waterline abscissa
    double A;        ///< a - X^2 = a' - X'^2, positive inside the rim circle
    double a_prime;  ///< sheared axis b^2/4 - b X + a
    double X_prime;  ///< sheared cut abscissa X - b/2
    double beta;     ///< sqrt(b^2 + 1), secant of the tilt angle
    double f;        ///< 5 b^2/12 - 2 b X/3 + 1/2, the equilibrium prefactor
};

/// Volume, x-moment and z-moment of a sector (integrals of 1, x, z over it).
struct SectorMoments {
    double volume;
    double moment_x;
    double moment_z;
};

/// Centroid of the submerged part together with its volume.
struct Centroid {
    double x;
    double z;
    double volume;
};

/// Validates -sqrt(a) < X < sqrt(a) and precomputes the shared quantities.
DerivedGeometry derived_geometry(const SegmentShape& shape, const WaterPlane& plane);

/// int_0^phi sin^4 t dt, evaluated without cancellation for small phi.
double sin4_primitive(double phi);

/// Volume of { x^2 + y^2 <= z <= a, x >= X }. Accepts |X| <= sqrt(a) up to
/// the degenerate-boundary tolerance |A| < 1e-14 a, where the limit value
/// (0 or the full segment volume) is returned.
double right_sector_volume(double a, double X);
double right_sector_volume(const SegmentShape& shape, double X);

/// Volume of the sheared sector { x^2 + y^2 <= z <= b x + c, x >= X }.
double oblique_sector_volume(const DerivedGeometry& g);
double oblique_sector_volume(const SegmentShape& shape, const WaterPlane& plane);

/// Moments of the right sector about the coordinate planes.
SectorMoments right_sector_moments(double a, double X);
SectorMoments right_sector_moments(const SegmentShape& shape, double X);

/// Moments of the sheared sector, in the original coordinates.
SectorMoments oblique_sector_moments(const DerivedGeometry& g);
SectorMoments oblique_sector_moments(const SegmentShape& shape, const WaterPlane& plane);

/// Centroid of the submerged part P intersect { z <= b x + c } for a
/// left-hand position: difference of the two sector moment sets.
/// Throws DegenerateError if the submerged volume vanishes.
Centroid submerged_centroid(const SegmentShape& shape, const WaterPlane& plane);

namespace detail {

/// Sector volume from the opening angle phi = atan2(sqrt(A), X) and axis a:
/// V = (4 a^2 / 3) int_0^phi sin^4 t dt.
inline double sector_volume_from_angle(double a, double phi) {
    return (4.0 * a * a / 3.0) * sin4_primitive(phi);
}

/// Derivative of the right sector volume with respect to its axis,
/// dV/da = a phi - X sqrt(A), with phi = atan2(sqrt(A), X).
inline double sector_volume_daxis(double a, double X, double A) {
    const double sA = std::sqrt(A);
    return a * std::atan2(sA, X) - X * sA;
}

} // namespace detail

} // namespace parafloat
