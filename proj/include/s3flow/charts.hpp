#pragma once

// Coordinate charts on S^3.
//
// Hopf:       (cos s e^{i phi1}, sin s e^{i phi2}),  s in [0, pi/2], phi_i in [0, 2 pi)
// Spherical:  (cos s, sin s (cos t, sin t e^{i chi})), s, t in [0, pi], chi in [0, 2 pi)

#include "s3flow/sphere.hpp"

namespace s3flow {

struct HopfCoords {
  double s = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

struct SphericalCoords {
  double s = 0.0;
  double t = 0.0;
  double chi = 0.0;
};

/// Chart value plus a flag set on the chart's degeneracy locus, where the
/// undetermined angles are reported as 0.
template <typename Coords>
struct ChartPoint {
  Coords coords;
  bool degenerate = false;
};

/// Throws std::invalid_argument for coordinates out of range.
SpherePoint hopf_to_cartesian(const HopfCoords& h);
ChartPoint<HopfCoords> cartesian_to_hopf(const SpherePoint& p);

SpherePoint spherical_to_cartesian(const SphericalCoords& c);
ChartPoint<SphericalCoords> cartesian_to_spherical(const SpherePoint& p);

/// Stereographic projection from `pole` onto the hyperplane orthogonal to it,
/// written in the orthonormal basis returned by stereographic_basis(pole).
/// Throws std::invalid_argument if p coincides with the pole.
Vec3 stereographic(const SpherePoint& p, const SpherePoint& pole);

/// Orthonormal basis (b1, b2, b3) of pole^perp with det[pole, b1, b2, b3] = -1, which
/// makes the projection orientation-preserving for the orientation of S^3.
std::array<Vec4, 3> stereographic_basis(const SpherePoint& pole);

/// Coordinate vectors d/ds, d/dphi1, d/dphi2 at a Hopf-chart point.
std::array<Vec4, 3> hopf_coordinate_basis(const HopfCoords& h);

/// Components (V^s, V^phi1, V^phi2) of a tangent vector in the Hopf coordinate basis.
/// Throws std::domain_error on the degenerate circles s = 0, pi/2.
Vec3 hopf_components_of(const HopfCoords& h, const Vec4& v);

}  // namespace s3flow
