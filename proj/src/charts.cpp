#include "s3flow/charts.hpp"

#include <numbers>
#include <stdexcept>

namespace s3flow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kChartDegeneracy = 1e-12;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

SpherePoint hopf_to_cartesian(const HopfCoords& h) {
  if (!in_range(h.s, 0.0, std::numbers::pi / 2) || !std::isfinite(h.phi1) ||
      !std::isfinite(h.phi2)) {
    throw std::invalid_argument("hopf_to_cartesian: s must lie in [0, pi/2]");
  }
  const double c = std::cos(h.s), s = std::sin(h.s);
  return SpherePoint(c * std::cos(h.phi1), c * std::sin(h.phi1), s * std::cos(h.phi2),
                     s * std::sin(h.phi2));
}

ChartPoint<HopfCoords> cartesian_to_hopf(const SpherePoint& p) {
  const double r1 = std::hypot(p.x1(), p.y1());
  const double r2 = std::hypot(p.x2(), p.y2());
  ChartPoint<HopfCoords> out;
  out.coords.s = std::atan2(r2, r1);
  const bool deg1 = r1 < kChartDegeneracy;
  const bool deg2 = r2 < kChartDegeneracy;
  out.coords.phi1 = deg1 ? 0.0 : wrap_angle(std::atan2(p.y1(), p.x1()));
  out.coords.phi2 = deg2 ? 0.0 : wrap_angle(std::atan2(p.y2(), p.x2()));
  out.degenerate = deg1 || deg2;
  return out;
}

SpherePoint spherical_to_cartesian(const SphericalCoords& c) {
  if (!in_range(c.s, 0.0, std::numbers::pi) || !in_range(c.t, 0.0, std::numbers::pi) ||
      !std::isfinite(c.chi)) {
    throw std::invalid_argument("spherical_to_cartesian: s and t must lie in [0, pi]");
  }
  const double ss = std::sin(c.s), st = std::sin(c.t);
  return SpherePoint(std::cos(c.s), ss * std::cos(c.t), ss * st * std::cos(c.chi),
                     ss * st * std::sin(c.chi));
}

ChartPoint<SphericalCoords> cartesian_to_spherical(const SpherePoint& p) {
  ChartPoint<SphericalCoords> out;
  const double rho = std::hypot(p.x2(), p.y2());
  const double r = std::sqrt(p.y1() * p.y1() + rho * rho);
  out.coords.s = std::atan2(r, p.x1());
  const bool deg_s = r < kChartDegeneracy;
  const bool deg_t = rho < kChartDegeneracy;
  out.coords.t = deg_s ? 0.0 : std::atan2(rho, p.y1());
  out.coords.chi = (deg_s || deg_t) ? 0.0 : wrap_angle(std::atan2(p.y2(), p.x2()));
  out.degenerate = deg_s || deg_t;
  return out;
}

std::array<Vec4, 3> stereographic_basis(const SpherePoint& pole) {
  const Vec4& n = pole.coords();
  std::array<Vec4, 3> basis{};
  int filled = 0;
  // Gram-Schmidt on the coordinate axes, skipping the most pole-aligned one.
  int skip = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(n[i]) > std::abs(n[skip])) skip = i;
  }
  for (int i = 0; i < 4 && filled < 3; ++i) {
    if (i == skip) continue;
    Vec4 e{};
    e[i] = 1.0;
    Vec4 v = e - dot(e, n) * n;
    for (int j = 0; j < filled; ++j) v -= dot(v, basis[j]) * basis[j];
    basis[filled++] = v / norm(v);
  }
  if (det4(n, basis[0], basis[1], basis[2]) > 0.0) basis[2] = -basis[2];
  return basis;
}

Vec3 stereographic(const SpherePoint& p, const SpherePoint& pole) {
  const double along = dot(p.coords(), pole.coords());
  if (1.0 - along < 1e-14) {
    throw std::invalid_argument("stereographic: point coincides with the projection pole");
  }
  const auto basis = stereographic_basis(pole);
  const Vec4 w = (p.coords() - along * pole.coords()) / (1.0 - along);
  return {{dot(w, basis[0]), dot(w, basis[1]), dot(w, basis[2])}};
}

std::array<Vec4, 3> hopf_coordinate_basis(const HopfCoords& h) {
  const double c = std::cos(h.s), s = std::sin(h.s);
  const double c1 = std::cos(h.phi1), s1 = std::sin(h.phi1);
  const double c2 = std::cos(h.phi2), s2 = std::sin(h.phi2);
  return {Vec4{{-s * c1, -s * s1, c * c2, c * s2}}, Vec4{{-c * s1, c * c1, 0.0, 0.0}},
          Vec4{{0.0, 0.0, -s * s2, s * c2}}};
}

Vec3 hopf_components_of(const HopfCoords& h, const Vec4& v) {
  const double c = std::cos(h.s), s = std::sin(h.s);
  if (c < kChartDegeneracy || s < kChartDegeneracy) {
    throw std::domain_error("hopf_components_of: Hopf chart is degenerate at s = 0, pi/2");
  }
  const auto basis = hopf_coordinate_basis(h);
  return {{dot(v, basis[0]), dot(v, basis[1]) / (c * c), dot(v, basis[2]) / (s * s)}};
}

}  // namespace s3flow
