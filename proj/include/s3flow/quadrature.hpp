#pragma once

// Product quadrature on S^3 (Hopf chart) and on S^2(1/2), and the integral
// quantities built on it: energies, helicity, Hopf invariant, lower bounds.

#include <functional>
#include <span>
#include <vector>

#include "s3flow/fields.hpp"

namespace s3flow {

/// Gauss-Legendre in s on [0, pi/2] with weight cos s sin s, trapezoid in phi1, phi2.
/// The degenerate circles s = 0, pi/2 are never nodes.
struct QuadratureGridS3 {
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
  int n_s = 0;
  int n_phi1 = 0;
  int n_phi2 = 0;
};

/// Nodes are unit vectors; weights integrate against the area form of S^2(1/2),
/// omega = (1/4) sin u du dv, so they sum to pi.
struct QuadratureGridS2 {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int n_u = 0;
  int n_v = 0;
};

struct GridResolution {
  int n_s = 32;
  int n_phi1 = 64;
  int n_phi2 = 64;
};

/// Throws std::invalid_argument unless n_s >= 2 and n_phi >= 4.
QuadratureGridS3 build_grid_s3(int n_s, int n_phi1, int n_phi2);
inline QuadratureGridS3 build_grid_s3(const GridResolution& r) {
  return build_grid_s3(r.n_s, r.n_phi1, r.n_phi2);
}
QuadratureGridS2 build_grid_s2(int n_u = 64, int n_v = 64);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Pairwise summation in a fixed tree order.
double pairwise_sum(std::span<const double> values);

double integrate(const ScalarField& f, const QuadratureGridS3& grid);
double integrate(const std::function<double(const Vec3&)>& f, const QuadratureGridS2& grid);

/// Integral of |V|^2.
double l2_energy(const VectorField& v, const QuadratureGridS3& grid);

/// Potential on S^2 as a function of unit components.
using Potential = std::function<double(const Vec3&)>;
/// P = 1 - phi3.
double standard_potential(const Vec3& w);

struct EnergyCoefficients {
  double alpha0 = 1.0;
  double alpha2 = 0.0;
  double alpha4 = 1.0;
};

/// (1/2) int { alpha2 |dphi|^2 + alpha4 |phi^* omega|^2 + 2 alpha0 P(phi) } with
/// |phi^* omega| = lambda1 lambda2 and |dphi|^2 = lambda1^2 + lambda2^2.
double fs_energy(const SurfaceMap& phi, const Potential& potential, const QuadratureGridS3& grid,
                 const EnergyCoefficients& alpha = {});

/// int <(1/2) xi_hat, V> with curl((1/2) xi_hat) = V.
double helicity(const ContactField& v, const QuadratureGridS3& grid);

struct HopfInvariantResult {
  double value;
  long nearest;
  double distance;  // |value - nearest|
  bool warning;     // distance > 0.01
};
/// Helicity / pi^2. Throws std::invalid_argument if phi is not hopf o f.
HopfInvariantResult hopf_invariant(const SurfaceMap& phi, const QuadratureGridS3& grid,
                                   double h = kDefaultFieldStep);

/// 4/(27 pi)^{1/4} (int_{S^2(1/2)} (2P)^{1/6} omega)^{3/2} |Q|^{3/4}.
/// Throws std::invalid_argument if P < 0 at a node.
double lower_bound_rhs(const Potential& potential, double hopf_invariant,
                       const QuadratureGridS2& grid);

struct HelicityBound {
  double lhs;  // int |V|^2
  double rhs;  // 2 H(V)
  bool holds;
};
HelicityBound helicity_bound_check(const ContactField& v, const QuadratureGridS3& grid);

}  // namespace s3flow
