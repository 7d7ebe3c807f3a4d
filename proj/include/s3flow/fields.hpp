#pragma once

// Divergence-free fields built from maps S^3 -> S^2(1/2), the explicit
// Hopf-invariant-2 Euler solution, and residual/classification checks.

#include <optional>
#include <vector>

#include "s3flow/maps.hpp"
#include "s3flow/sampling.hpp"

namespace s3flow {

/// Threshold on lambda2 below which a point is treated as critical.
inline constexpr double kCriticalThreshold = 1e-8;

/// V = (* phi^* omega)^sharp, omega the area form of S^2(1/2).
VectorField field_from_map(const SurfaceMap& phi);

/// Field and vector potential from phi = hopf o f:
///   xi_hat = (f^* eta)^sharp,  V = (1/2) curl xi_hat,  curl^{-1} V = (1/2) xi_hat.
struct ContactField {
  VectorField field;      // (1/2) curl xi_hat, finite differences
  VectorField potential;  // (1/2) xi_hat
  VectorField xi_hat;

  ContactField scaled(double factor) const;
};
/// Throws std::invalid_argument if phi was not built as hopf o (S^3 map).
ContactField field_from_contact_potential(const SurfaceMap& phi, double h = kDefaultFieldStep);

/// lambda1 lambda2 U with U a unit kernel vector of dphi. The sign of U is
/// canonical (largest-magnitude frame coefficient positive); use
/// align_signs to match another construction. Throws std::domain_error at
/// points with lambda2 <= kCriticalThreshold.
TangentVector singular_frame_vector(const SurfaceMap& phi, const SpherePoint& p);
VectorField field_from_singular_frame(const SurfaceMap& phi);

/// Sign-fixes values[i] (taken at samples[i]) against a reference field: the first
/// sample takes the sign closest to the reference and every later sample picks
/// the sign minimizing distance to the reference.
std::vector<Vec4> align_signs(const SampleSet& samples, const std::vector<Vec4>& values,
                              const VectorField& reference);

// The explicit solution: V = 4 x1 (x1 xi - y2 X1 + x2 X2),
// b = 8 x1^2 (x2^2 + y2^2), p = -8 x1^4.
TangentVector paper_field(const SpherePoint& p);
FrameCoefficients paper_field_coefficients(const SpherePoint& p);
double paper_bernoulli(const SpherePoint& p);
double paper_pressure(const SpherePoint& p);
VectorField paper_velocity_field();

struct EulerSolutionBundle {
  VectorField velocity;
  ScalarField bernoulli;
  ScalarField pressure;
};
EulerSolutionBundle paper_solution();
/// V = xi, p = 0, b = 1/2.
EulerSolutionBundle hopf_solution();

/// Residual summaries: sup over the sample set.
double euler_residual_curl_form(const VectorField& v, const ScalarField& b,
                                const SampleSet& samples, double h = kDefaultFieldStep);

struct DirectResidual {
  double momentum;    // sup |nabla_V V + grad p|
  double divergence;  // sup |div V|
};
DirectResidual euler_residual_direct(const VectorField& v, const ScalarField& pressure,
                                     const SampleSet& samples, double h = kDefaultFieldStep);

/// sup |[V, curl V]|.
double commutator_residual(const VectorField& v, const SampleSet& samples,
                           double h = kDefaultFieldStep);

double divergence_residual(const VectorField& v, const SampleSet& samples,
                           double h = kDefaultFieldStep);

/// sup |dphi(V)|, unit components.
double kernel_residual(const VectorField& v, const SurfaceMap& phi, const SampleSet& samples);

/// sup |V(f)|.
double first_integral_residual(const VectorField& v, const ScalarField& f,
                               const SampleSet& samples, double h = kDefaultFieldStep);

struct BeltramiReport {
  bool is_beltrami;
  bool is_strong;
  double alignment_residual;  // sup |curl V - f V|, f = <curl V, V>/|V|^2
  double factor_spread;       // max f - min f
  std::vector<double> factor_samples;
  std::size_t skipped;        // samples with |V| <= 1e-10
};
BeltramiReport beltrami_check(const VectorField& v, const SampleSet& samples, double tol = 1e-6,
                              double h = kDefaultFieldStep);

/// sup |V(|V|)| over samples with |V| > 0.1.
double kkps_discriminator(const VectorField& v, const SampleSet& samples,
                          double h = kDefaultFieldStep);

}  // namespace s3flow
