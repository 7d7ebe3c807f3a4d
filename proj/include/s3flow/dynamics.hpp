#pragma once

// Stream-line and fibre tracing with fixed-step RK4 projected back to S^3,
// plus closed-orbit detection.

#include <cstdint>
#include <optional>
#include <vector>

#include "s3flow/errors.hpp"
#include "s3flow/fields.hpp"

namespace s3flow {

struct Curve {
  std::vector<SpherePoint> points;
  std::vector<double> times;  // integration parameter at each point
  bool closed = false;
  std::optional<double> period;
  double arclength = 0.0;
};

struct StreamlineOptions {
  double step = 1e-3;
  double t_max = 100.0;
  bool stop_on_closure = true;
  double closure_tolerance = 1e-5;
  double direction_tolerance = 1e-3;
  /// Reject a step whose renormalization correction exceeds this.
  double max_renormalization = 1e-6;
};

/// One RK4 step of size dt for dx/dt = V(x), renormalized to the sphere.
/// Returns the new point and the size of the renormalization correction.
struct Rk4Step {
  SpherePoint point;
  double correction;
};
Rk4Step rk4_step(const VectorField& v, const SpherePoint& x, double dt);

/// Watches successive RK4 steps for the first return to p0: a crossing of the
/// hyperplane through p0 orthogonal to V(p0) that lands within closure_tolerance
/// of p0 with matching flow direction. The crossing time is refined by bisection
/// on the sub-step size.
class ClosureDetector {
 public:
  ClosureDetector(const VectorField& v, const SpherePoint& p0, double closure_tolerance,
                  double direction_tolerance);

  /// Step from (t, x) to (t + dt, next). Returns the refined return time and point.
  std::optional<std::pair<double, SpherePoint>> observe(double t, const SpherePoint& x, double dt,
                                                        const SpherePoint& next);

 private:
  double side(const SpherePoint& x) const;

  const VectorField& v_;
  SpherePoint p0_;
  Vec4 normal_;
  double closure_tol_;
  double direction_tol_;
};

/// Throws DynamicsError if |V(p0)| <= 1e-6 or a step needs a renormalization larger
/// than options.max_renormalization.
Curve integrate_streamline(const VectorField& v, const SpherePoint& p0,
                           const StreamlineOptions& options = {});

/// First return time of a traced curve to p0 (the curve must come from
/// integrate_streamline with the same field and step).
std::optional<double> detect_closure(const Curve& curve, const VectorField& v, const SpherePoint& p0,
                                     double closure_tolerance = 1e-5,
                                     double direction_tolerance = 1e-3);

struct OrbitReport {
  std::optional<double> period;
  double bernoulli_drift = 0.0;
  double max_speed = 0.0;
};
OrbitReport orbit_report(const Curve& curve, const VectorField& v, const ScalarField& bernoulli);

/// max |f(x) - f(x0)| along the curve.
double drift(const Curve& curve, const ScalarField& f);

struct FibreOptions {
  double step = 1e-3;
  double max_length = 200.0;
  std::size_t seed_count = 256;
  std::size_t max_attempts = 32;
  double value_tolerance = 1e-10;
  std::uint64_t seed = 0;
};

/// Locates a point of phi^{-1}(q) by damped Gauss-Newton from low-discrepancy seeds,
/// then follows V/|V| (V = field_from_map(phi)) around the fibre until it closes.
/// Throws TopologyError if no seed converges or the fibre meets |V| < 1e-6.
Curve trace_fibre(const SurfaceMap& phi, const Vec3& q, const FibreOptions& options = {},
                  std::optional<SpherePoint> seed_hint = std::nullopt);

/// Every connected component of phi^{-1}(q) reachable from the seed set. Regular
/// fibres of maps that factor through a degree-k map can have several components
/// (for phi = hopf o psi_quadratic there are two, exchanged by p -> -p). A converged
/// preimage point farther than `component_separation` from every traced point
/// starts a new component. Throws TopologyError if no component is found.
struct Fibre {
  Vec3 value;
  std::vector<Curve> components;
};
Fibre trace_fibre_components(const SurfaceMap& phi, const Vec3& q, const FibreOptions& options = {},
                             double component_separation = 1e-2);

/// Solves phi(p) = q starting at p; returns nullopt if it does not converge.
std::optional<SpherePoint> locate_preimage(const SurfaceMap& phi, const Vec3& q,
                                           const SpherePoint& start, double tolerance = 1e-10);

}  // namespace s3flow
