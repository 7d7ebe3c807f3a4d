#pragma once

// Linking numbers of closed curves in S^3 and critical-set diagnostics.

#include "s3flow/dynamics.hpp"

namespace s3flow {

struct LinkingOptions {
  std::size_t pole_candidates = 50;
  std::size_t initial_segments = 64;
  /// Upper bound on segment pairs per Gauss sum.
  std::size_t max_segment_pairs = std::size_t{1} << 18;
  double rounding_tolerance = 0.05;
  double min_separation = 1e-3;
  std::uint64_t seed = 0;
};

struct LinkingResult {
  long value;
  double raw;
  double rounding_distance;
  std::size_t segments;  // per curve at the accepted level
  SpherePoint pole;
};

/// Stereographic projection from the candidate pole farthest from both curves,
/// then the Gauss double integral by the midpoint rule, refined by doubling the
/// sampling. Throws TopologyError if the curves are open, closer than
/// min_separation, or the sum never rounds within rounding_tolerance.
LinkingResult linking_number(const Curve& c1, const Curve& c2, const LinkingOptions& options = {});

/// Linking number of two links given as unions of closed curves: the sum of
/// the pairwise linking numbers, evaluated with one common projection pole and
/// accepted on the total. Same failure modes as the two-curve version.
LinkingResult linking_number(const std::vector<Curve>& l1, const std::vector<Curve>& l2,
                             const LinkingOptions& options = {});

/// Gauss linking integral of two closed polygons in R^3 (midpoint rule).
double gauss_linking_sum(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

/// Closed polyline resampled to n points equally spaced in chordal arclength.
std::vector<SpherePoint> resample_closed(const Curve& c, std::size_t n);

/// Reversed traversal of a curve.
Curve reversed(const Curve& c);

struct CriticalSetReport {
  double max_speed_on_equator;    // max |V| on {x1 = 0}
  double max_lambda2_on_equator;  // max lambda2 on {x1 = 0}
  double max_bernoulli_on_gamma1;     // max |b| on {(e^{i t}, 0)}
  double max_bernoulli_gap_on_gamma2; // max |b - 2| on Gamma_2
  double min_bernoulli;               // over volume samples
  double max_bernoulli;
  std::size_t equator_samples;
  std::size_t volume_samples;
};
CriticalSetReport critical_set_report(const VectorField& v, const SurfaceMap& phi,
                                      const ScalarField& bernoulli, std::size_t equator_count,
                                      std::size_t volume_count, std::uint64_t seed = 0);

/// Gamma_1 = {(cos t, sin t, 0, 0)} and the two components of Gamma_2 =
/// {(+-1/sqrt2, 0, cos t/sqrt2, sin t/sqrt2)}.
SpherePoint gamma1_point(double t);
SpherePoint gamma2_point(int component, double t);

}  // namespace s3flow
