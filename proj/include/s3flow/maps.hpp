#pragma once

// Smooth maps S^3 -> S^3 and S^3 -> S^2, their differentials and singular values.
//
// Surface maps are stored by their unit-sphere components (phi1, phi2, phi3).
// The geometric codomain is the radius-1/2 sphere S^2(1/2); its point is half
// the unit components and every metric quantity (singular values, pulled-back
// area form) carries that factor of 1/2.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "s3flow/sphere.hpp"

namespace s3flow {

inline constexpr double kDefaultMapStep = 1e-5;

/// Smooth map S^3 -> S^3.
class SphereMap {
 public:
  using Eval = std::function<Vec4(const SpherePoint&)>;
  /// Differential applied to an ambient tangent vector u at p.
  using Jacobian = std::function<Vec4(const SpherePoint&, const Vec4&)>;

  SphereMap(std::string label, Eval eval, Jacobian jacobian = {},
            double fd_step = kDefaultMapStep);

  SpherePoint operator()(const SpherePoint& p) const { return SpherePoint(eval_(p)); }
  Vec4 raw(const SpherePoint& p) const { return eval_(p); }
  /// dm_p(u), analytic if available, otherwise central differences; projected onto
  /// the tangent space at m(p).
  Vec4 differential(const SpherePoint& p, const Vec4& u) const;

  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }
  /// Same map with the analytic differential dropped.
  SphereMap finite_difference_only() const;
  const std::string& label() const { return label_; }
  double fd_step() const { return fd_step_; }

 private:
  std::string label_;
  Eval eval_;
  Jacobian jacobian_;
  double fd_step_;
};

/// Smooth map S^3 -> S^2 stored as unit components.
class SurfaceMap {
 public:
  using Eval = std::function<Vec3(const SpherePoint&)>;
  using Jacobian = std::function<Vec3(const SpherePoint&, const Vec4&)>;

  SurfaceMap(std::string label, Eval eval, Jacobian jacobian = {},
             double fd_step = kDefaultMapStep);

  /// Unit components (phi1, phi2, phi3).
  Vec3 operator()(const SpherePoint& p) const;
  /// The image point on S^2(1/2).
  Vec3 half_sphere_point(const SpherePoint& p) const { return 0.5 * (*this)(p); }
  /// Differential of the unit components, projected onto the tangent plane at phi(p).
  Vec3 differential(const SpherePoint& p, const Vec4& u) const;

  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }
  SurfaceMap finite_difference_only() const;
  const std::string& label() const { return label_; }

  /// If this map was built as hopf o f, the S^3 -> S^3 factor f.
  const SphereMap* hopf_factor() const { return hopf_factor_.get(); }
  void set_hopf_factor(const SphereMap& f) { hopf_factor_ = std::make_shared<SphereMap>(f); }

 private:
  std::string label_;
  Eval eval_;
  Jacobian jacobian_;
  double fd_step_;
  std::shared_ptr<const SphereMap> hopf_factor_;
};

// Point evaluators.

/// Unit components (2(x1x2 + y1y2), 2(x1y2 - x2y1), x1^2 + y1^2 - x2^2 - y2^2).
Vec3 hopf_components(const SpherePoint& p);
/// (x1^2 - y1^2 - x2^2 - y2^2, 2x1y1, 2x1x2, 2x1y2), the quaternion square.
SpherePoint psi_quadratic(const SpherePoint& p);
/// q^k with q = x1 + i y1 + j x2 + k y2; k = 0 gives the constant 1.
SpherePoint psi_k_power(const SpherePoint& p, int k);
/// The degree-k map via the four-case reflection recursion from psi_1 = id and
/// psi_2 = psi_quadratic. Requires k >= 1.
SpherePoint psi_k_recursive(const SpherePoint& p, int k);

// Map objects.

SphereMap identity_map();
SphereMap psi_quadratic_map();
/// Quaternion power with the analytic differential sum_j q^j u q^(k-1-j).
SphereMap psi_power_map(int k);
/// Recursive construction, finite-difference differential only.
SphereMap psi_recursive_map(int k);
SurfaceMap hopf_map();

/// outer o inner, differential by the chain rule.
SphereMap compose(const SphereMap& inner, const SphereMap& outer);
/// outer o inner; if outer = hopf o f then the result records hopf o (f o inner).
SurfaceMap compose(const SphereMap& inner, const SurfaceMap& outer);

/// phi = hopf o psi_quadratic, the Hopf invariant 2 map.
SurfaceMap phi_map();
/// phi_k = hopf o psi_k.
SurfaceMap phi_k_map(int k);

/// Differential of the unit components along u.
Vec3 differential(const SurfaceMap& m, const SpherePoint& p, const Vec4& u);
Vec4 differential(const SphereMap& m, const SpherePoint& p, const Vec4& u);

/// Singular values of dphi_p : T_p S^3 -> T S^2(1/2), lambda1 >= lambda2 >= 0.
struct SingularValues {
  double lambda1;
  double lambda2;
};
SingularValues singular_values(const SurfaceMap& m, const SpherePoint& p);

/// Columns of the 3x3 matrix of dphi (unit components) in the frame {xi, X1, X2}.
std::array<Vec3, 3> frame_differential(const SurfaceMap& m, const SpherePoint& p);

}  // namespace s3flow
