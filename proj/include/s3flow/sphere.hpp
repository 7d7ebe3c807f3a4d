#pragma once

// Points, tangent vectors and first-order differential operators on the round
// unit 3-sphere in R^4, expressed in the global Killing frame {xi, X1, X2}.
//
// Coordinates are (x1, y1, x2, y2) with z1 = x1 + i y1, z2 = x2 + i y2.
// Orientation: (xi, X1, X2) is a positive frame, equivalently
// det[p, e1, e2, e3] > 0 for any positive tangent basis (e1, e2, e3) at p.
// With this choice curl xi = +2 xi.

#include <functional>
#include <string>

#include "s3flow/vec.hpp"

namespace s3flow {

inline constexpr double kDefaultFieldStep = 1e-4;
inline constexpr double kTangencyTolerance = 1e-10;

class SpherePoint {
 public:
  /// Normalizes x onto the unit sphere; throws std::invalid_argument for |x| = 0
  /// or non-finite input.
  explicit SpherePoint(const Vec4& x);
  SpherePoint(double x1, double y1, double x2, double y2);

  const Vec4& coords() const { return x_; }
  double x1() const { return x_[0]; }
  double y1() const { return x_[1]; }
  double x2() const { return x_[2]; }
  double y2() const { return x_[3]; }
  double operator[](std::size_t i) const { return x_[i]; }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  Vec4 x_;
};

/// Chordal distance in R^4.
double distance(const SpherePoint& a, const SpherePoint& b);

/// Orthogonal projection of an ambient vector onto T_p S^3.
Vec4 project_tangent(const SpherePoint& p, const Vec4& v);

class TangentVector {
 public:
  /// Throws std::invalid_argument if |<v, p>| exceeds kTangencyTolerance * max(1, |v|).
  TangentVector(const SpherePoint& base, const Vec4& v);
  /// Projects v onto T_p S^3.
  static TangentVector projected(const SpherePoint& base, const Vec4& v);

  const SpherePoint& base() const { return base_; }
  const Vec4& v() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }
  double norm() const { return s3flow::norm(v_); }

 private:
  TangentVector(const SpherePoint& base, const Vec4& v, bool /*unchecked*/) : base_(base), v_(v) {}

  SpherePoint base_;
  Vec4 v_;
};

/// Coefficients of a tangent vector in the frame {xi, X1, X2}.
struct FrameCoefficients {
  double a = 0.0;  // xi
  double b = 0.0;  // X1
  double c = 0.0;  // X2

  Vec3 as_vec() const { return {{a, b, c}}; }
  static FrameCoefficients from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }
  friend bool operator==(const FrameCoefficients&, const FrameCoefficients&) = default;
};

/// First eigenvalue of curl on the unit 3-sphere; every frame field is an eigenfield.
inline constexpr double kCurlEigenvalue = 2.0;

struct Frame {
  Vec4 xi;
  Vec4 x1;
  Vec4 x2;

  const Vec4& operator[](int i) const { return i == 0 ? xi : (i == 1 ? x1 : x2); }
};

/// The global orthonormal frame at p.
Frame frame_vectors(const SpherePoint& p);

struct FrameTriple {
  TangentVector xi;
  TangentVector x1;
  TangentVector x2;
};
FrameTriple frame_at(const SpherePoint& p);

/// Throws std::invalid_argument when v is not tangent at p (same tolerance as TangentVector).
FrameCoefficients to_frame(const SpherePoint& p, const Vec4& v);
FrameCoefficients to_frame(const TangentVector& v);
TangentVector from_frame(const SpherePoint& p, const FrameCoefficients& f);

/// u x v at p, defined by <u x v, z> = det[p, u, v, z]; xi x X1 = X2.
TangentVector cross(const SpherePoint& p, const Vec4& u, const Vec4& v);

using ScalarField = std::function<double(const SpherePoint&)>;

/// Tangent vector field. The evaluator returns ambient components; frame
/// coefficients are optional and, if present, must agree with the evaluator.
class VectorField {
 public:
  using Eval = std::function<Vec4(const SpherePoint&)>;
  using FrameEval = std::function<FrameCoefficients(const SpherePoint&)>;

  VectorField(std::string label, Eval eval, FrameEval frame = {});
  /// Field given by its frame coefficients.
  static VectorField from_coefficients(std::string label, FrameEval frame);

  TangentVector operator()(const SpherePoint& p) const;
  Vec4 ambient(const SpherePoint& p) const { return eval_(p); }
  FrameCoefficients coefficients(const SpherePoint& p) const;
  bool has_frame_coefficients() const { return static_cast<bool>(frame_); }
  const std::string& label() const { return label_; }

  VectorField scaled(double factor) const;

 private:
  std::string label_;
  Eval eval_;
  FrameEval frame_;
};

VectorField xi_field();
VectorField x1_field();
VectorField x2_field();

// Differential operators. All derivatives are central finite differences of
// step h taken along the curve t -> normalize(p + t u/|u|), i.e. on the
// degree-0 homogeneous extension of the field.

double directional_derivative(const ScalarField& f, const SpherePoint& p, const Vec4& u,
                              double h = kDefaultFieldStep);

TangentVector grad(const ScalarField& f, const SpherePoint& p, double h = kDefaultFieldStep);

/// M(i, b) = E_b(a_i), the frame derivatives of the frame coefficients a_i of V.
struct CoefficientJacobian {
  std::array<Vec3, 3> rows;  // rows[i][b]
};
CoefficientJacobian coefficient_jacobian(const VectorField& v, const SpherePoint& p,
                                         double h = kDefaultFieldStep);

/// div(a xi + b X1 + c X2) = xi(a) + X1(b) + X2(c).
double divergence(const VectorField& v, const SpherePoint& p, double h = kDefaultFieldStep);

/// curl(sum a_i E_i) = 2 sum a_i E_i + sum grad a_i x E_i.
TangentVector curl(const VectorField& v, const SpherePoint& p, double h = kDefaultFieldStep);

/// The field p -> curl V(p), evaluated lazily.
VectorField curl_field(const VectorField& v, double h = kDefaultFieldStep);

/// Result of an ambient finite-difference computation before tangent projection.
struct ProjectedResult {
  TangentVector value;
  double normal_defect;  // |normal component discarded by the projection|
};

/// [V, W] = D_V W - D_W V on degree-0 extensions. Throws std::runtime_error if the
/// discarded normal component exceeds 1e-6 max(1, |V||W|). The defect is O(h^2) truncation
/// for tangent fields and O(|V||W|) when an evaluator leaves the tangent space.
TangentVector lie_bracket(const VectorField& v, const VectorField& w, const SpherePoint& p,
                          double h = kDefaultFieldStep);
ProjectedResult lie_bracket_detailed(const VectorField& v, const VectorField& w,
                                     const SpherePoint& p, double h = kDefaultFieldStep);

/// Frame brackets, fixed by a finite-difference check: [E_i, E_j] = -2 eps_ijk E_k.
FrameCoefficients frame_bracket(int i, int j);

/// Levi-Civita connection: nabla_V W = sum_j V(w_j) E_j + sum v_i w_j (1/2)[E_i, E_j].
TangentVector covariant_derivative(const VectorField& v, const VectorField& w,
                                   const SpherePoint& p, double h = kDefaultFieldStep);

}  // namespace s3flow
