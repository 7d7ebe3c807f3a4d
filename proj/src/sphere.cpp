#include "s3flow/sphere.hpp"

#include <stdexcept>
#include <utility>

namespace s3flow {

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  // Laplace expansion along the first column pair.
  auto m2 = [](const Vec4& u, const Vec4& v, int i, int j) { return u[i] * v[j] - u[j] * v[i]; };
  return m2(a, b, 0, 1) * m2(c, d, 2, 3) - m2(a, b, 0, 2) * m2(c, d, 1, 3) +
         m2(a, b, 0, 3) * m2(c, d, 1, 2) + m2(a, b, 1, 2) * m2(c, d, 0, 3) -
         m2(a, b, 1, 3) * m2(c, d, 0, 2) + m2(a, b, 2, 3) * m2(c, d, 0, 1);
}

SpherePoint::SpherePoint(const Vec4& x) : x_(x) {
  const double n = norm(x);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("SpherePoint: cannot normalize a zero or non-finite vector");
  }
  x_ /= n;
}

SpherePoint::SpherePoint(double x1, double y1, double x2, double y2)
    : SpherePoint(Vec4{{x1, y1, x2, y2}}) {}

double distance(const SpherePoint& a, const SpherePoint& b) {
  return norm(a.coords() - b.coords());
}

Vec4 project_tangent(const SpherePoint& p, const Vec4& v) {
  return v - dot(v, p.coords()) * p.coords();
}

TangentVector::TangentVector(const SpherePoint& base, const Vec4& v) : base_(base), v_(v) {
  const double normal = std::abs(dot(v, base.coords()));
  if (normal > kTangencyTolerance * std::max(1.0, s3flow::norm(v))) {
    throw std::invalid_argument("TangentVector: vector is not tangent at its base point");
  }
}

TangentVector TangentVector::projected(const SpherePoint& base, const Vec4& v) {
  return TangentVector(base, project_tangent(base, v), true);
}

Frame frame_vectors(const SpherePoint& p) {
  const double x1 = p.x1(), y1 = p.y1(), x2 = p.x2(), y2 = p.y2();
  return Frame{Vec4{{-y1, x1, -y2, x2}}, Vec4{{-x2, y2, x1, -y1}}, Vec4{{-y2, -x2, y1, x1}}};
}

FrameTriple frame_at(const SpherePoint& p) {
  const Frame f = frame_vectors(p);
  return FrameTriple{TangentVector::projected(p, f.xi), TangentVector::projected(p, f.x1),
                     TangentVector::projected(p, f.x2)};
}

FrameCoefficients to_frame(const SpherePoint& p, const Vec4& v) {
  const double normal = std::abs(dot(v, p.coords()));
  if (normal > kTangencyTolerance * std::max(1.0, norm(v))) {
    throw std::invalid_argument("to_frame: vector is not tangent at p");
  }
  const Frame f = frame_vectors(p);
  return {dot(v, f.xi), dot(v, f.x1), dot(v, f.x2)};
}

FrameCoefficients to_frame(const TangentVector& v) { return to_frame(v.base(), v.v()); }

TangentVector from_frame(const SpherePoint& p, const FrameCoefficients& c) {
  const Frame f = frame_vectors(p);
  return TangentVector::projected(p, c.a * f.xi + c.b * f.x1 + c.c * f.x2);
}

TangentVector cross(const SpherePoint& p, const Vec4& u, const Vec4& v) {
  Vec4 w;
  for (int i = 0; i < 4; ++i) {
    Vec4 e{};
    e[i] = 1.0;
    w[i] = det4(p.coords(), u, v, e);
  }
  return TangentVector::projected(p, w);
}

VectorField::VectorField(std::string label, Eval eval, FrameEval frame)
    : label_(std::move(label)), eval_(std::move(eval)), frame_(std::move(frame)) {
  if (!eval_) throw std::invalid_argument("VectorField: empty evaluator");
}

VectorField VectorField::from_coefficients(std::string label, FrameEval frame) {
  auto eval = [frame](const SpherePoint& p) { return from_frame(p, frame(p)).v(); };
  return VectorField(std::move(label), std::move(eval), std::move(frame));
}

TangentVector VectorField::operator()(const SpherePoint& p) const {
  return TangentVector(p, eval_(p));
}

FrameCoefficients VectorField::coefficients(const SpherePoint& p) const {
  if (frame_) return frame_(p);
  return to_frame(p, eval_(p));
}

VectorField VectorField::scaled(double factor) const {
  auto eval = [e = eval_, factor](const SpherePoint& p) { return factor * e(p); };
  FrameEval frame;
  if (frame_) {
    frame = [f = frame_, factor](const SpherePoint& p) {
      const FrameCoefficients c = f(p);
      return FrameCoefficients{factor * c.a, factor * c.b, factor * c.c};
    };
  }
  return VectorField(label_ + "*" + std::to_string(factor), std::move(eval), std::move(frame));
}

VectorField xi_field() {
  return VectorField(
      "xi", [](const SpherePoint& p) { return frame_vectors(p).xi; },
      [](const SpherePoint&) { return FrameCoefficients{1.0, 0.0, 0.0}; });
}

VectorField x1_field() {
  return VectorField(
      "X1", [](const SpherePoint& p) { return frame_vectors(p).x1; },
      [](const SpherePoint&) { return FrameCoefficients{0.0, 1.0, 0.0}; });
}

VectorField x2_field() {
  return VectorField(
      "X2", [](const SpherePoint& p) { return frame_vectors(p).x2; },
      [](const SpherePoint&) { return FrameCoefficients{0.0, 0.0, 1.0}; });
}

namespace {

// Points normalize(p +- h u/|u|); returns the scale |u| to apply to the difference quotient.
struct Stencil {
  SpherePoint plus;
  SpherePoint minus;
  double scale;
};

Stencil make_stencil(const SpherePoint& p, const Vec4& u, double h) {
  const double len = norm(u);
  const Vec4 dir = u / len;
  return {SpherePoint(p.coords() + h * dir), SpherePoint(p.coords() - h * dir), len / (2.0 * h)};
}

Vec4 ambient_derivative(const VectorField& w, const SpherePoint& p, const Vec4& u, double h) {
  if (norm(u) == 0.0) return Vec4{};
  const Stencil s = make_stencil(p, u, h);
  return s.scale * (w.ambient(s.plus) - w.ambient(s.minus));
}

}  // namespace

double directional_derivative(const ScalarField& f, const SpherePoint& p, const Vec4& u,
                              double h) {
  if (norm(u) == 0.0) return 0.0;
  const Stencil s = make_stencil(p, u, h);
  return s.scale * (f(s.plus) - f(s.minus));
}

TangentVector grad(const ScalarField& f, const SpherePoint& p, double h) {
  const Frame fr = frame_vectors(p);
  Vec4 g{};
  for (int b = 0; b < 3; ++b) g += directional_derivative(f, p, fr[b], h) * fr[b];
  return TangentVector::projected(p, g);
}

CoefficientJacobian coefficient_jacobian(const VectorField& v, const SpherePoint& p, double h) {
  const Frame fr = frame_vectors(p);
  CoefficientJacobian m{};
  for (int b = 0; b < 3; ++b) {
    const Stencil s = make_stencil(p, fr[b], h);
    const Vec3 diff = v.coefficients(s.plus).as_vec() - v.coefficients(s.minus).as_vec();
    for (int i = 0; i < 3; ++i) m.rows[i][b] = s.scale * diff[i];
  }
  return m;
}

double divergence(const VectorField& v, const SpherePoint& p, double h) {
  const CoefficientJacobian m = coefficient_jacobian(v, p, h);
  return m.rows[0][0] + m.rows[1][1] + m.rows[2][2];
}

TangentVector curl(const VectorField& v, const SpherePoint& p, double h) {
  const CoefficientJacobian m = coefficient_jacobian(v, p, h);
  // In frame coordinates the positive frame makes the cross product the usual one.
  Vec3 result = kCurlEigenvalue * v.coefficients(p).as_vec();
  for (int i = 0; i < 3; ++i) {
    Vec3 e{};
    e[i] = 1.0;
    result += cross3(m.rows[i], e);
  }
  return from_frame(p, FrameCoefficients::from_vec(result));
}

VectorField curl_field(const VectorField& v, double h) {
  return VectorField("curl(" + v.label() + ")",
                     [v, h](const SpherePoint& p) { return curl(v, p, h).v(); });
}

ProjectedResult lie_bracket_detailed(const VectorField& v, const VectorField& w,
                                     const SpherePoint& p, double h) {
  const Vec4 vp = v.ambient(p);
  const Vec4 wp = w.ambient(p);
  const Vec4 raw = ambient_derivative(w, p, vp, h) - ambient_derivative(v, p, wp, h);
  const double normal = std::abs(dot(raw, p.coords()));
  return {TangentVector::projected(p, raw), normal};
}

TangentVector lie_bracket(const VectorField& v, const VectorField& w, const SpherePoint& p,
                          double h) {
  ProjectedResult r = lie_bracket_detailed(v, w, p, h);
  const double scale = std::max(1.0, norm(v.ambient(p)) * norm(w.ambient(p)));
  if (r.normal_defect > 1e-6 * scale) {
    throw std::runtime_error("lie_bracket: normal component of ambient bracket exceeds 1e-6 |V||W|");
  }
  return r.value;
}

FrameCoefficients frame_bracket(int i, int j) {
  Vec3 out{};
  if (i != j) {
    const int k = 3 - i - j;
    const double eps = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
    out[k] = -2.0 * eps;
  }
  return FrameCoefficients::from_vec(out);
}

TangentVector covariant_derivative(const VectorField& v, const VectorField& w,
                                   const SpherePoint& p, double h) {
  const Vec3 vc = v.coefficients(p).as_vec();
  const Vec3 wc = w.coefficients(p).as_vec();
  const CoefficientJacobian mw = coefficient_jacobian(w, p, h);
  Vec3 result{};
  for (int j = 0; j < 3; ++j) result[j] = dot(mw.rows[j], vc);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      result += (0.5 * vc[i] * wc[j]) * frame_bracket(i, j).as_vec();
    }
  }
  return from_frame(p, FrameCoefficients::from_vec(result));
}

}  // namespace s3flow
