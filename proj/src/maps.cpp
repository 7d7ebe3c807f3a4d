#include "s3flow/maps.hpp"

#include <Eigen/SVD>
#include <stdexcept>
#include <utility>

namespace s3flow {

namespace {

Vec4 project_onto(const Vec4& base_unit, const Vec4& v) { return v - dot(v, base_unit) * base_unit; }

Vec3 project_onto(const Vec3& base_unit, const Vec3& v) { return v - dot(v, base_unit) * base_unit; }

Vec4 quat_power(const Vec4& q, int k) {
  Vec4 r{{1.0, 0.0, 0.0, 0.0}};
  for (int i = 0; i < k; ++i) r = quat_mul(r, q);
  return r;
}

}  // namespace

SphereMap::SphereMap(std::string label, Eval eval, Jacobian jacobian, double fd_step)
    : label_(std::move(label)), eval_(std::move(eval)), jacobian_(std::move(jacobian)),
      fd_step_(fd_step) {
  if (!eval_) throw std::invalid_argument("SphereMap: empty evaluator");
  if (!(fd_step_ > 0.0)) throw std::invalid_argument("SphereMap: fd_step must be positive");
}

Vec4 SphereMap::differential(const SpherePoint& p, const Vec4& u) const {
  const Vec4 image = (*this)(p).coords();
  if (jacobian_) return project_onto(image, jacobian_(p, u));
  const double len = norm(u);
  if (len == 0.0) return Vec4{};
  const Vec4 dir = u / len;
  const SpherePoint plus(p.coords() + fd_step_ * dir);
  const SpherePoint minus(p.coords() - fd_step_ * dir);
  const Vec4 d = (len / (2.0 * fd_step_)) * ((*this)(plus).coords() - (*this)(minus).coords());
  return project_onto(image, d);
}

SphereMap SphereMap::finite_difference_only() const {
  return SphereMap(label_ + "[fd]", eval_, {}, fd_step_);
}

SurfaceMap::SurfaceMap(std::string label, Eval eval, Jacobian jacobian, double fd_step)
    : label_(std::move(label)), eval_(std::move(eval)), jacobian_(std::move(jacobian)),
      fd_step_(fd_step) {
  if (!eval_) throw std::invalid_argument("SurfaceMap: empty evaluator");
  if (!(fd_step_ > 0.0)) throw std::invalid_argument("SurfaceMap: fd_step must be positive");
}

Vec3 SurfaceMap::operator()(const SpherePoint& p) const {
  const Vec3 v = eval_(p);
  return v / norm(v);
}

Vec3 SurfaceMap::differential(const SpherePoint& p, const Vec4& u) const {
  const Vec3 image = (*this)(p);
  if (jacobian_) return project_onto(image, jacobian_(p, u));
  const double len = norm(u);
  if (len == 0.0) return Vec3{};
  const Vec4 dir = u / len;
  const SpherePoint plus(p.coords() + fd_step_ * dir);
  const SpherePoint minus(p.coords() - fd_step_ * dir);
  const Vec3 d = (len / (2.0 * fd_step_)) * ((*this)(plus) - (*this)(minus));
  return project_onto(image, d);
}

SurfaceMap SurfaceMap::finite_difference_only() const {
  SurfaceMap m(label_ + "[fd]", eval_, {}, fd_step_);
  if (hopf_factor_) m.set_hopf_factor(hopf_factor_->finite_difference_only());
  return m;
}

Vec3 hopf_components(const SpherePoint& p) {
  const double x1 = p.x1(), y1 = p.y1(), x2 = p.x2(), y2 = p.y2();
  return {{2.0 * (x1 * x2 + y1 * y2), 2.0 * (x1 * y2 - x2 * y1),
           x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2}};
}

SpherePoint psi_quadratic(const SpherePoint& p) {
  const double x1 = p.x1(), y1 = p.y1(), x2 = p.x2(), y2 = p.y2();
  return SpherePoint(x1 * x1 - y1 * y1 - x2 * x2 - y2 * y2, 2.0 * x1 * y1, 2.0 * x1 * x2,
                     2.0 * x1 * y2);
}

SpherePoint psi_k_power(const SpherePoint& p, int k) {
  if (k < 0) throw std::invalid_argument("psi_k_power: k must be non-negative");
  return SpherePoint(quat_power(p.coords(), k));
}

SpherePoint psi_k_recursive(const SpherePoint& p, int k) {
  if (k < 1) throw std::invalid_argument("psi_k_recursive: k must be >= 1");
  if (k == 1) return p;
  if (k == 2) return psi_quadratic(p);
  // psi_n = -a + 2 <a, b> b, a reflection of a = psi_{1 or 2} through b.
  const int m = k / 4;
  int a_index = 0;
  int b_index = 0;
  switch (k % 4) {
    case 0: a_index = 2; b_index = 2 * m + 1; break;
    case 1: a_index = 1; b_index = 2 * m + 1; break;
    case 2: a_index = 2; b_index = 2 * m + 2; break;
    default: a_index = 1; b_index = 2 * m + 2; break;
  }
  const Vec4 a = (a_index == 1 ? p : psi_quadratic(p)).coords();
  const Vec4 b = psi_k_recursive(p, b_index).coords();
  return SpherePoint(-1.0 * a + (2.0 * dot(a, b)) * b);
}

SphereMap identity_map() {
  return SphereMap(
      "id", [](const SpherePoint& p) { return p.coords(); },
      [](const SpherePoint&, const Vec4& u) { return u; });
}

SphereMap psi_quadratic_map() {
  return SphereMap(
      "psi", [](const SpherePoint& p) { return psi_quadratic(p).coords(); },
      [](const SpherePoint& p, const Vec4& u) {
        return quat_mul(p.coords(), u) + quat_mul(u, p.coords());
      });
}

SphereMap psi_power_map(int k) {
  if (k < 0) throw std::invalid_argument("psi_power_map: k must be non-negative");
  return SphereMap(
      "psi_" + std::to_string(k), [k](const SpherePoint& p) { return psi_k_power(p, k).coords(); },
      [k](const SpherePoint& p, const Vec4& u) {
        Vec4 sum{};
        for (int j = 0; j < k; ++j) {
          sum += quat_mul(quat_mul(quat_power(p.coords(), j), u), quat_power(p.coords(), k - 1 - j));
        }
        return sum;
      });
}

SphereMap psi_recursive_map(int k) {
  return SphereMap("psi_rec_" + std::to_string(k),
                   [k](const SpherePoint& p) { return psi_k_recursive(p, k).coords(); });
}

SurfaceMap hopf_map() {
  SurfaceMap m(
      "hopf", [](const SpherePoint& p) { return hopf_components(p); },
      [](const SpherePoint& p, const Vec4& u) {
        const double x1 = p.x1(), y1 = p.y1(), x2 = p.x2(), y2 = p.y2();
        return Vec3{{2.0 * (u[0] * x2 + x1 * u[2] + u[1] * y2 + y1 * u[3]),
                     2.0 * (u[0] * y2 + x1 * u[3] - u[2] * y1 - x2 * u[1]),
                     2.0 * (x1 * u[0] + y1 * u[1] - x2 * u[2] - y2 * u[3])}};
      });
  m.set_hopf_factor(identity_map());
  return m;
}

SphereMap compose(const SphereMap& inner, const SphereMap& outer) {
  SphereMap::Jacobian jac;
  if (inner.has_analytic_jacobian() && outer.has_analytic_jacobian()) {
    jac = [inner, outer](const SpherePoint& p, const Vec4& u) {
      return outer.differential(inner(p), inner.differential(p, u));
    };
  }
  return SphereMap(
      outer.label() + "o" + inner.label(),
      [inner, outer](const SpherePoint& p) { return outer.raw(inner(p)); }, std::move(jac),
      std::min(inner.fd_step(), outer.fd_step()));
}

SurfaceMap compose(const SphereMap& inner, const SurfaceMap& outer) {
  SurfaceMap::Jacobian jac;
  if (inner.has_analytic_jacobian() && outer.has_analytic_jacobian()) {
    jac = [inner, outer](const SpherePoint& p, const Vec4& u) {
      return outer.differential(inner(p), inner.differential(p, u));
    };
  }
  SurfaceMap m(
      outer.label() + "o" + inner.label(),
      [inner, outer](const SpherePoint& p) { return outer(inner(p)); }, std::move(jac),
      inner.fd_step());
  if (const SphereMap* f = outer.hopf_factor()) {
    // hopf o id o inner is recorded as hopf o inner.
    m.set_hopf_factor(f->label() == "id" ? inner : compose(inner, *f));
  }
  return m;
}

namespace {

SurfaceMap named_hopf_composite(const std::string& label, const SphereMap& inner) {
  const SurfaceMap m = compose(inner, hopf_map());
  SurfaceMap named(
      label, [m](const SpherePoint& p) { return m(p); },
      [m](const SpherePoint& p, const Vec4& u) { return m.differential(p, u); });
  named.set_hopf_factor(inner);
  return named;
}

}  // namespace

SurfaceMap phi_map() { return named_hopf_composite("phi", psi_quadratic_map()); }

SurfaceMap phi_k_map(int k) {
  return named_hopf_composite("phi_" + std::to_string(k), psi_power_map(k));
}

Vec3 differential(const SurfaceMap& m, const SpherePoint& p, const Vec4& u) {
  return m.differential(p, u);
}

Vec4 differential(const SphereMap& m, const SpherePoint& p, const Vec4& u) {
  return m.differential(p, u);
}

std::array<Vec3, 3> frame_differential(const SurfaceMap& m, const SpherePoint& p) {
  const Frame f = frame_vectors(p);
  return {m.differential(p, f.xi), m.differential(p, f.x1), m.differential(p, f.x2)};
}

SingularValues singular_values(const SurfaceMap& m, const SpherePoint& p) {
  const std::array<Vec3, 3> cols = frame_differential(m, p);
  Eigen::Matrix3d j;
  for (int b = 0; b < 3; ++b) {
    for (int k = 0; k < 3; ++k) j(k, b) = 0.5 * cols[b][k];  // S^2(1/2)
  }
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(j).singularValues();
  return {sv(0), sv(1)};
}

}  // namespace s3flow
