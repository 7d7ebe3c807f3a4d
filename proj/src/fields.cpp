#include "s3flow/fields.hpp"

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>

namespace s3flow {

VectorField field_from_map(const SurfaceMap& phi) {
  auto coeffs = [phi](const SpherePoint& p) {
    const Vec3 n = phi(p);
    const auto cols = frame_differential(phi, p);
    // omega(a, b) = <n, a x b> on S^2(1/2); both legs carry dphi/2.
    auto omega = [&](int i, int j) { return 0.25 * dot(n, cross3(cols[i], cols[j])); };
    return FrameCoefficients{omega(1, 2), omega(2, 0), omega(0, 1)};
  };
  return VectorField::from_coefficients("hodge(" + phi.label() + ")", coeffs);
}

ContactField ContactField::scaled(double factor) const {
  return ContactField{field.scaled(factor), potential.scaled(factor), xi_hat.scaled(factor)};
}

ContactField field_from_contact_potential(const SurfaceMap& phi, double h) {
  const SphereMap* inner = phi.hopf_factor();
  if (inner == nullptr) {
    throw std::invalid_argument("field_from_contact_potential: map is not of the form hopf o f");
  }
  const SphereMap f = *inner;
  auto xi_hat_coeffs = [f](const SpherePoint& p) {
    const Vec4 reeb = frame_vectors(f(p)).xi;
    const Frame fr = frame_vectors(p);
    return FrameCoefficients{dot(reeb, f.differential(p, fr.xi)),
                             dot(reeb, f.differential(p, fr.x1)),
                             dot(reeb, f.differential(p, fr.x2))};
  };
  VectorField xi_hat = VectorField::from_coefficients("xi_hat(" + phi.label() + ")", xi_hat_coeffs);
  VectorField potential = xi_hat.scaled(0.5);
  VectorField field(
      "contact(" + phi.label() + ")",
      [xi_hat, h](const SpherePoint& p) { return 0.5 * curl(xi_hat, p, h).v(); });
  return ContactField{std::move(field), std::move(potential), std::move(xi_hat)};
}

TangentVector singular_frame_vector(const SurfaceMap& phi, const SpherePoint& p) {
  const SingularValues sv = singular_values(phi, p);
  if (sv.lambda2 <= kCriticalThreshold) {
    throw std::domain_error("singular_frame_vector: point is critical (lambda2 <= 1e-8)");
  }
  const auto cols = frame_differential(phi, p);
  Eigen::Matrix3d a;
  for (int b = 0; b < 3; ++b) {
    for (int r = 0; r < 3; ++r) a(r, b) = 0.5 * cols[b][r];
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(a.transpose() * a);
  Eigen::Vector3d u = eig.eigenvectors().col(0);  // eigenvalues ascend
  int lead = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(u(i)) > std::abs(u(lead))) lead = i;
  }
  if (u(lead) < 0.0) u = -u;
  const double scale = sv.lambda1 * sv.lambda2;
  return from_frame(p, FrameCoefficients{scale * u(0), scale * u(1), scale * u(2)});
}

VectorField field_from_singular_frame(const SurfaceMap& phi) {
  return VectorField("singular(" + phi.label() + ")", [phi](const SpherePoint& p) {
    return singular_frame_vector(phi, p).v();
  });
}

std::vector<Vec4> align_signs(const SampleSet& samples, const std::vector<Vec4>& values,
                              const VectorField& reference) {
  if (samples.size() != values.size()) {
    throw std::invalid_argument("align_signs: samples and values differ in length");
  }
  std::vector<Vec4> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Vec4 ref = reference.ambient(samples[i]);
    const Vec4& v = values[i];
    out[i] = norm(v - ref) <= norm(v + ref) ? v : -v;
  }
  return out;
}

FrameCoefficients paper_field_coefficients(const SpherePoint& p) {
  const double x1 = p.x1();
  return {4.0 * x1 * x1, -4.0 * x1 * p.y2(), 4.0 * x1 * p.x2()};
}

TangentVector paper_field(const SpherePoint& p) {
  return from_frame(p, paper_field_coefficients(p));
}

double paper_bernoulli(const SpherePoint& p) {
  const double x1 = p.x1();
  return 8.0 * x1 * x1 * (p.x2() * p.x2() + p.y2() * p.y2());
}

double paper_pressure(const SpherePoint& p) {
  const double x1sq = p.x1() * p.x1();
  return -8.0 * x1sq * x1sq;
}

VectorField paper_velocity_field() {
  return VectorField::from_coefficients("paper", paper_field_coefficients);
}

EulerSolutionBundle paper_solution() {
  return {paper_velocity_field(), paper_bernoulli, paper_pressure};
}

EulerSolutionBundle hopf_solution() {
  return {xi_field(), [](const SpherePoint&) { return 0.5; },
          [](const SpherePoint&) { return 0.0; }};
}

double euler_residual_curl_form(const VectorField& v, const ScalarField& b,
                                const SampleSet& samples, double h) {
  double sup = 0.0;
  for (const auto& p : samples) {
    const Vec4 vp = v.ambient(p);
    const Vec4 lhs = cross(p, vp, curl(v, p, h).v()).v();
    sup = std::max(sup, norm(lhs - grad(b, p, h).v()));
  }
  return sup;
}

DirectResidual euler_residual_direct(const VectorField& v, const ScalarField& pressure,
                                     const SampleSet& samples, double h) {
  DirectResidual r{0.0, 0.0};
  for (const auto& p : samples) {
    const Vec4 acc = covariant_derivative(v, v, p, h).v();
    r.momentum = std::max(r.momentum, norm(acc + grad(pressure, p, h).v()));
    r.divergence = std::max(r.divergence, std::abs(divergence(v, p, h)));
  }
  return r;
}

double commutator_residual(const VectorField& v, const SampleSet& samples, double h) {
  const VectorField w = curl_field(v, h);
  double sup = 0.0;
  for (const auto& p : samples) sup = std::max(sup, lie_bracket(v, w, p, h).norm());
  return sup;
}

double divergence_residual(const VectorField& v, const SampleSet& samples, double h) {
  double sup = 0.0;
  for (const auto& p : samples) sup = std::max(sup, std::abs(divergence(v, p, h)));
  return sup;
}

double kernel_residual(const VectorField& v, const SurfaceMap& phi, const SampleSet& samples) {
  double sup = 0.0;
  for (const auto& p : samples) sup = std::max(sup, norm(phi.differential(p, v.ambient(p))));
  return sup;
}

double first_integral_residual(const VectorField& v, const ScalarField& f,
                               const SampleSet& samples, double h) {
  double sup = 0.0;
  for (const auto& p : samples) {
    sup = std::max(sup, std::abs(directional_derivative(f, p, v.ambient(p), h)));
  }
  return sup;
}

BeltramiReport beltrami_check(const VectorField& v, const SampleSet& samples, double tol,
                              double h) {
  BeltramiReport r{false, false, 0.0, 0.0, {}, 0};
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -fmin;
  for (const auto& p : samples) {
    const Vec4 vp = v.ambient(p);
    const double n2 = dot(vp, vp);
    if (std::sqrt(n2) <= 1e-10) {
      ++r.skipped;
      continue;
    }
    const Vec4 c = curl(v, p, h).v();
    const double f = dot(c, vp) / n2;
    r.alignment_residual = std::max(r.alignment_residual, norm(c - f * vp));
    r.factor_samples.push_back(f);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
  }
  if (!r.factor_samples.empty()) r.factor_spread = fmax - fmin;
  r.is_beltrami = !r.factor_samples.empty() && r.alignment_residual <= tol;
  r.is_strong = r.is_beltrami && r.factor_spread <= tol;
  return r;
}

double kkps_discriminator(const VectorField& v, const SampleSet& samples, double h) {
  const ScalarField speed = [v](const SpherePoint& p) { return norm(v.ambient(p)); };
  double sup = 0.0;
  for (const auto& p : samples) {
    const Vec4 vp = v.ambient(p);
    if (norm(vp) <= 0.1) continue;
    sup = std::max(sup, std::abs(directional_derivative(speed, p, vp, h)));
  }
  return sup;
}

}  // namespace s3flow
