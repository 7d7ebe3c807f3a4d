#include "s3flow/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>
#include <numbers>
#include <stdexcept>

namespace s3flow {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &nodes[i], &weights[i], table.get());
  }
}

QuadratureGridS3 build_grid_s3(int n_s, int n_phi1, int n_phi2) {
  if (n_s < 2 || n_phi1 < 4 || n_phi2 < 4) {
    throw std::invalid_argument("build_grid_s3: need n_s >= 2 and n_phi >= 4");
  }
  std::vector<double> s_nodes, s_weights;
  gauss_legendre(n_s, 0.0, kPi / 2, s_nodes, s_weights);
  QuadratureGridS3 g;
  g.n_s = n_s;
  g.n_phi1 = n_phi1;
  g.n_phi2 = n_phi2;
  const std::size_t total = static_cast<std::size_t>(n_s) * n_phi1 * n_phi2;
  g.nodes.reserve(total);
  g.weights.reserve(total);
  const double d1 = 2.0 * kPi / n_phi1, d2 = 2.0 * kPi / n_phi2;
  for (int i = 0; i < n_s; ++i) {
    const double s = s_nodes[i];
    const double c = std::cos(s), sn = std::sin(s);
    const double w = s_weights[i] * c * sn * d1 * d2;
    for (int j = 0; j < n_phi1; ++j) {
      const double a1 = j * d1;
      for (int k = 0; k < n_phi2; ++k) {
        const double a2 = k * d2;
        g.nodes.emplace_back(c * std::cos(a1), c * std::sin(a1), sn * std::cos(a2),
                             sn * std::sin(a2));
        g.weights.push_back(w);
      }
    }
  }
  return g;
}

QuadratureGridS2 build_grid_s2(int n_u, int n_v) {
  if (n_u < 2 || n_v < 4) throw std::invalid_argument("build_grid_s2: need n_u >= 2, n_v >= 4");
  std::vector<double> u_nodes, u_weights;
  gauss_legendre(n_u, 0.0, kPi, u_nodes, u_weights);
  QuadratureGridS2 g;
  g.n_u = n_u;
  g.n_v = n_v;
  const double dv = 2.0 * kPi / n_v;
  for (int i = 0; i < n_u; ++i) {
    const double su = std::sin(u_nodes[i]), cu = std::cos(u_nodes[i]);
    const double w = 0.25 * su * u_weights[i] * dv;
    for (int j = 0; j < n_v; ++j) {
      const double v = j * dv;
      g.nodes.push_back(Vec3{{su * std::cos(v), su * std::sin(v), cu}});
      g.weights.push_back(w);
    }
  }
  return g;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double integrate(const ScalarField& f, const QuadratureGridS3& grid) {
  std::vector<double> terms(grid.nodes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = grid.weights[i] * f(grid.nodes[i]);
  return pairwise_sum(terms);
}

double integrate(const std::function<double(const Vec3&)>& f, const QuadratureGridS2& grid) {
  std::vector<double> terms(grid.nodes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = grid.weights[i] * f(grid.nodes[i]);
  return pairwise_sum(terms);
}

double l2_energy(const VectorField& v, const QuadratureGridS3& grid) {
  return integrate(
      [&v](const SpherePoint& p) {
        const Vec4 w = v.ambient(p);
        return dot(w, w);
      },
      grid);
}

double standard_potential(const Vec3& w) { return 1.0 - w[2]; }

double fs_energy(const SurfaceMap& phi, const Potential& potential, const QuadratureGridS3& grid,
                 const EnergyCoefficients& alpha) {
  const double total = integrate(
      [&](const SpherePoint& p) {
        double density = 0.0;
        if (alpha.alpha2 != 0.0 || alpha.alpha4 != 0.0) {
          const SingularValues sv = singular_values(phi, p);
          const double area = sv.lambda1 * sv.lambda2;
          density += alpha.alpha2 * (sv.lambda1 * sv.lambda1 + sv.lambda2 * sv.lambda2) +
                     alpha.alpha4 * area * area;
        }
        if (alpha.alpha0 != 0.0) density += 2.0 * alpha.alpha0 * potential(phi(p));
        return density;
      },
      grid);
  return 0.5 * total;
}

double helicity(const ContactField& v, const QuadratureGridS3& grid) {
  return integrate(
      [&v](const SpherePoint& p) { return dot(v.potential.ambient(p), v.field.ambient(p)); },
      grid);
}

HopfInvariantResult hopf_invariant(const SurfaceMap& phi, const QuadratureGridS3& grid, double h) {
  const ContactField cf = field_from_contact_potential(phi, h);
  HopfInvariantResult r{};
  r.value = helicity(cf, grid) / (kPi * kPi);
  r.nearest = std::lround(r.value);
  r.distance = std::abs(r.value - static_cast<double>(r.nearest));
  r.warning = r.distance > 0.01;
  return r;
}

double lower_bound_rhs(const Potential& potential, double hopf_invariant,
                       const QuadratureGridS2& grid) {
  const double mass = integrate(
      [&potential](const Vec3& w) {
        const double pv = potential(w);
        if (pv < 0.0) throw std::invalid_argument("lower_bound_rhs: potential must be >= 0");
        return std::pow(2.0 * pv, 1.0 / 6.0);
      },
      grid);
  return 4.0 / std::pow(27.0 * kPi, 0.25) * std::pow(mass, 1.5) *
         std::pow(std::abs(hopf_invariant), 0.75);
}

HelicityBound helicity_bound_check(const ContactField& v, const QuadratureGridS3& grid) {
  HelicityBound b{};
  b.lhs = l2_energy(v.field, grid);
  b.rhs = 2.0 * helicity(v, grid);
  // Equality holds for curl eigenfields; allow for quadrature rounding.
  b.holds = b.lhs >= b.rhs - 1e-9 * std::max(1.0, std::abs(b.rhs));
  return b;
}

}  // namespace s3flow
