#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "s3flow/charts.hpp"
#include "s3flow/fields.hpp"
#include "s3flow/sampling.hpp"
#include "support.hpp"

using namespace s3flow;
using support::arr;

namespace {

constexpr double kPi = std::numbers::pi;
const double kR = 1.0 / std::numbers::sqrt2;

double dist3(const Vec3& a, const Vec3& b) { return norm(a - b); }

Vec3 fd_differential(const SurfaceMap& m, const SpherePoint& p, const Vec4& u) {
  const oracle::V3 d = oracle::map_derivative(
      [&](const oracle::V4& x) {
        const Vec3 w = m(support::point(x));
        return oracle::V3{w[0], w[1], w[2]};
      },
      arr(p), arr(u), 1e-4);
  return {{d[0], d[1], d[2]}};
}

}  // namespace

TEST_SUITE("maps") {

TEST_CASE("hopf map examples") {
  CHECK(hopf_components(SpherePoint(1, 0, 0, 0)) == Vec3{{0, 0, 1}});
  CHECK(hopf_components(SpherePoint(0, 0, 1, 0)) == Vec3{{0, 0, -1}});
  CHECK(dist3(hopf_components(SpherePoint(kR, 0, kR, 0)), Vec3{{1, 0, 0}}) <= 1e-15);
  const SurfaceMap h = hopf_map();
  for (const auto& p : support::random_points(1000)) {
    CHECK(std::abs(norm(h(p)) - 1.0) <= 1e-12);
    CHECK(std::abs(norm(h.half_sphere_point(p)) - 0.5) <= 1e-12);
  }
}

TEST_CASE("quadratic map examples") {
  CHECK(psi_quadratic(SpherePoint(1, 0, 0, 0)).coords() == Vec4{{1, 0, 0, 0}});
  CHECK(psi_quadratic(SpherePoint(0, 1, 0, 0)).coords() == Vec4{{-1, 0, 0, 0}});
  CHECK(norm(psi_quadratic(SpherePoint(kR, 0, kR, 0)).coords() - Vec4{{0, 0, 1, 0}}) <= 1e-15);
  for (const auto& p : support::random_points(1000)) {
    CHECK(std::abs(norm(psi_quadratic(p).coords()) - 1.0) <= 1e-12);
  }
}

TEST_CASE("quaternion powers") {
  const SpherePoint p = support::random_points(1, 3)[0];
  CHECK(norm(psi_k_power(p, 1).coords() - p.coords()) <= 1e-15);
  CHECK(psi_k_power(p, 0).coords() == Vec4{{1, 0, 0, 0}});
  CHECK_THROWS_AS(psi_k_power(p, -1), std::invalid_argument);
  for (double s : {0.1, 0.7, 1.3, 2.9}) {
    const Vec4 got = psi_k_power(SpherePoint(std::cos(s), std::sin(s), 0, 0), 3).coords();
    CHECK(norm(got - Vec4{{std::cos(3 * s), std::sin(3 * s), 0, 0}}) <= 1e-14);
  }
  for (const auto& q : support::random_points(1000)) {
    CHECK(norm(psi_k_power(q, 2).coords() - psi_quadratic(q).coords()) <= 1e-12);
  }
}

TEST_CASE("power, recursion and spherical closed form agree for k <= 8") {
  CHECK_THROWS_AS(psi_k_recursive(SpherePoint(1, 0, 0, 0), 0), std::invalid_argument);
  const auto pts = support::random_points(1000, 19);
  for (int k = 1; k <= 8; ++k) {
    double worst = 0.0;
    for (const auto& p : pts) {
      const Vec4 pw = psi_k_power(p, k).coords();
      worst = std::max(worst, norm(pw - psi_k_recursive(p, k).coords()));
      worst = std::max(worst, support::dist(pw, oracle::psi_spherical(arr(p), k)));
    }
    CAPTURE(k);
    CHECK(worst <= 1e-10);
  }
  for (const auto& p : pts) {
    CHECK(norm(psi_k_recursive(p, 2).coords() - psi_quadratic(p).coords()) == 0.0);
  }
}

TEST_CASE("compositions evaluate by hand") {
  const SurfaceMap phi = phi_map();
  CHECK(dist3(phi(SpherePoint(1, 0, 0, 0)), Vec3{{0, 0, 1}}) <= 1e-15);
  CHECK(norm(psi_quadratic(SpherePoint(kR, kR, 0, 0)).coords() - Vec4{{0, 1, 0, 0}}) <= 1e-15);
  CHECK(dist3(phi(SpherePoint(kR, kR, 0, 0)), Vec3{{0, 0, 1}}) <= 1e-15);
  CHECK(dist3(phi(SpherePoint(kR, 0, kR, 0)), Vec3{{0, 0, -1}}) <= 1e-15);
  const SurfaceMap generic = compose(psi_quadratic_map(), hopf_map());
  for (const auto& p : support::random_points(100, 4)) {
    CHECK(dist3(generic(p), phi(p)) <= 1e-15);
  }
  REQUIRE(phi.hopf_factor() != nullptr);
  CHECK(phi.hopf_factor()->label() == "psi");
  REQUIRE(generic.hopf_factor() != nullptr);
  CHECK(norm(generic.hopf_factor()->raw(SpherePoint(kR, 0, kR, 0)) - Vec4{{0, 0, 1, 0}}) <= 1e-15);
  const SurfaceMap bare("bare", [](const SpherePoint& p) { return hopf_components(p); });
  CHECK(bare.hopf_factor() == nullptr);
}

TEST_CASE("Hopf fibres are xi orbits") {
  const SurfaceMap h = hopf_map();
  const SurfaceMap hfd = h.finite_difference_only();
  double worst = 0.0;
  for (const auto& p : sphere_samples(1000, 2)) {
    const Vec4 xi = frame_vectors(p).xi;
    worst = std::max({worst, norm(h.differential(p, xi)), norm(hfd.differential(p, xi))});
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("identity differential") {
  std::mt19937_64 rng(1);
  for (const auto& p : support::random_points(50, 6)) {
    const Vec4 u = support::random_tangent(p, rng);
    CHECK(norm(identity_map().differential(p, u) - u) <= 1e-15);
    CHECK(norm(identity_map().finite_difference_only().differential(p, u) - u) <= 1e-9);
  }
}

TEST_CASE("analytic differentials match the FD oracle") {
  std::mt19937_64 rng(2);
  const std::vector<SurfaceMap> maps{hopf_map(), phi_map(), phi_k_map(3), phi_k_map(5)};
  for (const auto& m : maps) {
    for (const auto& p : support::random_points(100, 7)) {
      const Vec4 u = support::random_tangent(p, rng);
      const Vec3 ref = fd_differential(m, p, u);
      CAPTURE(m.label());
      CHECK(dist3(m.differential(p, u), ref) <= 1e-7 * std::max(1.0, norm(ref)));
    }
  }
}

TEST_CASE("chain rule") {
  std::mt19937_64 rng(3);
  const SphereMap psi = psi_quadratic_map();
  const SphereMap psi3 = psi_power_map(3);
  const SphereMap both = compose(psi, psi3);  // psi3 o psi = q^6
  for (const auto& p : support::random_points(100, 8)) {
    const Vec4 u = support::random_tangent(p, rng);
    const Vec4 chained = psi3.differential(psi(p), psi.differential(p, u));
    CHECK(norm(both.differential(p, u) - chained) <= 1e-12 * std::max(1.0, norm(chained)));
    const Vec4 fd = both.finite_difference_only().differential(p, u);
    CHECK(norm(fd - chained) <= 1e-6 * std::max(1.0, norm(chained)));
    CHECK(norm(both(p).coords() - psi_k_power(p, 6).coords()) <= 1e-12);
  }
  // Recursive maps are FD only.
  CHECK_FALSE(psi_recursive_map(3).has_analytic_jacobian());
  for (const auto& p : support::random_points(20, 9)) {
    const Vec4 u = support::random_tangent(p, rng);
    CHECK(norm(psi_recursive_map(3).differential(p, u) - psi_power_map(3).differential(p, u)) <=
          1e-6 * std::max(1.0, norm(u)));
  }
}

TEST_CASE("singular values") {
  const SurfaceMap h = hopf_map();
  for (const auto& p : support::random_points(200, 10)) {
    const SingularValues sv = singular_values(h, p);
    CHECK(sv.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sv.lambda2 == doctest::Approx(1.0).epsilon(1e-7));
  }
  const SurfaceMap phi = phi_map();
  const SingularValues at_pole = singular_values(phi, SpherePoint(1, 0, 0, 0));
  CHECK(at_pole.lambda1 * at_pole.lambda2 == doctest::Approx(4.0).epsilon(1e-12));
  double worst = 0.0;
  for (const auto& p : equator_samples(1000)) worst = std::max(worst, singular_values(phi, p).lambda2);
  CHECK(worst <= 1e-8);
}

TEST_CASE("|phi^* omega| = lambda1 lambda2 = |V|") {
  const SurfaceMap phi = phi_map();
  for (const auto& p : sphere_samples(1000, 4)) {
    const SingularValues sv = singular_values(phi, p);
    CHECK(std::abs(sv.lambda1 * sv.lambda2 - paper_field(p).norm()) <= 1e-6);
  }
}

TEST_CASE("phi is a submersion away from the equator") {
  // Frozen: over these samples with |x1| >= 0.1 the smallest lambda2 is about 0.2.
  const SurfaceMap phi = phi_map();
  double smallest = 1e300;
  for (const auto& p : sphere_samples(10000, 0)) {
    if (std::abs(p.x1()) >= 0.1) smallest = std::min(smallest, singular_values(phi, p).lambda2);
  }
  CHECK(smallest >= 0.1);
}

TEST_CASE("Hopf chart") {
  CHECK(norm(hopf_to_cartesian({0.0, 0.0, 1.234}).coords() - Vec4{{1, 0, 0, 0}}) <= 1e-15);
  const auto h = cartesian_to_hopf(SpherePoint(kR, 0, kR, 0));
  CHECK(h.coords.s == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(h.coords.phi1 == 0.0);
  CHECK(h.coords.phi2 == 0.0);
  CHECK_FALSE(h.degenerate);
  const auto d = cartesian_to_hopf(SpherePoint(0, 0, 0.6, 0.8));
  CHECK(d.degenerate);
  CHECK(d.coords.phi1 == 0.0);
  CHECK(d.coords.s == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(hopf_to_cartesian({-0.1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(hopf_to_cartesian({2.0, 0, 0}), std::invalid_argument);

  double worst = 0.0;
  for (const auto& p : sphere_samples(10000, 6)) {
    const auto c = cartesian_to_hopf(p);
    CHECK(c.coords.phi1 >= 0.0);
    CHECK(c.coords.phi1 < 2 * kPi);
    worst = std::max(worst, norm(hopf_to_cartesian(c.coords).coords() - p.coords()));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("spherical chart") {
  double worst = 0.0;
  for (const auto& p : sphere_samples(10000, 7)) {
    const auto c = cartesian_to_spherical(p);
    CHECK(c.coords.s <= kPi);
    CHECK(c.coords.t <= kPi);
    worst = std::max(worst, norm(spherical_to_cartesian(c.coords).coords() - p.coords()));
  }
  CHECK(worst <= 1e-10);
  CHECK(cartesian_to_spherical(SpherePoint(1, 0, 0, 0)).degenerate);
  CHECK_THROWS_AS(spherical_to_cartesian({0.1, 4.0, 0.0}), std::invalid_argument);
}

TEST_CASE("stereographic projection") {
  const SpherePoint pole(0, 0, 0, 1);
  const auto b = stereographic_basis(pole);
  CHECK(det4(pole.coords(), b[0], b[1], b[2]) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(stereographic(pole, pole), std::invalid_argument);
  // The antipode goes to the origin; the equator to the unit sphere.
  CHECK(norm(stereographic(SpherePoint(0, 0, 0, -1), pole)) <= 1e-15);
  CHECK(norm(stereographic(SpherePoint(0.6, 0, 0.8, 0), pole)) == doctest::Approx(1.0));
  for (const auto& q : support::random_points(100, 11)) {
    const auto bq = stereographic_basis(q);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(dot(bq[i], q.coords())) <= 1e-12);
      for (int j = 0; j < 3; ++j) CHECK(std::abs(dot(bq[i], bq[j]) - (i == j)) <= 1e-12);
    }
  }
}

TEST_CASE("Hopf coordinate components") {
  const HopfCoords h{0.4, 1.1, -0.3};
  const auto basis = hopf_coordinate_basis(h);
  const Vec4 v = 0.5 * basis[0] - 2.0 * basis[1] + 3.0 * basis[2];
  const Vec3 c = hopf_components_of(h, v);
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(-2.0));
  CHECK(c[2] == doctest::Approx(3.0));
  CHECK_THROWS_AS(hopf_components_of({0.0, 0.0, 0.0}, v), std::domain_error);
}

}  // TEST_SUITE
