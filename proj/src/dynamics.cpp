#include "s3flow/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>

namespace s3flow {

Rk4Step rk4_step(const VectorField& v, const SpherePoint& x, double dt) {
  const Vec4& x0 = x.coords();
  // Intermediate stages are evaluated on the degree-0 extension.
  const Vec4 k1 = v.ambient(x);
  const Vec4 k2 = v.ambient(SpherePoint(x0 + (0.5 * dt) * k1));
  const Vec4 k3 = v.ambient(SpherePoint(x0 + (0.5 * dt) * k2));
  const Vec4 k4 = v.ambient(SpherePoint(x0 + dt * k3));
  const Vec4 raw = x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return {SpherePoint(raw), std::abs(norm(raw) - 1.0)};
}

ClosureDetector::ClosureDetector(const VectorField& v, const SpherePoint& p0,
                                 double closure_tolerance, double direction_tolerance)
    : v_(v), p0_(p0), closure_tol_(closure_tolerance), direction_tol_(direction_tolerance) {
  const Vec4 v0 = v.ambient(p0);
  normal_ = v0 / norm(v0);
}

double ClosureDetector::side(const SpherePoint& x) const {
  return dot(x.coords() - p0_.coords(), normal_);
}

std::optional<std::pair<double, SpherePoint>> ClosureDetector::observe(double t,
                                                                      const SpherePoint& x,
                                                                      double dt,
                                                                      const SpherePoint& next) {
  if (!(side(x) < 0.0 && side(next) >= 0.0)) return std::nullopt;
  // Cheap rejection of far-away crossings before refining.
  if (std::min(distance(x, p0_), distance(next, p0_)) > 10.0 * norm(v_.ambient(x)) * dt + closure_tol_) {
    return std::nullopt;
  }
  double lo = 0.0, hi = dt;
  SpherePoint at_hi = next;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, dt); ++it) {
    const double mid = 0.5 * (lo + hi);
    const SpherePoint m = rk4_step(v_, x, mid).point;
    if (side(m) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
      at_hi = m;
    }
  }
  if (distance(at_hi, p0_) >= closure_tol_) return std::nullopt;
  const Vec4 vh = v_.ambient(at_hi);
  const double speed = norm(vh);
  if (speed == 0.0 || dot(vh / speed, normal_) < 1.0 - direction_tol_) return std::nullopt;
  return std::make_pair(t + hi, at_hi);
}

Curve integrate_streamline(const VectorField& v, const SpherePoint& p0,
                           const StreamlineOptions& options) {
  if (norm(v.ambient(p0)) <= 1e-6) {
    throw DynamicsError("integrate_streamline: start point is an equilibrium (|V| <= 1e-6)");
  }
  if (!(options.step > 0.0) || !(options.t_max > 0.0)) {
    throw std::invalid_argument("integrate_streamline: step and t_max must be positive");
  }
  Curve c;
  c.points.push_back(p0);
  c.times.push_back(0.0);
  ClosureDetector detector(v, p0, options.closure_tolerance, options.direction_tolerance);
  double t = 0.0;
  SpherePoint x = p0;
  // Integer step count keeps the time grid free of accumulated rounding.
  const auto steps = static_cast<long>(std::ceil(options.t_max / options.step - 1e-9));
  for (long n = 0; n < steps; ++n) {
    const double dt = std::min(options.step, options.t_max - t);
    if (dt <= 0.0) break;
    const Rk4Step s = rk4_step(v, x, dt);
    if (s.correction > options.max_renormalization) {
      throw DynamicsError("integrate_streamline: renormalization correction exceeds tolerance");
    }
    if (options.stop_on_closure) {
      if (auto hit = detector.observe(t, x, dt, s.point)) {
        c.arclength += distance(x, hit->second);
        c.points.push_back(hit->second);
        c.times.push_back(hit->first);
        c.closed = true;
        c.period = hit->first;
        return c;
      }
    }
    c.arclength += distance(x, s.point);
    x = s.point;
    t = static_cast<double>(n + 1) * options.step;
    if (t > options.t_max) t = options.t_max;
    c.points.push_back(x);
    c.times.push_back(t);
  }
  return c;
}

std::optional<double> detect_closure(const Curve& curve, const VectorField& v, const SpherePoint& p0,
                                     double closure_tolerance, double direction_tolerance) {
  ClosureDetector detector(v, p0, closure_tolerance, direction_tolerance);
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const double dt = curve.times[i + 1] - curve.times[i];
    if (auto hit = detector.observe(curve.times[i], curve.points[i], dt, curve.points[i + 1])) {
      return hit->first;
    }
  }
  return std::nullopt;
}

double drift(const Curve& curve, const ScalarField& f) {
  if (curve.points.empty()) return 0.0;
  const double f0 = f(curve.points.front());
  double d = 0.0;
  for (const auto& p : curve.points) d = std::max(d, std::abs(f(p) - f0));
  return d;
}

OrbitReport orbit_report(const Curve& curve, const VectorField& v, const ScalarField& bernoulli) {
  OrbitReport r;
  r.period = curve.period;
  r.bernoulli_drift = drift(curve, bernoulli);
  for (const auto& p : curve.points) r.max_speed = std::max(r.max_speed, norm(v.ambient(p)));
  return r;
}

std::optional<SpherePoint> locate_preimage(const SurfaceMap& phi, const Vec3& q,
                                           const SpherePoint& start, double tolerance) {
  const Vec3 target = q / norm(q);
  SpherePoint p = start;
  Vec3 r = phi(p) - target;
  double err = norm(r);
  double mu = 1e-3;
  for (int it = 0; it < 300 && err >= tolerance; ++it) {
    const auto cols = frame_differential(phi, p);
    Eigen::Matrix3d j;
    Eigen::Vector3d rv(r[0], r[1], r[2]);
    for (int b = 0; b < 3; ++b) {
      for (int k = 0; k < 3; ++k) j(k, b) = cols[b][k];
    }
    const Eigen::Matrix3d jtj = j.transpose() * j;
    const Eigen::Vector3d jtr = j.transpose() * rv;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      const Eigen::Vector3d delta =
          -(jtj + mu * Eigen::Matrix3d::Identity()).ldlt().solve(jtr);
      const Frame fr = frame_vectors(p);
      const SpherePoint candidate(p.coords() + delta(0) * fr.xi + delta(1) * fr.x1 +
                                  delta(2) * fr.x2);
      const Vec3 rc = phi(candidate) - target;
      const double ec = norm(rc);
      if (ec < err) {
        p = candidate;
        r = rc;
        err = ec;
        mu = std::max(mu * 0.1, 1e-15);
        improved = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!improved) break;
  }
  if (err < tolerance) return p;
  return std::nullopt;
}

namespace {

VectorField unit_field(const VectorField& v) {
  return VectorField("unit(" + v.label() + ")", [v](const SpherePoint& p) {
    const Vec4 w = v.ambient(p);
    const double n = norm(w);
    if (n < 1e-6) throw TopologyError("trace_fibre: fibre enters the near-critical region");
    return w / n;
  });
}

}  // namespace

namespace {

std::vector<SpherePoint> ranked_seeds(const SurfaceMap& phi, const Vec3& target,
                                      const FibreOptions& options,
                                      std::optional<SpherePoint> seed_hint) {
  std::vector<SpherePoint> seeds;
  if (seed_hint) seeds.push_back(*seed_hint);
  SampleSet candidates = sphere_samples(options.seed_count, options.seed);
  std::vector<double> score(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) score[i] = norm(phi(candidates[i]) - target);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  for (std::size_t i = 0; i < std::min(options.max_attempts, order.size()); ++i) {
    seeds.push_back(candidates[order[i]]);
  }
  return seeds;
}

Curve follow_fibre(const VectorField& v, const SpherePoint& start, const FibreOptions& options) {
  StreamlineOptions so;
  so.step = options.step;
  so.t_max = options.max_length;
  Curve c = integrate_streamline(unit_field(v), start, so);
  if (!c.closed) throw TopologyError("trace_fibre: fibre did not close within max_length");
  return c;
}

}  // namespace

Curve trace_fibre(const SurfaceMap& phi, const Vec3& q, const FibreOptions& options,
                  std::optional<SpherePoint> seed_hint) {
  const Vec3 target = q / norm(q);
  const VectorField v = field_from_map(phi);
  for (const auto& s : ranked_seeds(phi, target, options, seed_hint)) {
    auto found = locate_preimage(phi, target, s, options.value_tolerance);
    if (found && norm(v.ambient(*found)) >= 1e-6) return follow_fibre(v, *found, options);
  }
  throw TopologyError("trace_fibre: no seed converged to a regular preimage point");
}

Fibre trace_fibre_components(const SurfaceMap& phi, const Vec3& q, const FibreOptions& options,
                             double component_separation) {
  const Vec3 target = q / norm(q);
  const VectorField v = field_from_map(phi);
  Fibre fibre{target, {}};
  auto is_new = [&](const SpherePoint& p) {
    for (const auto& c : fibre.components) {
      for (const auto& x : c.points) {
        if (distance(x, p) <= component_separation) return false;
      }
    }
    return true;
  };
  for (const auto& s : ranked_seeds(phi, target, options, std::nullopt)) {
    auto found = locate_preimage(phi, target, s, options.value_tolerance);
    if (!found || norm(v.ambient(*found)) < 1e-6 || !is_new(*found)) continue;
    fibre.components.push_back(follow_fibre(v, *found, options));
  }
  if (fibre.components.empty()) {
    throw TopologyError("trace_fibre: no seed converged to a regular preimage point");
  }
  return fibre;
}

}  // namespace s3flow
