#include "s3flow/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "s3flow/charts.hpp"

namespace s3flow {

namespace {

double min_distance(const std::vector<SpherePoint>& pts, const SpherePoint& q) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) d = std::min(d, distance(p, q));
  return d;
}

double min_separation(const Curve& a, const Curve& b) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points) d = std::min(d, min_distance(b.points, p));
  return d;
}

}  // namespace

double gauss_linking_sum(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<Vec3> ma(na), da(na), mb(nb), db(nb);
  for (std::size_t i = 0; i < na; ++i) {
    const Vec3& p = a[i];
    const Vec3& q = a[(i + 1) % na];
    ma[i] = 0.5 * (p + q);
    da[i] = q - p;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    const Vec3& p = b[j];
    const Vec3& q = b[(j + 1) % nb];
    mb[j] = 0.5 * (p + q);
    db[j] = q - p;
  }
  // Row sums first, then a fixed-order reduction over rows.
  double total = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      const Vec3 r = ma[i] - mb[j];
      const double d = norm(r);
      row += dot(r, cross3(da[i], db[j])) / (d * d * d);
    }
    total += row;
  }
  return total / (4.0 * std::numbers::pi);
}

std::vector<SpherePoint> resample_closed(const Curve& c, std::size_t n) {
  std::vector<SpherePoint> pts = c.points;
  // A closed curve repeats (approximately) its first point at the end.
  if (pts.size() > 1 && distance(pts.front(), pts.back()) < 1e-9) pts.pop_back();
  const std::size_t m = pts.size();
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) cum[i + 1] = cum[i] + distance(pts[i], pts[(i + 1) % m]);
  const double total = cum[m];
  std::vector<SpherePoint> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < m && cum[seg + 1] <= target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double f = len > 0.0 ? (target - cum[seg]) / len : 0.0;
    const Vec4 x = (1.0 - f) * pts[seg].coords() + f * pts[(seg + 1) % m].coords();
    out.emplace_back(x);
  }
  return out;
}

Curve reversed(const Curve& c) {
  Curve r = c;
  std::reverse(r.points.begin(), r.points.end());
  const double t_end = c.times.empty() ? 0.0 : c.times.back();
  r.times.clear();
  for (auto it = c.times.rbegin(); it != c.times.rend(); ++it) r.times.push_back(t_end - *it);
  return r;
}

LinkingResult linking_number(const std::vector<Curve>& l1, const std::vector<Curve>& l2,
                             const LinkingOptions& options) {
  if (l1.empty() || l2.empty()) throw TopologyError("linking_number: empty link");
  for (const auto* link : {&l1, &l2}) {
    for (const auto& c : *link) {
      if (!c.closed) throw TopologyError("linking_number: curves must be closed");
      if (c.points.size() < 3) throw TopologyError("linking_number: curves need at least three points");
    }
  }
  for (const auto& a : l1) {
    for (const auto& b : l2) {
      if (min_separation(a, b) <= options.min_separation) {
        throw TopologyError("linking_number: curves are too close to each other");
      }
    }
  }

  const SampleSet poles = sphere_samples(options.pole_candidates, options.seed);
  std::size_t best = 0;
  double best_clearance = -1.0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto* link : {&l1, &l2}) {
      for (const auto& c : *link) clearance = std::min(clearance, min_distance(c.points, poles[i]));
    }
    if (clearance > best_clearance) {
      best_clearance = clearance;
      best = i;
    }
  }
  const SpherePoint pole = poles[best];

  auto project = [&](const Curve& c, std::size_t n) {
    std::vector<Vec3> out;
    out.reserve(n);
    for (const auto& p : resample_closed(c, n)) out.push_back(stereographic(p, pole));
    return out;
  };

  const std::size_t pairs = l1.size() * l2.size();
  std::optional<long> previous;
  for (std::size_t n = options.initial_segments; n * n * pairs <= options.max_segment_pairs;
       n *= 2) {
    double raw = 0.0;
    for (const auto& a : l1) {
      const std::vector<Vec3> pa = project(a, n);
      for (const auto& b : l2) raw += gauss_linking_sum(pa, project(b, n));
    }
    const long rounded = std::lround(raw);
    const double dist = std::abs(raw - static_cast<double>(rounded));
    if (dist < options.rounding_tolerance && previous && *previous == rounded) {
      return LinkingResult{rounded, raw, dist, n, pole};
    }
    previous = dist < options.rounding_tolerance ? std::optional<long>(rounded) : std::nullopt;
  }
  throw TopologyError("linking_number: Gauss sum did not round to an integer within the cap");
}

LinkingResult linking_number(const Curve& c1, const Curve& c2, const LinkingOptions& options) {
  return linking_number(std::vector<Curve>{c1}, std::vector<Curve>{c2}, options);
}

SpherePoint gamma1_point(double t) { return SpherePoint(std::cos(t), std::sin(t), 0.0, 0.0); }

SpherePoint gamma2_point(int component, double t) {
  const double r = std::numbers::sqrt2 / 2.0;
  return SpherePoint(component == 0 ? r : -r, 0.0, r * std::cos(t), r * std::sin(t));
}

CriticalSetReport critical_set_report(const VectorField& v, const SurfaceMap& phi,
                                      const ScalarField& bernoulli, std::size_t equator_count,
                                      std::size_t volume_count, std::uint64_t seed) {
  CriticalSetReport r{};
  r.equator_samples = equator_count;
  r.volume_samples = volume_count;
  for (const auto& p : equator_samples(equator_count, seed)) {
    r.max_speed_on_equator = std::max(r.max_speed_on_equator, norm(v.ambient(p)));
    r.max_lambda2_on_equator = std::max(r.max_lambda2_on_equator, singular_values(phi, p).lambda2);
  }
  constexpr int kCirclePoints = 360;
  for (int i = 0; i < kCirclePoints; ++i) {
    const double t = 2.0 * std::numbers::pi * i / kCirclePoints;
    r.max_bernoulli_on_gamma1 = std::max(r.max_bernoulli_on_gamma1, std::abs(bernoulli(gamma1_point(t))));
    for (int m = 0; m < 2; ++m) {
      r.max_bernoulli_gap_on_gamma2 =
          std::max(r.max_bernoulli_gap_on_gamma2, std::abs(bernoulli(gamma2_point(m, t)) - 2.0));
    }
  }
  r.min_bernoulli = std::numeric_limits<double>::infinity();
  r.max_bernoulli = -std::numeric_limits<double>::infinity();
  for (const auto& p : sphere_samples(volume_count, seed)) {
    const double b = bernoulli(p);
    r.min_bernoulli = std::min(r.min_bernoulli, b);
    r.max_bernoulli = std::max(r.max_bernoulli, b);
  }
  return r;
}

}  // namespace s3flow
