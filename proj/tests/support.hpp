#pragma once

// Glue between library types and the plain-array oracles.

#include <random>

#include "oracles.hpp"
#include "s3flow/sphere.hpp"

namespace support {

inline oracle::V4 arr(const s3flow::Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
inline oracle::V4 arr(const s3flow::SpherePoint& p) { return arr(p.coords()); }
inline s3flow::Vec4 vec(const oracle::V4& v) { return {{v[0], v[1], v[2], v[3]}}; }
inline s3flow::SpherePoint point(const oracle::V4& v) { return s3flow::SpherePoint(vec(v)); }

inline oracle::Field4 ambient(const s3flow::VectorField& f) {
  return [f](const oracle::V4& x) { return arr(f.ambient(point(x))); };
}

inline double dist(const s3flow::Vec4& a, const oracle::V4& b) {
  return oracle::norm(oracle::add(arr(a), b, -1.0));
}

/// Random points from an independent generator (not the library's sampler).
inline std::vector<s3flow::SpherePoint> random_points(std::size_t n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::vector<s3flow::SpherePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(point(oracle::random_point(rng)));
  return out;
}

/// Random tangent vector at p.
inline s3flow::Vec4 random_tangent(const s3flow::SpherePoint& p, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return s3flow::project_tangent(p, s3flow::Vec4{{g(rng), g(rng), g(rng), g(rng)}});
}

}  // namespace support
