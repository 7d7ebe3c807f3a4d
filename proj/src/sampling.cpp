#include "s3flow/sampling.hpp"

#include <numbers>
#include <random>

namespace s3flow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unique positive root of x^(d+1) = x + 1.
double generalized_golden(int d) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

// Bit-exact offsets in [0, 1): mt19937_64 output is fully specified by the standard.
std::vector<double> seed_offsets(std::uint64_t seed, int d) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(d);
  for (auto& o : out) o = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return out;
}

std::vector<std::vector<double>> r_sequence(std::size_t n, int d, std::uint64_t seed) {
  const double g = generalized_golden(d);
  std::vector<double> alpha(d);
  double inv = 1.0;
  for (int j = 0; j < d; ++j) {
    inv /= g;
    alpha[j] = inv;
  }
  const std::vector<double> offset = seed_offsets(seed, d);
  std::vector<std::vector<double>> pts(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const double v = offset[j] + static_cast<double>(i + 1) * alpha[j];
      pts[i][j] = v - std::floor(v);
    }
  }
  return pts;
}

}  // namespace

SampleSet sphere_samples(std::size_t n, std::uint64_t seed) {
  SampleSet out;
  out.reserve(n);
  for (const auto& u : r_sequence(n, 3, seed)) {
    // Hopf chart with cos^2 s uniform gives the round measure cos s sin s ds dphi1 dphi2.
    const double c = std::sqrt(u[0]);
    const double s = std::sqrt(1.0 - u[0]);
    const double a1 = kTwoPi * u[1], a2 = kTwoPi * u[2];
    out.emplace_back(c * std::cos(a1), c * std::sin(a1), s * std::cos(a2), s * std::sin(a2));
  }
  return out;
}

std::vector<Vec3> s2_samples(std::size_t n, std::uint64_t seed) {
  std::vector<Vec3> out;
  out.reserve(n);
  for (const auto& u : r_sequence(n, 2, seed)) {
    const double z = 2.0 * u[0] - 1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = kTwoPi * u[1];
    out.push_back(Vec3{{r * std::cos(a), r * std::sin(a), z}});
  }
  return out;
}

SampleSet equator_samples(std::size_t n, std::uint64_t seed) {
  SampleSet out;
  out.reserve(n);
  for (const Vec3& v : s2_samples(n, seed)) out.emplace_back(0.0, v[2], v[0], v[1]);
  return out;
}

}  // namespace s3flow
