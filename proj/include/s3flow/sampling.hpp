#pragma once

// Deterministic low-discrepancy sample sets (Roberts R_d sequences with a
// seed-derived offset) mapped to S^3, S^2 and the equatorial sphere {x1 = 0}.

#include <cstdint>
#include <vector>

#include "s3flow/sphere.hpp"

namespace s3flow {

using SampleSet = std::vector<SpherePoint>;

/// n points, uniformly distributed for the round volume of S^3.
SampleSet sphere_samples(std::size_t n, std::uint64_t seed = 0);

/// n points on the equatorial 2-sphere {x1 = 0} of S^3.
SampleSet equator_samples(std::size_t n, std::uint64_t seed = 0);

/// n unit vectors in R^3, area-uniform.
std::vector<Vec3> s2_samples(std::size_t n, std::uint64_t seed = 0);

}  // namespace s3flow
