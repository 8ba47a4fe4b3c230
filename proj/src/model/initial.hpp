#pragma once

#include "mesh/fields.hpp"

#include <cstdint>
#include <random>

namespace chb {

/// Uniform double in [0,1) from the top 53 bits of a 64-bit Mersenne twister draw; unlike
/// std::uniform_real_distribution the sequence is identical on every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 gen_;
};

/// mean + amplitude * U(-1,1) independently per node.
ScalarField noise_field(const GridPtr& g, std::uint64_t seed, double amplitude, double mean = 0.0);
/// Smooth random field: a combination of low-frequency cosine modes with random weights,
/// scaled so that its maximum modulus equals `sup_norm`.
ScalarField smooth_random_field(const GridPtr& g, std::uint64_t seed, double sup_norm = 1.0, int modes = 3);
/// tanh((x - lx/2) / (sqrt(2) eps)).
ScalarField interface_field(const GridPtr& g, double eps);

} // namespace chb
