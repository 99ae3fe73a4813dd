#pragma once

#include <cstddef>
#include <cstdint>

#include "gframes/algebra.hpp"

namespace gframes {

/// SplitMix64: a 64-bit counter-based generator. The state advances by the
/// golden-ratio increment and each output is a bijective mix of the state,
/// so streams are reproducible in any language. Seeded with 0 the first
/// outputs are 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (cosine branch only).
  double normal();
  /// Circular complex normal with E|z|^2 = 1.
  Complex complex_normal();

  /// Independent child stream, derived deterministically from this one.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

CMatrix random_complex_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal phases of R folded into Q.
CMatrix random_unitary(SplitMix64& rng, Eigen::Index size);

/// Derives a per-repetition or per-purpose seed from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace gframes
