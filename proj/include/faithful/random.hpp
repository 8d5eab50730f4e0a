#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "faithful/linalg.hpp"

namespace faithful {

/// Per-sample random stream. The engine state is a pure function of
/// (seed, stream), so a Monte Carlo sample does not depend on which worker
/// draws it or in which order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();
  /// Complex scalar with independent standard normal real and imaginary parts.
  Complex complex_normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// n x n matrix with i.i.d. complex_normal entries.
ComplexMatrix ginibre(int n, Rng& rng);
ComplexMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix,
/// with the phases of diag(R) absorbed into Q.
ComplexMatrix haar_unitary(int n, Rng& rng);

/// Haar-random unit vector of length n.
ComplexVector random_pure_state(int n, Rng& rng);

}  // namespace faithful
