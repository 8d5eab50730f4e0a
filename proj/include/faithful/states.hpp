#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "faithful/linalg.hpp"
#include "faithful/random.hpp"

namespace faithful {

/// Thrown by BipartiteState validation; the message names the failed invariant.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density matrix of a two-party system.
///
/// Invariants (checked on construction): Hermitian to 1e-9, unit trace to
/// 1e-10, smallest eigenvalue >= -1e-9. The stored matrix is the Hermitian
/// part of the input.
class BipartiteState {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kPositivityTolerance = 1e-9;

  BipartiteState(ComplexMatrix rho, Dims dims);

  static BipartiteState pure(const ComplexVector& psi, Dims dims);

  const ComplexMatrix& rho() const { return rho_; }
  Dims dims() const { return dims_; }
  /// Local dimension when d_A == d_B; throws otherwise.
  int local_dim() const;

  ComplexMatrix marginal(Subsystem kept) const;
  double fidelity(const ComplexVector& psi) const;

  /// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
  BipartiteState rotated(const ComplexMatrix& ua, const ComplexMatrix& ub) const;

 private:
  ComplexMatrix rho_;
  Dims dims_;
};

enum class Measure { Bures, HilbertSchmidt };

std::string_view to_string(Measure m);
Measure parse_measure(std::string_view text);

struct SamplerConfig {
  Measure measure = Measure::Bures;
  int d = 2;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/// (sum_i |ii>)/sqrt(d).
ComplexVector max_entangled(int d);

/// p |phi+><phi+| + (1 - p) 1/d^2.
BipartiteState isotropic(int d, double p);

/// p |psi-><psi-| + (1 - p) 1/4.
BipartiteState werner_qubit(double p);

BipartiteState maximally_mixed(Dims dims);

/// Hilbert-Schmidt measure: G G^dagger / Tr(G G^dagger), G Ginibre d^2 x d^2.
BipartiteState sample_hs(int d, Rng& rng);

/// Bures measure: (1 + U) G G^dagger (1 + U)^dagger normalized, with G Ginibre
/// and U Haar, both d^2 x d^2.
BipartiteState sample_bures(int d, Rng& rng);

/// Draws sample `config.index` of the stream identified by `config.seed`.
BipartiteState sample(const SamplerConfig& config);

/// JSON document {"d_a", "d_b", "re", "im"}; numbers written with 17
/// significant digits so the round trip is exact.
std::string save_state(const BipartiteState& state);
/// Throws ContractViolation on malformed documents and InvariantViolation when
/// the matrix is not a valid density matrix.
BipartiteState load_state(std::string_view document);

struct PureState {
  ComplexVector psi;
  Dims dims;
};

/// {"d_a", "d_b", "re": [...], "im": [...]} with d_a * d_b amplitudes. The
/// vector is normalized on load; a zero vector is rejected.
PureState load_state_vector(std::string_view document);
std::string save_state_vector(const ComplexVector& psi, Dims dims);

}  // namespace faithful
