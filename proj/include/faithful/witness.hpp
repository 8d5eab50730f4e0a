#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faithful/linalg.hpp"

namespace faithful {

/// Fidelity-based witness threshold * 1 - |target><target|.
///
/// For `schmidt_level` l > 1 this is a Schmidt-number witness whose threshold
/// is the sum of the l largest squared Schmidt coefficients of the target.
struct Witness {
  ComplexMatrix observable;
  double threshold = 0.0;
  ComplexVector target;
  int schmidt_level = 1;
  Dims dims;
};

Witness fidelity_witness(const ComplexVector& psi, Dims dims, int level = 1);

/// threshold * 1 - |target><target| without validating the threshold.
Witness make_witness(const ComplexVector& target, double threshold, Dims dims, int level = 1);

/// The 2^{d-1} witnesses 1/d - |phi_a><phi_a| with
/// |phi_a> = (|00> + sum_{j>=1} a_j |jj>)/sqrt(d), a_j = +-1. Bit j-1 of the
/// index set means a_j = -1.
std::vector<Witness> rfw_set(int d);

/// Sign vector of RFW number `index` in `rfw_set(d)` (length d - 1).
std::vector<int> rfw_signs(int d, std::uint32_t index);

/// Product-form weights p_a = prod_j (1 + a_j alpha_j)/2 with
/// alpha_j = s_j / s_1, j >= 2.
struct LhvWeights {
  std::vector<double> probabilities;  // indexed like rfw_set
  RealVector alphas;                  // alpha_2 ... alpha_d

  /// sum_a p_a a_j for j = 2..d (zero-based position j - 2).
  double marginal(int j) const;
  /// sum_a p_a a_i a_j.
  double correlation(int i, int j) const;
};

LhvWeights lhv_weights(const RealVector& schmidt_coefficients);

struct RfwDecomposition {
  /// Z = W - d s_1^2 sum_a p_a W_a, in the Schmidt basis of psi.
  ComplexMatrix z;
  RealVector schmidt;
  double off_diagonal_mass = 0.0;
  double min_eigenvalue = 0.0;
  bool diagonal = false;
  bool psd = false;
  /// Diagonal entries lie in {0} u {s_1^2 - s_j^2}.
  bool entries_expected = false;
};

/// Builds Z for the fidelity witness of psi (expressed in psi's Schmidt
/// basis, padded to d = min(d_A, d_B)) and checks diagonality and positivity.
RfwDecomposition verify_rfw_decomposition(const ComplexVector& psi, Dims dims);

/// Same check starting directly from Schmidt coefficients (length d).
RfwDecomposition verify_rfw_decomposition(const RealVector& schmidt_coefficients);

struct Obs4Result {
  bool detectable = false;
  double margin = 0.0;  // sum_i s_i - sqrt(l)
};

/// Whether the pure state with Schmidt vector s is detected by some Schmidt
/// witness l/d - |phi><phi| with maximally entangled phi.
Obs4Result obs4_detectable(const RealVector& s, int level);

struct Obs5Result {
  double epsilon = 0.0;
  RealVector x;          // Schmidt vector of the counterexample (length l + 1)
  double overlap = 0.0;  // |<psi|x>|^2
  double beta = 0.0;     // sum of the l largest s_k^2
  double sum_x = 0.0;
  bool detected_by_target = false;          // overlap >= beta + eps^2
  bool undetected_by_max_entangled = false; // sum_x <= sqrt(l)
};

/// Counterexample showing the Schmidt witness of s is not weaker than the
/// maximally entangled family. Throws ContractViolation when s_1 = ... = s_l
/// (no counterexample exists) or s_{l+1} = 0.
Obs5Result obs5_counterexample(const RealVector& s, int level);

/// Canonical state sum_i s_i |ii> on C^d (x) C^d, d = s.size().
ComplexVector schmidt_form_state(const RealVector& s);

/// JSON: {"threshold", "level", "d_a", "d_b", "target": {"re", "im"},
/// "observable": {"re", "im"}}.
std::string save_witness(const Witness& w);
Witness load_witness(std::string_view document);

/// Either a single witness document or {"witnesses": [...]}.
std::vector<Witness> load_witness_set(std::string_view document);

}  // namespace faithful
