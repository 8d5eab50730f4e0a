#pragma once

#include <string>

#include "faithful/states.hpp"

namespace faithful {

/// Values within this distance of a threshold are reported as `boundary`.
inline constexpr double kBoundaryMargin = 1e-7;

/// Outcome of comparing a criterion statistic with its threshold.
///
/// `violated` means the statistic crossed the threshold in the direction that
/// certifies the tested property (NPT, CCNR violation, faithfulness for
/// the two-qubit X_2 test, "bound exceeded" for the X_d bound).
enum class Verdict { violated, satisfied, boundary };

std::string_view to_string(Verdict v);

struct CriterionResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::boundary;
};

/// X_d(rho) = rho - (rho_A (x) 1 + 1 (x) rho_B)/d + 2/d^2 1. The operator has
/// the same overlap as rho with every state whose marginals are 1/d.
ComplexMatrix x_operator(const BipartiteState& state);

/// Exact two-qubit test: value = lambda_max(X_2), threshold 1/2,
/// violated <=> faithful.
CriterionResult obs2_qubit_faithful(const BipartiteState& state);

/// value = lambda_max(X_d), threshold 1/d. `satisfied` (value <= 1/d) proves
/// the state unfaithful; `violated` is inconclusive.
CriterionResult obs3a_bound(const BipartiteState& state);

/// value = smallest eigenvalue of the partial transpose on B, threshold 0.
/// violated <=> NPT.
CriterionResult ppt_check(const BipartiteState& state);

/// value = trace norm of the realigned density matrix, threshold 1.
/// violated <=> CCNR detects entanglement.
CriterionResult ccnr_check(const BipartiteState& state);

/// lambda_ij = Tr(rho sigma_i (x) sigma_j), sigma_0 = 1.
Eigen::Matrix4d bloch_correlation(const BipartiteState& state);

/// Wootters concurrence of a two-qubit state.
double concurrence_qubit(const BipartiteState& state);

/// Absolute sum of the negative eigenvalues of the partial transpose.
double negativity(const BipartiteState& state);

/// Sufficient two-qubit faithfulness condition from the singlet-fraction
/// bounds: concurrence > 1/2 or negativity > (sqrt 2 - 1)/2.
bool entanglement_implies_faithful(const BipartiteState& state);

/// Compares `value` with `threshold`; `violated` when value > threshold +
/// margin, `satisfied` when value < threshold - margin.
Verdict compare_above(double value, double threshold, double margin = kBoundaryMargin);

}  // namespace faithful
