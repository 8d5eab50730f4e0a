#pragma once

#include <optional>
#include <string>
#include <vector>

#include "faithful/states.hpp"

namespace faithful {

struct Witness;

struct SdpOptions {
  /// Required certified duality gap on the optimum.
  double tolerance = 1e-7;
  /// Absolute bound on max(primal residual, dual residual).
  double residual_tolerance = 1e-9;
  int max_iterations = 50000;
  /// Initial ADMM penalty.
  double step = 1.0;
  /// When set, stop as soon as the certified upper bound falls below this
  /// value minus kBoundaryMargin (the verdict "optimum <= threshold" is then
  /// settled even though the optimizer itself is not polished).
  std::optional<double> decision_threshold;
};

/// Result of maximizing Tr(rho chi) over chi >= 0 with Tr_A chi = Tr_B chi = 1/d.
///
/// `chi` is exactly feasible: it is the affine projection of the last PSD
/// iterate, mixed with 1/d^2 just enough to restore positivity. `optimum` is
/// Tr(rho chi) and therefore a valid lower bound; `upper_bound` is the dual
/// certificate lambda_max(rho - M) + Tr(M)/d^2 for the last dual iterate M.
struct SdpSolution {
  double optimum = 0.0;
  double upper_bound = 0.0;
  ComplexMatrix chi;
  double purity = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
  /// True when the run stopped on `decision_threshold` before full convergence.
  bool decided_early = false;

  double gap() const { return upper_bound - optimum; }
};

SdpSolution sdp_max_overlap(const BipartiteState& state, const SdpOptions& options = {});
/// Same optimization for an arbitrary Hermitian d^2 x d^2 objective, e.g. X_d.
SdpSolution sdp_max_overlap(const ComplexMatrix& objective, int d, const SdpOptions& options = {});

/// Orthogonal projection of a Hermitian operator onto the affine set of
/// operators whose two marginals are 1/d (unit trace follows).
ComplexMatrix project_maximally_mixed_marginals(const ComplexMatrix& x, int d);

/// |Tr_A chi - 1/d|_F and |Tr_B chi - 1/d|_F, whichever is larger.
double marginal_deviation(const ComplexMatrix& chi, int d);

enum class Obs3Outcome { unfaithful, faithful, inconclusive };

std::string_view to_string(Obs3Outcome o);

inline constexpr double kPurityThreshold = 1.0 - 1e-6;

struct Obs3Verdict {
  Obs3Outcome outcome = Obs3Outcome::inconclusive;
  double optimum = 0.0;
  double purity = 0.0;
  /// Maximally entangled certificate (top eigenvector of chi) for `faithful`.
  std::optional<ComplexVector> certificate;
};

/// Reads the unfaithful / faithful / inconclusive verdict off a solved SDP.
/// Refuses unconverged solutions (ContractViolation). A solution stopped on
/// `decision_threshold` is accepted when its upper bound settles the verdict.
Obs3Verdict obs3_verdict(const BipartiteState& state, const SdpSolution& solution);

struct OrderingVerdict {
  bool weaker = true;
  /// min Tr(W rho) over unit-trace rho >= 0 with Tr(W_k rho) >= 0 for all k.
  double worst_value = 0.0;
  /// Certified lower bound on worst_value from the dual multipliers.
  double dual_bound = 0.0;
  /// Minimizer; a counterexample state when `weaker` is false.
  ComplexMatrix certificate;
  int iterations = 0;
  bool converged = false;
  std::string note;
};

inline constexpr double kOrderingTolerance = 1e-7;

/// Decides whether `w` is weaker than the set `ws`: every state detected by w
/// is detected by some member of ws.
OrderingVerdict witness_weaker_than(const Witness& w, const std::vector<Witness>& ws,
                                    const SdpOptions& options = {});

/// Matrix-level overload of `witness_weaker_than`.
OrderingVerdict witness_weaker_than(const ComplexMatrix& w, const std::vector<ComplexMatrix>& ws,
                                    const SdpOptions& options = {});

}  // namespace faithful
