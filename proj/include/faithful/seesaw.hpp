#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "faithful/states.hpp"

namespace faithful {

struct SeesawOptions {
  /// 0 selects the default: 50 restarts for d <= 4, 200 above.
  int restarts = 0;
  /// A restart stops once one update gains less than this.
  double inner_tolerance = 1e-12;
  int max_inner_iterations = 20000;
  std::uint64_t seed = 0;
};

int default_restarts(int d);

/// Best overlap <phi_V| rho |phi_V> found over |phi_V> = (1 (x) V)|phi+>.
///
/// (U_A (x) U_B)|phi+> = (1 (x) U_B U_A^T)|phi+>, so a single unitary V covers
/// every maximally entangled target.
struct SeesawResult {
  double best_value = 0.0;
  ComplexMatrix unitary;
  int restarts_used = 0;
  std::vector<double> restart_values;
};

/// (1 (x) V)|phi+>.
ComplexVector max_entangled_target(const ComplexMatrix& v);

/// Heuristic maximization of the fidelity with maximally entangled states.
/// Restart 0 starts at V = 1, the others at Haar-random unitaries drawn from
/// the stream (options.seed, restart index). Each restart ascends
/// monotonically by replacing V with the unitary polar factor of the gradient.
SeesawResult max_singlet_fraction(const BipartiteState& state, const SeesawOptions& options = {});

struct SeesawVerdict {
  bool faithful = false;
  double value = 0.0;
  /// Maximally entangled target with overlap `value`, set when faithful.
  std::optional<ComplexVector> certificate;
};

/// Faithful when the best value exceeds 1/d by more than the boundary margin;
/// otherwise inconclusive (a heuristic cannot prove unfaithfulness).
SeesawVerdict faithful_via_seesaw(const BipartiteState& state, const SeesawResult& result);

/// S(rho) = max(d * max_phi <phi|rho|phi>, 1) over maximally entangled phi,
/// evaluated with the see-saw (a lower bound on the true value).
double s_quantity(const BipartiteState& state, const SeesawOptions& options = {});

/// Unitary quadratic minimization instance: f(U) = sum_j |Tr(A_j^dagger U)|^2
/// with Tr(A_j^dagger A_j) <= 1.
struct UqmInstance {
  int n = 0;
  std::vector<ComplexMatrix> matrices;

  void validate() const;
};

struct UqmResult {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  ComplexMatrix unitary;
};

/// Brackets min_U f(U): the upper bound is f at the see-saw minimizer of
/// <Phi_U|X|Phi_U> with X = sum_j |Phi_{A_j}><Phi_{A_j}|, the lower bound is
/// n * lambda_min(X) read off the Gram matrix Tr(A_j^dagger A_k).
UqmResult uqm_minimize(const UqmInstance& instance, int restarts, std::uint64_t seed = 0);

/// f(U) evaluated directly from the matrices.
double uqm_objective(const UqmInstance& instance, const ComplexMatrix& u);

UqmInstance load_uqm(std::string_view document);

/// Maximizes c^dagger q c over unitary d x d coefficient matrices C (row-major
/// c). `q` must be positive semidefinite for the ascent to be monotone.
SeesawResult maximize_unitary_quadratic(const ComplexMatrix& q, int d,
                                        const SeesawOptions& options);

}  // namespace faithful
