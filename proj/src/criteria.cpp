#include "faithful/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace faithful {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::violated: return "violated";
    case Verdict::satisfied: return "satisfied";
    case Verdict::boundary: return "boundary";
  }
  return "boundary";
}

Verdict compare_above(double value, double threshold, double margin) {
  if (value > threshold + margin) return Verdict::violated;
  if (value < threshold - margin) return Verdict::satisfied;
  return Verdict::boundary;
}

ComplexMatrix x_operator(const BipartiteState& state) {
  const int d = state.local_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const double dd = static_cast<double>(d);
  return state.rho() -
         (kron(state.marginal(Subsystem::A), id) + kron(id, state.marginal(Subsystem::B))) / dd +
         2.0 / (dd * dd) * ComplexMatrix::Identity(d * d, d * d);
}

CriterionResult obs2_qubit_faithful(const BipartiteState& state) {
  require(state.dims() == Dims{2, 2}, "obs2_qubit_faithful: requires two qubits");
  const double lmax = max_eigenvalue(x_operator(state));
  return {"obs2", lmax, 0.5, compare_above(lmax, 0.5)};
}

CriterionResult obs3a_bound(const BipartiteState& state) {
  const int d = state.local_dim();
  const double lmax = max_eigenvalue(x_operator(state));
  return {"obs3a", lmax, 1.0 / d, compare_above(lmax, 1.0 / d)};
}

CriterionResult ppt_check(const BipartiteState& state) {
  const double lowest = min_eigenvalue(partial_transpose(state.rho(), state.dims(), Subsystem::B));
  // Rank-deficient PPT states sit exactly on the threshold, so the margin is
  // one-sided: only eigenvalues below -margin count as NPT.
  const Verdict v = lowest < -kBoundaryMargin ? Verdict::violated : Verdict::satisfied;
  return {"ppt", lowest, 0.0, v};
}

CriterionResult ccnr_check(const BipartiteState& state) {
  const double norm = trace_norm(realign(state.rho(), state.dims()));
  return {"ccnr", norm, 1.0, compare_above(norm, 1.0)};
}

namespace {

std::array<ComplexMatrix, 4> pauli_basis() {
  const Complex i(0.0, 1.0);
  ComplexMatrix s0 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, -i, i, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  return {s0, s1, s2, s3};
}

}  // namespace

Eigen::Matrix4d bloch_correlation(const BipartiteState& state) {
  require(state.dims() == Dims{2, 2}, "bloch_correlation: requires two qubits");
  const auto sigma = pauli_basis();
  Eigen::Matrix4d lambda;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      lambda(i, j) = (state.rho() * kron(sigma[i], sigma[j])).trace().real();
  return lambda;
}

double concurrence_qubit(const BipartiteState& state) {
  require(state.dims() == Dims{2, 2}, "concurrence_qubit: requires two qubits");
  const auto sigma = pauli_basis();
  const ComplexMatrix yy = kron(sigma[2], sigma[2]);
  const ComplexMatrix& rho = state.rho();
  const ComplexMatrix tilde = yy * rho.conjugate() * yy;
  // rho * tilde is not Hermitian but has non-negative real spectrum; use the
  // Hermitian form sqrt(rho) tilde sqrt(rho) with the same eigenvalues.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  const RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix sqrt_rho = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  ComplexMatrix r = sqrt_rho * tilde * sqrt_rho;
  r = (0.5 * (r + r.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(r, Eigen::EigenvaluesOnly);
  RealVector mu = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(mu.data(), mu.data() + mu.size(), std::greater<>());
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double negativity(const BipartiteState& state) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      partial_transpose(state.rho(), state.dims(), Subsystem::B), Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) < 0.0) sum -= es.eigenvalues()(k);
  return sum;
}

bool entanglement_implies_faithful(const BipartiteState& state) {
  return concurrence_qubit(state) > 0.5 || negativity(state) > (std::sqrt(2.0) - 1.0) / 2.0;
}

}  // namespace faithful
