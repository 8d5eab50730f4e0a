#include "faithful/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "faithful/criteria.hpp"
#include "faithful/witness.hpp"

namespace faithful {

namespace {

constexpr int kBalanceInterval = 10;
constexpr double kBalanceRatio = 10.0;

/// Projection onto the PSD cone by clipping the spectrum.
ComplexMatrix project_psd(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
  const RealVector& w = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < w.size() && w(first) <= 0.0) ++first;
  const Eigen::Index k = w.size() - first;
  if (k == 0) return ComplexMatrix::Zero(x.rows(), x.cols());
  const auto v = es.eigenvectors().rightCols(k);
  return v * w.tail(k).asDiagonal() * v.adjoint();
}

/// Component of x in the range of the marginal map's adjoint, i.e. the span of
/// A (x) 1 + 1 (x) B.
ComplexMatrix range_component(const ComplexMatrix& x, int d) {
  const Dims dims{d, d};
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const double dd = static_cast<double>(d);
  return (kron(partial_trace(x, dims, Subsystem::B), id) +
          kron(id, partial_trace(x, dims, Subsystem::A))) /
             dd -
         x.trace() / (dd * dd) * ComplexMatrix::Identity(d * d, d * d);
}

/// Feasible point nearest to z: affine projection, then the smallest mixing
/// with 1/d^2 that makes it PSD.
ComplexMatrix feasible_point(const ComplexMatrix& z, int d) {
  const int n = d * d;
  ComplexMatrix chi = project_maximally_mixed_marginals(z, d);
  const double lowest = min_eigenvalue(chi);
  if (lowest < 0.0) {
    const double t = -lowest / (-lowest + 1.0 / n);
    chi = (1.0 - t) * chi + t / n * ComplexMatrix::Identity(n, n);
  }
  return chi;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array().conjugate() * b.array()).sum().real();
}

}  // namespace

ComplexMatrix project_maximally_mixed_marginals(const ComplexMatrix& x, int d) {
  const int n = d * d;
  require(x.rows() == n && x.cols() == n, "project_maximally_mixed_marginals: shape mismatch");
  ComplexMatrix out = x - range_component(x, d);
  out.diagonal().array() += 1.0 / n;
  return 0.5 * (out + out.adjoint());
}

double marginal_deviation(const ComplexMatrix& chi, int d) {
  const Dims dims{d, d};
  const ComplexMatrix target = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return std::max((partial_trace(chi, dims, Subsystem::A) - target).norm(),
                  (partial_trace(chi, dims, Subsystem::B) - target).norm());
}

SdpSolution sdp_max_overlap(const BipartiteState& state, const SdpOptions& options) {
  return sdp_max_overlap(state.rho(), state.local_dim(), options);
}

SdpSolution sdp_max_overlap(const ComplexMatrix& objective, int d, const SdpOptions& options) {
  require(d >= 1 && d <= 8, "sdp_max_overlap: supports 1 <= d <= 8");
  require(objective.rows() == d * d && objective.cols() == d * d,
          "sdp_max_overlap: objective must be d^2 x d^2");
  require(options.tolerance > 0.0 && options.max_iterations > 0,
          "sdp_max_overlap: tolerance and max_iterations must be positive");
  const int n = d * d;
  const ComplexMatrix rho = hermitian_part(objective);

  ComplexMatrix z = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  ComplexMatrix x;
  double mu = options.step;

  SdpSolution sol;
  sol.optimum = -std::numeric_limits<double>::infinity();
  sol.upper_bound = std::numeric_limits<double>::infinity();

  auto certify = [&] {
    sol.chi = feasible_point(z, d);
    sol.optimum = real_inner(rho, sol.chi);
    const ComplexMatrix m = range_component(rho - mu * u, d);
    sol.upper_bound = max_eigenvalue(rho - m) + m.trace().real() / n;
  };

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    x = project_maximally_mixed_marginals(z - u + rho / mu, d);
    const ComplexMatrix z_prev = z;
    z = project_psd(x + u);
    u += x - z;
    sol.primal_residual = (x - z).norm();
    sol.dual_residual = mu * (z - z_prev).norm();

    const double worst = std::max(sol.primal_residual, sol.dual_residual);
    if (worst <= options.residual_tolerance) {
      ++it;
      certify();
      sol.converged = sol.gap() <= options.tolerance;
      if (sol.converged) break;
    } else if ((it + 1) % kBalanceInterval == 0) {
      if (worst < 1e-4) {
        certify();
        if (options.decision_threshold &&
            sol.upper_bound < *options.decision_threshold - kBoundaryMargin) {
          ++it;
          sol.decided_early = true;
          break;
        }
      }
      if (sol.primal_residual > kBalanceRatio * sol.dual_residual) {
        mu *= 2.0;
        u /= 2.0;
      } else if (sol.dual_residual > kBalanceRatio * sol.primal_residual) {
        mu /= 2.0;
        u *= 2.0;
      }
    }
  }
  sol.iterations = it;
  if (!sol.converged) certify();
  sol.purity = real_inner(sol.chi, sol.chi);
  return sol;
}

std::string_view to_string(Obs3Outcome o) {
  switch (o) {
    case Obs3Outcome::unfaithful: return "unfaithful";
    case Obs3Outcome::faithful: return "faithful";
    case Obs3Outcome::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Obs3Verdict obs3_verdict(const BipartiteState& state, const SdpSolution& solution) {
  const int d = state.local_dim();
  const double threshold = 1.0 / d;
  Obs3Verdict out;
  out.optimum = solution.optimum;
  out.purity = solution.purity;
  if (solution.decided_early) {
    require(solution.upper_bound < threshold - kBoundaryMargin,
            "obs3_verdict: early-stopped solution does not settle the verdict");
    out.outcome = Obs3Outcome::unfaithful;
    return out;
  }
  require(solution.converged, "obs3_verdict: SDP solution did not converge (primal residual " +
                                  std::to_string(solution.primal_residual) + ", dual residual " +
                                  std::to_string(solution.dual_residual) + ")");
  if (solution.upper_bound < threshold - kBoundaryMargin ||
      compare_above(solution.optimum, threshold) == Verdict::satisfied) {
    out.outcome = Obs3Outcome::unfaithful;
  } else if (compare_above(solution.optimum, threshold) == Verdict::violated &&
             solution.purity >= kPurityThreshold) {
    out.outcome = Obs3Outcome::faithful;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(solution.chi);
    out.certificate = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  }
  return out;
}

OrderingVerdict witness_weaker_than(const Witness& w, const std::vector<Witness>& ws,
                                    const SdpOptions& options) {
  std::vector<ComplexMatrix> set;
  set.reserve(ws.size());
  for (const auto& wk : ws) {
    require(wk.dims == w.dims, "witness_weaker_than: witnesses act on different spaces");
    set.push_back(wk.observable);
  }
  return witness_weaker_than(w.observable, set, options);
}

OrderingVerdict witness_weaker_than(const ComplexMatrix& w, const std::vector<ComplexMatrix>& ws,
                                    const SdpOptions& options) {
  const ComplexMatrix target = hermitian_part(w);
  const Eigen::Index n = target.rows();
  const auto k = static_cast<Eigen::Index>(ws.size());
  std::vector<ComplexMatrix> cons;
  cons.reserve(ws.size());
  for (const auto& wk : ws) {
    require(wk.rows() == n && wk.cols() == n, "witness_weaker_than: dimension mismatch");
    cons.push_back(hermitian_part(wk));
  }

  // Variables (X, s) with X Hermitian, s in R^k. Affine set:
  //   Tr X = 1,  Tr(W_k X) - s_k = 0.
  // Cone: X >= 0, s >= 0. Objective: min Tr(W X).
  RealMatrix gram(k + 1, k + 1);
  gram(0, 0) = static_cast<double>(n);
  for (Eigen::Index i = 0; i < k; ++i) {
    gram(0, i + 1) = gram(i + 1, 0) = cons[i].trace().real();
    for (Eigen::Index j = 0; j <= i; ++j)
      gram(i + 1, j + 1) = gram(j + 1, i + 1) = real_inner(cons[i], cons[j]);
    gram(i + 1, i + 1) += 1.0;
  }
  const Eigen::LLT<RealMatrix> gram_solver(gram);
  RealVector rhs_b = RealVector::Zero(k + 1);
  rhs_b(0) = 1.0;

  auto project_affine = [&](ComplexMatrix& xm, RealVector& s) {
    RealVector residual(k + 1);
    residual(0) = xm.trace().real();
    for (Eigen::Index i = 0; i < k; ++i) residual(i + 1) = real_inner(cons[i], xm) - s(i);
    residual -= rhs_b;
    const RealVector y = gram_solver.solve(residual);
    xm.diagonal().array() -= y(0);
    for (Eigen::Index i = 0; i < k; ++i) {
      xm -= y(i + 1) * cons[i];
      s(i) += y(i + 1);
    }
  };

  ComplexMatrix z = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  RealVector t(k);
  for (Eigen::Index i = 0; i < k; ++i) t(i) = std::max(0.0, real_inner(cons[i], z));
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  RealVector us = RealVector::Zero(k);
  double mu = options.step;

  OrderingVerdict out;
  double primal = 0.0;
  double dual = 0.0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    ComplexMatrix xm = z - u - target / mu;
    RealVector s = t - us;
    project_affine(xm, s);
    const ComplexMatrix z_prev = z;
    const RealVector t_prev = t;
    z = project_psd(xm + u);
    t = (s + us).cwiseMax(0.0);
    u += xm - z;
    us += s - t;
    primal = std::sqrt((xm - z).squaredNorm() + (s - t).squaredNorm());
    dual = mu * std::sqrt((z - z_prev).squaredNorm() + (t - t_prev).squaredNorm());
    if (std::max(primal, dual) <= options.residual_tolerance) {
      ++it;
      out.converged = true;
      break;
    }
    if ((it + 1) % kBalanceInterval == 0) {
      if (primal > kBalanceRatio * dual) {
        mu *= 2.0;
        u /= 2.0;
        us /= 2.0;
      } else if (dual > kBalanceRatio * primal) {
        mu /= 2.0;
        u *= 2.0;
        us *= 2.0;
      }
    }
  }
  out.iterations = it;

  // Primal certificate: the PSD iterate renormalized; constraint slack is
  // reported through worst_value only if it is feasible to tolerance.
  ComplexMatrix rho = z / std::max(z.trace().real(), 1e-300);
  out.certificate = rho;
  out.worst_value = real_inner(target, rho);

  // Dual certificate: multipliers x_k = max(0, -mu us_k) give
  // min >= lambda_min(W - sum_k x_k W_k).
  ComplexMatrix combo = target;
  for (Eigen::Index i = 0; i < k; ++i) combo -= std::max(0.0, -mu * us(i)) * cons[i];
  out.dual_bound = min_eigenvalue(combo);

  out.weaker = out.worst_value >= -kOrderingTolerance;
  if (!out.converged) out.note = "ordering SDP hit the iteration limit";
  return out;
}

}  // namespace faithful
