#include "faithful/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace faithful {

void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  require(m.rows() == m.cols(), std::string(what) + ": matrix is not square (" +
                                    std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + ")");
}

void require_bipartite(const ComplexMatrix& m, Dims dims, const char* what) {
  require(dims.a >= 1 && dims.b >= 1, std::string(what) + ": local dimensions must be positive");
  require(m.rows() == dims.total() && m.cols() == dims.total(),
          std::string(what) + ": expected a " + std::to_string(dims.total()) + "x" +
              std::to_string(dims.total()) + " operator, got " + std::to_string(m.rows()) +
              "x" + std::to_string(m.cols()));
}

HermitianEig sorted_descending(const RealVector& values, const ComplexMatrix& vectors) {
  const auto n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return values(x) > values(y); });
  HermitianEig out{RealVector(n), ComplexMatrix(vectors.rows(), n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  require_square(m, "hermitian_part");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  require(deviation <= kHermitianTolerance * scale,
          "matrix is not Hermitian (max |m - m^dagger| = " + std::to_string(deviation) + ")");
  return 0.5 * (m + m.adjoint());
}

HermitianEig eigh(const ComplexMatrix& m) {
  const ComplexMatrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  // Eigen returns ascending order.
  HermitianEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

HermitianEig eigh_jacobi(const ComplexMatrix& m, double tolerance, int max_sweeps) {
  ComplexMatrix a = hermitian_part(m);
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= tolerance * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const Complex phase = a(p, q) / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  return sorted_descending(a.diagonal().real(), v);
}

double max_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(hermitian),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(hermitian),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Svd svd(const ComplexMatrix& m) {
  require(m.allFinite(), "svd: matrix has non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(m);
  return solver.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem traced) {
  require_bipartite(m, dims, "partial_trace");
  if (traced == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dims.a, dims.a);
    for (int i = 0; i < dims.a; ++i)
      for (int j = 0; j < dims.a; ++j)
        out(i, j) = m.block(i * dims.b, j * dims.b, dims.b, dims.b).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
  for (int i = 0; i < dims.a; ++i) out += m.block(i * dims.b, i * dims.b, dims.b, dims.b);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem which) {
  require_bipartite(m, dims, "partial_transpose");
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dims.a; ++i) {
    for (int j = 0; j < dims.a; ++j) {
      const auto block = m.block(i * dims.b, j * dims.b, dims.b, dims.b);
      if (which == Subsystem::B)
        out.block(i * dims.b, j * dims.b, dims.b, dims.b) = block.transpose();
      else
        out.block(j * dims.b, i * dims.b, dims.b, dims.b) = block;
    }
  }
  return out;
}

ComplexMatrix realign(const ComplexMatrix& m, Dims dims) {
  require_bipartite(m, dims, "realign");
  const int a = dims.a;
  const int b = dims.b;
  ComplexMatrix out(a * a, b * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) out(i * a + j, k * b + l) = m(i * b + k, j * b + l);
  return out;
}

ComplexMatrix unrealign(const ComplexMatrix& r, Dims dims) {
  const int a = dims.a;
  const int b = dims.b;
  require(r.rows() == a * a && r.cols() == b * b, "unrealign: shape does not match dims");
  ComplexMatrix out(a * b, a * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) out(i * b + k, j * b + l) = r(i * a + j, k * b + l);
  return out;
}

ComplexMatrix coefficient_matrix(const ComplexVector& psi, Dims dims) {
  require(psi.size() == dims.total(), "state vector length " + std::to_string(psi.size()) +
                                          " does not match dims " + std::to_string(dims.a) +
                                          "x" + std::to_string(dims.b));
  ComplexMatrix c(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int k = 0; k < dims.b; ++k) c(i, k) = psi(i * dims.b + k);
  return c;
}

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Dims dims) {
  const ComplexMatrix c = coefficient_matrix(psi, dims);
  const double norm = psi.norm();
  require(norm > 0.0, "schmidt_decompose: zero vector");
  const Svd s = svd(c / norm);
  int rank = 0;
  while (rank < s.values.size() && s.values(rank) > kSchmidtCutoff) ++rank;
  SchmidtDecomposition out;
  out.coefficients = s.values.head(rank);
  out.coefficients /= out.coefficients.norm();
  out.left = s.u.leftCols(rank);
  // psi = sum_i s_i |u_i> (x) |conj(v_i)>
  out.right = s.v.leftCols(rank).conjugate();
  return out;
}

double unitarity_residual(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  require_square(m, "polar_unitary");
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return solver.matrixU() * solver.matrixV().adjoint();
}

}  // namespace faithful
