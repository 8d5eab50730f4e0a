#pragma once

// Reference implementations written directly from the index definitions.
// They share no code with the library beyond the Eigen types.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M partial_trace_b(const M& m, int a, int b) {
  M out = M::Zero(a, a);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      for (int k = 0; k < b; ++k) out(i, j) += m(i * b + k, j * b + k);
  return out;
}

inline M partial_trace_a(const M& m, int a, int b) {
  M out = M::Zero(b, b);
  for (int k = 0; k < b; ++k)
    for (int l = 0; l < b; ++l)
      for (int i = 0; i < a; ++i) out(k, l) += m(i * b + k, i * b + l);
  return out;
}

// <i k| m^{T_B} |j l> = <i l| m |j k>
inline M partial_transpose_b(const M& m, int a, int b) {
  M out(a * b, a * b);
  for (int i = 0; i < a; ++i)
    for (int k = 0; k < b; ++k)
      for (int j = 0; j < a; ++j)
        for (int l = 0; l < b; ++l) out(i * b + k, j * b + l) = m(i * b + l, j * b + k);
  return out;
}

// R_{(ij),(kl)} = m_{(ik),(jl)}
inline M realign(const M& m, int a, int b) {
  M out(a * a, b * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) out(i * a + j, k * b + l) = m(i * b + k, j * b + l);
  return out;
}

inline M kron(const M& x, const M& y) {
  M out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      for (Eigen::Index k = 0; k < y.rows(); ++k)
        for (Eigen::Index l = 0; l < y.cols(); ++l)
          out(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
  return out;
}

inline double trace_norm(const M& m) {
  Eigen::JacobiSVD<M> svd(m);
  return svd.singularValues().sum();
}

inline Eigen::VectorXd spectrum(const M& h) {
  Eigen::ComplexEigenSolver<M> es(h);
  Eigen::VectorXd v = es.eigenvalues().real();
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

inline double max_eig(const M& h) { return spectrum(h)(0); }
inline double min_eig(const M& h) {
  const auto s = spectrum(h);
  return s(s.size() - 1);
}

inline V max_entangled(int d) {
  V v = V::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

inline V basis(int n, int k) {
  V v = V::Zero(n);
  v(k) = 1.0;
  return v;
}

inline M projector(const V& v) { return v * v.adjoint(); }

// Orthonormal Hermitian basis of d x d matrices under Tr(A^dagger B): the
// normalized identity, symmetric and antisymmetric off-diagonal generators and
// the diagonal Gell-Mann matrices.
inline std::vector<M> gell_mann_basis(int d) {
  std::vector<M> out;
  out.push_back(M::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      M s = M::Zero(d, d);
      s(j, k) = s(k, j) = 1.0 / r2;
      out.push_back(s);
      M a = M::Zero(d, d);
      a(j, k) = C(0.0, -1.0 / r2);
      a(k, j) = C(0.0, 1.0 / r2);
      out.push_back(a);
    }
  for (int l = 1; l < d; ++l) {
    M g = M::Zero(d, d);
    const double norm = std::sqrt(static_cast<double>(l * (l + 1)));
    for (int j = 0; j < l; ++j) g(j, j) = 1.0 / norm;
    g(l, l) = -static_cast<double>(l) / norm;
    out.push_back(g);
  }
  return out;
}

}  // namespace oracle
