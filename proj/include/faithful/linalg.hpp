#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace faithful {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Thrown when an argument breaks a documented precondition (shape, range,
/// Hermiticity, normalization).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Local dimensions of a bipartite system, ordered (A, B). Global index of
/// |i>|k> is i * b + k.
struct Dims {
  int a = 0;
  int b = 0;

  constexpr int total() const { return a * b; }
  constexpr bool square() const { return a == b; }
  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

/// Spectrum of a Hermitian matrix, eigenvalues sorted descending and
/// eigenvectors stored column-wise in the same order.
struct HermitianEig {
  RealVector values;
  ComplexMatrix vectors;
};

struct Svd {
  RealVector values;  // descending, non-negative
  ComplexMatrix u;
  ComplexMatrix v;    // m = u * diag(values) * v^dagger
};

struct SchmidtDecomposition {
  RealVector coefficients;  // s_1 >= ... >= s_r > 0
  ComplexMatrix left;       // columns |a_i>
  ComplexMatrix right;      // columns |b_i>

  int rank() const { return static_cast<int>(coefficients.size()); }
};

inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kSchmidtCutoff = 1e-10;

/// Symmetrizes `m` if it is Hermitian up to kHermitianTolerance (relative to
/// max(1, |m|_max)), throws ContractViolation otherwise.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

HermitianEig eigh(const ComplexMatrix& m);

/// Cyclic complex Jacobi rotations. Slower than `eigh` but independent of
/// Eigen's tridiagonal solver; used as a cross-check.
HermitianEig eigh_jacobi(const ComplexMatrix& m, double tolerance = 1e-14,
                         int max_sweeps = 100);

double max_eigenvalue(const ComplexMatrix& hermitian);
double min_eigenvalue(const ComplexMatrix& hermitian);

Svd svd(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out `traced` and returns the reduced operator on the other party.
ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem traced);

ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem which);

/// Realignment R(m)_{(ij),(kl)} = m_{(ik),(jl)}; result is a^2 x b^2.
ComplexMatrix realign(const ComplexMatrix& m, Dims dims);
/// Inverse of `realign`.
ComplexMatrix unrealign(const ComplexMatrix& r, Dims dims);

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Dims dims);

/// Reshapes a bipartite vector into its a x b coefficient matrix C_{ik}.
ComplexMatrix coefficient_matrix(const ComplexVector& psi, Dims dims);

/// |U^dagger U - 1|_max.
double unitarity_residual(const ComplexMatrix& u);

/// Unitary polar factor of a square matrix (U W^dagger from its SVD).
ComplexMatrix polar_unitary(const ComplexMatrix& m);

void require(bool condition, const std::string& message);

}  // namespace faithful
