#include "faithful/seesaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "faithful/criteria.hpp"

namespace faithful {

namespace {

// Weight of the current iterate added to the gradient before taking the polar
// factor; resolves rank-deficient gradients towards the current basis without
// breaking monotonicity.
constexpr double kProximalWeight = 1e-9;

ComplexVector flatten(const ComplexMatrix& c) {
  const auto d = c.rows();
  ComplexVector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = c(i, j);
  return v;
}

ComplexMatrix unflatten(const ComplexVector& v, int d) {
  ComplexMatrix c(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c(i, j) = v(i * d + j);
  return c;
}

double quadratic(const ComplexMatrix& q, const ComplexVector& c) {
  return (c.adjoint() * q * c)(0, 0).real();
}

}  // namespace

int default_restarts(int d) { return d <= 4 ? 50 : 200; }

ComplexVector max_entangled_target(const ComplexMatrix& v) {
  const auto d = static_cast<int>(v.rows());
  require(v.cols() == d, "max_entangled_target: V must be square");
  // Amplitude of |i>|j> is V_ji / sqrt(d).
  return flatten(v.transpose()) / std::sqrt(static_cast<double>(d));
}

SeesawResult maximize_unitary_quadratic(const ComplexMatrix& q, int d,
                                        const SeesawOptions& options) {
  require(q.rows() == d * d && q.cols() == d * d, "maximize_unitary_quadratic: shape mismatch");
  const int restarts = options.restarts > 0 ? options.restarts : default_restarts(d);
  SeesawResult out;
  out.best_value = -std::numeric_limits<double>::infinity();
  out.restart_values.reserve(static_cast<std::size_t>(restarts));

  for (int r = 0; r < restarts; ++r) {
    ComplexMatrix c;
    if (r == 0) {
      c = ComplexMatrix::Identity(d, d);
    } else {
      Rng rng(options.seed, static_cast<std::uint64_t>(r));
      c = haar_unitary(d, rng);
    }
    ComplexVector vec = flatten(c);
    double value = quadratic(q, vec);
    for (int it = 0; it < options.max_inner_iterations; ++it) {
      const ComplexVector grad = q * vec;
      ComplexMatrix g = unflatten(grad, d);
      g += kProximalWeight * std::max(g.norm(), 1e-300) * c;
      const ComplexMatrix next = polar_unitary(g);
      const ComplexVector next_vec = flatten(next);
      const double next_value = quadratic(q, next_vec);
      if (next_value < value) break;  // rounding noise at the fixed point
      const double gain = next_value - value;
      c = next;
      vec = next_vec;
      value = next_value;
      if (gain < options.inner_tolerance) break;
    }
    out.restart_values.push_back(value);
    if (value > out.best_value) {
      out.best_value = value;
      out.unitary = c;
    }
  }
  out.restarts_used = restarts;
  return out;
}

SeesawResult max_singlet_fraction(const BipartiteState& state, const SeesawOptions& options) {
  const int d = state.local_dim();
  SeesawResult raw = maximize_unitary_quadratic(state.rho() / static_cast<double>(d), d, options);
  // The optimizer works with the coefficient matrix C = V^T.
  raw.unitary = raw.unitary.transpose().eval();
  raw.best_value = std::clamp(raw.best_value, 0.0, 1.0);
  for (double& v : raw.restart_values) v = std::clamp(v, 0.0, 1.0);
  return raw;
}

SeesawVerdict faithful_via_seesaw(const BipartiteState& state, const SeesawResult& result) {
  const int d = state.local_dim();
  SeesawVerdict out;
  out.value = result.best_value;
  out.faithful = compare_above(result.best_value, 1.0 / d) == Verdict::violated;
  if (out.faithful) out.certificate = max_entangled_target(result.unitary);
  return out;
}

double s_quantity(const BipartiteState& state, const SeesawOptions& options) {
  const int d = state.local_dim();
  return std::max(d * max_singlet_fraction(state, options).best_value, 1.0);
}

void UqmInstance::validate() const {
  require(n >= 1, "uqm: n must be positive");
  for (std::size_t j = 0; j < matrices.size(); ++j) {
    const auto& a = matrices[j];
    require(a.rows() == n && a.cols() == n,
            "uqm: matrix " + std::to_string(j) + " is not " + std::to_string(n) + "x" +
                std::to_string(n));
    require(a.squaredNorm() <= 1.0 + 1e-9,
            "uqm: matrix " + std::to_string(j) + " violates Tr(A^dagger A) <= 1 (got " +
                std::to_string(a.squaredNorm()) + ")");
  }
}

double uqm_objective(const UqmInstance& instance, const ComplexMatrix& u) {
  double f = 0.0;
  for (const auto& a : instance.matrices) f += std::norm((a.adjoint() * u).trace());
  return f;
}

UqmResult uqm_minimize(const UqmInstance& instance, int restarts, std::uint64_t seed) {
  instance.validate();
  const int n = instance.n;
  const int nn = n * n;
  const auto k = static_cast<Eigen::Index>(instance.matrices.size());

  // <Phi_A|Phi_U> = Tr(A^dagger U) with coefficient matrices A^T and U^T.
  ComplexMatrix x = ComplexMatrix::Zero(nn, nn);
  for (const auto& a : instance.matrices) {
    const ComplexVector phi = flatten(a.transpose());
    x += phi * phi.adjoint();
  }

  UqmResult out;
  if (k == 0) {
    out.unitary = ComplexMatrix::Identity(n, n);
    return out;
  }

  // Nonzero spectrum of X equals that of the Gram matrix.
  ComplexMatrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      gram(i, j) = (instance.matrices[i].adjoint() * instance.matrices[j]).trace();
  const HermitianEig spectrum = eigh(gram);
  const double lambda_min = k < nn ? 0.0 : std::max(0.0, spectrum.values(nn - 1));
  out.lower_bound = n * lambda_min;

  const double shift = std::max(spectrum.values(0), 0.0);
  const ComplexMatrix q = shift * ComplexMatrix::Identity(nn, nn) - x;
  SeesawOptions opts;
  opts.restarts = std::max(restarts, 1);
  opts.seed = seed;
  const SeesawResult best = maximize_unitary_quadratic(q, n, opts);
  out.unitary = best.unitary.transpose();
  out.upper_bound = uqm_objective(instance, out.unitary);
  out.lower_bound = std::min(out.lower_bound, out.upper_bound);
  return out;
}

UqmInstance load_uqm(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    UqmInstance inst;
    inst.n = doc.at("n").get<int>();
    require(inst.n >= 1, "uqm file: n must be positive");
    for (const auto& m : doc.at("matrices")) {
      const auto& re = m.at("re");
      const auto& im = m.at("im");
      require(re.size() == static_cast<std::size_t>(inst.n) &&
                  im.size() == static_cast<std::size_t>(inst.n),
              "uqm file: matrix row count must equal n");
      ComplexMatrix a(inst.n, inst.n);
      for (int i = 0; i < inst.n; ++i) {
        require(re[i].size() == static_cast<std::size_t>(inst.n) &&
                    im[i].size() == static_cast<std::size_t>(inst.n),
                "uqm file: matrix column count must equal n");
        for (int j = 0; j < inst.n; ++j) a(i, j) = {re[i][j].get<double>(), im[i][j].get<double>()};
      }
      inst.matrices.push_back(std::move(a));
    }
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("uqm file: ") + e.what());
  }
}

}  // namespace faithful
