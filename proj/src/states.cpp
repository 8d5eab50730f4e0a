#include "faithful/states.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace faithful {

namespace {

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

void append_matrix(std::string& out, const ComplexMatrix& m, bool imaginary) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_double(imaginary ? m(i, j).imag() : m(i, j).real());
    }
    out += ']';
  }
  out += ']';
}

}  // namespace

BipartiteState::BipartiteState(ComplexMatrix rho, Dims dims) : dims_(dims) {
  if (dims.a < 1 || dims.b < 1)
    throw InvariantViolation("dimensions: local dimensions must be positive");
  if (rho.rows() != dims.total() || rho.cols() != dims.total())
    throw InvariantViolation("shape: expected " + std::to_string(dims.total()) + "x" +
                             std::to_string(dims.total()) + " density matrix");
  if (!rho.allFinite()) throw InvariantViolation("finite: density matrix has NaN/Inf entries");
  try {
    rho_ = hermitian_part(rho);
  } catch (const ContractViolation& e) {
    throw InvariantViolation(std::string("hermiticity: ") + e.what());
  }
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance)
    throw InvariantViolation("normalization: Tr(rho) = " + format_double(tr) + ", expected 1");
  const double lowest = min_eigenvalue(rho_);
  if (lowest < -kPositivityTolerance)
    throw InvariantViolation("positivity: smallest eigenvalue " + format_double(lowest) +
                             " < 0");
}

BipartiteState BipartiteState::pure(const ComplexVector& psi, Dims dims) {
  require(psi.size() == dims.total(), "pure: vector length does not match dims");
  const double n = psi.norm();
  require(n > 0.0, "pure: zero vector");
  const ComplexVector unit = psi / n;
  return BipartiteState(unit * unit.adjoint(), dims);
}

int BipartiteState::local_dim() const {
  require(dims_.square(), "operation requires equal local dimensions, got " +
                              std::to_string(dims_.a) + "x" + std::to_string(dims_.b));
  return dims_.a;
}

ComplexMatrix BipartiteState::marginal(Subsystem kept) const {
  return partial_trace(rho_, dims_, kept == Subsystem::A ? Subsystem::B : Subsystem::A);
}

double BipartiteState::fidelity(const ComplexVector& psi) const {
  require(psi.size() == dims_.total(), "fidelity: vector length does not match dims");
  return (psi.adjoint() * rho_ * psi)(0, 0).real();
}

BipartiteState BipartiteState::rotated(const ComplexMatrix& ua, const ComplexMatrix& ub) const {
  const ComplexMatrix u = kron(ua, ub);
  return BipartiteState(u * rho_ * u.adjoint(), dims_);
}

std::string_view to_string(Measure m) {
  return m == Measure::Bures ? "bures" : "hs";
}

Measure parse_measure(std::string_view text) {
  if (text == "bures") return Measure::Bures;
  if (text == "hs" || text == "hilbert-schmidt") return Measure::HilbertSchmidt;
  throw ContractViolation("unknown measure '" + std::string(text) + "' (expected bures|hs)");
}

ComplexVector max_entangled(int d) {
  require(d >= 2, "max_entangled: d must be >= 2, got " + std::to_string(d));
  ComplexVector v = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

BipartiteState maximally_mixed(Dims dims) {
  const int n = dims.total();
  return BipartiteState(ComplexMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

BipartiteState isotropic(int d, double p) {
  require(p >= 0.0 && p <= 1.0, "isotropic: p must lie in [0, 1], got " + format_double(p));
  const ComplexVector phi = max_entangled(d);
  const int n = d * d;
  ComplexMatrix rho = p * phi * phi.adjoint() +
                      (1.0 - p) / static_cast<double>(n) * ComplexMatrix::Identity(n, n);
  return BipartiteState(std::move(rho), {d, d});
}

BipartiteState werner_qubit(double p) {
  require(p >= 0.0 && p <= 1.0, "werner_qubit: p must lie in [0, 1], got " + format_double(p));
  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  ComplexMatrix rho =
      p * singlet * singlet.adjoint() + (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4);
  return BipartiteState(std::move(rho), {2, 2});
}

namespace {

BipartiteState normalized_gram(const ComplexMatrix& a, int d) {
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return BipartiteState(std::move(rho), {d, d});
}

}  // namespace

BipartiteState sample_hs(int d, Rng& rng) {
  require(d >= 2, "sample_hs: d must be >= 2");
  return normalized_gram(ginibre(d * d, rng), d);
}

BipartiteState sample_bures(int d, Rng& rng) {
  require(d >= 2, "sample_bures: d must be >= 2");
  const int n = d * d;
  const ComplexMatrix g = ginibre(n, rng);
  const ComplexMatrix u = haar_unitary(n, rng);
  return normalized_gram((ComplexMatrix::Identity(n, n) + u) * g, d);
}

BipartiteState sample(const SamplerConfig& config) {
  require(config.d >= 2, "sample: d must be >= 2");
  Rng rng(config.seed, config.index);
  return config.measure == Measure::Bures ? sample_bures(config.d, rng)
                                          : sample_hs(config.d, rng);
}

std::string save_state(const BipartiteState& state) {
  std::string out = "{\"d_a\": " + std::to_string(state.dims().a) +
                    ", \"d_b\": " + std::to_string(state.dims().b) + ", \"re\": ";
  append_matrix(out, state.rho(), false);
  out += ", \"im\": ";
  append_matrix(out, state.rho(), true);
  out += "}\n";
  return out;
}

BipartiteState load_state(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractViolation(std::string("state file: ") + e.what());
  }
  try {
    const int da = doc.at("d_a").get<int>();
    const int db = doc.at("d_b").get<int>();
    require(da >= 1 && db >= 1, "state file: d_a and d_b must be positive");
    const int n = da * db;
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    require(re.is_array() && im.is_array() && re.size() == static_cast<std::size_t>(n) &&
                im.size() == static_cast<std::size_t>(n),
            "state file: 're' and 'im' must be " + std::to_string(n) + "x" +
                std::to_string(n) + " arrays");
    ComplexMatrix rho(n, n);
    for (int i = 0; i < n; ++i) {
      require(re[i].size() == static_cast<std::size_t>(n) &&
                  im[i].size() == static_cast<std::size_t>(n),
              "state file: row " + std::to_string(i) + " has wrong length");
      for (int j = 0; j < n; ++j) rho(i, j) = {re[i][j].get<double>(), im[i][j].get<double>()};
    }
    return BipartiteState(std::move(rho), {da, db});
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("state file: ") + e.what());
  }
}

PureState load_state_vector(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractViolation(std::string("state vector file: ") + e.what());
  }
  try {
    PureState out;
    out.dims = {doc.at("d_a").get<int>(), doc.at("d_b").get<int>()};
    require(out.dims.a >= 1 && out.dims.b >= 1, "state vector file: d_a and d_b must be positive");
    const auto n = static_cast<std::size_t>(out.dims.total());
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    require(re.is_array() && im.is_array() && re.size() == n && im.size() == n,
            "state vector file: 're' and 'im' must have " + std::to_string(n) + " entries");
    out.psi.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      out.psi(static_cast<Eigen::Index>(i)) = {re[i].get<double>(), im[i].get<double>()};
    require(out.psi.allFinite(), "state vector file: non-finite amplitude");
    const double norm = out.psi.norm();
    require(norm > 1e-12, "state vector file: zero vector");
    out.psi /= norm;
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("state vector file: ") + e.what());
  }
}

std::string save_state_vector(const ComplexVector& psi, Dims dims) {
  require(psi.size() == dims.total(), "save_state_vector: length does not match dims");
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    re.push_back(psi(i).real());
    im.push_back(psi(i).imag());
  }
  return nlohmann::json{{"d_a", dims.a}, {"d_b", dims.b}, {"re", re}, {"im", im}}.dump() + "\n";
}

}  // namespace faithful
