#include "faithful/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include <nlohmann/json.hpp>

namespace faithful {

namespace {

constexpr int kMaxRfwDimension = 12;

RealVector sorted_normalized(const RealVector& s, const char* what) {
  require(s.size() >= 1, std::string(what) + ": empty Schmidt vector");
  require((s.array() >= 0.0).all(), std::string(what) + ": Schmidt coefficients must be >= 0");
  const double n = s.norm();
  require(n > 0.0, std::string(what) + ": zero Schmidt vector");
  RealVector out = s / n;
  std::sort(out.data(), out.data() + out.size(), std::greater<>());
  return out;
}

nlohmann::json matrix_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  require(re.size() == static_cast<std::size_t>(rows) && im.size() == static_cast<std::size_t>(rows),
          "witness file: wrong number of rows");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    require(re[r].size() == static_cast<std::size_t>(cols) &&
                im[r].size() == static_cast<std::size_t>(cols),
            "witness file: wrong number of columns");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
  }
  return m;
}

Witness witness_from_json(const nlohmann::json& doc) {
  Witness w;
  w.threshold = doc.at("threshold").get<double>();
  w.schmidt_level = doc.value("level", 1);
  w.dims = {doc.at("d_a").get<int>(), doc.at("d_b").get<int>()};
  require(w.dims.a >= 1 && w.dims.b >= 1, "witness file: dimensions must be positive");
  const int n = w.dims.total();
  if (doc.contains("observable")) {
    w.observable = hermitian_part(matrix_from_json(doc.at("observable"), n, n));
  }
  if (doc.contains("target")) {
    const ComplexMatrix t = matrix_from_json(doc.at("target"), n, 1);
    w.target = t.col(0);
  }
  require(w.observable.size() > 0 || w.target.size() > 0,
          "witness file: needs an 'observable' or a 'target'");
  if (w.observable.size() == 0) {
    w.target /= w.target.norm();
    w.observable = w.threshold * ComplexMatrix::Identity(n, n) - w.target * w.target.adjoint();
  }
  return w;
}

}  // namespace

ComplexVector schmidt_form_state(const RealVector& s) {
  const auto d = static_cast<int>(s.size());
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = s(i);
  return psi;
}

Witness make_witness(const ComplexVector& target, double threshold, Dims dims, int level) {
  require(target.size() == dims.total(), "make_witness: target length does not match dims");
  const int n = dims.total();
  Witness w;
  w.target = target / target.norm();
  w.threshold = threshold;
  w.schmidt_level = level;
  w.dims = dims;
  w.observable = threshold * ComplexMatrix::Identity(n, n) - w.target * w.target.adjoint();
  return w;
}

Witness fidelity_witness(const ComplexVector& psi, Dims dims, int level) {
  require(level >= 1, "fidelity_witness: level must be >= 1");
  const SchmidtDecomposition sd = schmidt_decompose(psi, dims);
  require(level < sd.rank(), "fidelity_witness: level " + std::to_string(level) +
                                 " >= Schmidt rank " + std::to_string(sd.rank()) +
                                 " gives a trivial witness");
  const double beta = sd.coefficients.head(level).squaredNorm();
  return make_witness(psi, beta, dims, level);
}

std::vector<int> rfw_signs(int d, std::uint32_t index) {
  std::vector<int> a(static_cast<std::size_t>(d - 1));
  for (int j = 0; j < d - 1; ++j) a[static_cast<std::size_t>(j)] = (index >> j) & 1U ? -1 : 1;
  return a;
}

std::vector<Witness> rfw_set(int d) {
  require(d >= 2 && d <= kMaxRfwDimension,
          "rfw_set: d must lie in [2, " + std::to_string(kMaxRfwDimension) + "], got " +
              std::to_string(d));
  const std::uint32_t count = 1U << (d - 1);
  std::vector<Witness> out;
  out.reserve(count);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    const auto a = rfw_signs(d, idx);
    ComplexVector phi = ComplexVector::Zero(d * d);
    phi(0) = amp;
    for (int j = 1; j < d; ++j) phi(j * d + j) = amp * a[static_cast<std::size_t>(j - 1)];
    out.push_back(make_witness(phi, 1.0 / d, {d, d}));
  }
  return out;
}

double LhvWeights::marginal(int j) const {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < probabilities.size(); ++idx)
    sum += probabilities[idx] * ((idx >> j) & 1U ? -1.0 : 1.0);
  return sum;
}

double LhvWeights::correlation(int i, int j) const {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < probabilities.size(); ++idx) {
    const double ai = (idx >> i) & 1U ? -1.0 : 1.0;
    const double aj = (idx >> j) & 1U ? -1.0 : 1.0;
    sum += probabilities[idx] * ai * aj;
  }
  return sum;
}

LhvWeights lhv_weights(const RealVector& s) {
  require(s.size() >= 2 && s.size() <= kMaxRfwDimension + 8,
          "lhv_weights: need between 2 and 20 Schmidt coefficients");
  require(s(0) > 0.0, "lhv_weights: s_1 must be positive");
  for (Eigen::Index j = 1; j < s.size(); ++j)
    require(s(j) >= 0.0 && s(j) <= s(0) * (1.0 + 1e-12),
            "lhv_weights: coefficients must be non-negative and at most s_1");
  const auto m = static_cast<int>(s.size() - 1);
  LhvWeights out;
  out.alphas = (s.tail(m) / s(0)).cwiseMin(1.0);
  const std::size_t count = std::size_t{1} << m;
  out.probabilities.resize(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    double p = 1.0;
    for (int j = 0; j < m; ++j) {
      const double a = (idx >> j) & 1U ? -1.0 : 1.0;
      p *= 0.5 * (1.0 + a * out.alphas(j));
    }
    out.probabilities[idx] = p;
  }
  return out;
}

RfwDecomposition verify_rfw_decomposition(const RealVector& schmidt_coefficients) {
  const RealVector s = sorted_normalized(schmidt_coefficients, "verify_rfw_decomposition");
  const auto d = static_cast<int>(s.size());
  require(d >= 2 && d <= 10, "verify_rfw_decomposition: d must lie in [2, 10]");
  const int n = d * d;
  const double s1sq = s(0) * s(0);

  const ComplexVector psi = schmidt_form_state(s);
  const LhvWeights weights = lhv_weights(s);
  const auto rfws = rfw_set(d);

  ComplexMatrix mixture = ComplexMatrix::Zero(n, n);
  for (std::size_t idx = 0; idx < rfws.size(); ++idx)
    mixture += weights.probabilities[idx] * rfws[idx].observable;

  RfwDecomposition out;
  out.schmidt = s;
  out.z = s1sq * ComplexMatrix::Identity(n, n) - psi * psi.adjoint() - d * s1sq * mixture;

  ComplexMatrix off = out.z;
  off.diagonal().setZero();
  out.off_diagonal_mass = off.norm();
  out.min_eigenvalue = min_eigenvalue(out.z);
  out.diagonal = out.off_diagonal_mass <= 1e-10;
  out.psd = out.min_eigenvalue >= -1e-10;

  out.entries_expected = true;
  for (int k = 0; k < n; ++k) {
    const double entry = out.z(k, k).real();
    bool ok = std::abs(entry) <= 1e-10;
    for (int j = 0; j < d && !ok; ++j) ok = std::abs(entry - (s1sq - s(j) * s(j))) <= 1e-10;
    out.entries_expected = out.entries_expected && ok;
  }
  return out;
}

RfwDecomposition verify_rfw_decomposition(const ComplexVector& psi, Dims dims) {
  const SchmidtDecomposition sd = schmidt_decompose(psi, dims);
  const int d = std::min(dims.a, dims.b);
  RealVector s = RealVector::Zero(std::max(d, 2));
  s.head(sd.rank()) = sd.coefficients;
  return verify_rfw_decomposition(s);
}

Obs4Result obs4_detectable(const RealVector& s_in, int level) {
  require(level >= 1, "obs4_detectable: level must be >= 1");
  const RealVector s = sorted_normalized(s_in, "obs4_detectable");
  require(s.size() > level && s(level) > 0.0,
          "obs4_detectable: s_{l+1} must be positive (Schmidt rank must exceed l)");
  Obs4Result out;
  out.margin = s.sum() - std::sqrt(static_cast<double>(level));
  out.detectable = out.margin > 0.0;
  return out;
}

Obs5Result obs5_counterexample(const RealVector& s_in, int level) {
  require(level >= 1, "obs5_counterexample: level must be >= 1");
  const RealVector s = sorted_normalized(s_in, "obs5_counterexample");
  require(s.size() > level && s(level) > 0.0,
          "obs5_counterexample: s_{l+1} must be positive (Schmidt rank must exceed l)");
  const RealVector head = s.head(level);
  require(head.maxCoeff() - head.minCoeff() > 1e-12 * head.maxCoeff(),
          "obs5_counterexample: s_1 = ... = s_l, no counterexample exists");

  const double sum_head = head.sum();
  const double sq_head = head.squaredNorm();
  const double root_l = std::sqrt(static_cast<double>(level));
  auto holds = [&](double eps) { return (sum_head + eps) / std::sqrt(sq_head + eps * eps) <= root_l; };

  Obs5Result out;
  const double cap = s(level);
  if (holds(cap)) {
    out.epsilon = cap;
  } else {
    // holds(0) is strict by Cauchy-Schwarz; bisect for the largest valid eps.
    double lo = 0.0;
    double hi = cap;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? lo : hi) = mid;
    }
    out.epsilon = lo;
  }
  require(out.epsilon > 0.0, "obs5_counterexample: no positive epsilon found");

  const double norm = std::sqrt(sq_head + out.epsilon * out.epsilon);
  out.x.resize(level + 1);
  out.x.head(level) = head / norm;
  out.x(level) = out.epsilon / norm;
  out.beta = sq_head;
  out.overlap = std::pow(s.head(level + 1).dot(out.x), 2);
  out.sum_x = out.x.sum();
  out.detected_by_target = out.overlap >= out.beta + out.epsilon * out.epsilon - 1e-12;
  out.undetected_by_max_entangled = out.sum_x <= root_l + 1e-12;
  return out;
}

std::string save_witness(const Witness& w) {
  nlohmann::json doc = {{"threshold", w.threshold},
                        {"level", w.schmidt_level},
                        {"d_a", w.dims.a},
                        {"d_b", w.dims.b},
                        {"observable", matrix_json(w.observable)}};
  if (w.target.size() > 0) doc["target"] = matrix_json(w.target);
  return doc.dump() + "\n";
}

Witness load_witness(std::string_view document) {
  try {
    return witness_from_json(nlohmann::json::parse(document));
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("witness file: ") + e.what());
  }
}

std::vector<Witness> load_witness_set(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    std::vector<Witness> out;
    if (doc.is_object() && doc.contains("witnesses")) {
      for (const auto& w : doc.at("witnesses")) out.push_back(witness_from_json(w));
    } else if (doc.is_array()) {
      for (const auto& w : doc) out.push_back(witness_from_json(w));
    } else {
      out.push_back(witness_from_json(doc));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("witness file: ") + e.what());
  }
}

}  // namespace faithful
