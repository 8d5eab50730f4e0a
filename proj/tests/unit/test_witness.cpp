#include <doctest.h>

#include <cmath>

#include "faithful/seesaw.hpp"
#include "faithful/witness.hpp"
#include "oracles.hpp"

using namespace faithful;

namespace {

RealVector random_schmidt(int d, Rng& rng) {
  RealVector s(d);
  for (int i = 0; i < d; ++i) s(i) = rng.uniform() + 1e-3;
  std::sort(s.data(), s.data() + d, std::greater<>());
  return s / s.norm();
}

RealVector vec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

double expectation(const ComplexMatrix& w, const ComplexVector& v) {
  return (v.adjoint() * w * v)(0, 0).real();
}

}  // namespace

TEST_CASE("fidelity witness thresholds") {
  CHECK(fidelity_witness(oracle::max_entangled(2), {2, 2}).threshold == doctest::Approx(0.5));
  CHECK(fidelity_witness(schmidt_form_state(vec({0.8, 0.6})), {2, 2}).threshold ==
        doctest::Approx(0.64));
  const Witness w2 = fidelity_witness(schmidt_form_state(vec({0.8, 0.4, 0.4, 0.2})), {4, 4}, 2);
  CHECK(w2.threshold == doctest::Approx(0.80));
  CHECK(w2.schmidt_level == 2);
  CHECK_THROWS_AS(fidelity_witness(oracle::basis(4, 0), {2, 2}), ContractViolation);
}

TEST_CASE("witnesses are non-negative on their undetectable sets") {
  Rng rng(60);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 3;
    const Witness w = fidelity_witness(random_pure_state(d * d, rng), {d, d});
    for (int k = 0; k < 50; ++k) {
      const ComplexVector prod = oracle::kron(random_pure_state(d, rng), random_pure_state(d, rng));
      CHECK(expectation(w.observable, prod) >= -1e-9);
    }
  }
  // Level 2 on d = 4 against Schmidt-rank-2 states.
  for (int rep = 0; rep < 10; ++rep) {
    const Witness w = fidelity_witness(random_pure_state(16, rng), {4, 4}, 2);
    for (int k = 0; k < 50; ++k) {
      const ComplexVector r2 =
          (oracle::kron(random_pure_state(4, rng), random_pure_state(4, rng)) +
           oracle::kron(random_pure_state(4, rng), random_pure_state(4, rng)))
              .normalized();
      CHECK(expectation(w.observable, r2) >= -1e-9);
    }
  }
}

TEST_CASE("RFW set") {
  const auto two = rfw_set(2);
  REQUIRE(two.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(two[0].target(0) - r) < 1e-15);
  CHECK(std::abs(two[0].target(3) - r) < 1e-15);
  CHECK(std::abs(two[1].target(3) + r) < 1e-15);
  CHECK(rfw_set(4).size() == 8);
  CHECK(rfw_set(12).size() == 2048);
  CHECK_THROWS_AS(rfw_set(13), ContractViolation);
  for (int d : {2, 3, 4, 5})
    for (const auto& w : rfw_set(d)) {
      CHECK(w.threshold == doctest::Approx(1.0 / d));
      const auto s = BipartiteState::pure(w.target, {d, d});
      CHECK((s.marginal(Subsystem::A) - ComplexMatrix::Identity(d, d) / d).norm() < 1e-14);
      CHECK((s.marginal(Subsystem::B) - ComplexMatrix::Identity(d, d) / d).norm() < 1e-14);
    }
  CHECK(rfw_signs(4, 0b101) == std::vector<int>{-1, 1, -1});
}

TEST_CASE("the RFW of phi+ in an orthonormal operator basis") {
  // 1/d - |phi+><phi+| = (1/d)(1 - sum_k G_k (x) G_k^T) for any orthonormal
  // Hermitian basis {G_k}.
  for (int d : {2, 3, 4}) {
    const auto basis = oracle::gell_mann_basis(d);
    REQUIRE(basis.size() == static_cast<std::size_t>(d * d));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        CHECK(std::abs((basis[i].adjoint() * basis[j]).trace() - (i == j ? 1.0 : 0.0)) < 1e-12);
    ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& g : basis) sum += oracle::kron(g, g.transpose());
    const ComplexMatrix ccnr_form = (ComplexMatrix::Identity(d * d, d * d) - sum) / d;
    CHECK((rfw_set(d)[0].observable - ccnr_form).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("product-form LHV weights") {
  const auto w2 = lhv_weights(vec({1.0, 0.5}));
  CHECK(w2.probabilities[0] == doctest::Approx(0.75));
  CHECK(w2.probabilities[1] == doctest::Approx(0.25));

  const auto ones = lhv_weights(vec({1.0, 1.0, 1.0, 1.0}));
  CHECK(ones.probabilities[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < ones.probabilities.size(); ++i) CHECK(ones.probabilities[i] == 0.0);

  const auto w4 = lhv_weights(vec({1.0, 0.5, 0.5, 0.25}));
  CHECK(w4.probabilities[0] == doctest::Approx(0.75 * 0.75 * 0.625));
  CHECK(w4.probabilities[0] == doctest::Approx(0.3516).epsilon(1e-3));

  // First and second moments are exactly the alphas and their products.
  Rng rng(61);
  for (int d : {3, 5, 7}) {
    const RealVector s = random_schmidt(d, rng);
    const auto w = lhv_weights(s);
    double total = 0.0;
    for (double p : w.probabilities) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < d - 1; ++i) {
      CHECK(std::abs(w.marginal(i) - s(i + 1) / s(0)) < 1e-14);
      for (int j = i + 1; j < d - 1; ++j)
        CHECK(std::abs(w.correlation(i, j) - s(i + 1) * s(j + 1) / (s(0) * s(0))) < 1e-14);
    }
  }
}

TEST_CASE("RFW decomposition of a fidelity witness") {
  const auto phi = verify_rfw_decomposition(oracle::max_entangled(2), {2, 2});
  CHECK(phi.z.norm() < 1e-14);

  const auto d2 = verify_rfw_decomposition(vec({0.8, 0.6}));
  CHECK(d2.diagonal);
  CHECK(d2.psd);
  // Z = s_1^2 - s_2^2 on |11>, zero elsewhere.
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(3, 3) = 0.64 - 0.36;
  CHECK((d2.z - expected).norm() < 1e-14);

  Rng rng(62);
  for (int d = 2; d <= 6; ++d)
    for (int rep = 0; rep < 100; ++rep) {
      const auto r = verify_rfw_decomposition(random_schmidt(d, rng));
      CHECK(r.off_diagonal_mass <= 1e-10);
      CHECK(r.min_eigenvalue >= -1e-10);
      CHECK(r.entries_expected);
    }

  // Rotated input: same decomposition in the Schmidt basis.
  const RealVector s = random_schmidt(3, rng);
  const ComplexVector psi = kron(haar_unitary(3, rng), haar_unitary(3, rng)) * schmidt_form_state(s);
  const auto rot = verify_rfw_decomposition(psi, {3, 3});
  CHECK((rot.schmidt - s).norm() < 1e-10);
  CHECK(rot.diagonal);
  CHECK(rot.psd);
}

TEST_CASE("states detected by the fidelity witness are detected by some RFW") {
  Rng rng(63);
  int detected = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 3;
    const RealVector s = random_schmidt(d, rng);
    const ComplexVector psi = schmidt_form_state(s);
    const ComplexMatrix w = s(0) * s(0) * ComplexMatrix::Identity(9, 9) - psi * psi.adjoint();
    const ComplexMatrix g = ginibre(9, rng);
    const double q = rng.uniform();
    const ComplexMatrix rho = q * psi * psi.adjoint() + (1.0 - q) * g * g.adjoint() / (g * g.adjoint()).trace();
    if ((w * rho).trace().real() >= 0.0) continue;
    ++detected;
    bool any = false;
    for (const auto& rfw : rfw_set(d)) any = any || (rfw.observable * rho).trace().real() < 0.0;
    CHECK(any);
  }
  CHECK(detected > 20);
}

TEST_CASE("detectability by maximally entangled Schmidt witnesses") {
  Rng rng(64);
  for (int rep = 0; rep < 20; ++rep) CHECK(obs4_detectable(random_schmidt(3, rng), 1).detectable);

  const auto yes = obs4_detectable(vec({1.0 / std::sqrt(2.0), 0.5, 0.5}), 2);
  CHECK(yes.detectable);
  CHECK(yes.margin == doctest::Approx(1.0 / std::sqrt(2.0) + 1.0 - std::sqrt(2.0)));

  const auto no = obs4_detectable(vec({0.98, 0.141, 0.141}), 2);
  CHECK_FALSE(no.detectable);

  // Oracle: the best maximally entangled overlap of the pure state exceeds l/d.
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 4;
    const RealVector s = random_schmidt(d, rng);
    for (int l : {2, 3}) {
      const double best =
          max_singlet_fraction(BipartiteState::pure(schmidt_form_state(s), {d, d}), {.restarts = 20})
              .best_value;
      const auto r = obs4_detectable(s, l);
      if (std::abs(r.margin) > 1e-6) CHECK(r.detectable == (best > static_cast<double>(l) / d));
    }
  }
}

TEST_CASE("Schmidt witness counterexamples") {
  const auto r = obs5_counterexample(vec({0.9, 0.3, 0.316}), 2);
  CHECK(r.detected_by_target);
  CHECK(r.undetected_by_max_entangled);
  CHECK(r.epsilon > 0.0);

  CHECK_THROWS_AS(obs5_counterexample(vec({0.6, 0.6, 0.3}), 2), ContractViolation);
  CHECK_THROWS_AS(obs5_counterexample(vec({0.8, 0.6, 0.0}), 2), ContractViolation);

  Rng rng(65);
  for (int rep = 0; rep < 50; ++rep) {
    const RealVector s = random_schmidt(4, rng);
    const int l = 2;
    const auto c = obs5_counterexample(s, l);
    // Independent re-evaluation from explicit vectors.
    RealVector xs = RealVector::Zero(4);
    xs.head(c.x.size()) = c.x;
    const ComplexVector x = schmidt_form_state(xs);
    const ComplexVector psi = schmidt_form_state(s);
    const double overlap = std::norm(psi.dot(x));
    const double beta = s.head(l).squaredNorm();
    CHECK(x.norm() == doctest::Approx(1.0));
    CHECK(overlap == doctest::Approx(c.overlap).epsilon(1e-12));
    CHECK(overlap >= beta + c.epsilon * c.epsilon - 1e-12);
    CHECK(xs.sum() <= std::sqrt(2.0) + 1e-12);
    CHECK(c.epsilon <= s(l) + 1e-15);
    CHECK(c.detected_by_target);
    CHECK(c.undetected_by_max_entangled);
  }
}

TEST_CASE("witness JSON") {
  const Witness w = fidelity_witness(schmidt_form_state(vec({0.8, 0.5, 0.33})), {3, 3}, 2);
  const Witness back = load_witness(save_witness(w));
  CHECK(back.threshold == w.threshold);
  CHECK(back.schmidt_level == 2);
  CHECK(back.dims == w.dims);
  CHECK((back.observable - w.observable).norm() == 0.0);

  const auto set = load_witness_set("[" + save_witness(w) + "," + save_witness(w) + "]");
  CHECK(set.size() == 2);
  const auto wrapped = load_witness_set("{\"witnesses\": [" + save_witness(w) + "]}");
  CHECK(wrapped.size() == 1);
  const Witness from_target =
      load_witness(R"({"threshold": 0.5, "d_a": 2, "d_b": 2, "target": {"re": [[1], [0], [0], [1]], "im": [[0], [0], [0], [0]]}})");
  CHECK((from_target.observable - rfw_set(2)[0].observable).norm() < 1e-14);
  CHECK_THROWS_AS(load_witness(R"({"threshold": 0.5, "d_a": 2, "d_b": 2})"), ContractViolation);
}
