#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "faithful/states.hpp"
#include "oracles.hpp"

using namespace faithful;

namespace {

// Independent transcription of the stream: mt19937_64 seeded from the four
// 32-bit halves of (seed, stream), 53-bit uniforms, Box-Muller cos/sin pairs.
std::vector<double> reference_normals(std::uint64_t seed, std::uint64_t stream, int count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 engine(seq);
  const auto u = [&] { return static_cast<double>(engine() >> 11) / 9007199254740992.0; };
  std::vector<double> out;
  while (static_cast<int>(out.size()) < count) {
    const double r = std::sqrt(-2.0 * std::log(1.0 - u()));
    const double t = 2.0 * std::numbers::pi * u();
    out.push_back(r * std::cos(t));
    out.push_back(r * std::sin(t));
  }
  out.resize(count);
  return out;
}

bool is_ppt(const BipartiteState& s) {
  const int d = s.dims().a;
  return oracle::min_eig(oracle::partial_transpose_b(s.rho(), d, d)) >= 0.0;
}

}  // namespace

TEST_CASE("max_entangled") {
  const ComplexVector phi = max_entangled(2);
  CHECK(std::abs(phi(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(phi(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(phi(1)) == 0.0);
  const auto s3 = BipartiteState::pure(max_entangled(3), {3, 3});
  CHECK((s3.marginal(Subsystem::A) - ComplexMatrix::Identity(3, 3) / 3.0).norm() < 1e-14);
  CHECK((s3.marginal(Subsystem::B) - ComplexMatrix::Identity(3, 3) / 3.0).norm() < 1e-14);
  for (int d = 2; d <= 5; ++d)
    CHECK(std::norm(max_entangled(d)(0)) == doctest::Approx(1.0 / d));
}

TEST_CASE("isotropic and Werner families") {
  CHECK((isotropic(3, 0.0).rho() - ComplexMatrix::Identity(9, 9) / 9.0).norm() < 1e-15);
  const ComplexVector phi = max_entangled(3);
  CHECK((isotropic(3, 1.0).rho() - phi * phi.adjoint()).norm() < 1e-15);
  CHECK(isotropic(3, 0.5).fidelity(phi) == doctest::Approx(0.5 + 0.5 / 9.0));

  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  CHECK((werner_qubit(1.0).rho() - singlet * singlet.adjoint()).norm() < 1e-15);
  CHECK((werner_qubit(0.0).rho() - ComplexMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);
  CHECK(werner_qubit(0.8).fidelity(singlet) == doctest::Approx(0.85));
  CHECK_THROWS_AS(isotropic(3, 1.5), ContractViolation);
}

TEST_CASE("state invariants") {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 2.0;
  try {
    BipartiteState(m, {2, 2});
    FAIL("expected normalization error");
  } catch (const InvariantViolation& e) {
    const std::string msg = e.what();
    CHECK(msg.find("normalization") != std::string::npos);
    CHECK(msg.find("Tr") != std::string::npos);
    CHECK(msg.find('2') != std::string::npos);
  }

  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg.diagonal() << 0.501, 0.5, 0.0, -0.001;
  try {
    BipartiteState(neg, {2, 2});
    FAIL("expected positivity error");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("positivity") != std::string::npos);
  }

  ComplexMatrix nonherm = ComplexMatrix::Identity(4, 4) / 4.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(BipartiteState(nonherm, {2, 2}), InvariantViolation);
  CHECK_THROWS_AS(BipartiteState(ComplexMatrix::Identity(4, 4) / 4.0, {2, 3}), InvariantViolation);
  CHECK_THROWS_AS(BipartiteState(ComplexMatrix::Identity(6, 6) / 6.0, {2, 3}).local_dim(),
                  ContractViolation);
}

TEST_CASE("RNG stream matches its definition") {
  for (std::uint64_t seed : {0ULL, 7ULL, 0x123456789abcdefULL}) {
    for (std::uint64_t stream : {0ULL, 1ULL, 1ULL << 40}) {
      Rng rng(seed, stream);
      const auto expected = reference_normals(seed, stream, 16);
      for (int k = 0; k < 16; ++k) CHECK(rng.normal() == expected[k]);
    }
  }
  // Ginibre entries are drawn row-major, real part first.
  Rng rng(42, 3);
  const ComplexMatrix g = ginibre(2, 3, rng);
  const auto expected = reference_normals(42, 3, 12);
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(g(i, j).real() == expected[k++]);
      CHECK(g(i, j).imag() == expected[k++]);
    }
}

TEST_CASE("Ginibre entry statistics") {
  Rng rng(2024);
  const int n = 100000;
  double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = rng.complex_normal();
    sum_re += z.real();
    sum_im += z.imag();
    sum_sq += z.real() * z.real();
  }
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sum_re / n) < 4.0 * sigma);
  CHECK(std::abs(sum_im / n) < 4.0 * sigma);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.05);
}

TEST_CASE("Haar unitaries") {
  Rng rng(77);
  for (int n : {1, 2, 3, 6, 9}) CHECK(unitarity_residual(haar_unitary(n, rng)) <= 1e-10);

  // n = 1: chi-square test of the phase histogram (20 bins, 19 dof; 50 is
  // beyond the 0.9999 quantile).
  const int draws = 10000;
  std::vector<int> bins(20, 0);
  for (int i = 0; i < draws; ++i) {
    const double phase = std::arg(haar_unitary(1, rng)(0, 0));
    const int b = static_cast<int>((phase + std::numbers::pi) / (2.0 * std::numbers::pi) * 20.0);
    ++bins[std::min(b, 19)];
  }
  double chi2 = 0.0;
  for (int c : bins) chi2 += (c - draws / 20.0) * (c - draws / 20.0) / (draws / 20.0);
  CHECK(chi2 < 50.0);

  // E|U_00|^2 = 1/n, Var = 2/(n(n+1)) - 1/n^2.
  const int n = 3;
  double mean = 0.0;
  for (int i = 0; i < draws; ++i) mean += std::norm(haar_unitary(n, rng)(0, 0));
  mean /= draws;
  const double sd = std::sqrt((2.0 / (n * (n + 1)) - 1.0 / (n * n)) / draws);
  CHECK(std::abs(mean - 1.0 / n) < 4.0 * sd);
}

TEST_CASE("samplers produce valid, reproducible states") {
  for (Measure m : {Measure::Bures, Measure::HilbertSchmidt})
    for (int d : {2, 3, 4}) {
      for (std::uint64_t i = 0; i < 5; ++i) {
        const SamplerConfig cfg{m, d, 99, i};
        const BipartiteState a = sample(cfg);
        CHECK(std::abs(a.rho().trace().real() - 1.0) < 1e-12);
        CHECK(oracle::min_eig(a.rho()) > -1e-12);
        CHECK(save_state(a) == save_state(sample(cfg)));
      }
      CHECK(save_state(sample({m, d, 99, 0})) != save_state(sample({m, d, 99, 1})));
    }
}

TEST_CASE("PPT fractions of two-qubit ensembles") {
  const int n = 10000;
  int hs = 0, bures = 0;
  for (int i = 0; i < n; ++i) {
    hs += is_ppt(sample({Measure::HilbertSchmidt, 2, 1, static_cast<std::uint64_t>(i)}));
    bures += is_ppt(sample({Measure::Bures, 2, 1, static_cast<std::uint64_t>(i)}));
  }
  CHECK(std::abs(static_cast<double>(hs) / n - 0.2435) <= 0.013);
  CHECK(std::abs(static_cast<double>(bures) / n - 0.0732) <= 0.008);
}

TEST_CASE("ensembles are unitarily invariant") {
  Rng rng(500);
  const ComplexMatrix w = haar_unitary(4, rng);
  const int n = 4000;
  for (Measure m : {Measure::Bures, Measure::HilbertSchmidt}) {
    int plain = 0, rotated = 0;
    for (int i = 0; i < n; ++i) {
      plain += is_ppt(sample({m, 2, 10, static_cast<std::uint64_t>(i)}));
      const BipartiteState s = sample({m, 2, 11, static_cast<std::uint64_t>(i)});
      rotated += is_ppt(BipartiteState(w * s.rho() * w.adjoint(), {2, 2}));
    }
    const double p = 0.5 * (plain + rotated) / n;
    const double se = std::sqrt(2.0 * p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(plain - rotated) / n) <= 3.0 * se);
  }
}

TEST_CASE("state JSON round trip") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const BipartiteState s = sample({Measure::Bures, 3, 5, i});
    const BipartiteState back = load_state(save_state(s));
    CHECK(back.rho() == s.rho());
    CHECK(back.dims() == s.dims());
  }
  CHECK_THROWS_AS(load_state("{"), ContractViolation);
  CHECK_THROWS_AS(load_state(R"({"d_a": 2, "d_b": 2, "re": [[1]], "im": [[0]]})"),
                  ContractViolation);
  CHECK_THROWS_AS(
      load_state(R"({"d_a": 1, "d_b": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})"),
      InvariantViolation);
}

TEST_CASE("state vector JSON") {
  const auto ps = load_state_vector(R"({"d_a": 2, "d_b": 2, "re": [2, 0, 0, 2], "im": [0, 0, 0, 0]})");
  CHECK((ps.psi - max_entangled(2)).norm() < 1e-15);
  CHECK(ps.dims == Dims{2, 2});
  const auto back = load_state_vector(save_state_vector(ps.psi, ps.dims));
  CHECK(back.psi == ps.psi);
  CHECK_THROWS_AS(load_state_vector(R"({"d_a": 2, "d_b": 2, "re": [0,0,0,0], "im": [0,0,0,0]})"),
                  ContractViolation);
  CHECK_THROWS_AS(load_state_vector(R"({"d_a": 2, "d_b": 2, "re": [1], "im": [0]})"),
                  ContractViolation);
}

TEST_CASE("measure names") {
  CHECK(parse_measure("bures") == Measure::Bures);
  CHECK(parse_measure("hs") == Measure::HilbertSchmidt);
  CHECK(to_string(Measure::HilbertSchmidt) == "hs");
  CHECK_THROWS_AS(parse_measure("haar"), ContractViolation);
}
