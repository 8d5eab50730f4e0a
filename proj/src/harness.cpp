#include "faithful/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "faithful/criteria.hpp"

namespace faithful {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SdpSummary summarize(const SdpSolution& s) {
  return {s.optimum,         s.upper_bound,   s.purity,   s.iterations,
          s.primal_residual, s.dual_residual, s.converged};
}

void run_seesaw(const BipartiteState& state, const SeesawOptions& options,
                FaithfulnessReport& report) {
  const auto start = Clock::now();
  const SeesawResult result = max_singlet_fraction(state, options);
  report.timings.seesaw_seconds += seconds_since(start);
  report.certificates.seesaw_value = std::max(report.certificates.seesaw_value.value_or(0.0),
                                              result.best_value);
  const SeesawVerdict verdict = faithful_via_seesaw(state, result);
  if (verdict.faithful && !report.certificates.target) report.certificates.target = verdict.certificate;
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::ppt_unfaithful: return "ppt-unfaithful";
    case Category::unfaithful_3a: return "unfaithful-3a";
    case Category::unfaithful_3b: return "unfaithful-3b";
    case Category::faithful_3c: return "faithful-3c";
    case Category::faithful_seesaw: return "faithful-seesaw";
    case Category::undecided: return "undecided";
  }
  return "undecided";
}

std::string_view column_name(Category c) {
  switch (c) {
    case Category::ppt_unfaithful: return "ppt";
    case Category::unfaithful_3a: return "uff3a";
    case Category::unfaithful_3b: return "uff3b";
    case Category::faithful_3c: return "ff3c";
    case Category::faithful_seesaw: return "ffseesaw";
    case Category::undecided: return "undecided";
  }
  return "undecided";
}

bool is_faithful(Category c) {
  return c == Category::faithful_3c || c == Category::faithful_seesaw;
}

bool is_unfaithful(Category c) {
  return c == Category::ppt_unfaithful || c == Category::unfaithful_3a ||
         c == Category::unfaithful_3b;
}

bool FaithfulnessReport::consistent() const {
  const double threshold = 1.0 / d;
  if (is_faithful(verdict)) {
    if (!npt() || !ccnr_violated()) return false;
    if (teleportation_advantage != true || multicopy_nonlocal != true) return false;
    const double best = std::max(certificates.seesaw_value.value_or(0.0),
                                 certificates.sdp ? certificates.sdp->optimum : 0.0);
    if (verdict == Category::faithful_3c && d == 2)
      return certificates.lambda_max_x.value_or(0.0) > threshold;
    return best > threshold;
  }
  if (teleportation_advantage || multicopy_nonlocal) return false;
  if (verdict == Category::unfaithful_3a)
    return certificates.lambda_max_x && *certificates.lambda_max_x <= threshold + 1e-6;
  if (verdict == Category::unfaithful_3b)
    return certificates.sdp && certificates.sdp->optimum <= threshold + 1e-6;
  if (verdict == Category::ppt_unfaithful) return certificates.ppt_min_eigenvalue >= -kBoundaryMargin;
  return true;
}

FaithfulnessReport classify(const BipartiteState& state, const ClassifyConfig& config) {
  const int d = state.local_dim();
  const double threshold = 1.0 / d;
  FaithfulnessReport report;
  report.d = d;
  auto& cert = report.certificates;

  auto start = Clock::now();
  const CriterionResult ppt = ppt_check(state);
  const CriterionResult ccnr = ccnr_check(state);
  cert.ppt_min_eigenvalue = ppt.value;
  cert.ccnr_norm = ccnr.value;
  std::optional<CriterionResult> xbound;
  auto need_xbound = [&] {
    if (!xbound) {
      xbound = obs3a_bound(state);
      cert.lambda_max_x = xbound->value;
    }
    return *xbound;
  };
  if (config.full_certificates) need_xbound();
  report.timings.criteria_seconds = seconds_since(start);

  auto finish = [&](Category verdict) {
    report.verdict = verdict;
    report.teleportation_advantage = is_faithful(verdict);
    report.multicopy_nonlocal = is_faithful(verdict);
    if (config.full_certificates && !cert.seesaw_value) {
      SeesawOptions quick = config.seesaw;
      quick.restarts = config.certificate_restarts;
      run_seesaw(state, quick, report);
    }
    if (!report.consistent()) report.notes.emplace_back("certificate consistency check failed");
    return report;
  };

  if (ppt.verdict == Verdict::satisfied) return finish(Category::ppt_unfaithful);

  // Two qubits: the X_2 eigenvalue test is exact. Its top eigenvector can be
  // chosen maximally entangled, so it is also the pure SDP optimizer.
  if (d == 2) {
    start = Clock::now();
    const CriterionResult exact = obs2_qubit_faithful(state);
    cert.lambda_max_x = exact.value;
    report.timings.criteria_seconds += seconds_since(start);
    if (exact.verdict == Verdict::satisfied) return finish(Category::unfaithful_3a);
    if (exact.verdict == Verdict::violated && ppt.verdict == Verdict::violated) {
      const HermitianEig eig = eigh(x_operator(state));
      cert.target = eig.vectors.col(0);
      return finish(Category::faithful_3c);
    }
    report.notes.emplace_back("X_2 eigenvalue within boundary margin of 1/2");
    return finish(Category::undecided);
  }

  start = Clock::now();
  const CriterionResult bound = need_xbound();
  report.timings.criteria_seconds += seconds_since(start);
  if (bound.verdict == Verdict::satisfied) return finish(Category::unfaithful_3a);

  start = Clock::now();
  const SdpSolution sol = sdp_max_overlap(state, config.sdp);
  report.timings.sdp_seconds = seconds_since(start);
  cert.sdp = summarize(sol);
  if (!sol.converged && !sol.decided_early) {
    report.solver_failure = true;
    report.notes.emplace_back("SDP did not converge after " + std::to_string(sol.iterations) +
                              " iterations");
  } else {
    const Obs3Verdict v = obs3_verdict(state, sol);
    if (v.outcome == Obs3Outcome::unfaithful) return finish(Category::unfaithful_3b);
    if (v.outcome == Obs3Outcome::faithful && ppt.verdict == Verdict::violated) {
      cert.target = v.certificate;
      return finish(Category::faithful_3c);
    }
  }

  run_seesaw(state, config.seesaw, report);
  if (cert.seesaw_value && compare_above(*cert.seesaw_value, threshold) == Verdict::violated &&
      ppt.verdict == Verdict::violated)
    return finish(Category::faithful_seesaw);

  if (cert.sdp && cert.sdp->optimum > threshold)
    report.notes.emplace_back("unfaithful-undetected candidate: SDP optimum above 1/d with mixed "
                              "optimizer, see-saw below 1/d");
  return finish(Category::undecided);
}

std::string report_json(const FaithfulnessReport& report) {
  const auto& c = report.certificates;
  nlohmann::json certs = {{"ppt_min_eigenvalue", c.ppt_min_eigenvalue}, {"ccnr_norm", c.ccnr_norm}};
  if (c.lambda_max_x) certs["lambda_max_x"] = *c.lambda_max_x;
  if (c.sdp)
    certs["sdp"] = {{"optimum", c.sdp->optimum},
                    {"upper_bound", c.sdp->upper_bound},
                    {"purity", c.sdp->purity},
                    {"iterations", c.sdp->iterations},
                    {"primal_residual", c.sdp->primal_residual},
                    {"dual_residual", c.sdp->dual_residual},
                    {"converged", c.sdp->converged}};
  if (c.seesaw_value) certs["seesaw_value"] = *c.seesaw_value;
  if (c.target) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < c.target->size(); ++i) {
      re.push_back((*c.target)(i).real());
      im.push_back((*c.target)(i).imag());
    }
    certs["target"] = {{"re", re}, {"im", im}};
  }
  const nlohmann::json doc = {
      {"verdict", std::string(to_string(report.verdict))},
      {"d", report.d},
      {"threshold", 1.0 / report.d},
      {"certificates", certs},
      {"annotations",
       {{"teleportation_advantage", report.teleportation_advantage},
        {"multicopy_nonlocality", report.multicopy_nonlocal}}},
      {"solver_failure", report.solver_failure},
      {"notes", report.notes},
      {"timings",
       {{"criteria_seconds", report.timings.criteria_seconds},
        {"sdp_seconds", report.timings.sdp_seconds},
        {"seesaw_seconds", report.timings.seesaw_seconds}}}};
  return doc.dump(2) + "\n";
}

double TableRow::fraction(Category c) const {
  return n == 0 ? 0.0 : static_cast<double>(counts[static_cast<std::size_t>(c)]) / n;
}

double TableRow::standard_error(Category c) const {
  if (n == 0) return 0.0;
  const double f = fraction(c);
  return std::sqrt(f * (1.0 - f) / n);
}

double TableRow::cumulative_unfaithful_npt() const {
  return fraction(Category::unfaithful_3a) + fraction(Category::unfaithful_3b);
}

double TableRow::faithful_fraction() const {
  return fraction(Category::faithful_3c) + fraction(Category::faithful_seesaw);
}

TableRow run_table(Measure measure, int d, std::size_t n, std::uint64_t seed, int workers,
                   const ClassifyConfig& config, const SampleObserver& observer) {
  require(d >= 2, "run_table: d must be >= 2");
  require(n >= 1, "run_table: n must be >= 1");
  require(workers >= 1, "run_table: workers must be >= 1");

  std::vector<std::uint8_t> verdicts(n);
  std::atomic<std::size_t> next{0};
  std::mutex observer_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) {
        const BipartiteState state = sample({measure, d, seed, i});
        ClassifyConfig local = config;
        local.seesaw.seed = mix_seed(seed, i);
        const FaithfulnessReport report = classify(state, local);
        verdicts[i] = static_cast<std::uint8_t>(report.verdict);
        if (observer) {
          std::lock_guard lock(observer_mutex);
          observer(i, state, report);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  TableRow row;
  row.d = d;
  row.measure = measure;
  row.n = n;
  for (const auto v : verdicts) ++row.counts[v];
  return row;
}

std::string table_csv_header() {
  std::string out = "d,measure,n";
  for (const auto c : kAllCategories) out += "," + std::string(column_name(c));
  for (const auto c : kAllCategories) out += "," + std::string(column_name(c)) + "_se";
  return out + "\n";
}

std::string table_csv_line(const TableRow& row) {
  char buffer[64];
  std::string out =
      std::to_string(row.d) + "," + std::string(to_string(row.measure)) + "," + std::to_string(row.n);
  for (const auto c : kAllCategories) {
    std::snprintf(buffer, sizeof buffer, ",%.8f", row.fraction(c));
    out += buffer;
  }
  for (const auto c : kAllCategories) {
    std::snprintf(buffer, sizeof buffer, ",%.8f", row.standard_error(c));
    out += buffer;
  }
  return out + "\n";
}

}  // namespace faithful
