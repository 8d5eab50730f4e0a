#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "faithful/seesaw.hpp"
#include "faithful/solver.hpp"
#include "faithful/states.hpp"

namespace faithful {

/// Final classification of a state. PPT and the two unfaithful categories are
/// proofs of unfaithfulness, the two faithful categories carry a maximally
/// entangled target with overlap above 1/d.
enum class Category {
  ppt_unfaithful,
  unfaithful_3a,
  unfaithful_3b,
  faithful_3c,
  faithful_seesaw,
  undecided,
};

inline constexpr std::size_t kCategoryCount = 6;
inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::ppt_unfaithful, Category::unfaithful_3a,   Category::unfaithful_3b,
    Category::faithful_3c,    Category::faithful_seesaw, Category::undecided};

std::string_view to_string(Category c);
/// Short CSV column name (ppt, uff3a, uff3b, ff3c, ffseesaw, undecided).
std::string_view column_name(Category c);
bool is_faithful(Category c);
bool is_unfaithful(Category c);

struct ClassifyConfig {
  SdpOptions sdp;
  SeesawOptions seesaw{.restarts = 50};
  /// Compute every cheap certificate even after the cascade has stopped:
  /// lambda_max(X_d) and a see-saw lower bound with `certificate_restarts`.
  bool full_certificates = false;
  int certificate_restarts = 4;
};

struct SdpSummary {
  double optimum = 0.0;
  double upper_bound = 0.0;
  double purity = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
};

struct Certificates {
  double ppt_min_eigenvalue = 0.0;
  double ccnr_norm = 0.0;
  std::optional<double> lambda_max_x;
  std::optional<SdpSummary> sdp;
  std::optional<double> seesaw_value;
  /// Maximally entangled target certifying a faithful verdict.
  std::optional<ComplexVector> target;
};

struct Timings {
  double criteria_seconds = 0.0;
  double sdp_seconds = 0.0;
  double seesaw_seconds = 0.0;
};

struct FaithfulnessReport {
  Category verdict = Category::undecided;
  int d = 0;
  Certificates certificates;
  /// Singlet fraction above 1/d: teleportation beats the classical limit.
  bool teleportation_advantage = false;
  /// Some number of copies violates a Bell inequality.
  bool multicopy_nonlocal = false;
  /// True when the SDP stage ran out of iterations.
  bool solver_failure = false;
  std::vector<std::string> notes;
  Timings timings;

  bool npt() const { return certificates.ppt_min_eigenvalue < 0.0; }
  bool ccnr_violated() const { return certificates.ccnr_norm > 1.0; }
  /// faithful => NPT and CCNR violated; unfaithful-3a/3b => SDP <= 1/d.
  bool consistent() const;
};

/// Cheapest-first cascade: PPT, then (d = 2) the exact X_2 test, otherwise the
/// X_d eigenvalue bound, the maximally-mixed-marginal SDP, and the see-saw.
/// Stops at the first conclusive stage.
FaithfulnessReport classify(const BipartiteState& state, const ClassifyConfig& config = {});

std::string report_json(const FaithfulnessReport& report);

struct TableRow {
  int d = 0;
  Measure measure = Measure::Bures;
  std::size_t n = 0;
  std::array<std::size_t, kCategoryCount> counts{};

  double fraction(Category c) const;
  /// Binomial standard error sqrt(f (1 - f) / n).
  double standard_error(Category c) const;
  /// NPT states proven unfaithful by 3(a) or 3(b).
  double cumulative_unfaithful_npt() const;
  double faithful_fraction() const;
};

/// Called once per sample; may be invoked concurrently from several workers.
using SampleObserver =
    std::function<void(std::uint64_t index, const BipartiteState&, const FaithfulnessReport&)>;

/// Classifies samples 0..n-1 of the stream `seed`. Sample i depends only on
/// (seed, i), so the row is identical for any number of workers.
TableRow run_table(Measure measure, int d, std::size_t n, std::uint64_t seed, int workers = 1,
                   const ClassifyConfig& config = {}, const SampleObserver& observer = {});

std::string table_csv_header();
std::string table_csv_line(const TableRow& row);

}  // namespace faithful
