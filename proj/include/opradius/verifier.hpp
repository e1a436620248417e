#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opradius/ensembles.hpp"
#include "opradius/json_io.hpp"
#include "opradius/term_chain.hpp"

namespace opradius {

enum class InputShape {
  matrix,             // T
  matrix_pair,        // A, B general
  psd_pair,           // A, B PSD
  psd_vectors,        // A PSD, x, y
  matrix_vectors,     // T, x, y
  commuting_vectors,  // T, S with |T|S = S*|T|, x, y
  commuting_pair,     // T, S with |T|S = S*|T|
  block,              // square block grid
  block_2x2,
};

struct BoundInfo {
  std::string id;
  InputShape shape;
  bool has_variants = false;
  bool takes_alpha = false;
  bool takes_p = false;
  double default_p = 2.0;
  std::string summary;
};

const std::vector<BoundInfo>& bound_registry();
/// Throws UnknownBound.
const BoundInfo& find_bound(const std::string& id);

enum class VariantSelection { canonical, as_printed, both };
std::string_view to_string(VariantSelection v);
VariantSelection variant_selection_from_string(std::string_view s);

struct CheckParams {
  double alpha = 0.5;
  std::optional<double> p;  // bound default when empty

  bool operator==(const CheckParams&) const = default;
};

struct CheckSpec {
  std::string bound_id;
  EnsembleSpec ensemble;
  int trials = 500;
  double tol = 1e-8;
  VariantSelection variant = VariantSelection::canonical;
  CheckParams params;

  bool operator==(const CheckSpec&) const = default;
};

struct TrialInputs {
  ComplexMatrix t;
  ComplexMatrix s;
  ComplexVector x;
  ComplexVector y;
  std::optional<BlockMatrix> blocks;
};

/// Throws UnknownBound, HypothesisMismatch (ensemble or parameters outside the
/// bound's hypotheses) or InvalidSpec.
void check_admissible(const CheckSpec& check);
/// The alpha / p part of check_admissible.
void check_parameters(const BoundInfo& info, const CheckParams& params);

TrialInputs draw_inputs(const CheckSpec& check, std::uint64_t index);
BoundEvaluation evaluate_bound(const std::string& bound_id, const TrialInputs& in, Variant variant,
                               const CheckParams& params);

/// Relative violation rule: worst chain slack < -tol * chain scale (NaN
/// counts as a violation).
bool is_violation(const BoundEvaluation& e, double tol);

struct SlackStats {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct VariantSummary {
  Variant variant = Variant::canonical;
  int trials = 0;
  int violations = 0;
  SlackStats slack_stats;
};

struct Counterexample {
  std::uint64_t index = 0;
  Variant variant = Variant::canonical;
  double worst_slack = 0.0;
  TrialInputs inputs;
  BoundEvaluation evaluation;
};

struct VerificationReport {
  CheckSpec check;
  int violations = 0;
  double worst_slack = 0.0;
  SlackStats slack_stats;
  std::vector<VariantSummary> by_variant;
  std::vector<Counterexample> counterexamples;  // at most 10, smallest slack first
  double wall_time = 0.0;
};

inline constexpr std::size_t kCounterexampleCap = 10;

/// Runs every trial (in parallel unless threads == 1; threads == 0 uses the
/// OpenMP default). The report is independent of the thread count.
VerificationReport run_check(const CheckSpec& check, int threads = 0);

Json check_to_json(const CheckSpec& c);
CheckSpec check_from_json(const Json& j);
Json inputs_to_json(const TrialInputs& in);
TrialInputs inputs_from_json(const Json& j);
/// Self-contained payload: the check, the trial index and the stored result.
Json counterexample_to_json(const CheckSpec& check, const Counterexample& c);
Json report_to_json(const VerificationReport& r, bool include_wall_time = true);

struct ReplayResult {
  BoundEvaluation evaluation;
  double stored_slack = 0.0;
  double replayed_slack = 0.0;
  bool inputs_match = false;
  bool slack_match = false;  // |stored - replayed| <= 1e-12
};

/// Re-draws the inputs from (seed, index), compares them with the stored
/// ones and re-evaluates. Throws CorruptPayload on malformed payloads.
ReplayResult replay(const Json& payload);

struct Cor8Verdict {
  Variant variant = Variant::as_printed;
  int trials = 0;
  int beats_hou_du = 0;        // strictly smaller
  int beats_banidomi = 0;
  int beats_both = 0;
  int claim_failures = 0;      // cor8 > min(hou_du, bk)
  int cor8_violations = 0;     // cor8 < w(A)
  std::string verdict;
};

struct TightnessComparison {
  std::vector<std::string> bound_ids;
  std::vector<double> lhs;                   // the bounded quantity per trial
  std::vector<std::vector<double>> values;   // [trial][bound]
  std::vector<int> win_counts;
  int ties = 0;
  std::optional<Cor8Verdict> cor8;
};

/// Throws UnknownBound, ShapeMismatch (bounds of different quantities or
/// inputs), HypothesisMismatch.
TightnessComparison compare_tightness(const std::vector<std::string>& bound_ids,
                                      const EnsembleSpec& ensemble, int trials,
                                      const CheckParams& params = {},
                                      Variant variant = Variant::canonical, int threads = 0);

Json tightness_to_json(const TightnessComparison& t);

}  // namespace opradius
