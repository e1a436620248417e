#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace opradius {

enum class Relation { le, ge, eq };

std::string_view to_string(Relation r);
Relation relation_from_string(std::string_view s);

/// An evaluated inequality: values[0] rel[0] values[1] rel[1] ... .
struct TermChain {
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<Relation> relations;
  std::string source;

  TermChain& add(std::string label, double value);
  TermChain& then(Relation r, std::string label, double value);

  bool consistent() const;

  /// Per-relation slack; positive means the relation holds with room.
  std::vector<double> slacks() const;
  double worst_slack() const;

  /// max(1, max |value|), the reference magnitude for relative tolerances.
  double scale() const;

  bool satisfied(double tol) const;
  bool satisfied_relative(double rel_tol) const { return satisfied(rel_tol * scale()); }
};

enum class Variant { canonical, as_printed };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);

inline constexpr double kHoldsTolerance = 1e-9;

/// An upper-bound style evaluation built on a chain. lhs is the first term,
/// rhs_terms the rest; slack is rhs_terms[0] - lhs.
struct BoundEvaluation {
  std::string bound_id;
  TermChain chain;
  double lhs = 0.0;
  std::vector<double> rhs_terms;
  double slack = 0.0;
  bool holds = true;
  Variant variant = Variant::canonical;
  std::vector<std::pair<std::string, double>> details;
  std::vector<std::string> flags;

  double detail(std::string_view name) const;
  bool has_flag(std::string_view name) const;
};

/// Fills lhs/rhs/slack/holds from the chain; holds uses rel_tol * scale.
BoundEvaluation make_evaluation(std::string bound_id, TermChain chain, Variant variant,
                                double rel_tol = kHoldsTolerance);

}  // namespace opradius
