#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "opradius/linalg.hpp"
#include "opradius/scalar_inequalities.hpp"
#include "opradius/term_chain.hpp"

namespace opradius {

using Detail = std::vector<std::pair<std::string, double>>;

struct PilotMatrix {
  RealMatrix entries;  // clamped at 0
  RealMatrix raw;      // before clamping
  std::string variant;
  std::vector<Detail> diagonal_detail;
  std::vector<bool> clamped;

  bool any_clamped() const;
};

enum class ClassicalPilot { hou_du, banidomi_kittaneh, abuomar_kittaneh };

std::string_view to_string(ClassicalPilot v);

/// Off-diagonal ||A_ij||; diagonal ||A_ii||, (||A_ii|| + ||A_ii^2||^{1/2})/2 or
/// w(A_ii) respectively.
PilotMatrix pilot_classical(const BlockMatrix& a, ClassicalPilot variant);

/// Diagonal B_ii / 4 with
///   B = ||f^2(|A|)|| + ||g^2(|A*|)|| + sqrt((..-..)^2 + 4 ||f(|A|) g(|A*|)||^2).
PilotMatrix pilot_fg(const BlockMatrix& a, const FunctionPair& fp);

/// Diagonal (D_ii - d_ii) / 4. canonical D uses ||f^2(|A|) g^2(|A*|)||^2 under
/// the radical, as_printed its square root.
PilotMatrix pilot_fg_refined(const BlockMatrix& a, const FunctionPair& fp, Variant variant);

/// w of the clamped pilot through numerical_radius.
double pilot_radius(const PilotMatrix& pilot);

/// lambda_max((P + P^T)/2), the bound the pilot argument gives directly for
/// the raw (possibly negative) pilot. Equals w(P) when P >= 0 entrywise.
double raw_pilot_bound(const RealMatrix& p);

/// w(block_embed(A)).
double block_radius(const BlockMatrix& a);

/// [w(A), bound] for a pilot; the bound is raw_pilot_bound(pilot.raw) so that
/// clamping never hides a violation. Details include w(pilot).
BoundEvaluation pilot_evaluation(const BlockMatrix& a, const PilotMatrix& pilot,
                                 std::string bound_id, Variant variant);

/// Two-slot closed form for diagonal values b1, b2 (in "B" units, i.e. the
/// pilot diagonal is b/4) and off-diagonal sum s = ||A12|| + ||A21||.
/// as_printed: (b1 + b2 + sqrt((b1 - b2)^2 + s^2)) / 4
/// canonical:  (b1 + b2 + sqrt((b1 - b2)^2 + 16 s^2)) / 8, the exact w of
///             [[b1/4, ||A12||], [||A21||, b2/4]].
double closed_form_2x2(double b1, double b2, double s, Variant variant);

BoundEvaluation pilot_power_2x2(const BlockMatrix& a, double alpha, Variant variant);
BoundEvaluation explicit_2x2_refined(const BlockMatrix& a, double alpha, Variant variant);

/// alpha = 1/2 case. as_printed uses the displayed
///   R_ii = ||A_ii^2|| / 2 - || ||A_ii| - ||A_ii|| |^2 + ||A_ii*| - ||A_ii|| |^2 || / 4
/// in the printed closed form; canonical is explicit_2x2_refined(a, 1/2).
/// Details carry w of the hou_du and banidomi_kittaneh pilots for comparison.
BoundEvaluation explicit_2x2_half(const BlockMatrix& a, Variant variant);

struct PositivityReport {
  double min_eigenvalue = 0.0;
  bool block_psd = true;
  bool sampled_violation = false;
  double worst_gap = 0.0;  // min over samples of <Ax,x><By,y> - |<Cx,y>|^2
  int samples = 0;
  ComplexVector witness_x;
  ComplexVector witness_y;
};

/// [[A, C*], [C, B]] >= 0 vs |<Cx,y>|^2 <= <Ax,x><By,y>. Probes basis pairs
/// first, then `samples` seeded random unit pairs.
PositivityReport block_positivity_equiv(const ComplexMatrix& a, const ComplexMatrix& b,
                                        const ComplexMatrix& c, int samples, std::uint64_t seed);

}  // namespace opradius
