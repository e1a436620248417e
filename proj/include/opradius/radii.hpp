#pragma once

#include <optional>
#include <vector>

#include "opradius/kernels.hpp"
#include "opradius/linalg.hpp"

namespace opradius {

struct RadiusResult {
  double value = 0.0;
  double certified_tolerance = 0.0;
  std::optional<double> maximizer_angle;  // numerical radius only
};

/// Numerical radius w(T) = max_theta lambda_max(H(theta)).
///
/// The scan keeps a sorted set of sampled angles. Each sample contributes a
/// point of W(T) (lower bound on w) and a supporting line of W(T); the
/// polygon cut out by consecutive supporting lines contains W(T), so its
/// largest vertex modulus is an upper bound. Intervals whose vertex exceeds
/// the current lower bound by more than `tol` are bisected until the
/// enclosure closes. The returned value is the lower bound and
/// `certified_tolerance` the enclosure width.
RadiusResult numerical_radius(const ComplexMatrix& t, double tol,
                              Execution exec = Execution::parallel);

RadiusResult spectral_radius(const ComplexMatrix& t);
RadiusResult operator_norm(const ComplexMatrix& t);

/// l(T) = inf ||Tx|| over unit x; the smallest singular value, and 0 when T
/// has more columns than rows.
RadiusResult min_modulus(const ComplexMatrix& t);

std::vector<Complex> numerical_range_boundary(const ComplexMatrix& t, int points,
                                              Execution exec = Execution::parallel);

/// Default certification target used by the bound evaluators.
inline constexpr double kRadiusTolerance = 1e-10;

/// w(T) at tolerance kRadiusTolerance * max(1, ||T||).
double w(const ComplexMatrix& t);
double norm(const ComplexMatrix& t);

}  // namespace opradius
