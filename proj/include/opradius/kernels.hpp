#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opradius/linalg.hpp"

namespace opradius {

enum class Execution { parallel, serial };

// One evaluation of the rotated Hermitian part
//   H(theta) = (e^{i theta} T + e^{-i theta} T*) / 2.
// `support` is lambda_max(H(theta)), the support function of W(T) in
// direction theta; `point` = <T x, x> for a unit top eigenvector x, a point
// of W(T) on its boundary.
struct ThetaSample {
  double theta = 0.0;
  double support = 0.0;
  Complex point{0.0, 0.0};
};

namespace kernels {

// Split of T into the Hermitian pair with H(theta) = cos(theta) re + sin(theta) im.
struct RotationPencil {
  explicit RotationPencil(const ComplexMatrix& t);
  ComplexMatrix at(double theta) const;

  ComplexMatrix re;
  ComplexMatrix im;
  const ComplexMatrix* source;
};

/// Evaluates every angle in `thetas`; output order matches input order.
/// The parallel and serial variants perform identical floating-point work
/// per sample, so their outputs are bit-identical.
std::vector<ThetaSample> theta_scan(const ComplexMatrix& t, std::span<const double> thetas,
                                    Execution exec);
std::vector<ThetaSample> theta_scan_serial(const ComplexMatrix& t,
                                           std::span<const double> thetas);
std::vector<ThetaSample> theta_scan_parallel(const ComplexMatrix& t,
                                             std::span<const double> thetas);

/// Brute-force max of lambda_max(H(theta)) over a uniform grid of `points`
/// angles. Used as a reference and for benchmarking.
double support_grid_max(const ComplexMatrix& t, std::size_t points, Execution exec);

}  // namespace kernels
}  // namespace opradius
