#include "opradius/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opradius::kernels {

namespace {

constexpr std::ptrdiff_t kParallelThreshold = 32;

bool in_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return true;
#endif
}

ThetaSample evaluate(const RotationPencil& pencil, double theta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(pencil.at(theta));
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  const ComplexVector x = solver.eigenvectors().col(top);
  return {theta, solver.eigenvalues()(top), x.dot(*pencil.source * x)};
}

double support_only(const RotationPencil& pencil, double theta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(pencil.at(theta), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

}  // namespace

RotationPencil::RotationPencil(const ComplexMatrix& t)
    : re(0.5 * (t + t.adjoint())),
      im(0.5 * (Complex(0, 1) * t - Complex(0, 1) * t.adjoint())),
      source(&t) {}

ComplexMatrix RotationPencil::at(double theta) const {
  return std::cos(theta) * re + std::sin(theta) * im;
}

std::vector<ThetaSample> theta_scan_serial(const ComplexMatrix& t,
                                           std::span<const double> thetas) {
  const RotationPencil pencil(t);
  std::vector<ThetaSample> out(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) out[k] = evaluate(pencil, thetas[k]);
  return out;
}

std::vector<ThetaSample> theta_scan_parallel(const ComplexMatrix& t,
                                             std::span<const double> thetas) {
  const RotationPencil pencil(t);
  const auto count = static_cast<std::ptrdiff_t>(thetas.size());
  std::vector<ThetaSample> out(thetas.size());
  const bool go_wide = count >= kParallelThreshold && !in_parallel_region();
#pragma omp parallel for schedule(static) if (go_wide)
  for (std::ptrdiff_t k = 0; k < count; ++k) out[k] = evaluate(pencil, thetas[k]);
  return out;
}

std::vector<ThetaSample> theta_scan(const ComplexMatrix& t, std::span<const double> thetas,
                                    Execution exec) {
  return exec == Execution::parallel ? theta_scan_parallel(t, thetas)
                                     : theta_scan_serial(t, thetas);
}

double support_grid_max(const ComplexMatrix& t, std::size_t points, Execution exec) {
  const RotationPencil pencil(t);
  const auto count = static_cast<std::ptrdiff_t>(points);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(points);
  double best = -std::numeric_limits<double>::infinity();
  if (exec == Execution::serial) {
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      best = std::max(best, support_only(pencil, step * static_cast<double>(k)));
    }
    return best;
  }
  const bool go_wide = count >= kParallelThreshold && !in_parallel_region();
#pragma omp parallel for schedule(static) reduction(max : best) if (go_wide)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    best = std::max(best, support_only(pencil, step * static_cast<double>(k)));
  }
  return best;
}

}  // namespace opradius::kernels
