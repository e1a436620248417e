#include "opradius/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace opradius {

namespace {

constexpr int kInitialSamples = 64;
constexpr std::size_t kMaxSamples = std::size_t{1} << 19;
constexpr double kMinGap = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Modulus of the intersection of the supporting lines
//   Re(e^{i a} z) = ga,  Re(e^{i (a + h)} z) = gb,  0 < h < pi.
double vertex_modulus(double ga, double gb, double h) {
  const double b = (ga * std::cos(h) - gb) / std::sin(h);
  return std::hypot(ga, b);
}

double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

RadiusResult numerical_radius(const ComplexMatrix& t, double tol, Execution exec) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidTolerance, "tolerance must be positive", tol);
  }
  require_square(t, "numerical_radius input");
  require_finite(t, "numerical_radius input");
  if (t.rows() == 1) {
    const Complex z = t(0, 0);
    return {std::abs(z), 0.0, wrap_angle(-std::arg(z))};
  }
  if (t.cwiseAbs().maxCoeff() == 0.0) return {0.0, 0.0, 0.0};

  std::vector<double> fresh(kInitialSamples);
  for (int k = 0; k < kInitialSamples; ++k) fresh[k] = kTwoPi * k / kInitialSamples;
  std::vector<ThetaSample> samples = kernels::theta_scan(t, fresh, exec);

  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double argmax = 0.0;
  std::vector<double> vertex;
  for (;;) {
    lower = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
      const double v = std::max(s.support, std::abs(s.point));
      if (v > lower) {
        lower = v;
        argmax = s.theta;
      }
    }
    const std::size_t n = samples.size();
    vertex.assign(n, 0.0);
    upper = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = samples[k];
      const auto& b = samples[(k + 1) % n];
      const double gap = (k + 1 == n) ? b.theta + kTwoPi - a.theta : b.theta - a.theta;
      vertex[k] = vertex_modulus(a.support, b.support, gap);
      upper = std::max(upper, vertex[k]);
    }
    if (upper - lower <= tol) break;

    fresh.clear();
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = samples[k];
      const auto& b = samples[(k + 1) % n];
      const double gap = (k + 1 == n) ? b.theta + kTwoPi - a.theta : b.theta - a.theta;
      if (vertex[k] > lower + tol && gap > kMinGap) {
        fresh.push_back(wrap_angle(a.theta + 0.5 * gap));
      }
    }
    if (fresh.empty() || n + fresh.size() > kMaxSamples) break;
    std::vector<ThetaSample> added = kernels::theta_scan(t, fresh, exec);
    samples.insert(samples.end(), added.begin(), added.end());
    std::sort(samples.begin(), samples.end(),
              [](const ThetaSample& x, const ThetaSample& y) { return x.theta < y.theta; });
  }
  return {lower, std::max(0.0, upper - lower), argmax};
}

RadiusResult spectral_radius(const ComplexMatrix& t) {
  require_square(t, "spectral_radius input");
  require_finite(t, "spectral_radius input");
  if (t.rows() == 1) return {std::abs(t(0, 0)), 0.0, std::nullopt};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "complex eigensolver did not converge");
  }
  const double r = solver.eigenvalues().cwiseAbs().maxCoeff();
  return {r, 1e-8 * std::max(1.0, spectral_norm(t)), std::nullopt};
}

RadiusResult operator_norm(const ComplexMatrix& t) {
  require_finite(t, "operator_norm input");
  const double s = spectral_norm(t);
  return {s, 1e-10 * std::max(1.0, s), std::nullopt};
}

RadiusResult min_modulus(const ComplexMatrix& t) {
  require_finite(t, "min_modulus input");
  if (t.size() == 0) throw Error(ErrorKind::DimensionMismatch, "empty matrix");
  if (t.cols() > t.rows()) return {0.0, 0.0, std::nullopt};
  if (t.rows() == 1 && t.cols() == 1) return {std::abs(t(0, 0)), 0.0, std::nullopt};
  Eigen::JacobiSVD<ComplexMatrix> solver(t);
  const auto& s = solver.singularValues();
  return {s(s.size() - 1), 1e-10 * std::max(1.0, s(0)), std::nullopt};
}

std::vector<Complex> numerical_range_boundary(const ComplexMatrix& t, int points,
                                              Execution exec) {
  if (points < 3) {
    throw Error(ErrorKind::DomainError, "need at least 3 boundary points", points);
  }
  require_square(t, "numerical_range_boundary input");
  require_finite(t, "numerical_range_boundary input");
  std::vector<double> thetas(points);
  for (int k = 0; k < points; ++k) thetas[k] = kTwoPi * k / points;
  const auto samples = kernels::theta_scan(t, thetas, exec);
  std::vector<Complex> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.point);
  return out;
}

double w(const ComplexMatrix& t) {
  return numerical_radius(t, kRadiusTolerance * std::max(1.0, spectral_norm(t))).value;
}

double norm(const ComplexMatrix& t) { return spectral_norm(t); }

}  // namespace opradius
