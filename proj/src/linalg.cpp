#include "opradius/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opradius {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::NonpositiveExponent: return "NonpositiveExponent";
    case ErrorKind::ExponentTooSmall: return "ExponentTooSmall";
    case ErrorKind::CommutationViolated: return "CommutationViolated";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::UnknownBound: return "UnknownBound";
    case ErrorKind::UnknownParameter: return "UnknownParameter";
    case ErrorKind::HypothesisMismatch: return "HypothesisMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::CorruptPayload: return "CorruptPayload";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

BlockMatrix::BlockMatrix(std::vector<std::vector<ComplexMatrix>> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty() || blocks_.front().empty()) {
    throw Error(ErrorKind::DimensionMismatch, "empty block grid");
  }
  const std::size_t gc = blocks_.front().size();
  for (const auto& row : blocks_) {
    if (row.size() != gc) {
      throw Error(ErrorKind::DimensionMismatch, "ragged block grid");
    }
  }
  row_dims_.assign(blocks_.size(), 0);
  col_dims_.assign(gc, 0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = 0; j < gc; ++j) {
      const auto& b = blocks_[i][j];
      if (b.rows() < 1 || b.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, "empty block");
      }
      require_finite(b, "block");
      if (j == 0) {
        row_dims_[i] = static_cast<int>(b.rows());
      } else if (b.rows() != row_dims_[i]) {
        throw Error(ErrorKind::DimensionMismatch,
                    "blocks in row " + std::to_string(i) + " disagree on height");
      }
      if (i == 0) {
        col_dims_[j] = static_cast<int>(b.cols());
      } else if (b.cols() != col_dims_[j]) {
        throw Error(ErrorKind::DimensionMismatch,
                    "blocks in column " + std::to_string(j) + " disagree on width");
      }
    }
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::DomainError, std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square");
  }
}

ComplexMatrix adjoint(const ComplexMatrix& t) { return t.adjoint(); }

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

double spectral_norm(const ComplexMatrix& t) {
  if (t.size() == 0) return 0.0;
  if (t.rows() == 1 || t.cols() == 1) return t.norm();
  Eigen::JacobiSVD<ComplexMatrix> solver(t);
  return solver.singularValues()(0);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigen input");
  const ComplexMatrix skew = h - h.adjoint();
  const double skew_f = skew.norm();
  if (skew_f > 0.0) {
    // Frobenius bounds the spectral norm from above; only fall back to
    // exact norms when the cheap test is inconclusive.
    const double n = static_cast<double>(h.rows());
    if (skew_f > kPsdTolerance * std::max(1.0, h.norm() / std::sqrt(n))) {
      const double asym = spectral_norm(skew);
      if (asym > kPsdTolerance * std::max(1.0, spectral_norm(h))) {
        throw Error(ErrorKind::NotHermitian, "asymmetry norm too large", asym);
      }
    }
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SVDFactors svd(const ComplexMatrix& t) {
  if (t.size() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "svd of empty matrix");
  }
  Eigen::JacobiSVD<ComplexMatrix> solver(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SVDFactors out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  const Eigen::Index k = out.singulars.size();
  const ComplexMatrix recon = out.left.leftCols(k) * out.singulars.cast<Complex>().asDiagonal() *
                              out.right.leftCols(k).adjoint();
  const double residual = (recon - t).norm();
  const double scale = std::max(1.0, k > 0 ? out.singulars(0) : 0.0);
  if (!std::isfinite(residual) || residual > 1e-10 * scale) {
    throw Error(ErrorKind::ConvergenceFailure, "svd reconstruction residual too large",
                residual);
  }
  return out;
}

PolarFactors polar_decompose(const ComplexMatrix& t) {
  require_square(t, "polar_decompose input");
  const SVDFactors f = svd(t);
  const ComplexMatrix& w = f.left;
  const ComplexMatrix& v = f.right;
  PolarFactors out;
  out.unitary = w * v.adjoint();
  const ComplexMatrix mod = v * f.singulars.cast<Complex>().asDiagonal() * v.adjoint();
  out.modulus = 0.5 * (mod + mod.adjoint());
  return out;
}

ComplexMatrix psd_apply(const ComplexMatrix& h, const ScalarFunction& phi) {
  const HermitianEigen e = hermitian_eigen(h);
  const Eigen::Index n = e.eigenvalues.size();
  const double scale = std::max({1.0, std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(n - 1))});
  if (e.eigenvalues(0) < -kPsdTolerance * scale) {
    throw Error(ErrorKind::NotPSD, "matrix has a negative eigenvalue", e.eigenvalues(0));
  }
  RealVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = std::max(0.0, e.eigenvalues(i));
    mapped(i) = phi(lambda);
    if (!std::isfinite(mapped(i))) {
      throw Error(ErrorKind::DomainError, "function undefined on the spectrum", lambda);
    }
  }
  const ComplexMatrix out =
      e.eigenvectors * mapped.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

ComplexMatrix psd_power(const ComplexMatrix& h, double exponent) {
  // 0^0 = 1: the power family keeps t^0 as the constant one function.
  return psd_apply(h, [exponent](double t) { return std::pow(t, exponent); });
}

ComplexMatrix abs_operator(const ComplexMatrix& t) { return polar_decompose(t).modulus; }

ComplexMatrix aluthge(const ComplexMatrix& t) {
  const PolarFactors p = polar_decompose(t);
  const ComplexMatrix root = psd_power(p.modulus, 0.5);
  return root * p.unitary * root;
}

ComplexMatrix block_embed(const BlockMatrix& a) {
  int rows = 0;
  int cols = 0;
  for (int d : a.row_dims()) rows += d;
  for (int d : a.col_dims()) cols += d;
  ComplexMatrix out(rows, cols);
  int r0 = 0;
  for (int i = 0; i < a.grid_rows(); ++i) {
    int c0 = 0;
    for (int j = 0; j < a.grid_cols(); ++j) {
      out.block(r0, c0, a.row_dims()[i], a.col_dims()[j]) = a.block(i, j);
      c0 += a.col_dims()[j];
    }
    r0 += a.row_dims()[i];
  }
  return out;
}

double hermitian_form(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match operator");
  }
  const Complex v = x.dot(a * x);  // x* A x
  const double scale = std::max(1.0, a.norm() * x.squaredNorm());
  if (std::abs(v.imag()) > 1e-10 * scale) {
    throw Error(ErrorKind::NotHermitian, "quadratic form has imaginary part", v.imag());
  }
  return v.real();
}

}  // namespace opradius
