#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "opradius/error.hpp"

namespace opradius {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // unitary, columns
};

struct SVDFactors {
  ComplexMatrix left;
  RealVector singulars;  // descending, min(rows, cols) of them
  ComplexMatrix right;
};

struct PolarFactors {
  ComplexMatrix unitary;
  ComplexMatrix modulus;  // |T|
};

// Grid of blocks; row slot i has height row_dims[i], column slot j width
// col_dims[j].
class BlockMatrix {
 public:
  BlockMatrix(std::vector<std::vector<ComplexMatrix>> blocks);

  int grid_rows() const { return static_cast<int>(blocks_.size()); }
  int grid_cols() const { return static_cast<int>(blocks_.front().size()); }
  const ComplexMatrix& block(int i, int j) const { return blocks_[i][j]; }
  const std::vector<int>& row_dims() const { return row_dims_; }
  const std::vector<int>& col_dims() const { return col_dims_; }
  bool square_grid() const { return grid_rows() == grid_cols(); }

 private:
  std::vector<std::vector<ComplexMatrix>> blocks_;
  std::vector<int> row_dims_;
  std::vector<int> col_dims_;
};

using ScalarFunction = std::function<double(double)>;

/// Relative clamp threshold for spectra of PSD inputs.
inline constexpr double kPsdTolerance = 1e-8;

void require_finite(const ComplexMatrix& m, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

ComplexMatrix adjoint(const ComplexMatrix& t);
ComplexMatrix identity(int n);

/// Spectral norm. Cheap singular-values-only route used for scales.
double spectral_norm(const ComplexMatrix& t);

HermitianEigen hermitian_eigen(const ComplexMatrix& h);
SVDFactors svd(const ComplexMatrix& t);
PolarFactors polar_decompose(const ComplexMatrix& t);

/// U phi(Lambda) U* for PSD h. Eigenvalues in [-1e-8 max(1,|h|), 0) are
/// clamped to zero first.
ComplexMatrix psd_apply(const ComplexMatrix& h, const ScalarFunction& phi);
ComplexMatrix psd_power(const ComplexMatrix& h, double exponent);

/// |T| = (T*T)^{1/2}
ComplexMatrix abs_operator(const ComplexMatrix& t);
ComplexMatrix aluthge(const ComplexMatrix& t);

ComplexMatrix block_embed(const BlockMatrix& a);

/// <Ax, x> for Hermitian A, imaginary part checked against 1e-10 scale.
double hermitian_form(const ComplexMatrix& a, const ComplexVector& x);

}  // namespace opradius
