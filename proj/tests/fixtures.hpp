#pragma once

#include <cmath>

#include "opradius/linalg.hpp"

namespace fx {

using opradius::Complex;
using opradius::ComplexMatrix;
using opradius::ComplexVector;

inline ComplexMatrix J2() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

inline ComplexMatrix D14() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 4.0;
  return m;
}

inline ComplexMatrix H2() {
  ComplexMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  return m;
}

inline ComplexMatrix N3() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = Complex(0.0, 1.0);
  m(2, 2) = -2.0;
  return m;
}

inline ComplexMatrix I(int n) { return ComplexMatrix::Identity(n, n); }
inline ComplexMatrix Z(int n) { return ComplexMatrix::Zero(n, n); }

inline ComplexVector e(int n, int k) { return ComplexVector::Unit(n, k); }

inline ComplexVector u() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return v / std::sqrt(2.0);
}

inline ComplexMatrix scalar(Complex z) {
  ComplexMatrix m(1, 1);
  m(0, 0) = z;
  return m;
}

inline double maxabs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace fx

// Runs `expr` and checks it throws opradius::Error of the given kind.
#define CHECK_ERROR_KIND(expr, errkind)                                    \
  do {                                                                     \
    bool fx_thrown_ = false;                                               \
    try {                                                                  \
      (void)(expr);                                                        \
    } catch (const opradius::Error& fx_e_) {                               \
      fx_thrown_ = true;                                                   \
      CHECK_MESSAGE(fx_e_.kind() == (errkind), fx_e_.what());              \
    }                                                                      \
    CHECK_MESSAGE(fx_thrown_, "expected an opradius::Error from " #expr);  \
  } while (0)
