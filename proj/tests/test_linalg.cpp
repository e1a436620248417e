#include "doctest.h"
#include "fixtures.hpp"
#include "opradius/ensembles.hpp"
#include "opradius/linalg.hpp"
#include "opradius/radii.hpp"

using namespace opradius;

TEST_CASE("adjoint") {
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(1, 0) = 1.0;
  CHECK(adjoint(fx::J2()) == expect);
  CHECK(adjoint(fx::H2()) == fx::H2());
  CHECK(adjoint(adjoint(fx::N3())) == fx::N3());
}

TEST_CASE("hermitian_eigen fixtures") {
  const auto h = hermitian_eigen(fx::H2());
  CHECK(h.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-14));
  const auto i3 = hermitian_eigen(fx::I(3));
  for (int k = 0; k < 3; ++k) CHECK(i3.eigenvalues(k) == doctest::Approx(1.0));
  const auto aj = hermitian_eigen(abs_operator(fx::J2()));
  CHECK(std::abs(aj.eigenvalues(0)) < 1e-14);
  CHECK(aj.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input with the asymmetry") {
  try {
    hermitian_eigen(fx::J2());
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
    CHECK(e.measure() == doctest::Approx(1.0));
  }
}

TEST_CASE("hermitian_eigen reconstruction on random Hermitian matrices") {
  EnsembleSpec spec{EnsembleKind::hermitian, 8, 1.0, 11, 1};
  for (std::uint64_t i = 0; i < 500; ++i) {
    const ComplexMatrix h = sample(spec, i).t;
    const auto e = hermitian_eigen(h);
    const ComplexMatrix& u = e.eigenvectors;
    const double scale = std::max(1.0, spectral_norm(h));
    REQUIRE(spectral_norm(u * e.eigenvalues.cast<Complex>().asDiagonal() * u.adjoint() - h) <=
            1e-10 * scale);
    REQUIRE(spectral_norm(u.adjoint() * u - fx::I(h.rows())) <= 1e-10);
    for (Eigen::Index k = 1; k < e.eigenvalues.size(); ++k) {
      REQUIRE(e.eigenvalues(k - 1) <= e.eigenvalues(k));
    }
  }
}

TEST_CASE("svd fixtures") {
  const auto j = svd(fx::J2());
  CHECK(j.singulars(0) == doctest::Approx(1.0));
  CHECK(std::abs(j.singulars(1)) < 1e-15);
  const auto d = svd(fx::D14());
  CHECK(d.singulars(0) == doctest::Approx(4.0));
  CHECK(d.singulars(1) == doctest::Approx(1.0));
  EnsembleSpec spec{EnsembleKind::unitary, 4, 1.0, 5};
  const ComplexMatrix u = sample(spec, 0).t;
  const auto cu = svd(Complex(0.0, -2.5) * u);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(cu.singulars(k) == doctest::Approx(2.5));
}

TEST_CASE("svd of a wide matrix keeps min(rows, cols) singulars") {
  ComplexMatrix w(2, 3);
  w << 1.0, 0.0, 0.0, 0.0, 2.0, 0.0;
  const auto f = svd(w);
  CHECK(f.singulars.size() == 2);
  CHECK(f.singulars(0) == doctest::Approx(2.0));
  CHECK(spectral_norm(f.left * f.singulars.cast<Complex>().asDiagonal() *
                      f.right.leftCols(2).adjoint() - w) < 1e-12);
}

TEST_CASE("polar_decompose") {
  const auto pj = polar_decompose(fx::J2());
  ComplexMatrix d01 = ComplexMatrix::Zero(2, 2);
  d01(1, 1) = 1.0;
  CHECK(fx::maxabs(pj.modulus - d01) < 1e-14);
  CHECK(spectral_norm(pj.unitary.adjoint() * pj.unitary - fx::I(2)) < 1e-12);
  CHECK(fx::maxabs(pj.unitary * pj.modulus - fx::J2()) < 1e-14);

  const auto ph = polar_decompose(fx::H2());
  CHECK(fx::maxabs(ph.unitary - fx::I(2)) < 1e-12);

  EnsembleSpec spec{EnsembleKind::unitary, 3, 1.0, 9};
  const ComplexMatrix u = sample(spec, 3).t;
  CHECK(fx::maxabs(polar_decompose(u).modulus - fx::I(3)) < 1e-12);
}

TEST_CASE("polar reconstruction and modulus properties on random input") {
  EnsembleSpec spec{EnsembleKind::ginibre, 6, 2.0, 21, 1};
  for (std::uint64_t i = 0; i < 500; ++i) {
    const ComplexMatrix t = sample(spec, i).t;
    const auto p = polar_decompose(t);
    const double n = spectral_norm(t);
    REQUIRE(spectral_norm(p.unitary * p.modulus - t) <= 1e-9 * std::max(1.0, n));
    REQUIRE(spectral_norm(p.unitary.adjoint() * p.unitary - fx::I(t.rows())) <= 1e-10);
    REQUIRE(hermitian_eigen(p.modulus).eigenvalues(0) >= -1e-10);
    const ComplexMatrix a = abs_operator(t);
    REQUIRE(spectral_norm(a * a - t.adjoint() * t) <= 1e-9 * std::max(1.0, n * n));
  }
}

TEST_CASE("psd_apply") {
  ComplexMatrix d12 = ComplexMatrix::Zero(2, 2);
  d12(0, 0) = 1.0;
  d12(1, 1) = 2.0;
  CHECK(fx::maxabs(psd_apply(fx::D14(), [](double t) { return std::sqrt(t); }) - d12) < 1e-14);
  CHECK(fx::maxabs(psd_apply(fx::D14(), [](double t) { return std::pow(t, 0.0); }) - fx::I(2)) <
        1e-14);
  ComplexMatrix d01 = ComplexMatrix::Zero(2, 2);
  d01(1, 1) = 1.0;
  CHECK(fx::maxabs(psd_power(abs_operator(fx::J2()), 0.3) - d01) < 1e-14);
}

TEST_CASE("psd_apply errors") {
  ComplexMatrix neg = fx::I(2);
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(psd_power(neg, 0.5), Error);
  try {
    psd_power(neg, 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPSD);
  }
  try {
    psd_power(abs_operator(fx::J2()), -1.0);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
}

TEST_CASE("psd_apply identities on random PSD matrices") {
  EnsembleSpec spec{EnsembleKind::psd, 6, 3.0, 31, 1};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const ComplexMatrix h = sample(spec, i).t;
    REQUIRE(spectral_norm(psd_apply(h, [](double t) { return t; }) - h) <= 1e-10 * std::max(1.0, spectral_norm(h)));
    for (double a : {0.25, 0.5, 0.75}) {
      REQUIRE(spectral_norm(psd_power(h, a) * psd_power(h, 1.0 - a) - h) <= 1e-9 * std::max(1.0, spectral_norm(h)));
    }
  }
}

TEST_CASE("abs_operator fixtures") {
  ComplexMatrix d01 = ComplexMatrix::Zero(2, 2);
  d01(1, 1) = 1.0;
  CHECK(fx::maxabs(abs_operator(fx::J2()) - d01) < 1e-14);
  CHECK(fx::maxabs(abs_operator(fx::H2()) - fx::H2()) < 1e-13);
  CHECK(fx::maxabs(abs_operator(-fx::D14()) - fx::D14()) < 1e-13);
}

TEST_CASE("aluthge fixtures") {
  CHECK(fx::maxabs(aluthge(fx::J2())) < 1e-14);
  CHECK(fx::maxabs(aluthge(fx::H2()) - fx::H2()) < 1e-12);
  CHECK(fx::maxabs(aluthge(fx::N3()) - fx::N3()) < 1e-12);
}

TEST_CASE("block_embed") {
  BlockMatrix scalar({{fx::scalar(0.0), fx::scalar(1.0)}, {fx::scalar(0.0), fx::scalar(0.0)}});
  CHECK(block_embed(scalar) == fx::J2());
  BlockMatrix diag({{fx::J2(), fx::Z(2)}, {fx::Z(2), fx::J2()}});
  const ComplexMatrix e = block_embed(diag);
  CHECK(e.rows() == 4);
  CHECK(e.cols() == 4);
  CHECK(e(0, 1) == Complex(1.0));
  CHECK(e(2, 3) == Complex(1.0));
  CHECK(fx::maxabs(e.topRightCorner(2, 2)) == 0.0);
}

TEST_CASE("block_embed with mismatched slot dimensions throws") {
  try {
    BlockMatrix bad({{fx::J2(), fx::Z(3)}, {fx::Z(2), fx::J2()}});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("weak unitary invariance of w on embedded blocks") {
  EnsembleSpec blocks{EnsembleKind::block, 3, 1.0, 41};
  EnsembleSpec unitary{EnsembleKind::unitary, 1, 1.0, 43};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const ComplexMatrix a = block_embed(*sample(blocks, i).blocks);
    unitary.dim = static_cast<int>(a.rows());
    const ComplexMatrix u = sample(unitary, i).t;
    REQUIRE(std::abs(w(u.adjoint() * a * u) - w(a)) <= 1e-8);
  }
}
