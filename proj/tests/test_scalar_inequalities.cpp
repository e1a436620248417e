#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "opradius/ensembles.hpp"
#include "opradius/radii.hpp"
#include "opradius/scalar_inequalities.hpp"

using namespace opradius;
using doctest::Approx;

namespace {

UnitVector uv() { return UnitVector(fx::u()); }
UnitVector e1() { return UnitVector::basis(2, 0); }
UnitVector e2() { return UnitVector::basis(2, 1); }

UnitVector random_unit(std::uint64_t seed, std::uint64_t i, std::uint32_t lane, int n) {
  return UnitVector(sample_unit_vector(seed, i, lane, n));
}

void require_holds(const TermChain& c) {
  REQUIRE(c.consistent());
  REQUIRE_MESSAGE(c.worst_slack() >= -1e-9 * c.scale(), c.source);
}

}  // namespace

TEST_CASE("TermChain basics") {
  TermChain c;
  c.add("a", 1.0).then(Relation::le, "b", 2.0).then(Relation::ge, "c", 2.5);
  CHECK(c.consistent());
  CHECK(c.slacks()[0] == Approx(1.0));
  CHECK(c.slacks()[1] == Approx(-0.5));
  CHECK(c.worst_slack() == Approx(-0.5));
  CHECK(c.scale() == Approx(2.5));
  CHECK_FALSE(c.satisfied(0.1));
  CHECK(c.satisfied(0.5));
  TermChain eq;
  eq.add("x", 1.0).then(Relation::eq, "y", 1.0 + 1e-12);
  CHECK(eq.satisfied(1e-10));
}

TEST_CASE("UnitVector validation") {
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK_ERROR_KIND(UnitVector(v), ErrorKind::DomainError);
  CHECK(UnitVector::normalized(v).components().norm() == Approx(1.0));
  CHECK_ERROR_KIND(UnitVector::normalized(ComplexVector::Zero(2)), ErrorKind::DomainError);
}

TEST_CASE("FunctionPair validation") {
  CHECK_ERROR_KIND(FunctionPair::power_split(1.5), ErrorKind::DomainError);
  auto good = FunctionPair::custom([](double t) { return 2.0 * std::sqrt(t); },
                                   [](double t) { return 0.5 * std::sqrt(t); }, "scaled");
  std::vector<double> pts{0.0, 0.5, 3.0, 100.0};
  good.validate(pts);
  auto bad = FunctionPair::custom([](double t) { return t; }, [](double t) { return t; }, "bad");
  CHECK_ERROR_KIND(bad.validate(pts), ErrorKind::DomainError);
  auto negative = FunctionPair::custom([](double t) { return -std::sqrt(t); },
                                       [](double t) { return -std::sqrt(t); }, "neg");
  CHECK_ERROR_KIND(negative.validate(pts), ErrorKind::DomainError);
  // Validation happens on the spectrum the pair is applied to.
  CHECK_ERROR_KIND(bad.f_power(fx::D14(), 1.0), ErrorKind::DomainError);
}

TEST_CASE("alpha = 0 reduces the mixed Schwarz chain to <x,x><|T*|^2 y,y>") {
  EnsembleSpec spec{EnsembleKind::ginibre, 4, 1.0, 3};
  const ComplexMatrix t = sample(spec, 0).t;
  const auto x = random_unit(3, 0, 1000, 4);
  const auto y = random_unit(3, 0, 1001, 4);
  const auto c = mixed_schwarz_chain(t, x, y, 0.0);
  const ComplexVector& yy = y.components();
  const double direct = (yy.adjoint() * t * t.adjoint() * yy)(0).real();
  CHECK(c.values[1] == Approx(direct).epsilon(1e-10));
  const auto c1 = mixed_schwarz_chain(t, x, y, 1.0);
  const ComplexVector& xx = x.components();
  CHECK(c1.values[1] == Approx((xx.adjoint() * t.adjoint() * t * xx)(0).real()).epsilon(1e-10));
}

TEST_CASE("mccarty_chain examples") {
  const auto c2 = mccarty_chain(fx::D14(), uv(), 2.0);
  CHECK(c2.values[0] == Approx(6.25));
  CHECK(c2.values[1] == Approx(6.25));
  CHECK(c2.values[2] == Approx(8.5));
  CHECK(std::abs(c2.slacks()[0]) <= 1e-12);
  CHECK(c2.relations[0] == Relation::le);

  const auto c3 = mccarty_chain(fx::D14(), uv(), 3.0);
  CHECK(c3.values[0] == Approx(15.625));
  CHECK(c3.values[1] == Approx(29.125));
  CHECK(c3.values[2] == Approx(32.5));
  CHECK(c3.relations[0] == Relation::le);
  CHECK(c3.relations[1] == Relation::le);

  const auto c1 = mccarty_chain(fx::D14(), uv(), 1.0);
  CHECK(c1.values[0] == Approx(2.5));
  CHECK(c1.values[1] == Approx(1.0));
  CHECK(c1.relations[0] == Relation::ge);
  CHECK(c1.relations[1] == Relation::le);
  CHECK(c1.satisfied(1e-12));
  CHECK(refined_power_form(fx::D14(), fx::u(), 1.0) == Approx(1.0));
}

TEST_CASE("mccarty_chain errors") {
  ComplexMatrix neg = fx::I(2);
  neg(0, 0) = -1.0;
  CHECK_ERROR_KIND(mccarty_chain(neg, uv(), 2.0), ErrorKind::NotPSD);
  CHECK_ERROR_KIND(mccarty_chain(fx::D14(), uv(), 0.0), ErrorKind::NonpositiveExponent);
  CHECK_ERROR_KIND(mccarty_chain(fx::D14(), uv(), -1.0), ErrorKind::NonpositiveExponent);
  CHECK_ERROR_KIND(mccarty_chain(fx::I(3), uv(), 2.0), ErrorKind::DimensionMismatch);
}

TEST_CASE("mccarty remark chain for 0 < p <= 1") {
  const auto c = mccarty_remark_chain(fx::D14(), uv(), 0.5);
  CHECK(c.relations[0] == Relation::ge);
  CHECK(c.relations[1] == Relation::ge);
  CHECK(c.values[0] == Approx(std::sqrt(2.5)));
  CHECK(c.values[1] == Approx(1.5));
  CHECK(c.satisfied(1e-12));
  CHECK_ERROR_KIND(mccarty_remark_chain(fx::D14(), uv(), 1.5), ErrorKind::DomainError);
}

TEST_CASE("schwarz_refined_chain examples") {
  const auto a = schwarz_refined_chain(fx::D14(), uv(), uv(), 2.0);
  CHECK(a.values[0] == Approx(39.0625));
  CHECK(a.values[1] == Approx(39.0625));
  CHECK(a.values[2] == Approx(72.25));

  ComplexVector x(3), y(3);
  x << 1.0, 0.0, 0.0;
  y << 0.0, Complex(0.0, 1.0), 0.0;
  for (double p : {2.0, 3.5}) {
    const auto b = schwarz_refined_chain(fx::I(3), UnitVector(x), UnitVector(y), p);
    CHECK(b.values[0] == Approx(0.0));
    CHECK(b.values[1] == Approx(1.0));
    CHECK(b.values[2] == Approx(1.0));
  }

  // M(e1) = 1 - 0 and M(e2) = 16 - 0, so both refined and plain products are 16.
  const auto c = schwarz_refined_chain(fx::D14(), e1(), e2(), 2.0);
  CHECK(c.values[0] == Approx(0.0));
  CHECK(c.values[1] == Approx(16.0));
  CHECK(c.values[2] == Approx(16.0));
  CHECK(c.satisfied(1e-12));

  CHECK_ERROR_KIND(schwarz_refined_chain(fx::D14(), uv(), uv(), 1.5), ErrorKind::ExponentTooSmall);
}

TEST_CASE("mixed_schwarz_chain examples") {
  const auto a = mixed_schwarz_chain(fx::J2(), e2(), e1(), 0.5);
  CHECK(a.values[0] == Approx(1.0));
  CHECK(a.values[1] == Approx(1.0));

  const auto b = mixed_schwarz_chain(fx::H2(), uv(), uv(), 0.5);
  CHECK(b.values[0] == Approx(9.0));
  CHECK(b.values[1] == Approx(9.0));

  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = random_unit(5, i, 1000, 3);
    const auto y = random_unit(5, i, 1001, 3);
    require_holds(mixed_schwarz_chain(fx::N3(), x, y, 0.25));
  }
  CHECK_ERROR_KIND(mixed_schwarz_chain(fx::J2(), e1(), e2(), 1.5), ErrorKind::DomainError);
}

TEST_CASE("mixed_schwarz_refined_chain examples") {
  const auto a = mixed_schwarz_refined_chain(fx::J2(), e2(), e1(), 2.0);
  CHECK(a.values[0] == Approx(1.0));
  CHECK(a.values[1] == Approx(1.0));
  CHECK(a.values[2] == Approx(1.0));

  const auto b = mixed_schwarz_refined_chain(fx::H2(), uv(), uv(), 2.0);
  CHECK(b.values[0] == Approx(81.0));
  CHECK(b.values[1] == Approx(81.0));
  CHECK(b.values[2] == Approx(81.0));

  EnsembleSpec spec{EnsembleKind::ginibre, 5, 1.0, 7, 1};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const ComplexMatrix t = sample(spec, i).t;
    const int n = static_cast<int>(t.rows());
    require_holds(mixed_schwarz_refined_chain(t, random_unit(7, i, 1000, n),
                                              random_unit(7, i, 1001, n), 4.0));
  }
  CHECK_ERROR_KIND(mixed_schwarz_refined_chain(fx::J2(), e2(), e1(), 1.0),
                   ErrorKind::ExponentTooSmall);
}

TEST_CASE("kittaneh_fg_chain examples") {
  const auto fp = FunctionPair::power_split(0.5);
  const auto a = kittaneh_fg_chain(fx::J2(), fx::I(2), e2(), e1(), fp);
  CHECK(a.values[0] == Approx(1.0));
  CHECK(a.values[1] == Approx(1.0));

  EnsembleSpec spec{EnsembleKind::ginibre, 3, 1.0, 9};
  const ComplexMatrix t = sample(spec, 0).t;
  const auto z = kittaneh_fg_chain(t, fx::Z(3), random_unit(9, 0, 1000, 3),
                                   random_unit(9, 0, 1001, 3), FunctionPair::power_split(0.3));
  CHECK(z.values[0] == Approx(0.0));
  CHECK(z.values[1] == Approx(0.0));

  const ComplexMatrix d14sq = fx::D14() * fx::D14();
  const auto c = kittaneh_fg_chain(fx::D14(), d14sq, uv(), uv(), FunctionPair::power_split(0.25));
  CHECK(c.satisfied(1e-12));
}

TEST_CASE("kittaneh_fg_chain commutation gate") {
  const auto fp = FunctionPair::power_split(0.5);
  // |D14| J2 = J2 but J2* |D14| = J2*, so the commutator has norm 1.
  try {
    kittaneh_fg_chain(fx::D14(), fx::J2(), e1(), e2(), fp);
    FAIL("expected CommutationViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CommutationViolated);
    CHECK(e.measure() == Approx(commutator_norm(fx::D14(), fx::J2())));
    CHECK(e.measure() > 0.0);
  }
  CHECK(check_commutation(fx::D14(), fx::D14()) <= 1e-12);
}

TEST_CASE("kittaneh_fg_refined_chain examples") {
  const auto fp = FunctionPair::power_split(0.5);
  const auto a = kittaneh_fg_refined_chain(fx::J2(), fx::I(2), e2(), e1(), fp, 2.0);
  CHECK(a.values[0] == Approx(1.0));
  CHECK(a.values[1] == Approx(1.0));
  CHECK(a.values[2] == Approx(1.0));

  EnsembleSpec spec{EnsembleKind::ginibre, 4, 1.0, 13};
  for (std::uint64_t i = 0; i < 50; ++i) {
    const ComplexMatrix t = sample(spec, i).t;
    const auto c = kittaneh_fg_refined_chain(t, fx::I(4), random_unit(13, i, 1000, 4),
                                             random_unit(13, i, 1001, 4), fp, 2.0);
    REQUIRE(c.slacks()[1] >= -1e-12 * c.scale());
  }

  EnsembleSpec pairs{EnsembleKind::commuting_pair, 4, 1.0, 15, 1};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Draw d = sample(pairs, i);
    const int n = static_cast<int>(d.t.rows());
    require_holds(kittaneh_fg_refined_chain(d.t, d.s, random_unit(15, i, 1000, n),
                                            random_unit(15, i, 1001, n),
                                            FunctionPair::power_split(0.3), 3.0));
  }
  CHECK_ERROR_KIND(kittaneh_fg_refined_chain(fx::J2(), fx::I(2), e2(), e1(), fp, 1.0),
                   ErrorKind::ExponentTooSmall);
}

TEST_CASE("p = 2 identity in mccarty_chain") {
  EnsembleSpec spec{EnsembleKind::psd, 6, 4.0, 43, 1};
  for (std::uint64_t i = 0; i < 500; ++i) {
    const ComplexMatrix a = sample(spec, i).t;
    const auto c = mccarty_chain(a, random_unit(43, i, 1000, static_cast<int>(a.rows())), 2.0);
    REQUIRE(std::abs(c.values[0] - c.values[1]) <= 1e-10 * std::max(1.0, c.values[2]));
  }
}

TEST_CASE("every chain holds on 500 seeded trials") {
  EnsembleSpec psd{EnsembleKind::psd, 6, 2.0, 47, 1};
  EnsembleSpec gin{EnsembleKind::ginibre, 6, 1.0, 53, 1};
  EnsembleSpec pairs{EnsembleKind::commuting_pair, 5, 1.0, 59, 1};
  const auto fp = FunctionPair::power_split(0.35);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const ComplexMatrix a = sample(psd, i).t;
    const int n = static_cast<int>(a.rows());
    const auto x = random_unit(47, i, 1000, n);
    const auto y = random_unit(47, i, 1001, n);
    require_holds(mccarty_chain(a, x, 0.5 + 0.01 * static_cast<double>(i)));
    require_holds(mccarty_remark_chain(a, x, 0.7));
    require_holds(schwarz_refined_chain(a, x, y, 2.5));

    const ComplexMatrix t = sample(gin, i).t;
    const int m = static_cast<int>(t.rows());
    const auto xt = random_unit(53, i, 1000, m);
    const auto yt = random_unit(53, i, 1001, m);
    require_holds(mixed_schwarz_chain(t, xt, yt, 0.6));
    require_holds(mixed_schwarz_refined_chain(t, xt, yt, 2.0));

    const Draw d = sample(pairs, i);
    const int k = static_cast<int>(d.t.rows());
    const auto xp = random_unit(59, i, 1000, k);
    const auto yp = random_unit(59, i, 1001, k);
    require_holds(kittaneh_fg_chain(d.t, d.s, xp, yp, fp));
    require_holds(kittaneh_fg_refined_chain(d.t, d.s, xp, yp, fp, 2.0));
  }
}

TEST_CASE("mccarty_chain is scale covariant") {
  EnsembleSpec spec{EnsembleKind::psd, 4, 1.0, 61};
  for (std::uint64_t i = 0; i < 50; ++i) {
    const ComplexMatrix a = sample(spec, i).t;
    const auto x = random_unit(61, i, 1000, 4);
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
      const double c = 2.7;
      const auto base = mccarty_chain(a, x, p);
      const auto scaled = mccarty_chain(c * a, x, p);
      for (std::size_t k = 0; k < 3; ++k) {
        REQUIRE(std::abs(scaled.values[k] - std::pow(c, p) * base.values[k]) <=
                1e-9 * std::max(1.0, std::abs(scaled.values[k])));
      }
    }
  }
}
