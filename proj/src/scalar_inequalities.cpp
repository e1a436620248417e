#include "opradius/scalar_inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "opradius/radii.hpp"

namespace opradius {

namespace {

void require_vector(const ComplexMatrix& a, const UnitVector& x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match operator");
  }
}

void require_exponent_at_least_two(double p) {
  if (!(p >= 2.0)) throw Error(ErrorKind::ExponentTooSmall, "exponent must be >= 2", p);
}

// <Ax,x> for PSD A, clamped at 0 against round-off.
double psd_form(const ComplexMatrix& a, const ComplexVector& x) {
  return std::max(0.0, hermitian_form(a, x));
}

// <|A - c I|^p x, x>, from the spectrum of the shifted Hermitian matrix.
double deviation_form(const ComplexMatrix& a, const ComplexVector& x, double c, double p) {
  const Eigen::Index n = a.rows();
  const HermitianEigen e = hermitian_eigen(a - c * ComplexMatrix::Identity(n, n));
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double weight = std::norm(e.eigenvectors.col(k).dot(x));
    acc += std::pow(std::abs(e.eigenvalues(k)), p) * weight;
  }
  return acc;
}

double root(double v, double k) { return std::pow(std::max(0.0, v), 1.0 / k); }

}  // namespace

UnitVector::UnitVector(ComplexVector v) : v_(std::move(v)) {
  if (v_.size() == 0 || !v_.allFinite() || std::abs(v_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::DomainError, "vector is not a unit vector", v_.norm());
  }
}

UnitVector UnitVector::normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::DomainError, "cannot normalize a zero or non-finite vector");
  }
  return UnitVector(v / n);
}

UnitVector UnitVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
  }
  ComplexVector e = ComplexVector::Zero(dim);
  e(index) = 1.0;
  return UnitVector(e);
}

FunctionPair::FunctionPair(Kind kind, double alpha, ScalarFunction f, ScalarFunction g,
                           std::string name)
    : kind_(kind), alpha_(alpha), f_(std::move(f)), g_(std::move(g)), name_(std::move(name)) {}

FunctionPair FunctionPair::power_split(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::DomainError, "alpha must lie in [0, 1]", alpha);
  }
  return FunctionPair(
      Kind::power_split, alpha, [alpha](double t) { return std::pow(t, alpha); },
      [alpha](double t) { return std::pow(t, 1.0 - alpha); }, "power");
}

FunctionPair FunctionPair::custom(ScalarFunction f, ScalarFunction g, std::string name) {
  return FunctionPair(Kind::custom, 0.0, std::move(f), std::move(g), std::move(name));
}

void FunctionPair::validate(std::span<const double> points) const {
  for (double t : points) {
    const double ft = f_(t);
    const double gt = g_(t);
    if (!(ft >= 0.0) || !(gt >= 0.0)) {
      throw Error(ErrorKind::DomainError, "function pair takes a negative value", t);
    }
    if (std::abs(ft * gt - t) > 1e-8 * std::max(1.0, t)) {
      throw Error(ErrorKind::DomainError, "f(t) g(t) != t on the spectrum", t);
    }
  }
}

ComplexMatrix FunctionPair::apply_power(const ComplexMatrix& h, const ScalarFunction& fn,
                                        double k) const {
  if (kind_ == Kind::custom) {
    const HermitianEigen e = hermitian_eigen(h);
    std::vector<double> spectrum;
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
      spectrum.push_back(std::max(0.0, e.eigenvalues(i)));
    }
    validate(spectrum);
  }
  return psd_apply(h, [&fn, k](double t) { return std::pow(fn(t), k); });
}

ComplexMatrix FunctionPair::f_power(const ComplexMatrix& h, double k) const {
  return apply_power(h, f_, k);
}

ComplexMatrix FunctionPair::g_power(const ComplexMatrix& h, double k) const {
  return apply_power(h, g_, k);
}

double commutator_norm(const ComplexMatrix& t, const ComplexMatrix& s) {
  require_square(t, "T");
  require_square(s, "S");
  if (t.rows() != s.rows()) throw Error(ErrorKind::DimensionMismatch, "T and S differ in size");
  const ComplexMatrix abs_t = abs_operator(t);
  return spectral_norm(abs_t * s - s.adjoint() * abs_t);
}

double check_commutation(const ComplexMatrix& t, const ComplexMatrix& s) {
  const double c = commutator_norm(t, s);
  if (c > 1e-8 * std::max(1.0, spectral_norm(t) * spectral_norm(s))) {
    throw Error(ErrorKind::CommutationViolated, "|T| S != S* |T|", c);
  }
  return c;
}

double refined_power_form(const ComplexMatrix& a, const ComplexVector& x, double p) {
  const double c = psd_form(a, x);
  return psd_form(psd_power(a, p), x) - deviation_form(a, x, c, p);
}

TermChain mccarty_chain(const ComplexMatrix& a, const UnitVector& x, double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::NonpositiveExponent, "exponent must be positive", p);
  require_vector(a, x);
  const auto& v = x.components();
  const ComplexMatrix ap = psd_power(a, p);
  const double c = psd_form(a, v);
  const double top = psd_form(ap, v);
  const double middle = top - deviation_form(a, v, c, p);
  TermChain chain;
  chain.source = p >= 2.0 ? "eq3.1" : "eq3.2";
  chain.add("<Ax,x>^p", std::pow(c, p))
      .then(p >= 2.0 ? Relation::le : Relation::ge, "<A^p x,x> - <|A-<Ax,x>|^p x,x>", middle)
      .then(Relation::le, "<A^p x,x>", top);
  return chain;
}

TermChain mccarty_remark_chain(const ComplexMatrix& a, const UnitVector& x, double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::NonpositiveExponent, "exponent must be positive", p);
  if (p > 1.0) throw Error(ErrorKind::DomainError, "McCarthy chain needs 0 < p <= 1", p);
  require_vector(a, x);
  const auto& v = x.components();
  const double c = psd_form(a, v);
  const double top = psd_form(psd_power(a, p), v);
  TermChain chain;
  chain.source = "eq.mc";
  chain.add("<Ax,x>^p", std::pow(c, p))
      .then(Relation::ge, "<A^p x,x>", top)
      .then(Relation::ge, "<A^p x,x> - <|A-<Ax,x>|^p x,x>", top - deviation_form(a, v, c, p));
  return chain;
}

TermChain schwarz_refined_chain(const ComplexMatrix& a, const UnitVector& x, const UnitVector& y,
                                double p) {
  require_exponent_at_least_two(p);
  require_vector(a, x);
  require_vector(a, y);
  const auto& xv = x.components();
  const auto& yv = y.components();
  const ComplexMatrix ap = psd_power(a, p);
  const double cross = std::abs(yv.dot(a * xv));
  const double mx = psd_form(ap, xv) - deviation_form(a, xv, psd_form(a, xv), p);
  const double my = psd_form(ap, yv) - deviation_form(a, yv, psd_form(a, yv), p);
  TermChain chain;
  chain.source = "eq3.3";
  chain.add("|<Ax,y>|^{2p}", std::pow(cross, 2.0 * p))
      .then(Relation::le, "M_A(x) M_A(y)", mx * my)
      .then(Relation::le, "<A^p x,x><A^p y,y>", psd_form(ap, xv) * psd_form(ap, yv));
  return chain;
}

TermChain mixed_schwarz_chain(const ComplexMatrix& t, const UnitVector& x, const UnitVector& y,
                              double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::DomainError, "alpha must lie in [0, 1]", alpha);
  }
  require_square(t, "T");
  require_vector(t, x);
  require_vector(t, y);
  const auto& xv = x.components();
  const auto& yv = y.components();
  const ComplexMatrix abs_t = abs_operator(t);
  const ComplexMatrix abs_ts = abs_operator(t.adjoint());
  const double lhs = std::norm(yv.dot(t * xv));
  const double rhs = psd_form(psd_power(abs_t, 2.0 * alpha), xv) *
                     psd_form(psd_power(abs_ts, 2.0 * (1.0 - alpha)), yv);
  TermChain chain;
  chain.source = "eq2.2";
  chain.add("|<Tx,y>|^2", lhs)
      .then(Relation::le, "<|T|^{2a}x,x><|T*|^{2(1-a)}y,y>", rhs);
  return chain;
}

TermChain mixed_schwarz_refined_chain(const ComplexMatrix& t, const UnitVector& x,
                                      const UnitVector& y, double p) {
  require_exponent_at_least_two(p);
  require_square(t, "T");
  require_vector(t, x);
  require_vector(t, y);
  const auto& xv = x.components();
  const auto& yv = y.components();
  const ComplexMatrix abs_t = abs_operator(t);
  const ComplexMatrix abs_ts = abs_operator(t.adjoint());
  const double mx = refined_power_form(abs_t, xv, p);
  const double my = refined_power_form(abs_ts, yv, p);
  TermChain chain;
  chain.source = "eq3.4";
  chain.add("|<Tx,y>|^{2p}", std::pow(std::abs(yv.dot(t * xv)), 2.0 * p))
      .then(Relation::le, "M_|T|(x) M_|T*|(y)", mx * my)
      .then(Relation::le, "<|T|^p x,x><|T*|^p y,y>",
            psd_form(psd_power(abs_t, p), xv) * psd_form(psd_power(abs_ts, p), yv));
  return chain;
}

TermChain kittaneh_fg_chain(const ComplexMatrix& t, const ComplexMatrix& s, const UnitVector& x,
                            const UnitVector& y, const FunctionPair& fp) {
  check_commutation(t, s);
  require_vector(t, x);
  require_vector(t, y);
  const auto& xv = x.components();
  const auto& yv = y.components();
  const double r = spectral_radius(s).value;
  const ComplexMatrix f_abs = fp.f_power(abs_operator(t), 1.0);
  const ComplexMatrix g_abs = fp.g_power(abs_operator(t.adjoint()), 1.0);
  TermChain chain;
  chain.source = "kittaneh.ineq";
  chain.add("|<TSx,y>|", std::abs(yv.dot(t * s * xv)))
      .then(Relation::le, "r(S) ||f(|T|)x|| ||g(|T*|)y||",
            r * (f_abs * xv).norm() * (g_abs * yv).norm());
  return chain;
}

TermChain kittaneh_fg_refined_chain(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const UnitVector& x, const UnitVector& y,
                                    const FunctionPair& fp, double p) {
  require_exponent_at_least_two(p);
  check_commutation(t, s);
  require_vector(t, x);
  require_vector(t, y);
  const auto& xv = x.components();
  const auto& yv = y.components();
  const double r = spectral_radius(s).value;
  const ComplexMatrix f2 = fp.f_power(abs_operator(t), 2.0);
  const ComplexMatrix g2 = fp.g_power(abs_operator(t.adjoint()), 2.0);
  const double fx = refined_power_form(f2, xv, p);
  const double gy = refined_power_form(g2, yv, p);
  const double fx_top = psd_form(psd_power(f2, p), xv);
  const double gy_top = psd_form(psd_power(g2, p), yv);
  TermChain chain;
  chain.source = "eq3.6";
  chain.add("|<TSx,y>|", std::abs(yv.dot(t * s * xv)))
      .then(Relation::le, "r(S) F(x)^{1/2p} G(y)^{1/2p}",
            r * root(fx, 2.0 * p) * root(gy, 2.0 * p))
      .then(Relation::le, "r(S) <f^{2p}x,x>^{1/2p} <g^{2p}y,y>^{1/2p}",
            r * root(fx_top, 2.0 * p) * root(gy_top, 2.0 * p));
  return chain;
}

}  // namespace opradius
