#include "opradius/radius_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "opradius/radii.hpp"

namespace opradius {

namespace {

void require_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "A and B differ in size");
}

void require_psd(const ComplexMatrix& a) {
  // psd_apply raises NotPSD/NotHermitian; the result is discarded.
  psd_apply(a, [](double t) { return t; });
}

// min_k |mu_k|^q over the eigenvalues of the Hermitian matrix h.
double min_abs_eigen_power(const ComplexMatrix& h, double q) {
  const RealVector mu = hermitian_eigen(h).eigenvalues;
  double best = std::pow(std::abs(mu(0)), q);
  for (Eigen::Index k = 1; k < mu.size(); ++k) best = std::min(best, std::pow(std::abs(mu(k)), q));
  return best;
}

// (||S|| + ||S^2||^{1/2}) / 2
double product_constant(const ComplexMatrix& s) {
  return 0.5 * (norm(s) + std::sqrt(norm(s * s)));
}

struct Bracket {
  double raw = 0.0;
  double factor = 0.0;  // clamped bracket to the power 1/2p
  bool clamped = false;
};

Bracket make_bracket(double raw, double p) {
  Bracket b;
  b.raw = raw;
  b.clamped = raw < 0.0;
  b.factor = std::pow(std::max(0.0, raw), 1.0 / (2.0 * p));
  return b;
}

// ||h^p||^2 - l(|h^2 - ||h||^2 I|^p) with h = f(|T|): here `h2` is f^2(|T|)
// and `hp` is f^p(|T|).
double fg_bracket(const ComplexMatrix& h2, const ComplexMatrix& hp, double p) {
  const Eigen::Index n = h2.rows();
  const double top = std::pow(norm(hp), 2.0);
  const double shift = norm(h2);
  return top - min_abs_eigen_power(h2 - shift * ComplexMatrix::Identity(n, n), p);
}

void require_product_inputs(const ComplexMatrix& t, const ComplexMatrix& s, double p) {
  require_pair(t, s);
  if (!(p >= 2.0)) throw Error(ErrorKind::ExponentTooSmall, "exponent must be >= 2", p);
  check_commutation(t, s);
}

void add_bracket_details(BoundEvaluation& e, const Bracket& bf, const Bracket& bg) {
  e.details.emplace_back("bracket_f", bf.raw);
  e.details.emplace_back("bracket_g", bg.raw);
  if (bf.clamped) e.flags.emplace_back("clamped_bracket_f");
  if (bg.clamped) e.flags.emplace_back("clamped_bracket_g");
}

}  // namespace

BoundEvaluation bound_sandwich(const ComplexMatrix& t) {
  require_square(t, "T");
  const double n = norm(t);
  TermChain c;
  c.add("||T||/2", 0.5 * n).then(Relation::le, "w(T)", w(t)).then(Relation::le, "||T||", n);
  return make_evaluation("eq1.1", std::move(c), Variant::canonical);
}

BoundEvaluation bound_kittaneh_2003(const ComplexMatrix& t) {
  require_square(t, "T");
  TermChain c;
  c.add("w(T)", w(t)).then(Relation::le, "(||T|| + ||T^2||^{1/2})/2",
                           0.5 * (norm(t) + std::sqrt(norm(t * t))));
  return make_evaluation("eq1.2", std::move(c), Variant::canonical);
}

BoundEvaluation bound_kittaneh_2005(const ComplexMatrix& t) {
  require_square(t, "T");
  const double m = norm(t.adjoint() * t + t * t.adjoint());
  const double wt = w(t);
  TermChain c;
  c.add("||T*T + TT*||/4", 0.25 * m)
      .then(Relation::le, "w^2(T)", wt * wt)
      .then(Relation::le, "||T*T + TT*||/2", 0.5 * m);
  return make_evaluation("eq1.3", std::move(c), Variant::canonical);
}

BoundEvaluation bound_yamazaki(const ComplexMatrix& t) {
  require_square(t, "T");
  const double n = norm(t);
  const double wa = w(aluthge(t));
  TermChain c;
  c.add("w(T)", w(t))
      .then(Relation::le, "(||T|| + w(aluthge T))/2", 0.5 * (n + wa))
      .then(Relation::le, "(||T|| + ||T^2||^{1/2})/2", 0.5 * (n + std::sqrt(norm(t * t))));
  BoundEvaluation e = make_evaluation("eq1.4", std::move(c), Variant::canonical);
  e.details.emplace_back("w_aluthge", wa);
  return e;
}

BoundEvaluation bound_dragomir(const ComplexMatrix& t, Variant variant) {
  require_square(t, "T");
  const double n = norm(t);
  const double wt = w(t);
  const double w2 = w(t * t);
  TermChain c;
  if (variant == Variant::canonical) {
    c.add("w^2(T)", wt * wt).then(Relation::le, "(||T||^2 + w(T^2))/2", 0.5 * (n * n + w2));
  } else {
    c.add("w^2(T)", wt * wt).then(Relation::le, "(||T|| + w(T^2))/2", 0.5 * (n + w2));
  }
  return make_evaluation("eq1.5", std::move(c), variant);
}

BoundEvaluation spectral_radius_product_bound(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_pair(a, b);
  const ComplexMatrix ab = a * b;
  const ComplexMatrix ba = b * a;
  const double nab = norm(ab);
  const double nba = norm(ba);
  const double cross = std::min(norm(a) * norm(b * a * b), norm(b) * norm(a * b * a));
  const double rhs = 0.25 * (nab + nba + std::sqrt((nab - nba) * (nab - nba) + 4.0 * cross));
  TermChain c;
  c.add("r(AB)", spectral_radius(ab).value).then(Relation::le, "fact3 bound", rhs);
  return make_evaluation("fact3", std::move(c), Variant::canonical);
}

BoundEvaluation norm_sum_estimate(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_pair(a, b);
  require_psd(a);
  require_psd(b);
  const double na = norm(a);
  const double nb = norm(b);
  const double cross = norm(psd_power(a, 0.5) * psd_power(b, 0.5));
  TermChain c;
  c.add("||A + B||", norm(a + b))
      .then(Relation::le, "fact1 bound",
            0.5 * (na + nb + std::sqrt((na - nb) * (na - nb) + 4.0 * cross * cross)));
  return make_evaluation("fact1", std::move(c), Variant::canonical);
}

BoundEvaluation norm_halfpower_estimate(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_pair(a, b);
  require_psd(a);
  require_psd(b);
  TermChain c;
  c.add("||A^{1/2} B^{1/2}||", norm(psd_power(a, 0.5) * psd_power(b, 0.5)))
      .then(Relation::le, "||AB||^{1/2}", std::sqrt(norm(a * b)));
  return make_evaluation("fact2", std::move(c), Variant::canonical);
}

BoundEvaluation product_bound_fg(const ComplexMatrix& t, const ComplexMatrix& s,
                                 const FunctionPair& fp, double p) {
  require_product_inputs(t, s, p);
  const ComplexMatrix abs_t = abs_operator(t);
  const ComplexMatrix abs_ts = abs_operator(t.adjoint());
  const Bracket bf = make_bracket(fg_bracket(fp.f_power(abs_t, 2.0), fp.f_power(abs_t, p), p), p);
  const Bracket bg =
      make_bracket(fg_bracket(fp.g_power(abs_ts, 2.0), fp.g_power(abs_ts, p), p), p);
  const double cs = product_constant(s);
  const double rs = spectral_radius(s).value;

  TermChain c;
  c.add("w(TS)", w(t * s)).then(Relation::le, "(||S|| + ||S^2||^{1/2})/2 F_f F_g",
                                cs * bf.factor * bg.factor);
  BoundEvaluation e = make_evaluation("eq4.1", std::move(c), Variant::canonical);
  e.details.emplace_back("r_S", rs);
  e.details.emplace_back("r_S_bound", rs * bf.factor * bg.factor);
  add_bracket_details(e, bf, bg);
  return e;
}

BoundEvaluation product_bound_power(const ComplexMatrix& t, const ComplexMatrix& s, double alpha,
                                    double p, Variant variant) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::DomainError, "alpha must lie in [0, 1]", alpha);
  }
  require_product_inputs(t, s, p);
  const ComplexMatrix abs_t = abs_operator(t);
  const ComplexMatrix abs_ts = abs_operator(t.adjoint());
  const double rs = spectral_radius(s).value;
  const double beta = 1.0 - alpha;
  const double tail = rs * std::pow(norm(psd_power(abs_t, p * alpha)), 1.0 / p) *
                      std::pow(norm(psd_power(abs_ts, p * beta)), 1.0 / p);

  Bracket bf;
  Bracket bg;
  if (variant == Variant::canonical) {
    const FunctionPair fp = FunctionPair::power_split(alpha);
    bf = make_bracket(fg_bracket(fp.f_power(abs_t, 2.0), fp.f_power(abs_t, p), p), p);
    bg = make_bracket(fg_bracket(fp.g_power(abs_ts, 2.0), fp.g_power(abs_ts, p), p), p);
  } else {
    // ||X^{p a}||^2 - l^2(|X^{2a} - ||X^a|| I|^{p/2})
    const auto printed = [p](const ComplexMatrix& x, double a) {
      const Eigen::Index n = x.rows();
      const double shift = norm(psd_power(x, a));
      const double top = std::pow(norm(psd_power(x, p * a)), 2.0);
      return top - min_abs_eigen_power(psd_power(x, 2.0 * a) - shift * ComplexMatrix::Identity(n, n),
                                       p);
    };
    bf = make_bracket(printed(abs_t, alpha), p);
    bg = make_bracket(printed(abs_ts, beta), p);
  }

  TermChain c;
  c.add("w(TS)", w(t * s))
      .then(Relation::le, "r(S) F_f F_g", rs * bf.factor * bg.factor)
      .then(Relation::le, "r(S) || |T|^{pa} ||^{1/p} || |T*|^{p(1-a)} ||^{1/p}", tail);
  BoundEvaluation e = make_evaluation("eq4.2", std::move(c), variant);
  e.details.emplace_back("r_S", rs);
  add_bracket_details(e, bf, bg);
  return e;
}

BoundEvaluation product_bound_power_half(const ComplexMatrix& t, const ComplexMatrix& s,
                                         Variant variant) {
  if (variant == Variant::canonical) {
    BoundEvaluation e = product_bound_power(t, s, 0.5, 2.0, variant);
    e.bound_id = "eq4.3";
    e.chain.source = "eq4.3";
    return e;
  }
  require_product_inputs(t, s, 2.0);
  const double nt = norm(t);
  const double rs = spectral_radius(s).value;
  // ||T||^2 - l^2(| |X| - || |X|^{1/2} || I |)
  const auto printed = [nt](const ComplexMatrix& x) {
    const Eigen::Index n = x.rows();
    const double shift = norm(psd_power(x, 0.5));
    return nt * nt - min_abs_eigen_power(x - shift * ComplexMatrix::Identity(n, n), 2.0);
  };
  const Bracket bf = make_bracket(printed(abs_operator(t)), 2.0);
  const Bracket bg = make_bracket(printed(abs_operator(t.adjoint())), 2.0);

  TermChain c;
  c.add("w(TS)", w(t * s))
      .then(Relation::le, "r(S) F_f F_g", rs * bf.factor * bg.factor)
      .then(Relation::le, "r(S) ||T||", rs * nt);
  BoundEvaluation e = make_evaluation("eq4.3", std::move(c), variant);
  e.details.emplace_back("r_S", rs);
  add_bracket_details(e, bf, bg);
  return e;
}

BoundEvaluation product_bound_fg_sum(const ComplexMatrix& t, const ComplexMatrix& s,
                                     const FunctionPair& fp, double p) {
  require_product_inputs(t, s, p);
  const ComplexMatrix abs_t = abs_operator(t);
  const ComplexMatrix abs_ts = abs_operator(t.adjoint());
  const ComplexMatrix fp_t = fp.f_power(abs_t, p);
  const ComplexMatrix gp_t = fp.g_power(abs_ts, p);
  const ComplexMatrix f2p = fp.f_power(abs_t, 2.0 * p);
  const ComplexMatrix g2p = fp.g_power(abs_ts, 2.0 * p);
  const double cs = product_constant(s);
  const double nf = norm(f2p);
  const double ng = norm(g2p);
  const double cross = norm(fp_t * gp_t);
  const double head = std::pow(norm(fp_t), 2.0) + std::pow(norm(gp_t), 2.0);

  TermChain c;
  c.add("w(TS)", w(t * s))
      .then(Relation::le, "c/2 ||f^{2p} + g^{2p}||", 0.5 * cs * norm(f2p + g2p))
      .then(Relation::le, "c/4 {...}",
            0.25 * cs * (head + std::sqrt((nf - ng) * (nf - ng) + 4.0 * cross * cross)));
  BoundEvaluation e = make_evaluation("eq4.x-sum", std::move(c), Variant::canonical);
  e.details.emplace_back("as_printed_rhs",
                         0.25 * cs * (head + std::sqrt((nf - ng) * (nf - ng) + 4.0 * cross)));
  e.details.emplace_back("r_S", spectral_radius(s).value);
  return e;
}

}  // namespace opradius
