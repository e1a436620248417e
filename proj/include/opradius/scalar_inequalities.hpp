#pragma once

#include <span>
#include <string>

#include "opradius/linalg.hpp"
#include "opradius/term_chain.hpp"

namespace opradius {

class UnitVector {
 public:
  /// Throws DomainError unless | ||v|| - 1 | <= 1e-12.
  explicit UnitVector(ComplexVector v);
  static UnitVector normalized(const ComplexVector& v);
  static UnitVector basis(int dim, int index);

  const ComplexVector& components() const { return v_; }
  Eigen::Index size() const { return v_.size(); }

 private:
  ComplexVector v_;
};

/// A pair of nonnegative functions with f(t) g(t) = t on [0, inf).
class FunctionPair {
 public:
  enum class Kind { power_split, custom };

  /// f(t) = t^alpha, g(t) = t^(1 - alpha), alpha in [0, 1].
  static FunctionPair power_split(double alpha);
  static FunctionPair custom(ScalarFunction f, ScalarFunction g, std::string name);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::string& name() const { return name_; }

  double f(double t) const { return f_(t); }
  double g(double t) const { return g_(t); }

  /// Checks nonnegativity and |f g - t| <= 1e-8 max(1, t) at each point.
  void validate(std::span<const double> points) const;

  /// f^k(H) and g^k(H) for PSD H, validating the pair on the spectrum of H.
  ComplexMatrix f_power(const ComplexMatrix& h, double k) const;
  ComplexMatrix g_power(const ComplexMatrix& h, double k) const;

 private:
  FunctionPair(Kind kind, double alpha, ScalarFunction f, ScalarFunction g, std::string name);
  ComplexMatrix apply_power(const ComplexMatrix& h, const ScalarFunction& fn, double k) const;

  Kind kind_;
  double alpha_;
  ScalarFunction f_;
  ScalarFunction g_;
  std::string name_;
};

/// Throws CommutationViolated unless || |T| S - S* |T| || <= 1e-8 max(1, ||T|| ||S||).
/// Returns the commutator norm.
double check_commutation(const ComplexMatrix& t, const ComplexMatrix& s);
double commutator_norm(const ComplexMatrix& t, const ComplexMatrix& s);

/// <A^p x, x> - <|A - <Ax,x>|^p x, x> for PSD A.
double refined_power_form(const ComplexMatrix& a, const ComplexVector& x, double p);

/// <Ax,x>^p vs the refined middle vs <A^p x,x>: [<=, <=] for p >= 2,
/// [>=, <=] for 0 < p < 2.
TermChain mccarty_chain(const ComplexMatrix& a, const UnitVector& x, double p);

/// <Ax,x>^p >= <A^p x,x> >= refined middle, 0 < p <= 1.
TermChain mccarty_remark_chain(const ComplexMatrix& a, const UnitVector& x, double p);

/// |<Ax,y>|^{2p} <= M(x) M(y) <= <A^p x,x><A^p y,y>, p >= 2.
TermChain schwarz_refined_chain(const ComplexMatrix& a, const UnitVector& x,
                                const UnitVector& y, double p);

/// |<Tx,y>|^2 <= <|T|^{2 alpha} x,x> <|T*|^{2(1-alpha)} y,y>.
TermChain mixed_schwarz_chain(const ComplexMatrix& t, const UnitVector& x, const UnitVector& y,
                              double alpha);

/// Refinement of the mixed Schwarz chain with |T| and |T*| deviations, p >= 2.
TermChain mixed_schwarz_refined_chain(const ComplexMatrix& t, const UnitVector& x,
                                      const UnitVector& y, double p);

/// |<TSx,y>| <= r(S) ||f(|T|)x|| ||g(|T*|)y||, requires |T|S = S*|T|.
TermChain kittaneh_fg_chain(const ComplexMatrix& t, const ComplexMatrix& s, const UnitVector& x,
                            const UnitVector& y, const FunctionPair& fp);

/// 2p-th root refinement of the f,g chain, p >= 2.
TermChain kittaneh_fg_refined_chain(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const UnitVector& x, const UnitVector& y,
                                    const FunctionPair& fp, double p);

}  // namespace opradius
