#pragma once

#include "opradius/linalg.hpp"
#include "opradius/scalar_inequalities.hpp"
#include "opradius/term_chain.hpp"

namespace opradius {

/// ||T||/2 <= w(T) <= ||T||
BoundEvaluation bound_sandwich(const ComplexMatrix& t);

/// w(T) <= (||T|| + ||T^2||^{1/2}) / 2
BoundEvaluation bound_kittaneh_2003(const ComplexMatrix& t);

/// ||T*T + TT*|| / 4 <= w^2(T) <= ||T*T + TT*|| / 2
BoundEvaluation bound_kittaneh_2005(const ComplexMatrix& t);

/// w(T) <= (||T|| + w(aluthge(T))) / 2 <= (||T|| + ||T^2||^{1/2}) / 2
BoundEvaluation bound_yamazaki(const ComplexMatrix& t);

/// canonical: w^2(T) <= (||T||^2 + w(T^2)) / 2
/// as_printed: w^2(T) <= (||T|| + w(T^2)) / 2
BoundEvaluation bound_dragomir(const ComplexMatrix& t, Variant variant);

/// r(AB) <= (||AB|| + ||BA|| + sqrt((||AB|| - ||BA||)^2
///          + 4 min(||A|| ||BAB||, ||B|| ||ABA||))) / 4
BoundEvaluation spectral_radius_product_bound(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||A + B|| <= (||A|| + ||B|| + sqrt((||A|| - ||B||)^2 + 4 ||A^{1/2} B^{1/2}||^2)) / 2
BoundEvaluation norm_sum_estimate(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||A^{1/2} B^{1/2}|| <= ||AB||^{1/2}
BoundEvaluation norm_halfpower_estimate(const ComplexMatrix& a, const ComplexMatrix& b);

/// w(TS) <= (||S|| + ||S^2||^{1/2}) / 2 * F_f * F_g with
///   F_f = [ ||f^p(|T|)||^2 - l(|f^2(|T|) - ||f(|T|)||^2|^p) ]^{1/2p}
/// and F_g the same with g and |T*|. Negative brackets are clamped at 0 and
/// flagged. Details carry r(S) and the r(S) form of the bound.
BoundEvaluation product_bound_fg(const ComplexMatrix& t, const ComplexMatrix& s,
                                 const FunctionPair& fp, double p);

/// Power split f = t^alpha. canonical: the r(S) form of product_bound_fg
/// followed by r(S) ||f^p||^{1/p} ||g^p||^{1/p}. as_printed: the literal
/// display with l^2 and exponent p/2.
BoundEvaluation product_bound_power(const ComplexMatrix& t, const ComplexMatrix& s, double alpha,
                                    double p, Variant variant);

/// p = 2, alpha = 1/2 specialization; as_printed uses ||T||^2 and
/// l^2(| |T| - || |T|^{1/2} || |).
BoundEvaluation product_bound_power_half(const ComplexMatrix& t, const ComplexMatrix& s,
                                         Variant variant);

/// w(TS) <= c/2 ||f^{2p}(|T|) + g^{2p}(|T*|)|| <= c/4 {...} with
/// c = (||S|| + ||S^2||^{1/2}) / 2. The chain uses the squared cross term;
/// the unsquared alternative is recorded as a detail.
BoundEvaluation product_bound_fg_sum(const ComplexMatrix& t, const ComplexMatrix& s,
                                     const FunctionPair& fp, double p);

}  // namespace opradius
