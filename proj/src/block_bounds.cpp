#include "opradius/block_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opradius/philox.hpp"
#include "opradius/radii.hpp"

namespace opradius {

namespace {

void require_pilot_grid(const BlockMatrix& a) {
  if (!a.square_grid()) throw Error(ErrorKind::DimensionMismatch, "pilot bounds need a square grid");
  for (int i = 0; i < a.grid_rows(); ++i) {
    if (a.row_dims()[i] != a.col_dims()[i]) {
      throw Error(ErrorKind::DimensionMismatch, "diagonal blocks must be square", i);
    }
  }
}

void require_2x2(const BlockMatrix& a) {
  require_pilot_grid(a);
  if (a.grid_rows() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "closed form needs a 2x2 grid", a.grid_rows());
  }
}

// Off-diagonal ||A_ij||, diagonal filled by `diag`.
template <class Diag>
PilotMatrix build_pilot(const BlockMatrix& a, std::string variant, Diag diag) {
  require_pilot_grid(a);
  const int n = a.grid_rows();
  PilotMatrix p;
  p.variant = std::move(variant);
  p.raw = RealMatrix::Zero(n, n);
  p.diagonal_detail.resize(n);
  p.clamped.assign(n, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        p.raw(i, i) = diag(a.block(i, i), p.diagonal_detail[i]);
      } else {
        p.raw(i, j) = norm(a.block(i, j));
      }
    }
  }
  p.entries = p.raw;
  for (int i = 0; i < n; ++i) {
    if (p.raw(i, i) < 0.0) {
      p.entries(i, i) = 0.0;
      p.clamped[i] = true;
    }
  }
  return p;
}

// B of the f,g pilot.
double fg_diagonal(const ComplexMatrix& aii, const FunctionPair& fp, Detail& detail) {
  const ComplexMatrix abs_a = abs_operator(aii);
  const ComplexMatrix abs_as = abs_operator(aii.adjoint());
  const double nf = norm(fp.f_power(abs_a, 2.0));
  const double ng = norm(fp.g_power(abs_as, 2.0));
  const double cross = norm(fp.f_power(abs_a, 1.0) * fp.g_power(abs_as, 1.0));
  const double b = nf + ng + std::sqrt((nf - ng) * (nf - ng) + 4.0 * cross * cross);
  detail.emplace_back("B", b);
  return b;
}

// (D, d) of the refined pilot.
std::pair<double, double> refined_diagonal(const ComplexMatrix& aii, const FunctionPair& fp,
                                           Variant variant, Detail& detail) {
  const ComplexMatrix abs_a = abs_operator(aii);
  const ComplexMatrix abs_as = abs_operator(aii.adjoint());
  const ComplexMatrix f2 = fp.f_power(abs_a, 2.0);
  const ComplexMatrix g2 = fp.g_power(abs_as, 2.0);
  const double nf4 = norm(fp.f_power(abs_a, 4.0));
  const double ng4 = norm(fp.g_power(abs_as, 4.0));
  const double cross = norm(f2 * g2);
  const double cross_term = variant == Variant::canonical ? cross * cross : std::sqrt(cross);
  const double big_d = 0.5 * (nf4 + ng4 + std::sqrt((nf4 - ng4) * (nf4 - ng4) + 4.0 * cross_term));
  const Eigen::Index n = f2.rows();
  const ComplexMatrix df = f2 - norm(f2) * ComplexMatrix::Identity(n, n);
  const ComplexMatrix dg = g2 - norm(g2) * ComplexMatrix::Identity(n, n);
  const double small_d = norm(df * df + dg * dg);
  detail.emplace_back("D", big_d);
  detail.emplace_back("d", small_d);
  return {big_d, small_d};
}

double offdiag_sum(const BlockMatrix& a) { return norm(a.block(0, 1)) + norm(a.block(1, 0)); }

BoundEvaluation closed_form_evaluation(const BlockMatrix& a, std::string id, double b1, double b2,
                                       Variant variant) {
  const double s = offdiag_sum(a);
  TermChain c;
  c.add("w(A)", block_radius(a))
      .then(Relation::le, std::string(to_string(variant)) + " closed form",
            closed_form_2x2(b1, b2, s, variant));
  BoundEvaluation e = make_evaluation(std::move(id), std::move(c), variant);
  e.details.emplace_back("offdiag_sum", s);
  return e;
}

}  // namespace

bool PilotMatrix::any_clamped() const {
  return std::find(clamped.begin(), clamped.end(), true) != clamped.end();
}

std::string_view to_string(ClassicalPilot v) {
  switch (v) {
    case ClassicalPilot::hou_du: return "hou_du";
    case ClassicalPilot::banidomi_kittaneh: return "banidomi_kittaneh";
    case ClassicalPilot::abuomar_kittaneh: return "abuomar_kittaneh";
  }
  return "?";
}

PilotMatrix pilot_classical(const BlockMatrix& a, ClassicalPilot variant) {
  return build_pilot(a, std::string(to_string(variant)),
                     [variant](const ComplexMatrix& aii, Detail& detail) {
                       double v = 0.0;
                       switch (variant) {
                         case ClassicalPilot::hou_du: v = norm(aii); break;
                         case ClassicalPilot::banidomi_kittaneh:
                           v = 0.5 * (norm(aii) + std::sqrt(norm(aii * aii)));
                           break;
                         case ClassicalPilot::abuomar_kittaneh: v = w(aii); break;
                       }
                       detail.emplace_back("t_ii", v);
                       return v;
                     });
}

PilotMatrix pilot_fg(const BlockMatrix& a, const FunctionPair& fp) {
  return build_pilot(a, "fg", [&fp](const ComplexMatrix& aii, Detail& detail) {
    return 0.25 * fg_diagonal(aii, fp, detail);
  });
}

PilotMatrix pilot_fg_refined(const BlockMatrix& a, const FunctionPair& fp, Variant variant) {
  return build_pilot(a, std::string("fg_refined/") + std::string(to_string(variant)),
                     [&fp, variant](const ComplexMatrix& aii, Detail& detail) {
                       const auto [big_d, small_d] = refined_diagonal(aii, fp, variant, detail);
                       return 0.25 * (big_d - small_d);
                     });
}

double pilot_radius(const PilotMatrix& pilot) {
  const ComplexMatrix p = pilot.entries.cast<Complex>();
  return numerical_radius(p, kRadiusTolerance * std::max(1.0, spectral_norm(p))).value;
}

double raw_pilot_bound(const RealMatrix& p) {
  const RealMatrix sym = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double block_radius(const BlockMatrix& a) { return w(block_embed(a)); }

BoundEvaluation pilot_evaluation(const BlockMatrix& a, const PilotMatrix& pilot,
                                 std::string bound_id, Variant variant) {
  TermChain c;
  c.add("w(A)", block_radius(a)).then(Relation::le, "pilot bound", raw_pilot_bound(pilot.raw));
  BoundEvaluation e = make_evaluation(std::move(bound_id), std::move(c), variant);
  e.details.emplace_back("w_pilot", pilot_radius(pilot));
  for (std::size_t i = 0; i < pilot.diagonal_detail.size(); ++i) {
    e.details.emplace_back("pilot_" + std::to_string(i + 1) + std::to_string(i + 1),
                           pilot.raw(i, i));
    for (const auto& [k, v] : pilot.diagonal_detail[i]) {
      e.details.emplace_back(k + "_" + std::to_string(i + 1) + std::to_string(i + 1), v);
    }
    if (pilot.clamped[i]) e.flags.push_back("clamped_diagonal_" + std::to_string(i + 1));
  }
  return e;
}

double closed_form_2x2(double b1, double b2, double s, Variant variant) {
  if (variant == Variant::as_printed) {
    return 0.25 * (b1 + b2 + std::sqrt((b1 - b2) * (b1 - b2) + s * s));
  }
  return 0.125 * (b1 + b2 + std::sqrt((b1 - b2) * (b1 - b2) + 16.0 * s * s));
}

BoundEvaluation pilot_power_2x2(const BlockMatrix& a, double alpha, Variant variant) {
  require_2x2(a);
  const FunctionPair fp = FunctionPair::power_split(alpha);
  Detail d1, d2;
  const double b1 = fg_diagonal(a.block(0, 0), fp, d1);
  const double b2 = fg_diagonal(a.block(1, 1), fp, d2);
  BoundEvaluation e = closed_form_evaluation(a, "eq4.6", b1, b2, variant);
  e.details.emplace_back("B_11", b1);
  e.details.emplace_back("B_22", b2);
  return e;
}

BoundEvaluation explicit_2x2_refined(const BlockMatrix& a, double alpha, Variant variant) {
  require_2x2(a);
  const FunctionPair fp = FunctionPair::power_split(alpha);
  Detail d1, d2;
  // D~ squares the cross term in both variants.
  const auto [big1, small1] = refined_diagonal(a.block(0, 0), fp, Variant::canonical, d1);
  const auto [big2, small2] = refined_diagonal(a.block(1, 1), fp, Variant::canonical, d2);
  BoundEvaluation e =
      closed_form_evaluation(a, "cor7", big1 - small1, big2 - small2, variant);
  e.details.emplace_back("D_11", big1);
  e.details.emplace_back("d_11", small1);
  e.details.emplace_back("D_22", big2);
  e.details.emplace_back("d_22", small2);
  return e;
}

BoundEvaluation explicit_2x2_half(const BlockMatrix& a, Variant variant) {
  require_2x2(a);
  BoundEvaluation e;
  if (variant == Variant::canonical) {
    e = explicit_2x2_refined(a, 0.5, Variant::canonical);
    e.bound_id = "cor8";
    e.chain.source = "cor8";
  } else {
    const auto r = [](const ComplexMatrix& aii) {
      const ComplexMatrix abs_a = abs_operator(aii);
      const ComplexMatrix abs_as = abs_operator(aii.adjoint());
      const Eigen::Index n = aii.rows();
      const ComplexMatrix id = ComplexMatrix::Identity(n, n);
      const double na = norm(aii);
      const ComplexMatrix x = abs_a - na * id;
      const ComplexMatrix y = abs_as - na * id;
      return 0.5 * norm(aii * aii) - 0.25 * norm(x * x + y * y);
    };
    const double r1 = r(a.block(0, 0));
    const double r2 = r(a.block(1, 1));
    e = closed_form_evaluation(a, "cor8", r1, r2, Variant::as_printed);
    e.details.emplace_back("R_11", r1);
    e.details.emplace_back("R_22", r2);
  }
  e.details.emplace_back("w_pilot_hou_du", pilot_radius(pilot_classical(a, ClassicalPilot::hou_du)));
  e.details.emplace_back("w_pilot_banidomi_kittaneh",
                         pilot_radius(pilot_classical(a, ClassicalPilot::banidomi_kittaneh)));
  return e;
}

PositivityReport block_positivity_equiv(const ComplexMatrix& a, const ComplexMatrix& b,
                                        const ComplexMatrix& c, int samples, std::uint64_t seed) {
  require_square(a, "A");
  require_square(b, "B");
  if (c.rows() != b.rows() || c.cols() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "C must map the space of A into that of B");
  }
  if (samples < 0) throw Error(ErrorKind::DomainError, "samples must be >= 0", samples);
  // NotPSD check on both diagonal operators.
  psd_apply(a, [](double t) { return t; });
  psd_apply(b, [](double t) { return t; });

  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  ComplexMatrix m(na + nb, na + nb);
  m << a, c.adjoint(), c, b;
  PositivityReport rep;
  rep.min_eigenvalue = hermitian_eigen(m).eigenvalues(0);
  const double scale = std::max({1.0, norm(a), norm(b), norm(c)});
  rep.block_psd = rep.min_eigenvalue >= -1e-10 * scale;
  rep.worst_gap = std::numeric_limits<double>::infinity();

  const auto probe = [&](const ComplexVector& x, const ComplexVector& y) {
    const double gap = std::max(0.0, hermitian_form(a, x)) * std::max(0.0, hermitian_form(b, y)) -
                       std::norm(y.dot(c * x));
    ++rep.samples;
    if (gap < rep.worst_gap) {
      rep.worst_gap = gap;
      rep.witness_x = x;
      rep.witness_y = y;
    }
  };
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      probe(ComplexVector::Unit(na, i), ComplexVector::Unit(nb, j));
    }
  }
  for (int k = 0; k < samples; ++k) {
    rng::Stream sx(seed, static_cast<std::uint64_t>(k), 0);
    rng::Stream sy(seed, static_cast<std::uint64_t>(k), 1);
    ComplexVector x(na), y(nb);
    for (Eigen::Index i = 0; i < na; ++i) x(i) = sx.complex_normal();
    for (Eigen::Index i = 0; i < nb; ++i) y(i) = sy.complex_normal();
    probe(x / x.norm(), y / y.norm());
  }
  rep.sampled_violation = rep.worst_gap < -1e-10 * scale * scale;
  return rep;
}

}  // namespace opradius
