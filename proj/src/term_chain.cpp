#include "opradius/term_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opradius/error.hpp"

namespace opradius {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::eq: return "=";
  }
  return "?";
}

Relation relation_from_string(std::string_view s) {
  if (s == "<=") return Relation::le;
  if (s == ">=") return Relation::ge;
  if (s == "=") return Relation::eq;
  throw Error(ErrorKind::ParseError, "unknown relation '" + std::string(s) + "'");
}

TermChain& TermChain::add(std::string label, double value) {
  labels.push_back(std::move(label));
  values.push_back(value);
  return *this;
}

TermChain& TermChain::then(Relation r, std::string label, double value) {
  relations.push_back(r);
  return add(std::move(label), value);
}

bool TermChain::consistent() const {
  return labels.size() == values.size() && !values.empty() &&
         relations.size() + 1 == values.size();
}

std::vector<double> TermChain::slacks() const {
  std::vector<double> out;
  out.reserve(relations.size());
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    switch (relations[i]) {
      case Relation::le: out.push_back(b - a); break;
      case Relation::ge: out.push_back(a - b); break;
      case Relation::eq: out.push_back(-std::abs(a - b)); break;
    }
  }
  return out;
}

double TermChain::worst_slack() const {
  const auto s = slacks();
  if (s.empty()) return 0.0;
  double worst = s.front();
  for (double v : s) {
    // NaN anywhere poisons the chain.
    if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
    worst = std::min(worst, v);
  }
  return worst;
}

double TermChain::scale() const {
  double m = 1.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool TermChain::satisfied(double tol) const {
  for (double s : slacks()) {
    if (!(s >= -tol)) return false;
  }
  return true;
}

std::string_view to_string(Variant v) {
  return v == Variant::canonical ? "canonical" : "as_printed";
}

Variant variant_from_string(std::string_view s) {
  if (s == "canonical") return Variant::canonical;
  if (s == "as_printed") return Variant::as_printed;
  throw Error(ErrorKind::ParseError, "unknown variant '" + std::string(s) + "'");
}

double BoundEvaluation::detail(std::string_view name) const {
  for (const auto& [k, v] : details) {
    if (k == name) return v;
  }
  throw Error(ErrorKind::UnknownParameter, "no detail named '" + std::string(name) + "'");
}

bool BoundEvaluation::has_flag(std::string_view name) const {
  return std::find(flags.begin(), flags.end(), name) != flags.end();
}

BoundEvaluation make_evaluation(std::string bound_id, TermChain chain, Variant variant,
                                double rel_tol) {
  BoundEvaluation out;
  out.bound_id = std::move(bound_id);
  if (chain.source.empty()) chain.source = out.bound_id;
  out.lhs = chain.values.front();
  out.rhs_terms.assign(chain.values.begin() + 1, chain.values.end());
  out.slack = out.rhs_terms.empty() ? 0.0 : out.rhs_terms.front() - out.lhs;
  out.holds = chain.satisfied_relative(rel_tol);
  out.variant = variant;
  out.chain = std::move(chain);
  return out;
}

}  // namespace opradius
