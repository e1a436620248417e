#include "opradius/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

#include "opradius/block_bounds.hpp"
#include "opradius/radius_bounds.hpp"
#include "opradius/scalar_inequalities.hpp"

namespace opradius {

namespace {

constexpr std::uint32_t kLaneX = 1000;
constexpr std::uint32_t kLaneY = 1001;

[[noreturn]] void mismatch(const std::string& what, double measure = 0.0) {
  throw Error(ErrorKind::HypothesisMismatch, what, measure);
}

double param_p(const BoundInfo& info, const CheckParams& params) {
  return params.p.value_or(info.default_p);
}

std::vector<Variant> expand(VariantSelection v, bool has_variants) {
  if (!has_variants || v == VariantSelection::canonical) return {Variant::canonical};
  if (v == VariantSelection::as_printed) return {Variant::as_printed};
  return {Variant::canonical, Variant::as_printed};
}

SlackStats stats_of(std::vector<double> v) {
  SlackStats s;
  if (v.empty()) return s;
  // NaN sorts last so that min/median stay meaningful; it is still counted
  // as a violation.
  std::sort(v.begin(), v.end(), [](double a, double b) {
    if (std::isnan(a)) return false;
    if (std::isnan(b)) return true;
    return a < b;
  });
  s.min = v.front();
  s.max = v.back();
  const std::size_t n = v.size();
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return s;
}

Json stats_to_json(const SlackStats& s) {
  return Json{{"min", s.min}, {"median", s.median}, {"max", s.max}};
}

bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_inputs(const TrialInputs& a, const TrialInputs& b) {
  if (!same_matrix(a.t, b.t) || !same_matrix(a.s, b.s)) return false;
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size() || a.x != b.x || a.y != b.y) {
    return false;
  }
  if (a.blocks.has_value() != b.blocks.has_value()) return false;
  if (a.blocks) return same_matrix(block_embed(*a.blocks), block_embed(*b.blocks));
  return true;
}

// Which quantity a bound's upper value refers to, for tightness comparison.
enum class Quantity { w_matrix, w_product, w_block, none };

Quantity quantity_of(const BoundInfo& info) {
  switch (info.shape) {
    case InputShape::matrix: return Quantity::w_matrix;
    case InputShape::commuting_pair: return Quantity::w_product;
    case InputShape::block:
    case InputShape::block_2x2: return Quantity::w_block;
    default: return Quantity::none;
  }
}

// The upper bound on w that an evaluation provides.
double upper_value(const BoundEvaluation& e) {
  if (e.bound_id == "eq1.1") return e.rhs_terms.at(1);
  if (e.bound_id == "eq1.3") return std::sqrt(e.rhs_terms.at(1));
  if (e.bound_id == "eq1.5") return std::sqrt(e.rhs_terms.at(0));
  return e.rhs_terms.at(0);
}

double bounded_value(const BoundEvaluation& e) {
  if (e.bound_id == "eq1.1") return e.rhs_terms.at(0);
  if (e.bound_id == "eq1.3" || e.bound_id == "eq1.5") {
    return std::sqrt(e.bound_id == "eq1.3" ? e.rhs_terms.at(0) : e.lhs);
  }
  return e.lhs;
}

template <class Fn>
void for_trials(int trials, int threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(trials);
  if (threads == 1) {
    for (int i = 0; i < trials; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int i = 0; i < trials; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  // Lowest failing index wins so that the surfaced error is deterministic.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

const std::vector<BoundInfo>& bound_registry() {
  static const std::vector<BoundInfo> registry = {
      {"eq1.1", InputShape::matrix, false, false, false, 2.0, "||T||/2 <= w(T) <= ||T||"},
      {"eq1.2", InputShape::matrix, false, false, false, 2.0, "w(T) <= (||T|| + ||T^2||^{1/2})/2"},
      {"eq1.3", InputShape::matrix, false, false, false, 2.0,
       "||T*T+TT*||/4 <= w^2(T) <= ||T*T+TT*||/2"},
      {"eq1.4", InputShape::matrix, false, false, false, 2.0, "Aluthge refinement"},
      {"eq1.5", InputShape::matrix, true, false, false, 2.0, "w^2(T) <= (||T||^2 + w(T^2))/2"},
      {"fact1", InputShape::psd_pair, false, false, false, 2.0, "norm of a PSD sum"},
      {"fact2", InputShape::psd_pair, false, false, false, 2.0, "||A^{1/2}B^{1/2}|| <= ||AB||^{1/2}"},
      {"fact3", InputShape::matrix_pair, false, false, false, 2.0, "spectral radius of a product"},
      {"eq2.2", InputShape::matrix_vectors, false, true, false, 2.0, "mixed Schwarz"},
      {"eq3.1", InputShape::psd_vectors, false, false, true, 2.0, "refined McCarthy, p >= 2"},
      {"eq3.2", InputShape::psd_vectors, false, false, true, 1.0, "refined McCarthy, 0 < p < 2"},
      {"eq.mc", InputShape::psd_vectors, false, false, true, 0.5, "McCarthy ordering, 0 < p <= 1"},
      {"eq3.3", InputShape::psd_vectors, false, false, true, 2.0, "refined Cauchy-Schwarz"},
      {"eq3.4", InputShape::matrix_vectors, false, false, true, 2.0, "refined mixed Schwarz"},
      {"kittaneh.ineq", InputShape::commuting_vectors, false, true, false, 2.0,
       "|<TSx,y>| <= r(S) ||f(|T|)x|| ||g(|T*|)y||"},
      {"eq3.6", InputShape::commuting_vectors, false, true, true, 2.0, "refined f,g inequality"},
      {"eq4.1", InputShape::commuting_pair, false, true, true, 2.0, "w(TS) product bound"},
      {"eq4.2", InputShape::commuting_pair, true, true, true, 2.0, "power product bound"},
      {"eq4.3", InputShape::commuting_pair, true, false, false, 2.0, "p = 2, alpha = 1/2"},
      {"eq4.x-sum", InputShape::commuting_pair, false, true, true, 2.0, "f,g sum bound"},
      {"eq1.6-houdu", InputShape::block, false, false, false, 2.0, "pilot ||A_ij||"},
      {"eq1.6-bk", InputShape::block, false, false, false, 2.0, "pilot with Kittaneh diagonal"},
      {"eq1.6-aok", InputShape::block, false, false, false, 2.0, "pilot with w(A_ii) diagonal"},
      {"eq4.4", InputShape::block, false, true, false, 2.0, "f,g pilot"},
      {"eq4.7", InputShape::block, true, true, false, 2.0, "refined f,g pilot"},
      {"eq4.6", InputShape::block_2x2, true, true, false, 2.0, "2x2 power closed form"},
      {"cor7", InputShape::block_2x2, true, true, false, 2.0, "2x2 refined closed form"},
      {"cor8", InputShape::block_2x2, true, false, false, 2.0, "2x2 alpha = 1/2 closed form"},
  };
  return registry;
}

const BoundInfo& find_bound(const std::string& id) {
  for (const auto& b : bound_registry()) {
    if (b.id == id) return b;
  }
  throw Error(ErrorKind::UnknownBound, "unknown bound '" + id + "'");
}

std::string_view to_string(VariantSelection v) {
  switch (v) {
    case VariantSelection::canonical: return "canonical";
    case VariantSelection::as_printed: return "as_printed";
    case VariantSelection::both: return "both";
  }
  return "?";
}

VariantSelection variant_selection_from_string(std::string_view s) {
  if (s == "canonical") return VariantSelection::canonical;
  if (s == "as_printed") return VariantSelection::as_printed;
  if (s == "both") return VariantSelection::both;
  throw Error(ErrorKind::InvalidSpec, "unknown variant '" + std::string(s) + "'");
}

void check_admissible(const CheckSpec& check) {
  const BoundInfo& info = find_bound(check.bound_id);
  const EnsembleSpec& e = check.ensemble;
  e.validate();
  if (check.trials < 1) throw Error(ErrorKind::InvalidSpec, "trials must be >= 1", check.trials);
  if (!(check.tol > 0.0)) throw Error(ErrorKind::InvalidSpec, "tol must be positive", check.tol);
  if (!info.has_variants && check.variant == VariantSelection::as_printed) {
    throw Error(ErrorKind::InvalidSpec, check.bound_id + " has no as_printed variant");
  }
  const std::string kind(to_string(e.kind));
  switch (info.shape) {
    case InputShape::matrix:
    case InputShape::matrix_pair:
    case InputShape::matrix_vectors:
      if (!e.single_matrix()) mismatch(check.bound_id + " needs a single-matrix ensemble, got " + kind);
      break;
    case InputShape::psd_pair:
    case InputShape::psd_vectors:
      if (e.kind != EnsembleKind::psd) mismatch(check.bound_id + " needs a psd ensemble, got " + kind);
      break;
    case InputShape::commuting_vectors:
    case InputShape::commuting_pair:
      if (!e.commuting()) {
        mismatch(check.bound_id + " needs pairs with |T|S = S*|T|, got " + kind);
      }
      break;
    case InputShape::block:
      if (e.kind != EnsembleKind::block) mismatch(check.bound_id + " needs a block ensemble");
      break;
    case InputShape::block_2x2:
      if (e.kind != EnsembleKind::block || e.grid != 2) {
        mismatch(check.bound_id + " needs a 2x2 block ensemble");
      }
      break;
  }
  check_parameters(info, check.params);
}

void check_parameters(const BoundInfo& info, const CheckParams& params) {
  const double a = params.alpha;
  if (info.takes_alpha && !(a >= 0.0 && a <= 1.0)) mismatch("alpha must lie in [0, 1]", a);
  if (params.p && !info.takes_p) {
    throw Error(ErrorKind::UnknownParameter, info.id + " does not take p");
  }
  const double p = param_p(info, params);
  if (info.takes_p) {
    const std::string& id = info.id;
    if (id == "eq3.2") {
      if (!(p > 0.0 && p < 2.0)) mismatch("eq3.2 needs 0 < p < 2", p);
    } else if (id == "eq.mc") {
      if (!(p > 0.0 && p <= 1.0)) mismatch("eq.mc needs 0 < p <= 1", p);
    } else if (!(p >= 2.0)) {
      mismatch(id + " needs p >= 2", p);
    }
  }
}

TrialInputs draw_inputs(const CheckSpec& check, std::uint64_t index) {
  const BoundInfo& info = find_bound(check.bound_id);
  const Draw d = sample(check.ensemble, index);
  TrialInputs in;
  in.t = d.t;
  in.s = d.s;
  in.blocks = d.blocks;
  const auto vectors = [&] {
    const int n = static_cast<int>(in.t.rows());
    in.x = sample_unit_vector(check.ensemble.seed, index, kLaneX, n);
    in.y = sample_unit_vector(check.ensemble.seed, index, kLaneY, n);
  };
  switch (info.shape) {
    case InputShape::matrix_pair:
    case InputShape::psd_pair: in.s = sample_second(check.ensemble, index); break;
    case InputShape::psd_vectors:
    case InputShape::matrix_vectors:
    case InputShape::commuting_vectors: vectors(); break;
    default: break;
  }
  return in;
}

BoundEvaluation evaluate_bound(const std::string& id, const TrialInputs& in, Variant variant,
                               const CheckParams& params) {
  const BoundInfo& info = find_bound(id);
  const double a = params.alpha;
  const double p = param_p(info, params);
  const auto chain_eval = [&](TermChain c) { return make_evaluation(id, std::move(c), variant); };
  const auto blocks = [&]() -> const BlockMatrix& {
    if (!in.blocks) mismatch(id + " needs block input");
    return *in.blocks;
  };

  if (id == "eq1.1") return bound_sandwich(in.t);
  if (id == "eq1.2") return bound_kittaneh_2003(in.t);
  if (id == "eq1.3") return bound_kittaneh_2005(in.t);
  if (id == "eq1.4") return bound_yamazaki(in.t);
  if (id == "eq1.5") return bound_dragomir(in.t, variant);
  if (id == "fact1") return norm_sum_estimate(in.t, in.s);
  if (id == "fact2") return norm_halfpower_estimate(in.t, in.s);
  if (id == "fact3") return spectral_radius_product_bound(in.t, in.s);

  if (info.shape == InputShape::psd_vectors || info.shape == InputShape::matrix_vectors ||
      info.shape == InputShape::commuting_vectors) {
    const UnitVector x = UnitVector::normalized(in.x);
    const UnitVector y = UnitVector::normalized(in.y);
    if (id == "eq2.2") return chain_eval(mixed_schwarz_chain(in.t, x, y, a));
    if (id == "eq3.1" || id == "eq3.2") return chain_eval(mccarty_chain(in.t, x, p));
    if (id == "eq.mc") return chain_eval(mccarty_remark_chain(in.t, x, p));
    if (id == "eq3.3") return chain_eval(schwarz_refined_chain(in.t, x, y, p));
    if (id == "eq3.4") return chain_eval(mixed_schwarz_refined_chain(in.t, x, y, p));
    if (id == "kittaneh.ineq") {
      return chain_eval(kittaneh_fg_chain(in.t, in.s, x, y, FunctionPair::power_split(a)));
    }
    if (id == "eq3.6") {
      return chain_eval(
          kittaneh_fg_refined_chain(in.t, in.s, x, y, FunctionPair::power_split(a), p));
    }
  }

  if (id == "eq4.1") return product_bound_fg(in.t, in.s, FunctionPair::power_split(a), p);
  if (id == "eq4.2") return product_bound_power(in.t, in.s, a, p, variant);
  if (id == "eq4.3") return product_bound_power_half(in.t, in.s, variant);
  if (id == "eq4.x-sum") return product_bound_fg_sum(in.t, in.s, FunctionPair::power_split(a), p);

  if (id == "eq1.6-houdu") {
    return pilot_evaluation(blocks(), pilot_classical(blocks(), ClassicalPilot::hou_du), id,
                            Variant::canonical);
  }
  if (id == "eq1.6-bk") {
    return pilot_evaluation(blocks(), pilot_classical(blocks(), ClassicalPilot::banidomi_kittaneh),
                            id, Variant::canonical);
  }
  if (id == "eq1.6-aok") {
    return pilot_evaluation(blocks(), pilot_classical(blocks(), ClassicalPilot::abuomar_kittaneh),
                            id, Variant::canonical);
  }
  if (id == "eq4.4") {
    return pilot_evaluation(blocks(), pilot_fg(blocks(), FunctionPair::power_split(a)), id,
                            Variant::canonical);
  }
  if (id == "eq4.7") {
    return pilot_evaluation(blocks(),
                            pilot_fg_refined(blocks(), FunctionPair::power_split(a), variant), id,
                            variant);
  }
  if (id == "eq4.6") return pilot_power_2x2(blocks(), a, variant);
  if (id == "cor7") return explicit_2x2_refined(blocks(), a, variant);
  if (id == "cor8") return explicit_2x2_half(blocks(), variant);
  throw Error(ErrorKind::UnknownBound, "no evaluator for '" + id + "'");
}

bool is_violation(const BoundEvaluation& e, double tol) {
  const double s = e.chain.worst_slack();
  return !(s >= -tol * e.chain.scale());
}

VerificationReport run_check(const CheckSpec& check, int threads) {
  const auto start = std::chrono::steady_clock::now();
  check_admissible(check);
  const BoundInfo& info = find_bound(check.bound_id);
  const std::vector<Variant> variants = expand(check.variant, info.has_variants);
  const int n = check.trials;
  const int nv = static_cast<int>(variants.size());

  std::vector<BoundEvaluation> evals(static_cast<std::size_t>(n) * nv);
  for_trials(n, threads, [&](int i) {
    const TrialInputs in = draw_inputs(check, static_cast<std::uint64_t>(i));
    for (int v = 0; v < nv; ++v) {
      evals[static_cast<std::size_t>(i) * nv + v] =
          evaluate_bound(check.bound_id, in, variants[v], check.params);
    }
  });

  VerificationReport rep;
  rep.check = check;
  std::vector<double> all;
  all.reserve(evals.size());
  struct Candidate {
    double slack;
    int trial;
    int variant;
  };
  std::vector<Candidate> bad;
  for (int v = 0; v < nv; ++v) {
    VariantSummary vs;
    vs.variant = variants[v];
    vs.trials = n;
    std::vector<double> slacks;
    for (int i = 0; i < n; ++i) {
      const BoundEvaluation& e = evals[static_cast<std::size_t>(i) * nv + v];
      const double s = e.chain.worst_slack();
      slacks.push_back(s);
      all.push_back(s);
      if (is_violation(e, check.tol)) {
        ++vs.violations;
        bad.push_back({s, i, v});
      }
    }
    vs.slack_stats = stats_of(std::move(slacks));
    rep.violations += vs.violations;
    rep.by_variant.push_back(vs);
  }
  rep.slack_stats = stats_of(all);
  rep.worst_slack = rep.slack_stats.min;

  std::sort(bad.begin(), bad.end(), [](const Candidate& a, const Candidate& b) {
    const bool an = std::isnan(a.slack), bn = std::isnan(b.slack);
    if (an != bn) return an;  // a NaN evaluation is the most severe failure
    if (!an && a.slack != b.slack) return a.slack < b.slack;
    if (a.trial != b.trial) return a.trial < b.trial;
    return a.variant < b.variant;
  });
  for (std::size_t k = 0; k < std::min(bad.size(), kCounterexampleCap); ++k) {
    Counterexample c;
    c.index = static_cast<std::uint64_t>(bad[k].trial);
    c.variant = variants[bad[k].variant];
    c.worst_slack = bad[k].slack;
    c.inputs = draw_inputs(check, c.index);
    c.evaluation = evals[static_cast<std::size_t>(bad[k].trial) * nv + bad[k].variant];
    rep.counterexamples.push_back(std::move(c));
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json check_to_json(const CheckSpec& c) {
  Json params{{"alpha", c.params.alpha}};
  if (c.params.p) params["p"] = *c.params.p;
  return Json{{"bound_id", c.bound_id},
              {"ensemble", ensemble_to_json(c.ensemble)},
              {"trials", c.trials},
              {"tol", c.tol},
              {"variant", std::string(to_string(c.variant))},
              {"params", std::move(params)}};
}

CheckSpec check_from_json(const Json& j) {
  CheckSpec c;
  try {
    c.bound_id = j.at("bound_id").get<std::string>();
    c.ensemble = ensemble_from_json(j.at("ensemble"));
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("variant")) {
      c.variant = variant_selection_from_string(j.at("variant").get<std::string>());
    }
    if (j.contains("params")) {
      const Json& p = j.at("params");
      if (p.contains("alpha")) c.params.alpha = p.at("alpha").get<double>();
      if (p.contains("p")) c.params.p = p.at("p").get<double>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, std::string("malformed check spec: ") + ex.what());
  }
  return c;
}

Json inputs_to_json(const TrialInputs& in) {
  Json j = Json::object();
  if (in.t.size() > 0) j["t"] = matrix_to_json(in.t);
  if (in.s.size() > 0) j["s"] = matrix_to_json(in.s);
  if (in.x.size() > 0) j["x"] = vector_to_json(in.x);
  if (in.y.size() > 0) j["y"] = vector_to_json(in.y);
  if (in.blocks) j["blocks"] = block_to_json(*in.blocks);
  return j;
}

TrialInputs inputs_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "inputs must be an object");
  TrialInputs in;
  if (j.contains("t")) in.t = matrix_from_json(j["t"]);
  if (j.contains("s")) in.s = matrix_from_json(j["s"]);
  if (j.contains("x")) in.x = vector_from_json(j["x"]);
  if (j.contains("y")) in.y = vector_from_json(j["y"]);
  if (j.contains("blocks")) in.blocks = block_from_json(j["blocks"]);
  return in;
}

Json counterexample_to_json(const CheckSpec& check, const Counterexample& c) {
  return Json{{"check", check_to_json(check)},
              {"index", c.index},
              {"variant", std::string(to_string(c.variant))},
              {"worst_slack", c.worst_slack},
              {"inputs", inputs_to_json(c.inputs)},
              {"evaluation", evaluation_to_json(c.evaluation)}};
}

Json report_to_json(const VerificationReport& r, bool include_wall_time) {
  Json by_variant = Json::array();
  for (const auto& v : r.by_variant) {
    by_variant.push_back(Json{{"variant", std::string(to_string(v.variant))},
                              {"trials", v.trials},
                              {"violations", v.violations},
                              {"slack_stats", stats_to_json(v.slack_stats)}});
  }
  Json ces = Json::array();
  for (const auto& c : r.counterexamples) ces.push_back(counterexample_to_json(r.check, c));
  const bool printed_only = std::all_of(r.by_variant.begin(), r.by_variant.end(), [](const auto& v) {
    return v.variant == Variant::as_printed;
  });
  const bool any_printed_violation =
      std::any_of(r.by_variant.begin(), r.by_variant.end(), [](const auto& v) {
        return v.variant == Variant::as_printed && v.violations > 0;
      });
  Json j{{"version", "1"},
         {"check", check_to_json(r.check)},
         {"violations", r.violations},
         {"worst_slack", r.worst_slack},
         {"slack_stats", stats_to_json(r.slack_stats)},
         {"by_variant", std::move(by_variant)},
         {"counterexamples", std::move(ces)}};
  const bool any_canonical_violation =
      std::any_of(r.by_variant.begin(), r.by_variant.end(), [](const auto& v) {
        return v.variant == Variant::canonical && v.violations > 0;
      });
  if (any_canonical_violation && any_printed_violation) {
    j["note"] =
        "the canonical form is violated too, so the failures are not explained by the "
        "misprint alone; as_printed violations are misprint-consistent falsifications";
  } else if (any_canonical_violation) {
    j["note"] = "canonical form violated";
  } else if (any_printed_violation) {
    j["note"] = printed_only ? "misprint-consistent falsification of the as_printed form"
                             : "as_printed violations are misprint-consistent falsifications";
  }
  if (include_wall_time) j["wall_time"] = r.wall_time;
  return j;
}

ReplayResult replay(const Json& payload) {
  CheckSpec check;
  std::uint64_t index = 0;
  Variant variant = Variant::canonical;
  double stored = 0.0;
  TrialInputs stored_inputs;
  try {
    check = check_from_json(payload.at("check"));
    index = payload.at("index").get<std::uint64_t>();
    variant = variant_from_string(payload.at("variant").get<std::string>());
    stored = payload.at("worst_slack").get<double>();
    stored_inputs = inputs_from_json(payload.at("inputs"));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::CorruptPayload, ex.what());
  } catch (const Error& ex) {
    if (ex.kind() == ErrorKind::ParseError || ex.kind() == ErrorKind::InvalidSpec ||
        ex.kind() == ErrorKind::DimensionMismatch) {
      throw Error(ErrorKind::CorruptPayload, ex.what());
    }
    throw;
  }
  check_admissible(check);
  if (index >= static_cast<std::uint64_t>(check.trials)) {
    throw Error(ErrorKind::CorruptPayload, "trial index outside the check", static_cast<double>(index));
  }
  ReplayResult r;
  const TrialInputs fresh = draw_inputs(check, index);
  r.inputs_match = same_inputs(fresh, stored_inputs);
  r.evaluation = evaluate_bound(check.bound_id, fresh, variant, check.params);
  r.stored_slack = stored;
  r.replayed_slack = r.evaluation.chain.worst_slack();
  r.slack_match = std::abs(r.stored_slack - r.replayed_slack) <= 1e-12;
  return r;
}

TightnessComparison compare_tightness(const std::vector<std::string>& bound_ids,
                                      const EnsembleSpec& ensemble, int trials,
                                      const CheckParams& params, Variant variant, int threads) {
  if (bound_ids.empty()) throw Error(ErrorKind::InvalidSpec, "no bounds to compare");
  if (trials < 1) throw Error(ErrorKind::InvalidSpec, "trials must be >= 1", trials);
  std::vector<const BoundInfo*> infos;
  for (const auto& id : bound_ids) infos.push_back(&find_bound(id));
  const Quantity q = quantity_of(*infos.front());
  for (const auto* info : infos) {
    if (quantity_of(*info) == Quantity::none || quantity_of(*info) != q) {
      throw Error(ErrorKind::ShapeMismatch,
                  "bounds '" + infos.front()->id + "' and '" + info->id +
                      "' do not bound the same quantity on the same input");
    }
  }
  std::vector<CheckSpec> checks;
  for (const auto* info : infos) {
    CheckSpec c;
    c.bound_id = info->id;
    c.ensemble = ensemble;
    c.trials = trials;
    c.params = params;
    c.variant = info->has_variants && variant == Variant::as_printed ? VariantSelection::as_printed
                                                                     : VariantSelection::canonical;
    check_admissible(c);
    checks.push_back(std::move(c));
  }

  const int nb = static_cast<int>(bound_ids.size());
  TightnessComparison out;
  out.bound_ids = bound_ids;
  out.lhs.assign(trials, 0.0);
  out.values.assign(trials, std::vector<double>(nb, 0.0));
  for_trials(trials, threads, [&](int i) {
    const TrialInputs in = draw_inputs(checks.front(), static_cast<std::uint64_t>(i));
    for (int b = 0; b < nb; ++b) {
      const Variant v = infos[b]->has_variants ? variant : Variant::canonical;
      const BoundEvaluation e = evaluate_bound(bound_ids[b], in, v, params);
      out.values[i][b] = upper_value(e);
      if (b == 0) out.lhs[i] = bounded_value(e);
    }
  });

  out.win_counts.assign(nb, 0);
  for (int i = 0; i < trials; ++i) {
    const auto& row = out.values[i];
    const auto best = std::min_element(row.begin(), row.end());
    const double tie = 1e-12 * std::max(1.0, std::abs(*best));
    int at_best = 0;
    for (double v : row) at_best += (v - *best) <= tie ? 1 : 0;
    if (at_best == 1) {
      ++out.win_counts[best - row.begin()];
    } else {
      ++out.ties;
    }
  }

  const auto pos = [&](const char* id) {
    return static_cast<int>(std::find(bound_ids.begin(), bound_ids.end(), id) - bound_ids.begin());
  };
  const int ic = pos("cor8"), ih = pos("eq1.6-houdu"), ib = pos("eq1.6-bk");
  if (ic < nb && ih < nb && ib < nb) {
    Cor8Verdict v;
    v.variant = variant;
    v.trials = trials;
    for (int i = 0; i < trials; ++i) {
      const double c = out.values[i][ic], h = out.values[i][ih], b = out.values[i][ib];
      const double tie = 1e-12 * std::max({1.0, std::abs(h), std::abs(b)});
      const bool bh = c < h - tie, bb = c < b - tie;
      v.beats_hou_du += bh;
      v.beats_banidomi += bb;
      v.beats_both += bh && bb;
      v.claim_failures += c > std::min(h, b) + tie;
      v.cor8_violations += c < out.lhs[i] - 1e-8 * std::max(1.0, out.lhs[i]);
    }
    // Being smaller than the classical pilots only counts when cor8 still
    // bounds w(A); otherwise the comparison is against an invalid bound.
    const std::string n = std::to_string(trials);
    if (v.cor8_violations > 0) {
      v.verdict = "not established: cor8 falls below w(A) on " +
                  std::to_string(v.cor8_violations) + " of " + n +
                  " trials, so it is not a valid upper bound there (smaller than both "
                  "classical pilots on " + std::to_string(v.beats_both) + " of " + n + ")";
    } else if (v.claim_failures == 0) {
      v.verdict = "claim holds on all " + n + " trials";
    } else {
      v.verdict = "claim fails on " + std::to_string(v.claim_failures) + " of " + n + " trials";
    }
    out.cor8 = v;
  }
  return out;
}

Json tightness_to_json(const TightnessComparison& t) {
  Json j{{"bound_ids", t.bound_ids},
         {"lhs", t.lhs},
         {"values", t.values},
         {"win_counts", t.win_counts},
         {"ties", t.ties}};
  if (t.cor8) {
    const Cor8Verdict& v = *t.cor8;
    j["cor8_verdict"] = Json{{"variant", std::string(to_string(v.variant))},
                             {"trials", v.trials},
                             {"beats_hou_du", v.beats_hou_du},
                             {"beats_banidomi_kittaneh", v.beats_banidomi},
                             {"beats_both", v.beats_both},
                             {"claim_failures", v.claim_failures},
                             {"cor8_violations", v.cor8_violations},
                             {"verdict", v.verdict}};
  }
  return j;
}

}  // namespace opradius
