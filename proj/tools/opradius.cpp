// opradius: command-line front end for the numerical radius library.
//
// Exit codes: 0 ok / no violations, 1 violations found, 2 usage or parse
// error, 3 computation failure, 4 hypothesis mismatch.

#include <CLI11.hpp>
#include <fmt/core.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "opradius/block_bounds.hpp"
#include "opradius/error.hpp"
#include "opradius/json_io.hpp"
#include "opradius/radii.hpp"
#include "opradius/scalar_inequalities.hpp"
#include "opradius/verifier.hpp"

namespace fs = std::filesystem;
using namespace opradius;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;
constexpr int kExitHypothesis = 4;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConvergenceFailure: return kExitComputation;
    case ErrorKind::HypothesisMismatch:
    case ErrorKind::CommutationViolated:
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPSD: return kExitHypothesis;
    default: return kExitUsage;
  }
}

enum class Format { table, json, csv };

const std::map<std::string, Format> kFormats = {
    {"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};

// Shortest round-trip text for JSON/CSV, fixed 6 digits for tables.
std::string num(double v) { return fmt::format("{}", v); }
std::string fixed(double v) { return fmt::format("{:.6f}", v); }

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + out);
  f << text;
}

ComplexMatrix load_matrix(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

std::vector<Variant> expand(VariantSelection sel, bool has_variants) {
  if (!has_variants || sel == VariantSelection::canonical) return {Variant::canonical};
  if (sel == VariantSelection::as_printed) return {Variant::as_printed};
  return {Variant::canonical, Variant::as_printed};
}

CheckParams params_for(const BoundInfo& info, double alpha, std::optional<double> p) {
  CheckParams params;
  if (info.takes_alpha) params.alpha = alpha;
  if (info.takes_p) params.p = p;
  return params;
}

std::string join_fixed(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fixed(v[i]);
  return s;
}

std::string holds_text(const BoundEvaluation& e) {
  if (e.holds) return "yes";
  return e.variant == Variant::as_printed ? "NO (as_printed)" : "NO";
}

// Table, JSON or CSV rendering shared by bounds and block-bounds.
std::string render_rows(const std::vector<BoundEvaluation>& rows, Format format,
                        const Json& header, const std::vector<Json>& extras = {}) {
  if (format == Format::json) {
    Json j = header;
    j["rows"] = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Json r = evaluation_to_json(rows[i]);
      if (i < extras.size() && !extras[i].is_null()) r.update(extras[i]);
      j["rows"].push_back(std::move(r));
    }
    return dump(j);
  }
  std::string s;
  if (format == Format::csv) {
    s += "bound,variant,lhs,rhs,slack,holds\n";
    for (const auto& e : rows) {
      s += fmt::format("{},{},{},{},{},{}\n", e.bound_id, to_string(e.variant), num(e.lhs),
                       e.rhs_terms.empty() ? std::string() : num(e.rhs_terms[0]), num(e.slack),
                       e.holds ? "true" : "false");
    }
    return s;
  }
  s += fmt::format("{:<12} {:<11} {:>12} {:>12} {:>12}  {:<16} {}\n", "bound", "variant", "lhs",
                   "rhs", "slack", "holds", "rhs chain");
  for (const auto& e : rows) {
    s += fmt::format("{:<12} {:<11} {:>12} {:>12} {:>12}  {:<16} [{}]\n", e.bound_id,
                     to_string(e.variant), fixed(e.lhs),
                     e.rhs_terms.empty() ? std::string("-") : fixed(e.rhs_terms[0]),
                     fixed(e.slack), holds_text(e), join_fixed(e.rhs_terms));
    if (!e.flags.empty()) {
      std::string f;
      for (const auto& x : e.flags) f += (f.empty() ? "" : ", ") + x;
      s += fmt::format("{:<12} flags: {}\n", "", f);
    }
  }
  return s;
}

// ---------------------------------------------------------------- compute

struct ComputeOpts {
  std::string matrix;
  std::string quantity;
  double tol = 1e-10;
  std::string format = "table";
  std::string out;
};

int cmd_compute(const ComputeOpts& o) {
  const ComplexMatrix t = load_matrix(o.matrix);
  if (o.quantity == "aluthge") {
    emit(dump(matrix_to_json(aluthge(t))), o.out);
    return kExitOk;
  }
  RadiusResult r;
  if (o.quantity == "w") {
    r = numerical_radius(t, o.tol);
  } else if (o.quantity == "r") {
    r = spectral_radius(t);
  } else if (o.quantity == "norm") {
    r = operator_norm(t);
  } else {
    r = min_modulus(t);
  }
  const Format f = kFormats.at(o.format);
  std::string text;
  if (f == Format::json) {
    Json j{{"quantity", o.quantity}, {"value", r.value},
           {"certified_tolerance", r.certified_tolerance}};
    if (r.maximizer_angle) j["maximizer_angle"] = *r.maximizer_angle;
    text = dump(j);
  } else if (f == Format::csv) {
    text = fmt::format("quantity,value,certified_tolerance\n{},{},{}\n", o.quantity, num(r.value),
                       num(r.certified_tolerance));
  } else {
    text = fmt::format("{} = {}  (certified tolerance {:.3e})\n", o.quantity, fixed(r.value),
                       r.certified_tolerance);
  }
  emit(text, o.out);
  return kExitOk;
}

// ----------------------------------------------------------------- bounds

struct BoundsOpts {
  std::string matrix;
  std::string set = "classical";
  std::string s_path;
  std::optional<double> alpha;
  std::optional<double> p;
  std::string variant = "canonical";
  std::string format = "table";
  std::string out;
};

int cmd_bounds(const BoundsOpts& o) {
  const ComplexMatrix t = load_matrix(o.matrix);
  std::vector<std::string> ids;
  if (o.set != "product") ids = {"eq1.1", "eq1.2", "eq1.3", "eq1.4", "eq1.5"};
  if (o.set != "classical") {
    for (const char* id : {"eq4.1", "eq4.2", "eq4.3", "eq4.x-sum"}) ids.emplace_back(id);
  }

  bool any_alpha = false, any_p = false;
  for (const auto& id : ids) {
    any_alpha |= find_bound(id).takes_alpha;
    any_p |= find_bound(id).takes_p;
  }
  if (o.alpha && !any_alpha) {
    throw Error(ErrorKind::UnknownParameter, "--alpha is not used by the " + o.set + " set");
  }
  if (o.p && !any_p) throw Error(ErrorKind::UnknownParameter, "--p is not used by the " + o.set + " set");
  if (!o.s_path.empty() && o.set == "classical") {
    throw Error(ErrorKind::UnknownParameter, "--s is only used by the product bounds");
  }

  TrialInputs in;
  in.t = t;
  if (o.set != "classical") {
    in.s = o.s_path.empty() ? identity(static_cast<int>(t.rows())) : load_matrix(o.s_path);
    if (in.s.rows() != t.rows() || in.s.cols() != t.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "S must have the shape of T");
    }
    check_commutation(t, in.s);
  }

  const VariantSelection sel = variant_selection_from_string(o.variant);
  std::vector<BoundEvaluation> rows;
  for (const auto& id : ids) {
    const BoundInfo& info = find_bound(id);
    const CheckParams params = params_for(info, o.alpha.value_or(0.5), o.p);
    check_parameters(info, params);
    for (Variant v : expand(sel, info.has_variants)) {
      rows.push_back(evaluate_bound(id, in, v, params));
    }
  }
  Json header{{"matrix", o.matrix}, {"set", o.set}};
  emit(render_rows(rows, kFormats.at(o.format), header), o.out);
  return kExitOk;
}

// ----------------------------------------------------------- block-bounds

struct BlockOpts {
  std::string blocks;
  std::string which = "all";
  std::string form = "both";
  double alpha = 0.5;
  std::string format = "table";
  std::string out;
};

std::string block_bound_id(const std::string& name) {
  if (name == "houdu" || name == "hd") return "eq1.6-houdu";
  if (name == "bk") return "eq1.6-bk";
  if (name == "aok") return "eq1.6-aok";
  return name;
}

std::optional<PilotMatrix> pilot_for(const std::string& id, const BlockMatrix& a, Variant v,
                                     double alpha) {
  if (id == "eq1.6-houdu") return pilot_classical(a, ClassicalPilot::hou_du);
  if (id == "eq1.6-bk") return pilot_classical(a, ClassicalPilot::banidomi_kittaneh);
  if (id == "eq1.6-aok") return pilot_classical(a, ClassicalPilot::abuomar_kittaneh);
  if (id == "eq4.4") return pilot_fg(a, FunctionPair::power_split(alpha));
  if (id == "eq4.7") return pilot_fg_refined(a, FunctionPair::power_split(alpha), v);
  return std::nullopt;
}

Json real_matrix_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

int cmd_block_bounds(const BlockOpts& o) {
  const BlockMatrix a = block_from_json(read_json_file(o.blocks));
  if (!a.square_grid()) throw Error(ErrorKind::DimensionMismatch, "block grid must be square");

  std::vector<std::string> ids;
  if (o.which == "all") {
    for (const auto& info : bound_registry()) {
      if (info.shape == InputShape::block ||
          (info.shape == InputShape::block_2x2 && a.grid_rows() == 2)) {
        ids.push_back(info.id);
      }
    }
  } else {
    const std::string id = block_bound_id(o.which);
    const BoundInfo& info = find_bound(id);
    if (info.shape != InputShape::block && info.shape != InputShape::block_2x2) {
      throw Error(ErrorKind::UnknownBound, id + " is not a block bound");
    }
    ids.push_back(id);
  }

  TrialInputs in;
  in.blocks = a;
  const VariantSelection sel = variant_selection_from_string(o.form);
  const Format format = kFormats.at(o.format);
  std::vector<BoundEvaluation> rows;
  std::vector<Json> extras;
  std::string pilots;
  for (const auto& id : ids) {
    const BoundInfo& info = find_bound(id);
    const CheckParams params = params_for(info, o.alpha, std::nullopt);
    check_parameters(info, params);
    for (Variant v : expand(sel, info.has_variants)) {
      rows.push_back(evaluate_bound(id, in, v, params));
      Json extra;
      if (const auto pilot = pilot_for(id, a, v, params.alpha)) {
        extra["pilot"] = real_matrix_json(pilot->raw);
        std::string line = fmt::format("pilot {} ({}):", id, to_string(v));
        for (Eigen::Index i = 0; i < pilot->raw.rows(); ++i) {
          line += " [";
          for (Eigen::Index j = 0; j < pilot->raw.cols(); ++j) {
            line += (j ? " " : "") + fixed(pilot->raw(i, j));
          }
          line += "]";
        }
        pilots += line + "\n";
      }
      extras.push_back(std::move(extra));
    }
  }
  std::string text = render_rows(rows, format, Json{{"blocks", o.blocks}}, extras);
  if (format == Format::table) {
    text += pilots;
    for (const auto& e : rows) {
      if (e.details.empty()) continue;
      std::string d;
      for (const auto& [k, v] : e.details) d += fmt::format(" {}={}", k, fixed(v));
      text += fmt::format("detail {} ({}):{}\n", e.bound_id, to_string(e.variant), d);
    }
  }
  emit(text, o.out);
  return kExitOk;
}

// ----------------------------------------------------------------- verify

struct EnsembleOpts {
  std::string kind = "ginibre";
  int dim = 4;
  int min_dim = 0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  int grid = 2;
  std::vector<int> block_dims;
  std::string inner = "ginibre";

  EnsembleSpec spec() const {
    EnsembleSpec e;
    e.kind = ensemble_kind_from_string(kind);
    e.dim = dim;
    e.min_dim = min_dim;
    e.scale = scale;
    e.seed = seed;
    e.grid = grid;
    e.block_dims = block_dims;
    e.inner = ensemble_kind_from_string(inner);
    e.validate();
    return e;
  }
};

void add_ensemble_options(CLI::App* app, EnsembleOpts& e) {
  app->add_option("--ensemble", e.kind,
                  "ginibre, hermitian, psd, unitary, normal, commuting_pair, "
                  "commuting_pair_shared_basis, block")
      ->capture_default_str();
  app->add_option("--dim", e.dim, "matrix (or largest block) dimension")->capture_default_str();
  app->add_option("--min-dim", e.min_dim, "draw dimensions from [min-dim, dim] (0: fixed)")
      ->capture_default_str();
  app->add_option("--scale", e.scale)->capture_default_str();
  app->add_option("--seed", e.seed)->capture_default_str();
  app->add_option("--grid", e.grid, "block grid size")->capture_default_str();
  app->add_option("--block-dims", e.block_dims, "pin the block slot dimensions");
  app->add_option("--inner", e.inner, "diagonal block distribution")->capture_default_str();
}

struct VerifyOpts {
  std::vector<std::string> bounds;
  std::vector<std::string> check_files;
  EnsembleOpts ensemble;
  int trials = 500;
  double tol = 1e-8;
  std::string variant = "canonical";
  std::optional<double> alpha;
  std::optional<double> p;
  std::string out;
  std::string out_dir = ".";
  int threads = 0;
  bool no_wall_time = false;
};

std::vector<CheckSpec> load_checks(const std::string& path) {
  const Json j = read_json_file(path);
  std::vector<CheckSpec> out;
  if (j.is_array()) {
    for (const auto& c : j) out.push_back(check_from_json(c));
  } else {
    out.push_back(check_from_json(j));
  }
  return out;
}

std::string report_name(const CheckSpec& c) {
  return fmt::format("{}_{}_seed{}", c.bound_id, to_string(c.variant), c.ensemble.seed);
}

int cmd_verify(const VerifyOpts& o) {
  std::vector<CheckSpec> checks;
  for (const auto& f : o.check_files) {
    for (auto& c : load_checks(f)) checks.push_back(std::move(c));
  }
  if (!o.bounds.empty()) {
    const EnsembleSpec e = o.ensemble.spec();
    for (const auto& id : o.bounds) {
      const BoundInfo& info = find_bound(id);
      CheckSpec c;
      c.bound_id = id;
      c.ensemble = e;
      c.trials = o.trials;
      c.tol = o.tol;
      c.variant = variant_selection_from_string(o.variant);
      if (o.alpha) {
        if (!info.takes_alpha) throw Error(ErrorKind::UnknownParameter, id + " does not take alpha");
        c.params.alpha = *o.alpha;
      }
      c.params.p = o.p;
      checks.push_back(std::move(c));
    }
  }
  if (checks.empty()) throw Error(ErrorKind::InvalidSpec, "give --bound or --check");
  if (!o.out.empty() && checks.size() > 1) {
    throw Error(ErrorKind::InvalidSpec, "--out takes a single check; use --out-dir");
  }
  for (const auto& c : checks) check_admissible(c);

  int exit_code = kExitOk;
  for (const auto& c : checks) {
    const VerificationReport r = run_check(c, o.threads);
    const fs::path report_path =
        o.out.empty() ? fs::path(o.out_dir) / (report_name(c) + ".report.json") : fs::path(o.out);
    if (report_path.has_parent_path()) fs::create_directories(report_path.parent_path());
    const Json j = report_to_json(r, !o.no_wall_time);
    write_json_file(report_path, j);
    std::string line = fmt::format(
        "{} [{}] {} dim {}: {} trials, {} violations, worst slack {}, median {} -> {}",
        c.bound_id, to_string(c.variant), to_string(c.ensemble.kind), c.ensemble.dim, c.trials,
        r.violations, fixed(r.worst_slack), fixed(r.slack_stats.median), report_path.string());
    if (r.violations > 0) {
      exit_code = kExitViolations;
      fs::path cex = report_path;
      cex.replace_extension();
      cex.replace_extension(".counterexamples.json");
      write_json_file(cex, j["counterexamples"]);
      line += fmt::format(" (counterexamples: {})", cex.string());
      if (j.contains("note")) line += "\n  " + j["note"].get<std::string>();
    }
    std::cout << line << "\n";
  }
  return exit_code;
}

// ----------------------------------------------------------------- replay

int cmd_replay(const std::string& path) {
  const Json j = read_json_file(path);
  std::vector<Json> payloads;
  if (j.is_array()) {
    payloads.assign(j.begin(), j.end());
  } else if (j.contains("counterexamples")) {
    payloads.assign(j["counterexamples"].begin(), j["counterexamples"].end());
  } else {
    payloads.push_back(j);
  }
  int bad = 0;
  for (const auto& p : payloads) {
    const ReplayResult r = replay(p);
    const bool ok = r.inputs_match && r.slack_match;
    bad += ok ? 0 : 1;
    std::cout << fmt::format("index {}: stored slack {} replayed {} inputs {} -> {}\n",
                             p.value("index", std::uint64_t{0}), num(r.stored_slack),
                             num(r.replayed_slack), r.inputs_match ? "match" : "differ",
                             ok ? "ok" : "MISMATCH");
  }
  return bad == 0 ? kExitOk : kExitViolations;
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
  std::vector<std::string> bounds;
  EnsembleOpts ensemble;
  int trials = 200;
  std::string form = "canonical";
  std::optional<double> alpha;
  std::optional<double> p;
  std::string out;
  int threads = 0;
};

int cmd_compare(const CompareOpts& o) {
  CheckParams params;
  if (o.alpha) params.alpha = *o.alpha;
  params.p = o.p;
  const TightnessComparison t = compare_tightness(o.bounds, o.ensemble.spec(), o.trials, params,
                                                  variant_from_string(o.form), o.threads);
  if (!o.out.empty()) write_json_file(o.out, tightness_to_json(t));
  std::cout << fmt::format("{:<14} {:>8}\n", "bound", "wins");
  for (std::size_t i = 0; i < t.bound_ids.size(); ++i) {
    std::cout << fmt::format("{:<14} {:>8}\n", t.bound_ids[i], t.win_counts[i]);
  }
  std::cout << fmt::format("{:<14} {:>8}\n", "ties", t.ties);
  if (t.cor8) {
    const auto& v = *t.cor8;
    std::cout << fmt::format(
        "cor8 ({}): {} trials, beats hou_du {}, beats banidomi_kittaneh {}, beats both {}, "
        "worse than the better classical pilot {}, below w(A) {}\nverdict: {}\n",
        to_string(v.variant), v.trials, v.beats_hou_du, v.beats_banidomi, v.beats_both,
        v.claim_failures, v.cor8_violations, v.verdict);
  }
  return kExitOk;
}

// ------------------------------------------------------------------ sweep

struct SweepOpts {
  std::string bound;
  std::string param;
  double from = 0.0;
  double to = 1.0;
  int steps = 11;
  std::string matrix, s_path, x_path, y_path, blocks;
  EnsembleOpts ensemble;
  std::uint64_t index = 0;
  std::optional<double> alpha;
  std::optional<double> p;
  std::string variant = "canonical";
  std::string out;
};

ComplexVector load_vector(const std::string& path) { return vector_from_json(read_json_file(path)); }

TrialInputs sweep_inputs(const SweepOpts& o, const BoundInfo& info) {
  const bool from_files = !o.matrix.empty() || !o.blocks.empty();
  if (!from_files) {
    CheckSpec c;
    c.bound_id = info.id;
    c.ensemble = o.ensemble.spec();
    c.trials = static_cast<int>(o.index) + 1;
    check_admissible(c);
    return draw_inputs(c, o.index);
  }
  TrialInputs in;
  if (info.shape == InputShape::block || info.shape == InputShape::block_2x2) {
    if (o.blocks.empty()) throw Error(ErrorKind::InvalidSpec, info.id + " needs --blocks");
    in.blocks = block_from_json(read_json_file(o.blocks));
    return in;
  }
  if (o.matrix.empty()) throw Error(ErrorKind::InvalidSpec, info.id + " needs --matrix");
  in.t = load_matrix(o.matrix);
  const int n = static_cast<int>(in.t.rows());
  switch (info.shape) {
    case InputShape::matrix_pair:
    case InputShape::psd_pair:
    case InputShape::commuting_pair:
    case InputShape::commuting_vectors:
      in.s = o.s_path.empty() ? identity(n) : load_matrix(o.s_path);
      break;
    default: break;
  }
  if (info.shape == InputShape::commuting_pair || info.shape == InputShape::commuting_vectors) {
    check_commutation(in.t, in.s);
  }
  switch (info.shape) {
    case InputShape::matrix_vectors:
    case InputShape::psd_vectors:
    case InputShape::commuting_vectors:
      if (o.x_path.empty() || o.y_path.empty()) {
        throw Error(ErrorKind::InvalidSpec, info.id + " needs --x and --y");
      }
      in.x = load_vector(o.x_path);
      in.y = load_vector(o.y_path);
      break;
    default: break;
  }
  return in;
}

int cmd_sweep(const SweepOpts& o) {
  const BoundInfo& info = find_bound(o.bound);
  if ((o.param == "alpha" && !info.takes_alpha) || (o.param == "p" && !info.takes_p)) {
    throw Error(ErrorKind::UnknownParameter, o.bound + " does not take " + o.param);
  }
  if (o.steps < 1) throw Error(ErrorKind::InvalidSpec, "steps must be >= 1");
  const Variant variant = variant_from_string(o.variant);
  if (variant == Variant::as_printed && !info.has_variants) {
    throw Error(ErrorKind::InvalidSpec, o.bound + " has no as_printed variant");
  }
  const TrialInputs in = sweep_inputs(o, info);
  std::string csv = fmt::format("{},value,slack\n", o.param);
  for (int k = 0; k < o.steps; ++k) {
    const double v = o.steps == 1 || k == 0 ? o.from
                     : k == o.steps - 1    ? o.to
                                           : o.from + (o.to - o.from) * k / (o.steps - 1);
    CheckParams params = params_for(info, o.alpha.value_or(0.5), o.p);
    if (o.param == "alpha") params.alpha = v;
    else params.p = v;
    check_parameters(info, params);
    const BoundEvaluation e = evaluate_bound(o.bound, in, variant, params);
    csv += fmt::format("{},{},{}\n", num(v), num(e.rhs_terms.empty() ? e.lhs : e.rhs_terms[0]),
                       num(e.slack));
  }
  emit(csv, o.out);
  return kExitOk;
}

// ------------------------------------------------------------------ range

int cmd_range(const std::string& matrix, int points, const std::string& out) {
  const auto pts = numerical_range_boundary(load_matrix(matrix), points);
  std::string csv = "re,im\n";
  for (const auto& z : pts) csv += fmt::format("{},{}\n", num(z.real()), num(z.imag()));
  emit(csv, out);
  return kExitOk;
}

CLI::Option* add_format(CLI::App* app, std::string& format) {
  return app->add_option("--format", format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opradius: numerical radius, norm bounds and inequality verification"};
  app.require_subcommand(1);

  ComputeOpts compute;
  auto* c = app.add_subcommand("compute", "w, r, norm, ell or the Aluthge transform of a matrix");
  c->add_option("matrix", compute.matrix, "matrix JSON file")->required()->check(CLI::ExistingFile);
  c->add_option("quantity", compute.quantity, "w, r, norm, ell or aluthge")
      ->required()
      ->check(CLI::IsMember({"w", "r", "norm", "ell", "aluthge"}));
  c->add_option("--tol", compute.tol, "certification tolerance for w")->capture_default_str();
  add_format(c, compute.format);
  c->add_option("--out", compute.out, "output file (default stdout)");

  BoundsOpts bounds;
  auto* b = app.add_subcommand("bounds", "evaluate the classical and product bounds on a matrix");
  b->add_option("matrix", bounds.matrix)->required()->check(CLI::ExistingFile);
  b->add_option("--set", bounds.set, "classical, product or all")
      ->check(CLI::IsMember({"classical", "product", "all"}))
      ->capture_default_str();
  b->add_option("--s", bounds.s_path, "S for the product bounds (default: identity)")
      ->check(CLI::ExistingFile);
  b->add_option("--alpha", bounds.alpha, "power split exponent (default 0.5)");
  b->add_option("--p", bounds.p, "exponent p (default per bound)");
  b->add_option("--variant", bounds.variant, "canonical, as_printed or both")
      ->check(CLI::IsMember({"canonical", "as_printed", "both"}))
      ->capture_default_str();
  add_format(b, bounds.format);
  b->add_option("--out", bounds.out);

  BlockOpts block;
  auto* bb = app.add_subcommand("block-bounds", "pilot-matrix bounds for a block matrix");
  bb->add_option("blocks", block.blocks, "block JSON file")->required()->check(CLI::ExistingFile);
  bb->add_option("variant", block.which,
                 "houdu, bk, aok, eq4.4, eq4.6, eq4.7, cor7, cor8 or all")
      ->capture_default_str();
  bb->add_option("--form", block.form, "canonical, as_printed or both")
      ->check(CLI::IsMember({"canonical", "as_printed", "both"}))
      ->capture_default_str();
  bb->add_option("--alpha", block.alpha)->capture_default_str();
  add_format(bb, block.format);
  bb->add_option("--out", block.out);

  VerifyOpts verify;
  auto* v = app.add_subcommand("verify", "run bounds over a seeded ensemble");
  v->add_option("--bound", verify.bounds, "bound id (repeatable)");
  v->add_option("--check", verify.check_files, "CheckSpec JSON file (repeatable)")
      ->check(CLI::ExistingFile);
  add_ensemble_options(v, verify.ensemble);
  v->add_option("--trials", verify.trials)->capture_default_str();
  v->add_option("--tol", verify.tol, "relative violation tolerance")->capture_default_str();
  v->add_option("--variant", verify.variant, "canonical, as_printed or both")
      ->check(CLI::IsMember({"canonical", "as_printed", "both"}))
      ->capture_default_str();
  v->add_option("--alpha", verify.alpha);
  v->add_option("--p", verify.p);
  v->add_option("--out", verify.out, "report path for a single check");
  v->add_option("--out-dir", verify.out_dir, "directory for reports")->capture_default_str();
  v->add_option("--threads", verify.threads, "0: OpenMP default")->capture_default_str();
  v->add_flag("--no-wall-time", verify.no_wall_time, "omit wall_time from reports");

  std::string replay_path;
  auto* rp = app.add_subcommand("replay", "replay counterexamples from a report or payload");
  rp->add_option("payload", replay_path)->required()->check(CLI::ExistingFile);

  CompareOpts compare;
  auto* cmp = app.add_subcommand("compare", "compare upper bounds trial by trial");
  cmp->add_option("--bound", compare.bounds, "bound id (repeatable)")->required();
  add_ensemble_options(cmp, compare.ensemble);
  cmp->add_option("--trials", compare.trials)->capture_default_str();
  cmp->add_option("--form", compare.form, "canonical or as_printed")
      ->check(CLI::IsMember({"canonical", "as_printed"}))
      ->capture_default_str();
  cmp->add_option("--alpha", compare.alpha);
  cmp->add_option("--p", compare.p);
  cmp->add_option("--out", compare.out, "write the comparison JSON here");
  cmp->add_option("--threads", compare.threads)->capture_default_str();

  SweepOpts sweep;
  auto* sw = app.add_subcommand("sweep", "tabulate a bound over alpha or p");
  sw->add_option("bound", sweep.bound)->required();
  sw->add_option("param", sweep.param, "alpha or p")
      ->required()
      ->check(CLI::IsMember({"alpha", "p"}));
  sw->add_option("from", sweep.from)->required();
  sw->add_option("to", sweep.to)->required();
  sw->add_option("steps", sweep.steps)->required();
  sw->add_option("--matrix", sweep.matrix)->check(CLI::ExistingFile);
  sw->add_option("--s", sweep.s_path, "second operand (default: identity)")->check(CLI::ExistingFile);
  sw->add_option("--x", sweep.x_path)->check(CLI::ExistingFile);
  sw->add_option("--y", sweep.y_path)->check(CLI::ExistingFile);
  sw->add_option("--blocks", sweep.blocks)->check(CLI::ExistingFile);
  add_ensemble_options(sw, sweep.ensemble);
  sw->add_option("--index", sweep.index, "trial index when drawing from the ensemble");
  sw->add_option("--alpha", sweep.alpha, "fixed alpha while sweeping p");
  sw->add_option("--p", sweep.p, "fixed p while sweeping alpha");
  sw->add_option("--variant", sweep.variant, "canonical or as_printed")
      ->check(CLI::IsMember({"canonical", "as_printed"}))
      ->capture_default_str();
  sw->add_option("--out", sweep.out);

  std::string range_matrix, range_out;
  int range_points = 360;
  auto* rg = app.add_subcommand("range", "boundary points of the numerical range as CSV");
  rg->add_option("matrix", range_matrix)->required()->check(CLI::ExistingFile);
  rg->add_option("points", range_points)->capture_default_str();
  rg->add_option("--out", range_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*b) return cmd_bounds(bounds);
    if (*bb) return cmd_block_bounds(block);
    if (*v) return cmd_verify(verify);
    if (*rp) return cmd_replay(replay_path);
    if (*cmp) return cmd_compare(compare);
    if (*sw) return cmd_sweep(sweep);
    if (*rg) return cmd_range(range_matrix, range_points, range_out);
  } catch (const Error& e) {
    std::cerr << "opradius: " << e.what() << "\n";
    if (e.kind() == ErrorKind::CommutationViolated) {
      std::cerr << fmt::format("HypothesisMismatch: || |T|S - S*|T| || = {}\n", num(e.measure()));
    }
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "opradius: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}
