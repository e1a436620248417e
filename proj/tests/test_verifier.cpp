#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "opradius/verifier.hpp"

using namespace opradius;
using doctest::Approx;

namespace {

CheckSpec make_check(std::string id, EnsembleSpec e, int trials,
                     VariantSelection v = VariantSelection::canonical) {
  CheckSpec c;
  c.bound_id = std::move(id);
  c.ensemble = std::move(e);
  c.trials = trials;
  c.variant = v;
  return c;
}

EnsembleSpec block2(int dim, std::uint64_t seed) {
  EnsembleSpec e{EnsembleKind::block, dim, 1.0, seed, 1, 2};
  return e;
}

}  // namespace

TEST_CASE("registry covers every stable identifier") {
  for (const char* id : {"eq1.1", "eq1.2", "eq1.3", "eq1.4", "eq1.5", "fact1", "fact2", "fact3",
                         "eq2.2", "eq3.1", "eq3.2", "eq.mc", "eq3.3", "eq3.4", "kittaneh.ineq",
                         "eq3.6", "eq4.1", "eq4.2", "eq4.3", "eq4.x-sum", "eq1.6-houdu",
                         "eq1.6-bk", "eq1.6-aok", "eq4.4", "eq4.6", "eq4.7", "cor7", "cor8"}) {
    CHECK(find_bound(id).id == id);
  }
  CHECK_ERROR_KIND(find_bound("eq9.9"), ErrorKind::UnknownBound);
}

TEST_CASE("run_check eq1.1 on 1000 ginibre trials has no violations") {
  CheckSpec c = make_check("eq1.1", {EnsembleKind::ginibre, 6, 1.0, 42}, 1000);
  c.tol = 1e-9;
  const auto r = run_check(c);
  CHECK(r.violations == 0);
  CHECK(r.counterexamples.empty());
  CHECK(r.slack_stats.min <= r.slack_stats.median);
  CHECK(r.slack_stats.median <= r.slack_stats.max);
  CHECK(r.worst_slack == r.slack_stats.min);
}

TEST_CASE("run_check eq1.5 as_printed finds replayable counterexamples") {
  const CheckSpec c = make_check("eq1.5", {EnsembleKind::ginibre, 2, 3.0, 7}, 500,
                                 VariantSelection::as_printed);
  const auto r = run_check(c);
  CHECK(r.violations > 0);
  REQUIRE(!r.counterexamples.empty());
  CHECK(r.counterexamples.size() <= kCounterexampleCap);
  for (std::size_t k = 1; k < r.counterexamples.size(); ++k) {
    CHECK(r.counterexamples[k - 1].worst_slack <= r.counterexamples[k].worst_slack);
  }
  CHECK(r.counterexamples.front().worst_slack == r.worst_slack);
  const Json j = report_to_json(r, false);
  CHECK(j.contains("note"));
  for (const auto& ce : j["counterexamples"]) {
    const auto rep = replay(ce);
    CHECK(rep.inputs_match);
    CHECK(rep.slack_match);
    CHECK(std::abs(rep.replayed_slack - rep.stored_slack) <= 1e-12);
    // After a text round trip too.
    const auto again = replay(parse_json(dump(ce)));
    CHECK(again.replayed_slack == rep.replayed_slack);
    CHECK(again.slack_match);
  }
}

TEST_CASE("run_check on a single 1x1 zero matrix") {
  // scale tiny enough that ||T|| is far below the relative tolerance scale.
  const CheckSpec c = make_check("eq1.1", {EnsembleKind::ginibre, 1, 1e-300, 1}, 1);
  const auto r = run_check(c);
  CHECK(r.violations == 0);
  CHECK(std::abs(r.worst_slack) <= 1e-300);
}

TEST_CASE("reports are deterministic and independent of the thread count") {
  const CheckSpec c = make_check("eq1.5", {EnsembleKind::ginibre, 3, 2.5, 11, 1}, 120,
                                 VariantSelection::both);
  const std::string serial = dump(report_to_json(run_check(c, 1), false));
  const std::string parallel = dump(report_to_json(run_check(c, 4), false));
  const std::string again = dump(report_to_json(run_check(c), false));
  CHECK(serial == parallel);
  CHECK(serial == again);
}

TEST_CASE("both-variant runs break down per variant") {
  const CheckSpec c = make_check("eq1.5", {EnsembleKind::ginibre, 2, 3.0, 7}, 100,
                                 VariantSelection::both);
  const auto r = run_check(c);
  REQUIRE(r.by_variant.size() == 2);
  CHECK(r.by_variant[0].variant == Variant::canonical);
  CHECK(r.by_variant[0].violations == 0);
  CHECK(r.by_variant[1].violations > 0);
  CHECK(r.violations == r.by_variant[1].violations);
  for (const auto& ce : r.counterexamples) CHECK(ce.variant == Variant::as_printed);
}

TEST_CASE("hypothesis and parameter gates") {
  CHECK_ERROR_KIND(run_check(make_check("eq4.1", {EnsembleKind::ginibre, 3, 1.0, 1}, 5)),
                   ErrorKind::HypothesisMismatch);
  CHECK_ERROR_KIND(run_check(make_check("fact1", {EnsembleKind::ginibre, 3, 1.0, 1}, 5)),
                   ErrorKind::HypothesisMismatch);
  CHECK_ERROR_KIND(run_check(make_check("cor8", {EnsembleKind::ginibre, 3, 1.0, 1}, 5)),
                   ErrorKind::HypothesisMismatch);
  EnsembleSpec three{EnsembleKind::block, 2, 1.0, 1, 1, 3};
  CHECK_ERROR_KIND(run_check(make_check("cor8", three, 5)), ErrorKind::HypothesisMismatch);
  CHECK_ERROR_KIND(run_check(make_check("nope", {EnsembleKind::ginibre, 3, 1.0, 1}, 5)),
                   ErrorKind::UnknownBound);

  CheckSpec p = make_check("eq3.1", {EnsembleKind::psd, 3, 1.0, 1}, 5);
  p.params.p = 1.5;
  CHECK_ERROR_KIND(run_check(p), ErrorKind::HypothesisMismatch);
  CheckSpec q = make_check("eq1.1", {EnsembleKind::ginibre, 3, 1.0, 1}, 5);
  q.params.p = 3.0;
  CHECK_ERROR_KIND(run_check(q), ErrorKind::UnknownParameter);
  CheckSpec t = make_check("eq1.1", {EnsembleKind::ginibre, 3, 1.0, 1}, 0);
  CHECK_ERROR_KIND(run_check(t), ErrorKind::InvalidSpec);
  CheckSpec v = make_check("eq1.1", {EnsembleKind::ginibre, 3, 1.0, 1}, 5,
                           VariantSelection::as_printed);
  CHECK_ERROR_KIND(run_check(v), ErrorKind::InvalidSpec);
}

TEST_CASE("classical suite has no violations at tol 1e-8") {
  struct Row {
    const char* id;
    EnsembleSpec e;
    std::optional<double> p;
  };
  const std::vector<Row> rows = {
      {"eq1.1", {EnsembleKind::ginibre, 5, 1.0, 101, 1}, {}},
      {"eq1.2", {EnsembleKind::ginibre, 5, 1.0, 102, 1}, {}},
      {"eq1.3", {EnsembleKind::ginibre, 5, 1.0, 103, 1}, {}},
      {"eq1.4", {EnsembleKind::ginibre, 5, 1.0, 104, 1}, {}},
      {"eq1.5", {EnsembleKind::ginibre, 5, 2.0, 105, 1}, {}},
      {"fact1", {EnsembleKind::psd, 5, 1.0, 106, 1}, {}},
      {"fact2", {EnsembleKind::psd, 5, 1.0, 107, 1}, {}},
      {"fact3", {EnsembleKind::ginibre, 5, 1.0, 108, 1}, {}},
      {"eq2.2", {EnsembleKind::ginibre, 5, 1.0, 109, 1}, {}},
      {"eq3.1", {EnsembleKind::psd, 5, 1.0, 110, 1}, 3.0},
      {"eq3.2", {EnsembleKind::psd, 5, 1.0, 111, 1}, 1.5},
      {"eq3.3", {EnsembleKind::psd, 5, 1.0, 112, 1}, {}},
      {"eq3.4", {EnsembleKind::ginibre, 5, 1.0, 113, 1}, {}},
      {"kittaneh.ineq", {EnsembleKind::commuting_pair, 5, 1.0, 114, 1}, {}},
      {"eq1.6-houdu", block2(3, 115), {}},
      {"eq1.6-bk", block2(3, 116), {}},
      {"eq1.6-aok", block2(3, 117), {}},
  };
  for (const auto& row : rows) {
    CheckSpec c = make_check(row.id, row.e, 200);
    c.params.p = row.p;
    const auto r = run_check(c);
    CHECK_MESSAGE(r.violations == 0, row.id << " worst slack " << r.worst_slack);
  }
}

TEST_CASE("NaN slack counts as a violation") {
  BoundEvaluation e;
  e.chain.add("a", std::nan("")).then(Relation::le, "b", 1.0);
  CHECK(is_violation(e, 1e-8));
  BoundEvaluation ok;
  ok.chain.add("a", 1.0).then(Relation::le, "b", 1.0 - 1e-10);
  CHECK_FALSE(is_violation(ok, 1e-8));
}

TEST_CASE("replay negative paths") {
  const CheckSpec c = make_check("eq1.5", {EnsembleKind::ginibre, 2, 3.0, 7}, 500,
                                 VariantSelection::as_printed);
  const auto r = run_check(c);
  REQUIRE(!r.counterexamples.empty());
  const Json good = counterexample_to_json(c, r.counterexamples.front());

  Json seed = good;
  seed["check"]["ensemble"]["seed"] = 8;
  const auto moved = replay(seed);
  CHECK_FALSE(moved.inputs_match);
  CHECK_FALSE(moved.slack_match);

  Json missing = good;
  missing.erase("index");
  CHECK_ERROR_KIND(replay(missing), ErrorKind::CorruptPayload);
  Json outside = good;
  outside["index"] = 500;
  CHECK_ERROR_KIND(replay(outside), ErrorKind::CorruptPayload);
  Json broken = good;
  broken["inputs"]["t"]["data"] = Json::array();
  CHECK_ERROR_KIND(replay(broken), ErrorKind::CorruptPayload);
  Json tampered = good;
  tampered["worst_slack"] = 0.0;
  CHECK_FALSE(replay(tampered).slack_match);
}

TEST_CASE("counterexample cap and ordering") {
  const CheckSpec c = make_check("eq1.5", {EnsembleKind::ginibre, 2, 5.0, 3}, 300,
                                 VariantSelection::as_printed);
  const auto r = run_check(c);
  REQUIRE(r.violations > static_cast<int>(kCounterexampleCap));
  CHECK(r.counterexamples.size() == kCounterexampleCap);
  for (std::size_t k = 1; k < r.counterexamples.size(); ++k) {
    CHECK(r.counterexamples[k - 1].worst_slack <= r.counterexamples[k].worst_slack);
  }
}

TEST_CASE("paper-novel checks replay") {
  std::vector<CheckSpec> checks = {
      make_check("eq4.1", {EnsembleKind::commuting_pair, 4, 1.0, 201, 1}, 40),
      make_check("eq4.2", {EnsembleKind::commuting_pair, 4, 1.0, 202, 1}, 40,
                 VariantSelection::both),
      make_check("eq4.3", {EnsembleKind::commuting_pair, 4, 1.0, 203, 1}, 40,
                 VariantSelection::both),
      make_check("eq4.4", block2(3, 204), 40),
      make_check("eq4.7", block2(3, 205), 40, VariantSelection::both),
      make_check("cor7", block2(3, 206), 40, VariantSelection::both),
      make_check("cor8", block2(3, 207), 40, VariantSelection::both),
      make_check("eq4.x-sum", {EnsembleKind::commuting_pair, 4, 1.0, 208, 1}, 40),
  };
  for (const auto& c : checks) {
    const auto r = run_check(c);
    const Json j = report_to_json(r, false);
    CHECK(j["version"] == "1");
    for (const auto& ce : j["counterexamples"]) {
      const auto rep = replay(ce);
      CHECK_MESSAGE(rep.slack_match, c.bound_id);
      CHECK(rep.inputs_match);
    }
  }
}

TEST_CASE("compare_tightness") {
  const auto aok = compare_tightness({"eq1.6-aok", "eq1.6-bk"}, block2(2, 301), 200);
  CHECK(aok.win_counts[1] == 0);
  CHECK(aok.win_counts[0] + aok.ties == 200);
  for (const auto& row : aok.values) CHECK(row[0] <= row[1] + 1e-9);

  const auto self = compare_tightness({"eq1.6-houdu", "eq1.6-houdu"}, block2(2, 302), 50);
  CHECK(self.ties == 50);
  CHECK(self.win_counts == std::vector<int>{0, 0});

  const auto c8 = compare_tightness({"cor8", "eq1.6-houdu", "eq1.6-bk"}, block2(4, 303), 200, {},
                                    Variant::as_printed);
  REQUIRE(c8.cor8.has_value());
  CHECK(c8.cor8->trials == 200);
  // The as_printed form undercuts w(A), so a win over the pilots is not credited.
  CHECK(c8.cor8->cor8_violations > 0);
  CHECK(c8.cor8->verdict.rfind("not established", 0) == 0);
  int sum = c8.ties;
  for (int w : c8.win_counts) sum += w;
  CHECK(sum == 200);
  const Json j = tightness_to_json(c8);
  CHECK(j.contains("cor8_verdict"));

  const auto mats = compare_tightness({"eq1.1", "eq1.2", "eq1.4"},
                                      {EnsembleKind::ginibre, 4, 1.0, 304}, 50);
  for (const auto& row : mats.values) {
    CHECK(row[2] <= row[1] + 1e-9);  // Aluthge refinement <= Kittaneh 2003
    CHECK(row[1] <= row[0] + 1e-9);  // Kittaneh 2003 <= ||T||
  }

  CHECK_ERROR_KIND(compare_tightness({"eq1.1", "eq1.6-bk"}, block2(2, 1), 5),
                   ErrorKind::ShapeMismatch);
  CHECK_ERROR_KIND(compare_tightness({"eq2.2"}, {EnsembleKind::ginibre, 2, 1.0, 1}, 5),
                   ErrorKind::ShapeMismatch);
  CHECK_ERROR_KIND(compare_tightness({"eq1.1", "zzz"}, {EnsembleKind::ginibre, 2, 1.0, 1}, 5),
                   ErrorKind::UnknownBound);
}

TEST_CASE("compare_tightness is thread-count independent") {
  const auto a = compare_tightness({"cor8", "eq1.6-houdu", "eq1.6-bk"}, block2(3, 305), 60, {},
                                   Variant::canonical, 1);
  const auto b = compare_tightness({"cor8", "eq1.6-houdu", "eq1.6-bk"}, block2(3, 305), 60, {},
                                   Variant::canonical, 3);
  CHECK(dump(tightness_to_json(a)) == dump(tightness_to_json(b)));
}
