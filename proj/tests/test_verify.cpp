#include <gtest/gtest.h>

#include <set>

#include "cliffverify.hpp"

using namespace cliffverify;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.ms = {3};
  c.ks = {0, 1, 2};
  c.trials = 1;
  return c;
}

std::string document(const RunConfig& c) {
  return report_document("suite", c, run_checks(full_suite(c), c.workers), false).dump();
}

}  // namespace

TEST(Suite, DefaultMatrixPasses) {
  const RunConfig c = small_config();
  const auto reports = run_checks(full_suite(c));
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.id << " " << r.error << " " << r.residual.dump();
  EXPECT_TRUE(all_pass(reports));
}

TEST(Suite, CoversEveryFamily) {
  std::set<std::string> prefixes;
  for (const auto& check : full_suite(small_config())) prefixes.insert(check.id.substr(0, check.id.find('.')));
  for (const char* p : {"core", "basis-rank", "almansi", "counterexample", "conformal", "intertwine", "stein-weiss",
                        "stokes"})
    EXPECT_TRUE(prefixes.count(p)) << p;
  std::set<std::string> stokes;
  for (const auto& check : full_suite(small_config()))
    if (check.id.rfind("stokes.", 0) == 0) stokes.insert(check.id.substr(0, check.id.find(".m")));
  EXPECT_EQ(stokes.size(), 7U);
}

TEST(Suite, DeterministicModuloTiming) { EXPECT_EQ(document(small_config()), document(small_config())); }

TEST(Suite, WorkerCountDoesNotChangeReport) {
  RunConfig a = small_config(), b = small_config();
  b.workers = 3;
  EXPECT_EQ(document(a), document(b));
}

TEST(Suite, SeedChangesFixturesNotVerdicts) {
  RunConfig a = small_config(), b = small_config();
  b.seed = 987654321;
  const auto ra = run_checks(full_suite(a));
  const auto rb = run_checks(full_suite(b));
  ASSERT_EQ(ra.size(), rb.size());
  bool some_digest_differs = false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].id, rb[i].id);
    EXPECT_EQ(ra[i].pass, rb[i].pass) << ra[i].id;
    if (ra[i].inputs_digest != rb[i].inputs_digest) some_digest_differs = true;
  }
  EXPECT_TRUE(some_digest_differs);
}

TEST(Suite, ReportsSortedAndCiteOneTheorem) {
  const auto reports = run_checks(full_suite(small_config()), 2);
  for (std::size_t i = 1; i < reports.size(); ++i) EXPECT_LT(reports[i - 1].id, reports[i].id);
  for (const auto& r : reports) {
    EXPECT_FALSE(r.theorem.empty());
    EXPECT_EQ(r.theorem, theorem_for_id(r.id)) << r.id;
    EXPECT_EQ(r.inputs_digest.size(), 16U);
  }
}

TEST(Suite, MutationFailsAtIdempotence) {
  RunConfig c = small_config();
  c.rule.shift = -1;
  const auto reports = run_checks(full_suite(c));
  EXPECT_FALSE(all_pass(reports));
  bool idempotence = false, counterexample = false, stein_weiss = false;
  for (const auto& r : reports) {
    if (r.id.rfind("almansi", 0) == 0 && !r.pass && r.residual["idempotence_failures"].get<long long>() > 0)
      idempotence = true;
    if (r.id.rfind("counterexample", 0) == 0 && !r.pass) counterexample = true;
    if (r.id.rfind("stein-weiss.m", 0) == 0 && !r.pass) stein_weiss = true;
  }
  EXPECT_TRUE(idempotence);
  EXPECT_TRUE(counterexample);
  EXPECT_TRUE(stein_weiss);
}

TEST(Suite, ExceptionsBecomeFailedReports) {
  std::vector<Check> checks{{"counterexample.m2", [] { return check_counterexample(2); }},
                            {"core.witt-idempotent", [] { return check_witt(); }}};
  const auto reports = run_checks(checks);
  ASSERT_EQ(reports.size(), 2U);
  EXPECT_EQ(reports[0].id, "core.witt-idempotent");
  EXPECT_TRUE(reports[0].pass);
  EXPECT_FALSE(reports[1].pass);
  EXPECT_FALSE(reports[1].error.empty());
  EXPECT_EQ(reports[1].theorem, theorems::kCounterexample);
  EXPECT_EQ(reports[1].inputs_digest.size(), 16U);
  EXPECT_FALSE(all_pass(reports));
}

TEST(Suite, DocumentShape) {
  const RunConfig c = small_config();
  std::vector<Check> checks;
  add_core_checks(checks, c);
  const Json doc = report_document("check core", c, run_checks(checks));
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["summary"]["total"], 3);
  EXPECT_EQ(doc["summary"]["failed"], 0);
  for (const auto& r : doc["checks"]) {
    for (const char* key : {"id", "theorem", "inputs_digest", "pass", "residual", "details", "wall_time_s"})
      EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_FALSE(report_document("check core", c, run_checks(checks), false)["checks"][0].contains("wall_time_s"));
}

TEST(Checks, IndividualFamiliesAtMFour) {
  EXPECT_TRUE(check_conformal(4, 2, 5, 0).pass);
  EXPECT_TRUE(check_intertwine(MapClass::dilation, 4, 1, 5, 0).pass);
  EXPECT_TRUE(check_stokes(StokesTheorem::AltForm, 4, 2, 5, 0).pass);
  EXPECT_TRUE(check_stein_weiss(4, 1, 5, 0).pass);
  EXPECT_TRUE(check_orthogonality(4, 2).pass);
  const auto a = check_almansi(4, 3);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.details["rank_H_k"], 16 * 16);
  EXPECT_EQ(a.details["rank_M_k"], 160);
  EXPECT_EQ(a.details["rank_M_km1"], 96);
}

TEST(Checks, ReflectionReportsHyperplaneSign) {
  const auto r = check_intertwine(MapClass::reflection, 3, 1, 1, 0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.details["hyperplane_reflection_relation"], "lhs = -rhs");
}
