// Acceptance criteria. One PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cliffverify.hpp"

using namespace cliffverify;

namespace {

// Identities are exact: every residual must have zero terms.
constexpr int kResidualTolerance = 0;

struct Outcome {
  bool pass = false;
  std::string note;
};

int failures = 0;

void criterion(int number, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", number, name,
              o.note.c_str(), elapsed, limit_s, in_time ? "" : " TIME EXCEEDED");
  std::fflush(stdout);
}

RunConfig matrix(std::vector<int> ms, std::vector<int> ks, ProjectionRule rule = {}) {
  RunConfig c;
  c.ms = std::move(ms);
  c.ks = std::move(ks);
  c.seed = 1;
  c.trials = 3;
  c.x_degree = 2;
  c.rule = rule;
  return c;
}

Outcome all_exact(const std::vector<Check>& checks) {
  const auto reports = run_checks(checks);
  std::size_t passed = 0;
  std::string first_failure;
  for (const auto& r : reports) {
    if (r.pass)
      ++passed;
    else if (first_failure.empty())
      first_failure = r.id + (r.error.empty() ? "" : " (" + r.error + ")");
  }
  std::string note = std::to_string(passed) + "/" + std::to_string(reports.size()) + " checks exact";
  if (!first_failure.empty()) note += ", first failure " + first_failure;
  return {!reports.empty() && passed == reports.size(), note};
}

template <class Adder>
std::vector<Check> build(Adder add, const RunConfig& c) {
  std::vector<Check> out;
  add(out, c);
  return out;
}

long long field(const CheckReport& r, const char* key) { return r.residual.at(key).get<long long>(); }

}  // namespace

int main() {
  criterion(1, "counterexample m=3,4,5", 5, [] {
    Outcome o = all_exact(build(add_counterexample_checks, matrix({3, 4, 5}, {1})));
    for (int m : {3, 4, 5}) {
      const auto r = check_counterexample(m);
      if (!r.details.at("dirac_image_nonzero").get<bool>() || field(r, "p1_terms") != kResidualTolerance)
        o.pass = false;
    }
    return o;
  });

  criterion(2, "inversion invariance of ker R_k", 30,
            [] { return all_exact(build(add_conformal_checks, matrix({3, 4}, {0, 1, 2}))); });

  criterion(3, "intertwining for the four elementary maps", 120, [] {
    const RunConfig c = matrix({3, 4}, {1, 2});
    if (c.maps.size() != 4) return Outcome{false, "map list incomplete"};
    return all_exact(build(add_intertwine_checks, c));
  });

  criterion(4, "Stokes and Cauchy formulas, seven variants", 120, [] {
    const RunConfig c = matrix({3, 4}, {1, 2});
    if (c.theorems.size() != 7) return Outcome{false, "theorem list incomplete"};
    return all_exact(build(add_stokes_checks, c));
  });

  criterion(5, "Almansi-Fischer split, k <= 3", 60,
            [] { return all_exact(build(add_almansi_checks, matrix({3, 4}, {0, 1, 2, 3}))); });

  criterion(6, "Stein-Weiss pairing and orthogonality", 60, [] {
    const auto checks = build(add_stein_weiss_checks, matrix({3, 4}, {1, 2}));
    std::size_t orthogonality = 0;
    for (const auto& c : checks)
      if (c.id.find("orthogonality") != std::string::npos) ++orthogonality;
    Outcome o = all_exact(checks);
    if (orthogonality != 4) o.pass = false;
    return o;
  });

  criterion(7, "core algebra", 10, [] {
    std::vector<Check> checks;
    add_core_checks(checks, matrix({3}, {0}));
    return all_exact(checks);
  });

  criterion(8, "mutation m+2k-1 breaks criteria 1, 5, 6", 120, [] {
    const ProjectionRule mutated{-1};
    bool c1 = false, c5 = false, c6 = false;
    for (int m : {3, 4, 5}) {
      const auto r = check_counterexample(m, mutated);
      if (!r.pass && field(r, "p1_terms") > kResidualTolerance) c1 = true;
    }
    for (const auto& r : run_checks(build(add_almansi_checks, matrix({3, 4}, {0, 1, 2, 3}, mutated))))
      if (!r.pass && field(r, "idempotence_failures") > 0) c5 = true;
    for (const auto& r : run_checks(build(add_stein_weiss_checks, matrix({3, 4}, {1, 2}, mutated))))
      if (!r.pass) c6 = true;
    std::string note = std::string("criterion 1 ") + (c1 ? "fails" : "passes") + ", criterion 5 " +
                       (c5 ? "fails" : "passes") + ", criterion 6 " + (c6 ? "fails" : "passes") +
                       " under the mutation";
    return Outcome{c1 && c5 && c6, note};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
