#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cliffverify/moebius.hpp"
#include "cliffverify/random.hpp"
#include "cliffverify/serialize.hpp"
#include "cliffverify/stokes.hpp"

namespace cliffverify {

inline constexpr const char* kSchemaVersion = "1.0";

inline constexpr MapClass kElementaryMaps[] = {MapClass::inversion, MapClass::translation, MapClass::dilation,
                                               MapClass::reflection};

struct RunConfig {
  std::vector<int> ms{3, 4};
  std::vector<int> ks{0, 1, 2};
  std::uint64_t seed = 1;
  int trials = 3;
  int workers = 1;
  int x_degree = 2;
  std::vector<MapClass> maps{std::begin(kElementaryMaps), std::end(kElementaryMaps)};
  std::vector<StokesTheorem> theorems{std::begin(kAllStokesTheorems), std::end(kAllStokesTheorems)};
  ProjectionRule rule{};
};

inline Json to_json(const RunConfig& c) {
  Json maps = Json::array();
  for (auto m : c.maps) maps.push_back(to_string(m));
  Json th = Json::array();
  for (auto t : c.theorems) th.push_back(cli_name(t));
  Json out = {{"m", c.ms},      {"k", c.ks},       {"seed", c.seed},  {"trials", c.trials},
              {"x_degree", c.x_degree}, {"maps", maps}, {"theorems", th}};
  if (c.rule.shift != ProjectionRule{}.shift) out["projection_shift"] = c.rule.shift;
  return out;
}

struct CheckReport {
  std::string id;
  std::string theorem;
  std::string inputs_digest;
  bool pass = false;
  Json residual = Json::object();
  Json details = Json::object();
  std::string error;
  double wall_time_s = 0.0;
};

inline Json to_json(const CheckReport& r, bool include_time = true) {
  Json j = {{"id", r.id},
            {"theorem", r.theorem},
            {"inputs_digest", r.inputs_digest},
            {"pass", r.pass},
            {"residual", r.residual},
            {"details", r.details}};
  if (!r.error.empty()) j["error"] = r.error;
  if (include_time) j["wall_time_s"] = r.wall_time_s;
  return j;
}

inline std::string digest(const Json& inputs) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(inputs.dump())));
  return buf;
}

struct Check {
  std::string id;
  std::function<CheckReport()> run;
};

/// Theorem ids cited by reports.
namespace theorems {
inline constexpr const char* kCounterexample = "counterexample.dirac-not-invariant";
inline constexpr const char* kConformal = "theorem.rk-inversion-invariance";
inline constexpr const char* kIntertwine = "theorem.rk-intertwining";
inline constexpr const char* kSteinWeiss = "theorem.stein-weiss-equivalence";
inline constexpr const char* kAlmansi = "decomposition.almansi-fischer";
inline constexpr const char* kCore = "algebra.clifford-relations";
inline constexpr const char* kWitt = "algebra.witt-spinor-ideal";
}  // namespace theorems

inline std::string cell_id(const std::string& family, int m, int k) {
  return family + ".m" + std::to_string(m) + ".k" + std::to_string(k);
}
inline std::string trial_id(const std::string& family, int m, int k, int trial) {
  return cell_id(family, m, k) + ".t" + std::to_string(trial);
}

// ---------------------------------------------------------------------------
// Individual checks

inline MVPolynomial counterexample_function(int m) {
  return MVPolynomial::variable(m, Var::u, 1) * MV::generator(m, 1) -
         MVPolynomial::variable(m, Var::u, 2) * MV::generator(m, 2);
}

/// D_y[G(y) f(y^{-1}, ywy/|y|^2)] for f = u1 e1 - u2 e2 against
/// -2 w y (y1 e1 - y2 e2) |y|^{-m-2}, nonzero, and P_1 of it vanishing.
inline CheckReport check_counterexample(int m, ProjectionRule rule = {}) {
  if (m < 3) throw std::invalid_argument("counterexample requires m >= 3");
  CheckReport rep;
  rep.id = "counterexample.m" + std::to_string(m);
  rep.theorem = theorems::kCounterexample;
  const MVPolynomial f = counterexample_function(m);
  rep.inputs_digest = digest({{"m", m}, {"f", to_json(f)}});

  const RadialForm dirac = dirac_left_radial(inversion_image(f, 1));
  const MVPolynomial w = MVPolynomial::vector_variable(m, Var::w);
  const MVPolynomial y = MVPolynomial::vector_variable(m, Var::y);
  const MVPolynomial t = MVPolynomial::variable(m, Var::y, 1) * MV::generator(m, 1) -
                         MVPolynomial::variable(m, Var::y, 2) * MV::generator(m, 2);
  const RadialForm expected(w * y * t * Rational(-2), m + 2, Var::y);
  const RadialForm projected =
      dirac.map_numerator([&](const MVPolynomial& n) { return project_Pk(n, 1, rule, Var::w); });

  const bool matches = dirac == expected;
  const bool nonzero = !dirac.is_zero();
  const bool p1_zero = projected.is_zero();
  rep.pass = matches && nonzero && p1_zero;
  rep.residual = {{"dirac_minus_expected_terms", (dirac - expected).numerator().size()},
                  {"p1_terms", projected.numerator().size()}};
  rep.details = {{"dirac_image", to_json(dirac)},
                 {"matches_expected", matches},
                 {"dirac_image_nonzero", nonzero},
                 {"p1_zero", p1_zero}};
  return rep;
}

/// Random x-independent f in M_k (so R_k f = 0); R_{k,w} of its inversion
/// image must vanish.
inline CheckReport check_conformal(int m, int k, std::uint64_t seed, int trial, ProjectionRule rule = {}) {
  if (m < 3) throw std::invalid_argument("conformal check requires m >= 3");
  CheckReport rep;
  rep.id = trial_id("conformal", m, k, trial);
  rep.theorem = theorems::kConformal;
  FixtureRng rng(seed, rep.id);
  const MVPolynomial f = random_monogenic(m, k, Side::left, rng, {0, 2, Var::x});
  rep.inputs_digest = digest({{"f", to_json(f)}, {"k", k}});
  const bool in_kernel = apply_Rk(f, k, rule).is_zero();
  const RadialForm image = transform_function(MoebiusMap::inversion(m), f, k);
  const RadialForm r = apply_Rk_radial(image, k, rule);
  rep.pass = in_kernel && r.is_zero();
  rep.residual = {{"terms", r.numerator().size()}, {"weight", r.weight()}};
  rep.details = {{"f_terms", f.size()}, {"image_terms", image.numerator().size()}, {"image_weight", image.weight()},
                 {"f_in_kernel", in_kernel}};
  return rep;
}

inline MoebiusMap random_elementary_map(MapClass kind, int m, FixtureRng& rng) {
  switch (kind) {
    case MapClass::inversion: return MoebiusMap::inversion(m);
    case MapClass::translation: {
      std::vector<Rational> b;
      for (int i = 0; i < m; ++i) b.push_back(rng.coefficient());
      return MoebiusMap::translation(MV::vector(m, std::span<const Rational>(b)));
    }
    case MapClass::dilation: {
      static const Rational factors[] = {Rational(1, 2), Rational(2), Rational(3), Rational(1, 3), Rational(3, 2),
                                         Rational(2, 3)};
      return MoebiusMap::dilation(m, factors[rng.index(6)]);
    }
    case MapClass::reflection:
      return MoebiusMap::reflection(MV::generator(m, 1 + static_cast<int>(rng.index(static_cast<std::size_t>(m)))));
    case MapClass::composite: break;
  }
  throw std::invalid_argument("random_elementary_map: composite maps are not elementary");
}

/// "lhs = rhs", "lhs = -rhs" or "other" for the two sides of the identity.
inline std::string intertwine_relation(const MoebiusMap& map, const MVPolynomial& f, int k, ProjectionRule rule) {
  const RadialForm residual = intertwine_residual(map, f, k, rule);
  if (residual.is_zero()) return "lhs = rhs";
  const RadialForm rhs = transport(map, apply_Rk(f, k, rule));
  return residual + rhs == -rhs ? "lhs = -rhs" : "other";
}

inline CheckReport check_intertwine(MapClass kind, int m, int k, std::uint64_t seed, int trial, int x_degree = 2,
                                    ProjectionRule rule = {}) {
  CheckReport rep;
  rep.id = trial_id("intertwine." + to_string(kind), m, k, trial);
  rep.theorem = theorems::kIntertwine;
  FixtureRng rng(seed, rep.id);
  const MoebiusMap map = random_elementary_map(kind, m, rng);
  const MVPolynomial f = random_monogenic(m, k, Side::left, rng, {x_degree, 2, Var::x});
  rep.inputs_digest = digest({{"map", to_json(map)}, {"f", to_json(f)}, {"k", k}});
  const VahlenDiagnostics diag = validate_vahlen(map);
  const RadialForm residual = intertwine_residual(map, f, k, rule);
  rep.pass = diag.valid && residual.is_zero();
  rep.residual = {{"terms", residual.numerator().size()}, {"weight", residual.weight()}};
  rep.details = {{"vahlen_valid", diag.valid}, {"f_terms", f.size()}};
  if (diag.pseudo_determinant) rep.details["pseudo_determinant"] = *diag.pseudo_determinant;
  if (kind == MapClass::reflection) {
    const MV n = map.a;
    rep.details["vahlen_matrix"] = "(n, 0, 0, n), y -> n y n^{-1}";
    rep.details["hyperplane_reflection_relation"] = intertwine_relation(MoebiusMap::true_reflection(n), f, k, rule);
  }
  return rep;
}

inline CheckReport check_stokes(StokesTheorem theorem, int m, int k, std::uint64_t seed, int trial, int x_degree = 2,
                                ProjectionRule rule = {}) {
  CheckReport rep;
  rep.id = trial_id("stokes." + cli_name(theorem), m, k, trial);
  rep.theorem = theorem_id(theorem);
  FixtureRng rng(seed, rep.id);
  const auto [f, g] = stokes_fixture(theorem, m, k, rng, x_degree, rule);
  rep.inputs_digest = digest({{"f", to_json(f)}, {"g", to_json(g)}, {"k", k}});
  const IntegralReport ir = stokes_check(theorem, f, g, k, rule);
  rep.pass = ir.pass;
  Json sides = Json::object();
  for (const auto& [label, value] : ir.sides) sides[label] = to_json(value);
  rep.residual = {{"residual", to_json(ir.residual)}};
  rep.details = {{"sides", sides},
                 {"units", "omega_{m-1}^2"},
                 {"pairing", "unconjugated"},
                 {"conjugated_variant_zero", ir.conjugated_variant_zero}};
  return rep;
}

/// (q, D_x f)_u = (q, R_k f)_u for all q in the M_k basis, and R_k f in M_k.
inline CheckReport check_stein_weiss(int m, int k, std::uint64_t seed, int trial, int x_degree = 2,
                                     ProjectionRule rule = {}) {
  CheckReport rep;
  rep.id = trial_id("stein-weiss", m, k, trial);
  rep.theorem = theorems::kSteinWeiss;
  FixtureRng rng(seed, rep.id);
  const MVPolynomial f = random_monogenic(m, k, Side::left, rng, {x_degree, 2, Var::x});
  rep.inputs_digest = digest({{"f", to_json(f)}, {"k", k}});
  std::size_t nonzero = 0;
  const auto residuals = stein_weiss_residual(f, k, rule);
  for (const auto& r : residuals)
    if (!r.is_zero()) ++nonzero;
  const MVPolynomial range = dirac_left(apply_Rk(f, k, rule), Var::u);
  rep.pass = nonzero == 0 && range.is_zero();
  rep.residual = {{"nonzero_pairings", nonzero}, {"range_violation_terms", range.size()}};
  rep.details = {{"pairings", residuals.size()}, {"pairing", "conjugated"}};
  return rep;
}

/// (q, u p)_u = 0 for all q in M_k, p in M_{k-1} bases (conjugated pairing).
inline CheckReport check_orthogonality(int m, int k) {
  CheckReport rep;
  rep.id = cell_id("stein-weiss.orthogonality", m, k);
  rep.theorem = theorems::kSteinWeiss;
  rep.inputs_digest = digest({{"m", m}, {"k", k}});
  const auto qs = cached_basis(m, k, SpaceKind::left_monogenic);
  const auto ps = cached_basis(m, k - 1, SpaceKind::left_monogenic);
  const MVPolynomial u = MVPolynomial::vector_variable(m, Var::u);
  std::size_t nonzero = 0;
  std::size_t nonzero_plain = 0;
  for (const auto& p : ps->elements) {
    const MVPolynomial up = u * p;
    for (const auto& q : qs->elements) {
      if (!pairing_u(q, up, true).is_zero()) ++nonzero;
      if (!pairing_u(q, up, false).is_zero()) ++nonzero_plain;
    }
  }
  rep.pass = nonzero == 0;
  rep.residual = {{"nonzero_pairings", nonzero}};
  rep.details = {{"pairs", qs->elements.size() * ps->elements.size()},
                 {"pairing", "conjugated"},
                 {"unconjugated_nonzero_pairings", nonzero_plain}};
  return rep;
}

/// Split of every Cl_m-valued H_k basis element, idempotence of P_k and
/// rank M_k + rank M_{k-1} = rank H_k.
inline CheckReport check_almansi(int m, int k, ProjectionRule rule = {}) {
  CheckReport rep;
  rep.id = cell_id("almansi", m, k);
  rep.theorem = theorems::kAlmansi;
  rep.inputs_digest = digest({{"m", m}, {"k", k}});
  const auto harmonic = cached_basis(m, k, SpaceKind::harmonic);
  const MVPolynomial u = MVPolynomial::vector_variable(m, Var::u);
  std::size_t bad_pk = 0, bad_pkm1 = 0, bad_reconstruction = 0, bad_idempotence = 0;
  for (const auto& h : tensor_with_blades(*harmonic)) {
    const auto split = almansi_fischer_split(h, k, rule);
    if (!is_monogenic(split.p_k, k)) ++bad_pk;
    if (k > 0 && !is_monogenic(split.p_km1, k - 1)) ++bad_pkm1;
    if (split.p_k + u * split.p_km1 != h) ++bad_reconstruction;
    const MVPolynomial once = project_Pk(h, k, rule);
    if (project_Pk(once, k, rule) != once) ++bad_idempotence;
  }
  const std::size_t rank_h = harmonic->clifford_rank();
  const std::size_t rank_mk = cached_basis(m, k, SpaceKind::left_monogenic)->clifford_rank();
  const std::size_t rank_mkm1 = k > 0 ? cached_basis(m, k - 1, SpaceKind::left_monogenic)->clifford_rank() : 0;
  const bool ranks = rank_mk + rank_mkm1 == rank_h;
  rep.pass = bad_pk == 0 && bad_pkm1 == 0 && bad_reconstruction == 0 && bad_idempotence == 0 && ranks;
  rep.residual = {{"non_monogenic_p_k", bad_pk},
                  {"non_monogenic_p_km1", bad_pkm1},
                  {"reconstruction_failures", bad_reconstruction},
                  {"idempotence_failures", bad_idempotence},
                  {"rank_mismatch", static_cast<long long>(rank_h) - static_cast<long long>(rank_mk + rank_mkm1)}};
  rep.details = {{"elements", rank_h}, {"rank_H_k", rank_h}, {"rank_M_k", rank_mk}, {"rank_M_km1", rank_mkm1}};
  return rep;
}

/// Computed basis ranks against the closed forms.
inline CheckReport check_basis_rank(int m, int k) {
  CheckReport rep;
  rep.id = cell_id("basis-rank", m, k);
  rep.theorem = theorems::kAlmansi;
  rep.inputs_digest = digest({{"m", m}, {"k", k}});
  const long long h = static_cast<long long>(cached_basis(m, k, SpaceKind::harmonic)->scalar_rank);
  const long long l = static_cast<long long>(cached_basis(m, k, SpaceKind::left_monogenic)->scalar_rank);
  const long long r = static_cast<long long>(cached_basis(m, k, SpaceKind::right_monogenic)->scalar_rank);
  rep.pass = h == harmonic_dimension(m, k) && l == monogenic_dimension(m, k) && r == monogenic_dimension(m, k);
  rep.residual = {{"harmonic", h - harmonic_dimension(m, k)},
                  {"left_monogenic", l - monogenic_dimension(m, k)},
                  {"right_monogenic", r - monogenic_dimension(m, k)}};
  rep.details = {{"harmonic_scalar_rank", h}, {"left_monogenic_rank", l}, {"right_monogenic_rank", r}};
  return rep;
}

inline CheckReport check_anticommutation(int max_m = kMaxDimension) {
  CheckReport rep;
  rep.id = "core.anticommutation";
  rep.theorem = theorems::kCore;
  rep.inputs_digest = digest({{"max_m", max_m}});
  std::size_t failures = 0, pairs = 0;
  for (int m = kMinDimension; m <= max_m; ++m)
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) {
        const MV ei = MV::generator(m, i);
        const MV ej = MV::generator(m, j);
        const MV expected = i == j ? MV::scalar(m, Rational(-2)) : MV(m);
        if (ei * ej + ej * ei != expected) ++failures;
        ++pairs;
      }
  rep.pass = failures == 0;
  rep.residual = {{"failures", failures}};
  rep.details = {{"pairs", pairs}};
  return rep;
}

/// Random polynomial in x with random multivector coefficients.
inline MVPolynomial random_polynomial(int m, int max_degree, int term_count, FixtureRng& rng) {
  MVPolynomial p(m);
  const unsigned blades = 1U << static_cast<unsigned>(m);
  for (int t = 0; t < term_count; ++t) {
    Monomial mono;
    int budget = static_cast<int>(rng.index(static_cast<std::size_t>(max_degree + 1)));
    while (budget-- > 0) {
      const int i = static_cast<int>(rng.index(static_cast<std::size_t>(m)));
      mono.set_exponent(Var::x, i, mono.exponent(Var::x, i) + 1);
    }
    p.add_term(mono, MV::blade(m, static_cast<Blade>(rng.index(blades)), rng.coefficient()));
  }
  return p;
}

inline CheckReport check_dirac_square(std::uint64_t seed, int count = 50) {
  CheckReport rep;
  rep.id = "core.dirac-square";
  rep.theorem = theorems::kCore;
  FixtureRng rng(seed, rep.id);
  std::size_t failures = 0;
  std::uint64_t h = 0;
  for (int i = 0; i < count; ++i) {
    const int m = 2 + static_cast<int>(rng.index(4));
    const MVPolynomial p = random_polynomial(m, 4, 8, rng);
    h ^= fnv1a(to_json(p).dump()) + static_cast<std::uint64_t>(i);
    if (dirac_left(dirac_left(p, Var::x), Var::x) != -laplacian(p, Var::x)) ++failures;
  }
  rep.inputs_digest = digest({{"seed", seed}, {"count", count}, {"hash", h}});
  rep.pass = failures == 0;
  rep.residual = {{"failures", failures}};
  rep.details = {{"polynomials", count}};
  return rep;
}

inline CheckReport check_witt() {
  CheckReport rep;
  rep.id = "core.witt-idempotent";
  rep.theorem = theorems::kWitt;
  rep.inputs_digest = digest({{"m", {2, 4}}});
  std::size_t failures = 0;
  for (int m : {2, 4}) {
    const WittBasis wb = witt_basis(m);
    if (wb.idempotent.is_zero() || wb.idempotent * wb.idempotent != wb.idempotent) ++failures;
    for (const auto& f : wb.f)
      if (!(f * f).is_zero()) ++failures;
  }
  rep.pass = failures == 0;
  rep.residual = {{"failures", failures}};
  return rep;
}

// ---------------------------------------------------------------------------
// Suites

inline void add_counterexample_checks(std::vector<Check>& out, const RunConfig& c) {
  for (int m : c.ms)
    out.push_back({"counterexample.m" + std::to_string(m), [m, c] { return check_counterexample(m, c.rule); }});
}

inline void add_conformal_checks(std::vector<Check>& out, const RunConfig& c) {
  for (int m : c.ms)
    for (int k : c.ks)
      for (int t = 0; t < c.trials; ++t)
        out.push_back({trial_id("conformal", m, k, t), [=] { return check_conformal(m, k, c.seed, t, c.rule); }});
}

inline void add_intertwine_checks(std::vector<Check>& out, const RunConfig& c) {
  for (MapClass kind : c.maps)
    for (int m : c.ms)
      for (int k : c.ks) {
        if (k < 1) continue;
        for (int t = 0; t < c.trials; ++t)
          out.push_back({trial_id("intertwine." + to_string(kind), m, k, t),
                         [=] { return check_intertwine(kind, m, k, c.seed, t, c.x_degree, c.rule); }});
      }
}

inline void add_stokes_checks(std::vector<Check>& out, const RunConfig& c) {
  for (StokesTheorem th : c.theorems)
    for (int m : c.ms)
      for (int k : c.ks) {
        if (k < 1) continue;
        for (int t = 0; t < c.trials; ++t)
          out.push_back({trial_id("stokes." + cli_name(th), m, k, t),
                         [=] { return check_stokes(th, m, k, c.seed, t, c.x_degree, c.rule); }});
      }
}

inline void add_stein_weiss_checks(std::vector<Check>& out, const RunConfig& c) {
  for (int m : c.ms)
    for (int k : c.ks) {
      if (k < 1) continue;
      out.push_back({cell_id("stein-weiss.orthogonality", m, k), [=] { return check_orthogonality(m, k); }});
      for (int t = 0; t < c.trials; ++t)
        out.push_back({trial_id("stein-weiss", m, k, t),
                       [=] { return check_stein_weiss(m, k, c.seed, t, c.x_degree, c.rule); }});
    }
}

inline void add_almansi_checks(std::vector<Check>& out, const RunConfig& c) {
  for (int m : c.ms)
    for (int k : c.ks) out.push_back({cell_id("almansi", m, k), [=] { return check_almansi(m, k, c.rule); }});
}

inline void add_basis_rank_checks(std::vector<Check>& out, const RunConfig& c) {
  for (int m : c.ms)
    for (int k : c.ks) out.push_back({cell_id("basis-rank", m, k), [=] { return check_basis_rank(m, k); }});
}

inline void add_core_checks(std::vector<Check>& out, const RunConfig& c) {
  out.push_back({"core.anticommutation", [] { return check_anticommutation(); }});
  out.push_back({"core.dirac-square", [seed = c.seed] { return check_dirac_square(seed); }});
  out.push_back({"core.witt-idempotent", [] { return check_witt(); }});
}

inline std::vector<Check> full_suite(const RunConfig& c) {
  std::vector<Check> out;
  add_core_checks(out, c);
  add_basis_rank_checks(out, c);
  add_almansi_checks(out, c);
  RunConfig conformal = c;
  std::erase_if(conformal.ms, [](int m) { return m < 3; });
  add_counterexample_checks(out, conformal);
  add_conformal_checks(out, conformal);
  add_intertwine_checks(out, c);
  add_stein_weiss_checks(out, c);
  add_stokes_checks(out, c);
  return out;
}

/// Theorem cited by a check id, used when the check itself throws.
inline std::string theorem_for_id(const std::string& id) {
  auto starts = [&](std::string_view p) { return id.rfind(p, 0) == 0; };
  if (starts("counterexample")) return theorems::kCounterexample;
  if (starts("conformal")) return theorems::kConformal;
  if (starts("intertwine")) return theorems::kIntertwine;
  if (starts("stein-weiss")) return theorems::kSteinWeiss;
  if (starts("almansi") || starts("basis-rank")) return theorems::kAlmansi;
  if (starts("core.witt")) return theorems::kWitt;
  if (starts("core")) return theorems::kCore;
  if (starts("stokes."))
    for (StokesTheorem t : kAllStokesTheorems)
      if (starts("stokes." + cli_name(t) + ".")) return theorem_id(t);
  return "unknown";
}

/// Runs one check, turning exceptions into failed reports.
inline CheckReport run_check(const Check& check) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  try {
    rep = check.run();
  } catch (const std::exception& e) {
    rep.id = check.id;
    rep.theorem = theorem_for_id(check.id);
    rep.inputs_digest = digest({{"id", check.id}});
    rep.pass = false;
    rep.error = e.what();
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Executes on up to `workers` threads; output sorted by check id.
inline std::vector<CheckReport> run_checks(const std::vector<Check>& checks, int workers = 1) {
  std::vector<CheckReport> reports(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) reports[i] = run_check(checks[i]);
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(checks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return reports;
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

inline Json report_document(const std::string& command, const RunConfig& config,
                            const std::vector<CheckReport>& reports, bool include_time = true) {
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const auto& r : reports) {
    checks.push_back(to_json(r, include_time));
    if (r.pass) ++passed;
  }
  return {{"schema_version", kSchemaVersion},
          {"tool", "cliffverify"},
          {"command", command},
          {"config", to_json(config)},
          {"summary", {{"total", reports.size()}, {"passed", passed}, {"failed", reports.size() - passed}}},
          {"checks", checks}};
}

inline std::string report_text(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    os << (r.pass ? "PASS " : "FAIL ") << r.id << "  [" << r.theorem << "]  residual=" << r.residual.dump();
    if (!r.error.empty()) os << "  error=" << r.error;
    os << "\n";
    if (r.pass) ++passed;
  }
  os << passed << "/" << reports.size() << " checks passed\n";
  return os.str();
}

}  // namespace cliffverify
