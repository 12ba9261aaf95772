#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cliffverify/integrate.hpp"
#include "cliffverify/linalg.hpp"
#include "cliffverify/operators.hpp"
#include "cliffverify/random.hpp"

namespace cliffverify {

enum class StokesTheorem { Rk, Qk, Tk, TkStar, AltForm, CauchyRk, CauchyQk };

inline constexpr StokesTheorem kAllStokesTheorems[] = {StokesTheorem::Rk,      StokesTheorem::Qk,
                                                       StokesTheorem::Tk,      StokesTheorem::TkStar,
                                                       StokesTheorem::AltForm, StokesTheorem::CauchyRk,
                                                       StokesTheorem::CauchyQk};

/// CLI name: rk, qk, tk, tkstar, alt, cauchy-rk, cauchy-qk.
inline std::string cli_name(StokesTheorem t) {
  switch (t) {
    case StokesTheorem::Rk: return "rk";
    case StokesTheorem::Qk: return "qk";
    case StokesTheorem::Tk: return "tk";
    case StokesTheorem::TkStar: return "tkstar";
    case StokesTheorem::AltForm: return "alt";
    case StokesTheorem::CauchyRk: return "cauchy-rk";
    case StokesTheorem::CauchyQk: return "cauchy-qk";
  }
  return "?";
}

inline StokesTheorem parse_stokes_theorem(std::string_view s) {
  for (auto t : kAllStokesTheorems)
    if (cli_name(t) == s) return t;
  throw std::invalid_argument("unknown theorem '" + std::string(s) +
                              "' (expected rk, qk, tk, tkstar, alt, cauchy-rk, cauchy-qk)");
}

inline std::string theorem_id(StokesTheorem t) {
  switch (t) {
    case StokesTheorem::Rk: return "stokes.rk";
    case StokesTheorem::Qk: return "stokes.qk";
    case StokesTheorem::Tk: return "stokes.tk";
    case StokesTheorem::TkStar: return "stokes.tkstar";
    case StokesTheorem::AltForm: return "stokes.alternative";
    case StokesTheorem::CauchyRk: return "cauchy.rk";
    case StokesTheorem::CauchyQk: return "cauchy.qk";
  }
  return "?";
}

/// All integrals in units of omega_{m-1} per integrated sphere or ball.
struct IntegralReport {
  std::string theorem;
  std::vector<std::pair<std::string, MV>> sides;  // must all agree
  MV lhs{2};
  MV rhs{2};
  MV residual{2};
  bool pass = false;
  /// Same sides with the conjugated pairing conj(P) Q; informational.
  bool conjugated_variant_zero = false;
};

namespace detail {

inline MV volume_term(const MVPolynomial& a, const MVPolynomial& b, bool conj) {
  return constant_value(integrate_product(conj ? conjugate(a) : a, b,
                                          MeasureMap{{Var::x, Measure::ball}, {Var::u, Measure::sphere}}));
}

inline MV boundary_term(const MVPolynomial& a, const MVPolynomial& b, bool conj) {
  return constant_value(integrate_product(conj ? conjugate(a) : a, b,
                                          MeasureMap{{Var::x, Measure::sphere}, {Var::u, Measure::sphere}}));
}

inline void require(bool ok, StokesTheorem t, const std::string& what) {
  if (!ok) throw std::invalid_argument(theorem_id(t) + ": hypothesis failed: " + what);
}

/// Sides of one theorem under either pairing.
using SideList = std::vector<std::pair<std::string, MV>>;

inline MV residual_of(const SideList& sides) {
  for (std::size_t i = 1; i < sides.size(); ++i)
    if (sides[i].second != sides[0].second) return sides[i].second - sides[0].second;
  return MV(sides.front().second.dimension());
}

}  // namespace detail

/// Assembles both sides of the named theorem on the unit ball with n(x) = x.
///   rk:     f in M_k, g in right M_k:
///           int[(g R_{k,r}, f) + (g, R_k f)] = bd(g, P_k n f) = bd((g n) P_{k,r}, f)
///   tk:     f = u q (q in M_{k-1}), g in right M_k:
///           int[(g T*_{k,r}, f) + (g, T_k f)] = bd(g, P_k n f) = bd((g n)(I-P_{k,r}), f)
///   tkstar: f in M_k, g = q u (q in right M_{k-1}):
///           int[(g T_{k,r}, f) + (g, T*_k f)] = bd(g, (I-P_k) n f) = bd((g n) P_{k,r}, f)
///   qk:     f, g in M_{k-1} (left, right); F = u f, G = g u:
///           int[(G Q_{k,r}, F) + (G, Q_k F)] = bd(G, (I-P_k) n F) = bd((G n)(I-P_{k,r}), F)
///   alt:    f in M_k, g in right M_{k-1}; G = g u:
///           bd(G n f) = bd(G, (I-P_k) n f) = bd((G n) P_{k,r}, f) = int[(G T_{k,r}, f) + (G, T*_k f)]
///   cauchy-rk: R_k f = 0, g R_{k,r} = 0: bd(g, P_k n f) = 0
///   cauchy-qk: Q_k(u f) = 0, (g u) Q_{k,r} = 0: bd(g u, (I-P_k) n u f) = 0
inline IntegralReport stokes_check(StokesTheorem theorem, const MVPolynomial& f, const MVPolynomial& g, int k,
                                   ProjectionRule rule = {}) {
  const int m = f.dimension();
  const MVPolynomial n = MVPolynomial::vector_variable(m, Var::x);
  const MVPolynomial u = MVPolynomial::vector_variable(m, Var::u);
  auto P = [&](const MVPolynomial& h, Side s) { return project_Pk(h, k, s, rule); };
  auto Q = [&](const MVPolynomial& h, Side s) { return complement_Pk(h, k, s, rule); };
  auto op = [&](OperatorTag tag, Side s, const MVPolynomial& h) { return apply_operator({tag, s, m, k}, h, rule); };
  auto mono = [&](const MVPolynomial& h, int deg, Side s) { return is_monogenic(h, deg, s); };

  // Each entry: label and a function of the pairing flavour.
  std::vector<std::pair<std::string, std::function<MV(bool)>>> sides;
  using detail::boundary_term;
  using detail::volume_term;
  switch (theorem) {
    case StokesTheorem::Rk: {
      detail::require(mono(f, k, Side::left), theorem, "f in M_k");
      detail::require(mono(g, k, Side::right), theorem, "g in right M_k");
      const MVPolynomial gr = op(OperatorTag::Rk, Side::right, g);
      const MVPolynomial rf = op(OperatorTag::Rk, Side::left, f);
      const MVPolynomial pnf = P(n * f, Side::left);
      const MVPolynomial gnp = P(g * n, Side::right);
      sides.emplace_back("volume", [=](bool c) { return volume_term(gr, f, c) + volume_term(g, rf, c); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(g, pnf, c); });
      sides.emplace_back("boundary_right_projection", [=](bool c) { return boundary_term(gnp, f, c); });
      break;
    }
    case StokesTheorem::Tk: {
      detail::require(extract_u_factor(f, k, Side::left).has_value(), theorem, "f in u M_{k-1}");
      detail::require(mono(g, k, Side::right), theorem, "g in right M_k");
      const MVPolynomial gt = op(OperatorTag::TkStar, Side::right, g);
      const MVPolynomial tf = op(OperatorTag::Tk, Side::left, f);
      const MVPolynomial pnf = P(n * f, Side::left);
      const MVPolynomial gnq = Q(g * n, Side::right);
      sides.emplace_back("volume", [=](bool c) { return volume_term(gt, f, c) + volume_term(g, tf, c); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(g, pnf, c); });
      sides.emplace_back("boundary_right_projection", [=](bool c) { return boundary_term(gnq, f, c); });
      break;
    }
    case StokesTheorem::TkStar: {
      detail::require(mono(f, k, Side::left), theorem, "f in M_k");
      detail::require(extract_u_factor(g, k, Side::right).has_value(), theorem, "g in right M_{k-1} u");
      const MVPolynomial gt = op(OperatorTag::Tk, Side::right, g);
      const MVPolynomial tf = op(OperatorTag::TkStar, Side::left, f);
      const MVPolynomial qnf = Q(n * f, Side::left);
      const MVPolynomial gnp = P(g * n, Side::right);
      sides.emplace_back("volume", [=](bool c) { return volume_term(gt, f, c) + volume_term(g, tf, c); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(g, qnf, c); });
      sides.emplace_back("boundary_right_projection", [=](bool c) { return boundary_term(gnp, f, c); });
      break;
    }
    case StokesTheorem::Qk: {
      detail::require(mono(f, k - 1, Side::left), theorem, "f in M_{k-1}");
      detail::require(mono(g, k - 1, Side::right), theorem, "g in right M_{k-1}");
      const MVPolynomial F = u * f;
      const MVPolynomial G = g * u;
      const MVPolynomial gq = op(OperatorTag::Qk, Side::right, G);
      const MVPolynomial qf = op(OperatorTag::Qk, Side::left, F);
      const MVPolynomial qnf = Q(n * F, Side::left);
      const MVPolynomial gnq = Q(G * n, Side::right);
      sides.emplace_back("volume", [=](bool c) { return volume_term(gq, F, c) + volume_term(G, qf, c); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(G, qnf, c); });
      sides.emplace_back("boundary_right_projection", [=](bool c) { return boundary_term(gnq, F, c); });
      break;
    }
    case StokesTheorem::AltForm: {
      detail::require(mono(f, k, Side::left), theorem, "f in M_k");
      detail::require(mono(g, k - 1, Side::right), theorem, "g in right M_{k-1}");
      const MVPolynomial G = g * u;
      const MVPolynomial gt = op(OperatorTag::Tk, Side::right, G);
      const MVPolynomial tf = op(OperatorTag::TkStar, Side::left, f);
      const MVPolynomial nf = n * f;
      const MVPolynomial qnf = Q(nf, Side::left);
      const MVPolynomial gnp = P(G * n, Side::right);
      sides.emplace_back("boundary_plain", [=](bool c) { return boundary_term(G, nf, c); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(G, qnf, c); });
      sides.emplace_back("boundary_right_projection", [=](bool c) { return boundary_term(gnp, f, c); });
      sides.emplace_back("volume", [=](bool c) { return volume_term(gt, f, c) + volume_term(G, tf, c); });
      break;
    }
    case StokesTheorem::CauchyRk: {
      detail::require(mono(f, k, Side::left), theorem, "f in M_k");
      detail::require(mono(g, k, Side::right), theorem, "g in right M_k");
      detail::require(op(OperatorTag::Rk, Side::left, f).is_zero(), theorem, "R_k f = 0");
      detail::require(op(OperatorTag::Rk, Side::right, g).is_zero(), theorem, "g R_{k,r} = 0");
      const MVPolynomial pnf = P(n * f, Side::left);
      sides.emplace_back("zero", [m](bool) { return MV(m); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(g, pnf, c); });
      break;
    }
    case StokesTheorem::CauchyQk: {
      detail::require(mono(f, k - 1, Side::left), theorem, "f in M_{k-1}");
      detail::require(mono(g, k - 1, Side::right), theorem, "g in right M_{k-1}");
      const MVPolynomial F = u * f;
      const MVPolynomial G = g * u;
      detail::require(op(OperatorTag::Qk, Side::left, F).is_zero(), theorem, "Q_k(u f) = 0");
      detail::require(op(OperatorTag::Qk, Side::right, G).is_zero(), theorem, "(g u) Q_{k,r} = 0");
      const MVPolynomial qnf = Q(n * F, Side::left);
      sides.emplace_back("zero", [m](bool) { return MV(m); });
      sides.emplace_back("boundary_left_projection", [=](bool c) { return boundary_term(G, qnf, c); });
      break;
    }
  }

  IntegralReport report;
  report.theorem = theorem_id(theorem);
  detail::SideList plain;
  detail::SideList conj;
  for (const auto& [label, fn] : sides) {
    plain.emplace_back(label, fn(false));
    conj.emplace_back(label, fn(true));
  }
  report.sides = plain;
  report.lhs = plain.front().second;
  report.rhs = plain[1].second;
  report.residual = detail::residual_of(plain);
  report.pass = report.residual.is_zero();
  report.conjugated_variant_zero = detail::residual_of(conj).is_zero();
  return report;
}

/// Basis of the kernel of an operator among inputs x^a * b, |a| <= x_degree,
/// b running over the basis of its input space. Cached per key.
inline std::shared_ptr<const std::vector<MVPolynomial>> operator_kernel(OperatorKind kind, int x_degree,
                                                                        ProjectionRule rule = {}) {
  using Key = std::tuple<int, int, int, int, int, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const std::vector<MVPolynomial>>> cache;
  const Key key{static_cast<int>(kind.tag), static_cast<int>(kind.side), kind.m, kind.k, x_degree, rule.shift};
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int m = kind.m;
  std::vector<MVPolynomial> elements;
  if (kind.consumes_u_factor()) {
    const SpaceKind sk = kind.side == Side::left ? SpaceKind::left_monogenic : SpaceKind::right_monogenic;
    const MVPolynomial u = MVPolynomial::vector_variable(m, Var::u);
    for (const auto& q : cached_basis(m, kind.k - 1, sk)->elements)
      elements.push_back(kind.side == Side::left ? u * q : q * u);
  } else {
    const SpaceKind sk = kind.side == Side::left ? SpaceKind::left_monogenic : SpaceKind::right_monogenic;
    elements = cached_basis(m, kind.k, sk)->elements;
  }
  std::vector<MVPolynomial> inputs;
  for (int d = 0; d <= x_degree; ++d)
    for (const auto& ev : exponent_vectors(m, d)) {
      const MVPolynomial xm = MVPolynomial::monomial(m, make_monomial(Var::x, ev), MV::scalar(m, Rational(1)));
      for (const auto& e : elements) inputs.push_back(xm * e);
    }
  auto kernel = std::make_shared<const std::vector<MVPolynomial>>(
      kernel_of(inputs, [&](const MVPolynomial& h) { return apply_operator(kind, h, rule); }));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(kernel)).first->second;
}

/// Random valid (f, g) for the theorem, in the form stokes_check expects.
inline std::pair<MVPolynomial, MVPolynomial> stokes_fixture(StokesTheorem theorem, int m, int k, FixtureRng& rng,
                                                            int x_degree = 2, ProjectionRule rule = {}) {
  const FixtureOptions opt{x_degree, 2, Var::x};
  const MVPolynomial u = MVPolynomial::vector_variable(m, Var::u);
  auto kernel_sample = [&](OperatorKind kind) {
    const auto kernel = operator_kernel(kind, x_degree, rule);
    MVPolynomial out(m);
    while (out.is_zero())
      for (int t = 0; t < 3; ++t) out += (*kernel)[rng.index(kernel->size())] * rng.coefficient();
    return out;
  };
  switch (theorem) {
    case StokesTheorem::Rk:
      return {random_monogenic(m, k, Side::left, rng, opt), random_monogenic(m, k, Side::right, rng, opt)};
    case StokesTheorem::Tk:
      return {u * random_monogenic(m, k - 1, Side::left, rng, opt), random_monogenic(m, k, Side::right, rng, opt)};
    case StokesTheorem::TkStar:
      return {random_monogenic(m, k, Side::left, rng, opt), random_monogenic(m, k - 1, Side::right, rng, opt) * u};
    case StokesTheorem::Qk:
      return {random_monogenic(m, k - 1, Side::left, rng, opt), random_monogenic(m, k - 1, Side::right, rng, opt)};
    case StokesTheorem::AltForm:
      return {random_monogenic(m, k, Side::left, rng, opt), random_monogenic(m, k - 1, Side::right, rng, opt)};
    case StokesTheorem::CauchyRk:
      return {kernel_sample({OperatorTag::Rk, Side::left, m, k}), kernel_sample({OperatorTag::Rk, Side::right, m, k})};
    case StokesTheorem::CauchyQk: {
      // Kernel elements are u q (left) and q u (right); stokes_check wants q.
      const MVPolynomial F = kernel_sample({OperatorTag::Qk, Side::left, m, k});
      const MVPolynomial G = kernel_sample({OperatorTag::Qk, Side::right, m, k});
      return {*extract_u_factor(F, k, Side::left), *extract_u_factor(G, k, Side::right)};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace cliffverify
