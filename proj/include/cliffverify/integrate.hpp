#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "cliffverify/polynomial.hpp"

namespace cliffverify {

/// (1/omega_{m-1}) * integral over S^{m-1} of u^alpha:
/// prod_i (alpha_i - 1)!! / (m (m+2) ... (m+|alpha|-2)), zero if any alpha_i is odd.
inline Rational sphere_moment_uncached(const std::vector<int>& alpha, int m) {
  Integer num(1);
  int total = 0;
  for (int a : alpha) {
    if (a % 2 != 0) return Rational(0);
    for (int j = a - 1; j > 1; j -= 2) num *= j;
    total += a;
  }
  Integer den(1);
  for (int j = m; j < m + total; j += 2) den *= j;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

namespace detail {

struct MomentKey {
  std::vector<int> sorted_alpha;
  int m;
  auto operator<=>(const MomentKey&) const = default;
};

}  // namespace detail

/// Memoized on the sorted exponent multiset (the moment is symmetric).
inline Rational sphere_moment(const std::vector<int>& alpha, int m) {
  for (int a : alpha)
    if (a % 2 != 0) return Rational(0);
  static std::shared_mutex mutex;
  static std::map<detail::MomentKey, Rational> cache;
  detail::MomentKey key{alpha, m};
  std::sort(key.sorted_alpha.begin(), key.sorted_alpha.end());
  while (!key.sorted_alpha.empty() && key.sorted_alpha.front() == 0) key.sorted_alpha.erase(key.sorted_alpha.begin());
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Rational value = sphere_moment_uncached(key.sorted_alpha, m);
  std::unique_lock lock(mutex);
  return cache.try_emplace(std::move(key), std::move(value)).first->second;
}

/// (1/omega_{m-1}) * integral over the unit ball of x^alpha.
inline Rational ball_moment(const std::vector<int>& alpha, int m) {
  int total = 0;
  for (int a : alpha) total += a;
  return sphere_moment(alpha, m) / Rational(total + m);
}

enum class Measure { sphere, ball };

using MeasureMap = std::map<Var, Measure>;

namespace detail {

inline Rational monomial_weight(const Monomial& mono, const MeasureMap& measures, int m) {
  Rational w(1);
  for (const auto& [g, measure] : measures) {
    std::vector<int> alpha(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) alpha[static_cast<std::size_t>(i)] = mono.exponent(g, i);
    w *= measure == Measure::sphere ? sphere_moment(alpha, m) : ball_moment(alpha, m);
    if (is_zero(w)) break;
  }
  return w;
}

/// p = sum_mu mu * rest_mu with mu ranging over the integrated groups.
inline std::map<Monomial, MVPolynomial> split_integrated(const MVPolynomial& p, const MeasureMap& measures) {
  std::map<Monomial, MVPolynomial> out;
  for (const auto& [mono, c] : p.terms()) {
    Monomial inner;
    Monomial outer = mono;
    for (const auto& [g, measure] : measures) {
      for (int i = 0; i < kMaxDimension; ++i) inner.set_exponent(g, i, mono.exponent(g, i));
      outer = outer.without(g);
    }
    auto [it, inserted] = out.try_emplace(inner, p.dimension());
    it->second.add_term(outer, c);
  }
  return out;
}

}  // namespace detail

/// Integrates out the listed groups (units of omega_{m-1} per group);
/// the remaining groups stay symbolic.
inline MVPolynomial integrate(const MVPolynomial& p, const MeasureMap& measures) {
  const int m = p.dimension();
  MVPolynomial::Accumulator acc(m);
  for (const auto& [inner, rest] : detail::split_integrated(p, measures)) {
    const Rational w = detail::monomial_weight(inner, measures, m);
    if (is_zero(w)) continue;
    for (const auto& [mono, c] : rest.terms()) acc.add_scaled(mono, c, w);
  }
  return acc.finish();
}

/// integrate(lhs * rhs) without expanding the product: for each integrated
/// monomial mu of lhs, S_mu = sum_nu w(mu+nu) rhs_nu, then lhs_mu * S_mu.
inline MVPolynomial integrate_product(const MVPolynomial& lhs, const MVPolynomial& rhs, const MeasureMap& measures) {
  const int m = lhs.dimension();
  const auto left = detail::split_integrated(lhs, measures);
  const auto right = detail::split_integrated(rhs, measures);
  MVPolynomial out(m);
  for (const auto& [mu, lpart] : left) {
    MVPolynomial s(m);
    for (const auto& [nu, rpart] : right) {
      const Rational w = detail::monomial_weight(mu * nu, measures, m);
      if (!is_zero(w)) s += rpart * w;
    }
    if (!s.is_zero()) out += lpart * s;
  }
  return out;
}

/// (P, Q)_u = integral over S^{m-1} of P(u) Q(u) dS(u), or of conj(P) Q when
/// `conjugated`. Other groups are carried through symbolically.
inline MVPolynomial pairing_u(const MVPolynomial& p, const MVPolynomial& q, bool conjugated = false, Var g = Var::u) {
  return integrate_product(conjugated ? conjugate(p) : p, q, MeasureMap{{g, Measure::sphere}});
}

/// Constant-valued result of an integral that removed every variable.
inline MV constant_value(const MVPolynomial& p) {
  for (const auto& [mono, c] : p.terms())
    if (mono.total_degree() != 0) throw std::logic_error("constant_value: polynomial still has free variables");
  return p.coefficient(Monomial{});
}

inline MV ball_integral(const MVPolynomial& p, Var g = Var::x) {
  return constant_value(integrate(p, MeasureMap{{g, Measure::ball}}));
}

inline MV sphere_integral(const MVPolynomial& p, Var g = Var::x) {
  return constant_value(integrate(p, MeasureMap{{g, Measure::sphere}}));
}

}  // namespace cliffverify
