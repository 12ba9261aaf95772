#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "cliffverify/spaces.hpp"

namespace cliffverify {

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Seeded fixture source: std::mt19937_64 with seed ^ fnv1a(stream name),
/// so each check draws an independent, reproducible stream.
class FixtureRng {
 public:
  FixtureRng(std::uint64_t seed, std::string_view stream) : engine_(seed ^ fnv1a(stream)) {}

  /// Uniform on {-3, -2, -1, 1, 2, 3}.
  Rational coefficient() {
    static constexpr int values[] = {-3, -2, -1, 1, 2, 3};
    return Rational(values[engine_() % 6]);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct FixtureOptions {
  int x_degree = 0;              // f depends on x up to this total degree
  int terms_per_monomial = 2;    // basis elements combined per x-monomial
  Var point = Var::x;
};

/// sum_{|a| <= x_degree} x^a * (random combination of basis elements).
inline MVPolynomial random_from_basis(const std::vector<MVPolynomial>& basis, FixtureRng& rng,
                                      FixtureOptions opt = {}) {
  if (basis.empty()) throw std::invalid_argument("random_from_basis: empty basis");
  const int m = basis.front().dimension();
  MVPolynomial out(m);
  for (int d = 0; d <= opt.x_degree; ++d)
    for (const auto& ev : exponent_vectors(m, d)) {
      MVPolynomial combo(m);
      for (int t = 0; t < opt.terms_per_monomial; ++t) combo += basis[rng.index(basis.size())] * rng.coefficient();
      out += MVPolynomial::monomial(m, make_monomial(opt.point, ev), MV::scalar(m, Rational(1))) * combo;
    }
  return out;
}

/// Random f that is (left or right) monogenic of degree k in u for each x.
inline MVPolynomial random_monogenic(int m, int k, Side side, FixtureRng& rng, FixtureOptions opt = {}) {
  const SpaceKind kind = side == Side::left ? SpaceKind::left_monogenic : SpaceKind::right_monogenic;
  MVPolynomial f(m);
  // Redraw in the rare event that the combination cancels.
  while (f.is_zero()) f = random_from_basis(cached_basis(m, k, kind)->elements, rng, opt);
  return f;
}

/// Random element of the Cl_m-valued H_k (scalar harmonic basis times blades).
inline MVPolynomial random_harmonic(int m, int k, FixtureRng& rng, FixtureOptions opt = {}) {
  const auto basis = tensor_with_blades(*cached_basis(m, k, SpaceKind::harmonic));
  MVPolynomial f(m);
  while (f.is_zero()) f = random_from_basis(basis, rng, opt);
  return f;
}

}  // namespace cliffverify
