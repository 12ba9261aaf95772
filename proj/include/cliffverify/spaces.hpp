#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cliffverify/linalg.hpp"
#include "cliffverify/polynomial.hpp"

namespace cliffverify {

enum class SpaceKind { harmonic, left_monogenic, right_monogenic };

inline std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::harmonic: return "harmonic";
    case SpaceKind::left_monogenic: return "left-monogenic";
    case SpaceKind::right_monogenic: return "right-monogenic";
  }
  return "?";
}

enum class Side { left, right };

inline std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

inline Side parse_side(std::string_view s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw std::invalid_argument("unknown side '" + std::string(s) + "'");
}

/// Harmonic bases are scalar-valued (the Cl_m-valued space is the tensor
/// product with all blades); monogenic bases are Cl_m-valued.
struct PolySpaceBasis {
  int m = 0;
  int k = 0;
  SpaceKind kind = SpaceKind::harmonic;
  Var group = Var::u;
  std::vector<MVPolynomial> elements;
  std::size_t scalar_rank = 0;

  /// Dimension over the rationals of the Cl_m-valued space.
  std::size_t clifford_rank() const {
    return kind == SpaceKind::harmonic ? scalar_rank << static_cast<unsigned>(m) : scalar_rank;
  }
};

inline long long binomial(long long n, long long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  long long out = 1;
  for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// Closed forms: dim H_k (scalar) = C(m+k-1,k) - C(m+k-3,k-2) and
/// dim M_k (Cl_m-valued) = 2^m C(m+k-2,k).
inline long long harmonic_dimension(int m, int k) {
  return binomial(m + k - 1, k) - binomial(m + k - 3, k - 2);
}
inline long long monogenic_dimension(int m, int k) {
  return (1LL << m) * binomial(m + k - 2, k);
}

inline std::vector<MVPolynomial> homogeneous_monomials(int m, int k, Var g) {
  std::vector<MVPolynomial> out;
  for (const auto& ev : exponent_vectors(m, k))
    out.push_back(MVPolynomial::monomial(m, make_monomial(g, ev), MV::scalar(m, Rational(1))));
  return out;
}

inline PolySpaceBasis harmonic_basis(int m, int k, Var g = Var::u) {
  check_dimension(m);
  if (k < 0) throw std::invalid_argument("harmonic_basis: k must be nonnegative");
  PolySpaceBasis basis{m, k, SpaceKind::harmonic, g, {}, 0};
  basis.elements = kernel_of(homogeneous_monomials(m, k, g), [g](const MVPolynomial& p) { return laplacian(p, g); });
  basis.scalar_rank = basis.elements.size();
  return basis;
}

inline PolySpaceBasis monogenic_basis(int m, int k, Side side = Side::left, Var g = Var::u) {
  check_dimension(m);
  if (k < 0) throw std::invalid_argument("monogenic_basis: k must be nonnegative");
  std::vector<MVPolynomial> inputs;
  const unsigned blades = 1U << static_cast<unsigned>(m);
  for (const auto& mono : homogeneous_monomials(m, k, g))
    for (unsigned b = 0; b < blades; ++b) inputs.push_back(mono * MV::blade(m, static_cast<Blade>(b)));
  PolySpaceBasis basis{m, k, side == Side::left ? SpaceKind::left_monogenic : SpaceKind::right_monogenic, g, {}, 0};
  basis.elements = kernel_of(inputs, [g, side](const MVPolynomial& p) {
    return side == Side::left ? dirac_left(p, g) : dirac_right(p, g);
  });
  basis.scalar_rank = basis.elements.size();
  return basis;
}

/// Scalar basis times every blade (on the right): the Cl_m-valued space.
inline std::vector<MVPolynomial> tensor_with_blades(const PolySpaceBasis& basis) {
  std::vector<MVPolynomial> out;
  const unsigned blades = 1U << static_cast<unsigned>(basis.m);
  for (const auto& h : basis.elements)
    for (unsigned b = 0; b < blades; ++b) out.push_back(h * MV::blade(basis.m, static_cast<Blade>(b)));
  return out;
}

/// Process-wide cache of bases; construction of distinct keys may proceed
/// concurrently, the first finished result wins.
inline std::shared_ptr<const PolySpaceBasis> cached_basis(int m, int k, SpaceKind kind, Var g = Var::u) {
  using Key = std::tuple<int, int, SpaceKind, Var>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const PolySpaceBasis>> cache;
  const Key key{m, k, kind, g};
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const PolySpaceBasis>(
      kind == SpaceKind::harmonic ? harmonic_basis(m, k, g)
                                  : monogenic_basis(m, k, kind == SpaceKind::left_monogenic ? Side::left : Side::right, g));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(built)).first->second;
}

/// The constant in P_k = 1 + u D_u/(m+2k+shift). The correct value is
/// shift = -2; other values exist only for mutation testing.
struct ProjectionRule {
  int shift = -2;

  Rational denominator(int m, int k) const {
    const int d = m + 2 * k + shift;
    if (d == 0) throw std::domain_error("projection denominator vanishes");
    return Rational(d);
  }
};

inline void require_harmonic(const MVPolynomial& h, int k, Var g, const char* who) {
  if (!h.is_homogeneous(g, k))
    throw std::invalid_argument(std::string(who) + ": input not homogeneous of degree " + std::to_string(k) + " in " +
                                var_name(g));
  if (!laplacian(h, g).is_zero()) throw std::invalid_argument(std::string(who) + ": input not harmonic in " + var_name(g));
}

/// P_k h = h + u D_u h/(m+2k-2) for h in H_k.
inline MVPolynomial project_Pk(const MVPolynomial& h, int k, ProjectionRule rule = {}, Var g = Var::u) {
  require_harmonic(h, k, g, "project_Pk");
  MVPolynomial du = dirac_left(h, g);
  if (du.is_zero()) return h;
  const int m = h.dimension();
  return h + (MVPolynomial::vector_variable(m, g) * du) * Rational(1 / rule.denominator(m, k));
}

/// P_{k,r} h = h + (h D_u) u/(m+2k-2), projecting onto right-monogenics.
inline MVPolynomial project_Pk_right(const MVPolynomial& h, int k, ProjectionRule rule = {}, Var g = Var::u) {
  require_harmonic(h, k, g, "project_Pk_right");
  MVPolynomial du = dirac_right(h, g);
  if (du.is_zero()) return h;
  const int m = h.dimension();
  return h + (du * MVPolynomial::vector_variable(m, g)) * Rational(1 / rule.denominator(m, k));
}

inline MVPolynomial project_Pk(const MVPolynomial& h, int k, Side side, ProjectionRule rule = {}, Var g = Var::u) {
  return side == Side::left ? project_Pk(h, k, rule, g) : project_Pk_right(h, k, rule, g);
}

/// (I - P_k) h on the chosen side.
inline MVPolynomial complement_Pk(const MVPolynomial& h, int k, Side side = Side::left, ProjectionRule rule = {},
                                  Var g = Var::u) {
  return h - project_Pk(h, k, side, rule, g);
}

/// D_u(u p) = (-m-2k+2) p for p in M_{k-1}; this is the constant used to
/// recover the cofactor. It is a property of D_u, not of P_k.
inline Rational cofactor_constant(int m, int k) { return Rational(-m - 2 * k + 2); }

struct AlmansiFischerSplit {
  MVPolynomial p_k;
  MVPolynomial p_km1;
};

/// h = p_k + u p_{k-1} with p_k = P_k h and p_{k-1} = D_u h/(-m-2k+2).
inline AlmansiFischerSplit almansi_fischer_split(const MVPolynomial& h, int k, ProjectionRule rule = {},
                                                 Var g = Var::u) {
  require_harmonic(h, k, g, "almansi_fischer_split");
  const int m = h.dimension();
  if (k == 0) return {h, MVPolynomial(m)};
  return {project_Pk(h, k, rule, g), dirac_left(h, g) * Rational(1 / cofactor_constant(m, k))};
}

/// Left-monogenic and homogeneous of degree k in g (other groups free).
inline bool is_monogenic(const MVPolynomial& f, int k, Side side = Side::left, Var g = Var::u) {
  if (!f.is_homogeneous(g, k)) return false;
  return (side == Side::left ? dirac_left(f, g) : dirac_right(f, g)).is_zero();
}

/// If f = u q (left) or f = q u (right) with q monogenic of degree k-1 on
/// the same side, returns q.
inline std::optional<MVPolynomial> extract_u_factor(const MVPolynomial& f, int k, Side side = Side::left,
                                                    Var g = Var::u) {
  if (k < 1) return std::nullopt;
  const int m = f.dimension();
  if (f.is_zero()) return MVPolynomial(m);
  if (!f.is_homogeneous(g, k)) return std::nullopt;
  MVPolynomial d = side == Side::left ? dirac_left(f, g) : dirac_right(f, g);
  MVPolynomial q = d * Rational(1 / cofactor_constant(m, k));
  if (!is_monogenic(q, k - 1, side, g)) return std::nullopt;
  const MVPolynomial u = MVPolynomial::vector_variable(m, g);
  if ((side == Side::left ? u * q : q * u) != f) return std::nullopt;
  return q;
}

/// Right-multiplies every coefficient by the Witt idempotent I, landing in
/// the spinor left ideal Cl_m(C) I.
inline Polynomial<ComplexRational> spinor_restrict(const MVPolynomial& f) {
  const WittBasis wb = witt_basis(f.dimension());
  Polynomial<ComplexRational> out(f.dimension());
  for (const auto& [mono, c] : f.terms()) out.add_term(mono, complexify(c) * wb.idempotent);
  return out;
}

inline bool in_spinor_ideal(const Polynomial<ComplexRational>& f) {
  const WittBasis wb = witt_basis(f.dimension());
  for (const auto& [mono, c] : f.terms())
    if (c * wb.idempotent != c) return false;
  return true;
}

}  // namespace cliffverify
