#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliffverify/multivector.hpp"

namespace cliffverify {

/// Named vector-variable groups. Each group carries m commuting scalar
/// variables g_1..g_m; the Clifford structure lives only in coefficients.
enum class Var : std::uint8_t { x = 0, u = 1, y = 2, w = 3 };

inline constexpr int kGroupCount = 4;
inline constexpr std::array<Var, kGroupCount> kAllVars{Var::x, Var::u, Var::y, Var::w};

inline char var_name(Var g) { return "xuyw"[static_cast<int>(g)]; }

inline Var parse_var(std::string_view s) {
  if (s == "x") return Var::x;
  if (s == "u") return Var::u;
  if (s == "y") return Var::y;
  if (s == "w") return Var::w;
  throw std::invalid_argument("unknown variable group '" + std::string(s) + "'");
}

/// Exponent multi-index over all four groups.
struct Monomial {
  std::array<std::uint8_t, kGroupCount * kMaxDimension> e{};

  static constexpr std::size_t slot(Var g, int i) {
    return static_cast<std::size_t>(static_cast<int>(g) * kMaxDimension + i);
  }

  /// Exponent of g_{i+1} (0-based i).
  int exponent(Var g, int i) const { return e[slot(g, i)]; }
  void set_exponent(Var g, int i, int value) {
    if (value < 0 || value > 255) throw std::overflow_error("monomial exponent out of range");
    e[slot(g, i)] = static_cast<std::uint8_t>(value);
  }

  int degree(Var g) const {
    int d = 0;
    for (int i = 0; i < kMaxDimension; ++i) d += e[slot(g, i)];
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }

  Monomial only(Var g) const {
    Monomial out;
    for (int i = 0; i < kMaxDimension; ++i) out.e[slot(g, i)] = e[slot(g, i)];
    return out;
  }
  Monomial without(Var g) const {
    Monomial out = *this;
    for (int i = 0; i < kMaxDimension; ++i) out.e[slot(g, i)] = 0;
    return out;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    for (std::size_t i = 0; i < a.e.size(); ++i) {
      const int s = a.e[i] + b.e[i];
      if (s > 255) throw std::overflow_error("monomial exponent overflow");
      out.e[i] = static_cast<std::uint8_t>(s);
    }
    return out;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial make_monomial(Var g, std::span<const int> exps) {
  Monomial mono;
  for (std::size_t i = 0; i < exps.size(); ++i) mono.set_exponent(g, static_cast<int>(i), exps[i]);
  return mono;
}

/// All exponent vectors of total degree d in m variables, in descending
/// lexicographic order (g_1^d first).
inline std::vector<std::vector<int>> exponent_vectors(int m, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == m - 1) {
      cur[static_cast<std::size_t>(idx)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  if (d >= 0) rec(rec, 0, d);
  return out;
}

/// Multivector-coefficient polynomial in the variable groups. The
/// coefficient of the left factor of a product multiplies on the left.
template <class S>
class Polynomial {
 public:
  using Scalar = S;
  using Coeff = Multivector<S>;
  using TermMap = std::map<Monomial, Coeff>;

  explicit Polynomial(int m) : m_(m) { check_dimension(m); }

  static Polynomial constant(const Coeff& c) {
    Polynomial p(c.dimension());
    p.add_term(Monomial{}, c);
    return p;
  }
  static Polynomial scalar(int m, const S& s) { return constant(Coeff::scalar(m, s)); }
  static Polynomial monomial(int m, const Monomial& mono, const Coeff& c) {
    Polynomial p(m);
    p.add_term(mono, c);
    return p;
  }
  /// The scalar coordinate g_i (1-based).
  static Polynomial variable(int m, Var g, int i) {
    if (i < 1 || i > m) throw std::out_of_range("variable index out of range");
    Monomial mono;
    mono.set_exponent(g, i - 1, 1);
    return monomial(m, mono, Coeff::scalar(m, S(1)));
  }
  /// The vector variable sum_i g_i e_i.
  static Polynomial vector_variable(int m, Var g) {
    Polynomial p(m);
    for (int i = 1; i <= m; ++i) {
      Monomial mono;
      mono.set_exponent(g, i - 1, 1);
      p.add_term(mono, Coeff::generator(m, i));
    }
    return p;
  }
  /// sum_i g_i^2 (scalar).
  static Polynomial norm_squared(int m, Var g) {
    Polynomial p(m);
    for (int i = 0; i < m; ++i) {
      Monomial mono;
      mono.set_exponent(g, i, 2);
      p.add_term(mono, Coeff::scalar(m, S(1)));
    }
    return p;
  }

  int dimension() const { return m_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t coefficient_count() const {
    std::size_t n = 0;
    for (const auto& [mono, c] : terms_) n += c.size();
    return n;
  }

  Coeff coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Coeff(m_) : it->second;
  }

  void add_term(const Monomial& mono, const Coeff& c) {
    if (c.dimension() != m_) throw std::invalid_argument("coefficient dimension mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool uses(Var g) const {
    for (const auto& [mono, c] : terms_)
      if (mono.degree(g) > 0) return true;
    return false;
  }
  int max_degree(Var g) const {
    int d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree(g));
    return d;
  }
  bool is_homogeneous(Var g, int k) const {
    for (const auto& [mono, c] : terms_)
      if (mono.degree(g) != k) return false;
    return true;
  }
  /// True when every coefficient is a pure scalar.
  bool is_scalar_valued() const {
    for (const auto& [mono, c] : terms_)
      if (!c.is_scalar()) return false;
    return true;
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same_dimension(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    require_same_dimension(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }
  Polynomial& operator*=(const S& s) {
    if (cliffverify::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [mono, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
  friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_dimension(b);
    Accumulator acc(a.m_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) acc.add_product(ma * mb, ca, cb);
    return acc.finish();
  }

  /// Constant multivector times polynomial (constant on the left).
  friend Polynomial operator*(const Coeff& c, const Polynomial& p) {
    Polynomial out(p.m_);
    for (const auto& [mono, pc] : p.terms_) out.add_term(mono, c * pc);
    return out;
  }
  friend Polynomial operator*(const Polynomial& p, const Coeff& c) {
    Polynomial out(p.m_);
    for (const auto& [mono, pc] : p.terms_) out.add_term(mono, pc * c);
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  template <class F>
  Polynomial map_coefficients(F&& f) const {
    Polynomial out(m_);
    for (const auto& [mono, c] : terms_) out.add_term(mono, f(c));
    return out;
  }

  /// Collects raw (monomial, blade, coefficient) triples and normalizes once.
  class Accumulator {
   public:
    explicit Accumulator(int m) : m_(m) {}
    void add(const Monomial& mono, Blade b, S c) { raw_[mono].emplace_back(b, std::move(c)); }
    void add(const Monomial& mono, const Coeff& c) {
      auto& bucket = raw_[mono];
      for (const auto& t : c.terms()) bucket.push_back(t);
    }
    void add_scaled(const Monomial& mono, const Coeff& c, const S& s) {
      auto& bucket = raw_[mono];
      for (const auto& [b, v] : c.terms()) bucket.emplace_back(b, v * s);
    }
    void add_product(const Monomial& mono, const Coeff& lhs, const Coeff& rhs) {
      auto& bucket = raw_[mono];
      for (const auto& [ba, ca] : lhs.terms()) {
        for (const auto& [bb, cb] : rhs.terms()) {
          S c = ca * cb;
          if (blade_product_sign(ba, bb) < 0) c = -c;
          bucket.emplace_back(static_cast<Blade>(ba ^ bb), std::move(c));
        }
      }
    }
    Polynomial finish() {
      Polynomial out(m_);
      for (auto& [mono, raw] : raw_) {
        Coeff c(m_, std::move(raw));
        if (!c.is_zero()) out.terms_.emplace_hint(out.terms_.end(), mono, std::move(c));
      }
      raw_.clear();
      return out;
    }

   private:
    int m_;
    std::map<Monomial, std::vector<typename Coeff::Term>> raw_;
  };

 private:
  void require_same_dimension(const Polynomial& o) const {
    if (m_ != o.m_)
      throw std::invalid_argument("polynomial dimension mismatch (" + std::to_string(m_) +
                                  " vs " + std::to_string(o.m_) + ")");
  }

  int m_;
  TermMap terms_;
};

using MVPolynomial = Polynomial<Rational>;

template <class S>
Polynomial<S> p_add(const Polynomial<S>& a, const Polynomial<S>& b) { return a + b; }

template <class S>
Polynomial<S> p_mul(const Polynomial<S>& a, const Polynomial<S>& b) { return a * b; }

/// d/d g_i (1-based i).
template <class S>
Polynomial<S> partial(const Polynomial<S>& p, Var g, int i) {
  const int m = p.dimension();
  if (i < 1 || i > m) throw std::out_of_range("partial: index out of range");
  typename Polynomial<S>::Accumulator acc(m);
  for (const auto& [mono, c] : p.terms()) {
    const int e = mono.exponent(g, i - 1);
    if (e == 0) continue;
    Monomial next = mono;
    next.set_exponent(g, i - 1, e - 1);
    acc.add_scaled(next, c, S(e));
  }
  return acc.finish();
}

/// sum_i e_i d/dg_i p, with e_i multiplying from the left.
template <class S>
Polynomial<S> dirac_left(const Polynomial<S>& p, Var g) {
  const int m = p.dimension();
  typename Polynomial<S>::Accumulator acc(m);
  for (const auto& [mono, c] : p.terms()) {
    for (int i = 0; i < m; ++i) {
      const int e = mono.exponent(g, i);
      if (e == 0) continue;
      Monomial next = mono;
      next.set_exponent(g, i, e - 1);
      const Blade gi = generator_blade(i + 1);
      for (const auto& [b, v] : c.terms()) {
        S coeff = v * S(e);
        if (blade_product_sign(gi, b) < 0) coeff = -coeff;
        acc.add(next, static_cast<Blade>(gi ^ b), std::move(coeff));
      }
    }
  }
  return acc.finish();
}

/// sum_i (d/dg_i p) e_i, with e_i multiplying from the right.
template <class S>
Polynomial<S> dirac_right(const Polynomial<S>& p, Var g) {
  const int m = p.dimension();
  typename Polynomial<S>::Accumulator acc(m);
  for (const auto& [mono, c] : p.terms()) {
    for (int i = 0; i < m; ++i) {
      const int e = mono.exponent(g, i);
      if (e == 0) continue;
      Monomial next = mono;
      next.set_exponent(g, i, e - 1);
      const Blade gi = generator_blade(i + 1);
      for (const auto& [b, v] : c.terms()) {
        S coeff = v * S(e);
        if (blade_product_sign(b, gi) < 0) coeff = -coeff;
        acc.add(next, static_cast<Blade>(b ^ gi), std::move(coeff));
      }
    }
  }
  return acc.finish();
}

/// sum_i g_i d/dg_i p: scales each term by its g-degree.
template <class S>
Polynomial<S> euler(const Polynomial<S>& p, Var g) {
  typename Polynomial<S>::Accumulator acc(p.dimension());
  for (const auto& [mono, c] : p.terms()) {
    const int d = mono.degree(g);
    if (d != 0) acc.add_scaled(mono, c, S(d));
  }
  return acc.finish();
}

template <class S>
Polynomial<S> laplacian(const Polynomial<S>& p, Var g) {
  const int m = p.dimension();
  typename Polynomial<S>::Accumulator acc(m);
  for (const auto& [mono, c] : p.terms()) {
    for (int i = 0; i < m; ++i) {
      const int e = mono.exponent(g, i);
      if (e < 2) continue;
      Monomial next = mono;
      next.set_exponent(g, i, e - 2);
      acc.add_scaled(next, c, S(e * (e - 1)));
    }
  }
  return acc.finish();
}

template <class S>
Polynomial<S> conjugate(const Polynomial<S>& p) {
  return p.map_coefficients([](const Multivector<S>& c) { return conjugate(c); });
}

template <class S>
Polynomial<S> reverse(const Polynomial<S>& p) {
  return p.map_coefficients([](const Multivector<S>& c) { return reverse(c); });
}

/// Terms of p whose g-degree equals d.
template <class S>
Polynomial<S> homogeneous_part(const Polynomial<S>& p, Var g, int d) {
  Polynomial<S> out(p.dimension());
  for (const auto& [mono, c] : p.terms())
    if (mono.degree(g) == d) out.add_term(mono, c);
  return out;
}

/// Renames group `from` to `to`; `to` must be unused in p.
template <class S>
Polynomial<S> relabel(const Polynomial<S>& p, Var from, Var to) {
  if (from == to) return p;
  if (p.uses(to)) throw std::invalid_argument("relabel: target group already present");
  const int m = p.dimension();
  Polynomial<S> out(m);
  for (const auto& [mono, c] : p.terms()) {
    Monomial next = mono.without(from);
    for (int i = 0; i < m; ++i) next.set_exponent(to, i, mono.exponent(from, i));
    out.add_term(next, c);
  }
  return out;
}

/// Groups p by the exponents of g: p = sum_mu g^mu * rest_mu, where rest_mu
/// no longer involves g.
template <class S>
std::map<Monomial, Polynomial<S>> split_by_group(const Polynomial<S>& p, Var g) {
  std::map<Monomial, Polynomial<S>> out;
  for (const auto& [mono, c] : p.terms()) {
    auto [it, inserted] = out.try_emplace(mono.only(g), p.dimension());
    it->second.add_term(mono.without(g), c);
  }
  return out;
}

/// Replaces g_i by images[i-1] (scalar-valued polynomials), grouping the
/// result by the g-degree of the originating term. Coefficients keep their
/// position; only the commuting layer changes.
template <class S>
std::map<int, Polynomial<S>> substitute_graded(const Polynomial<S>& p, Var g,
                                               std::span<const Polynomial<S>> images) {
  const int m = p.dimension();
  if (static_cast<int>(images.size()) != m)
    throw std::invalid_argument("substitute: need one image per variable");
  for (const auto& img : images)
    if (!img.is_scalar_valued()) throw std::invalid_argument("substitute: images must be scalar-valued");

  // powers[i][e] = images[i]^e, built lazily.
  std::vector<std::vector<Polynomial<S>>> powers(static_cast<std::size_t>(m));
  auto power = [&](int i, int e) -> const Polynomial<S>& {
    auto& list = powers[static_cast<std::size_t>(i)];
    if (list.empty()) list.push_back(Polynomial<S>::scalar(m, S(1)));
    while (static_cast<int>(list.size()) <= e) list.push_back(list.back() * images[static_cast<std::size_t>(i)]);
    return list[static_cast<std::size_t>(e)];
  };

  std::map<int, typename Polynomial<S>::Accumulator> buckets;
  for (const auto& [gpart, rest] : split_by_group(p, g)) {
    Polynomial<S> image = Polynomial<S>::scalar(m, S(1));
    for (int i = 0; i < m; ++i) {
      const int e = gpart.exponent(g, i);
      if (e > 0) image = image * power(i, e);
    }
    auto& acc = buckets.try_emplace(gpart.degree(g), m).first->second;
    for (const auto& [imono, icoef] : image.terms()) {
      const S s = icoef.scalar_part();
      for (const auto& [rmono, rcoef] : rest.terms()) acc.add_scaled(imono * rmono, rcoef, s);
    }
  }
  std::map<int, Polynomial<S>> out;
  for (auto& [d, acc] : buckets) out.emplace(d, acc.finish());
  return out;
}

template <class S>
Polynomial<S> substitute(const Polynomial<S>& p, Var g, std::span<const Polynomial<S>> images) {
  Polynomial<S> out(p.dimension());
  for (auto& [d, part] : substitute_graded(p, g, images)) out += part;
  return out;
}

/// g_i -> sum_j matrix[i][j] g_j.
template <class S>
Polynomial<S> substitute_linear(const Polynomial<S>& p, Var g,
                                const std::vector<std::vector<Rational>>& matrix) {
  const int m = p.dimension();
  if (static_cast<int>(matrix.size()) != m) throw std::invalid_argument("substitute_linear: matrix must be m x m");
  std::vector<Polynomial<S>> images;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(matrix[static_cast<std::size_t>(i)].size()) != m)
      throw std::invalid_argument("substitute_linear: matrix must be m x m");
    Polynomial<S> img(m);
    for (int j = 0; j < m; ++j) {
      const Rational& a = matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!is_zero(a))
        img += Polynomial<S>::variable(m, g, j + 1) * ScalarTraits<S>::from_rational(a);
    }
    images.push_back(std::move(img));
  }
  return substitute(p, g, std::span<const Polynomial<S>>(images));
}

/// Point assignments per group; groups absent from the map must not occur.
using PointAssignment = std::map<Var, std::vector<Rational>>;

inline MV evaluate(const MVPolynomial& p, const PointAssignment& point) {
  const int m = p.dimension();
  MV out(m);
  std::vector<MV::Term> acc;
  for (const auto& [mono, c] : p.terms()) {
    Rational v(1);
    for (Var g : kAllVars) {
      if (mono.degree(g) == 0) continue;
      auto it = point.find(g);
      if (it == point.end())
        throw std::invalid_argument(std::string("evaluate: no value for group ") + var_name(g));
      if (static_cast<int>(it->second.size()) != m)
        throw std::invalid_argument("evaluate: point dimension mismatch");
      for (int i = 0; i < m; ++i) {
        const int e = mono.exponent(g, i);
        if (e > 0) v *= pow(it->second[static_cast<std::size_t>(i)], static_cast<unsigned>(e));
      }
    }
    for (const auto& [b, cv] : c.terms()) acc.emplace_back(b, cv * v);
  }
  return MV(m, std::move(acc));
}

inline std::string to_text(const MVPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += "(" + to_text(c) + ")";
    for (Var g : kAllVars)
      for (int i = 0; i < kMaxDimension; ++i) {
        const int e = mono.exponent(g, i);
        if (e == 0) continue;
        out += std::string("*") + var_name(g) + std::to_string(i + 1);
        if (e > 1) out += "^" + std::to_string(e);
      }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const MVPolynomial& p) { return os << to_text(p); }

}  // namespace cliffverify
