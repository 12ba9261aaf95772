#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliffverify/polynomial.hpp"

namespace cliffverify {

/// Exact quotient p / |g|^2 if |g|^2 divides p, where |g|^2 = sum_i g_i^2.
/// Division is by a polynomial monic of degree 2 in g_1: terms are reduced
/// level by level in the g_1 exponent, and divisibility means the remainder
/// (of g_1-degree at most 1) vanishes.
inline std::optional<MVPolynomial> divide_by_norm_squared(const MVPolynomial& p, Var g) {
  const int m = p.dimension();
  std::map<Monomial, MV> rem(p.terms().begin(), p.terms().end());
  MVPolynomial::Accumulator quot(m);
  int top = 0;
  for (const auto& [mono, c] : rem) top = std::max(top, mono.exponent(g, 0));
  for (int level = top; level >= 2; --level) {
    std::vector<std::pair<Monomial, MV>> row;
    for (auto it = rem.begin(); it != rem.end();) {
      if (it->first.exponent(g, 0) == level) {
        row.emplace_back(it->first, std::move(it->second));
        it = rem.erase(it);
      } else {
        ++it;
      }
    }
    for (auto& [mono, c] : row) {
      Monomial q = mono;
      q.set_exponent(g, 0, level - 2);
      quot.add(q, c);
      // c*mono - (c*q)*|g|^2 leaves -c*q*g_j^2 for j >= 2.
      for (int j = 1; j < m; ++j) {
        Monomial t = q;
        t.set_exponent(g, j, q.exponent(g, j) + 2);
        auto [it, inserted] = rem.try_emplace(t, -c);
        if (!inserted) {
          it->second -= c;
          if (it->second.is_zero()) rem.erase(it);
        }
      }
    }
  }
  if (!rem.empty()) return std::nullopt;
  return quot.finish();
}

/// numerator * |g|^{-weight} for the radius group g. Canonical form: zero
/// has weight 0; for weight >= 2 the numerator is not divisible by |g|^2;
/// negative weights are folded into the numerator except for a single
/// leftover |g| factor (weight -1) when the weight is odd.
class RadialForm {
 public:
  RadialForm(MVPolynomial numerator, int weight, Var radius = Var::y)
      : numerator_(std::move(numerator)), weight_(weight), radius_(radius) {
    canonicalize();
  }

  static RadialForm from_polynomial(const MVPolynomial& p, Var radius = Var::y) {
    return RadialForm(p, 0, radius);
  }

  int dimension() const { return numerator_.dimension(); }
  const MVPolynomial& numerator() const { return numerator_; }
  int weight() const { return weight_; }
  Var radius_group() const { return radius_; }
  bool is_zero() const { return numerator_.is_zero(); }

  /// The same value written with a larger weight (numerator scaled by
  /// |g|^{target - weight}); target - weight must be even and nonnegative.
  MVPolynomial numerator_at_weight(int target) const {
    const int diff = target - weight_;
    if (diff < 0 || diff % 2 != 0) throw std::invalid_argument("numerator_at_weight: incompatible weight");
    MVPolynomial out = numerator_;
    const MVPolynomial n2 = MVPolynomial::norm_squared(dimension(), radius_);
    for (int i = 0; i < diff / 2; ++i) out = out * n2;
    return out;
  }

  /// Applies a map that acts only on non-radius variables (so it commutes
  /// with |g|^{-weight}), e.g. projections and Dirac operators in w.
  template <class F>
  RadialForm map_numerator(F&& f) const {
    return RadialForm(f(numerator_), weight_, radius_);
  }

  /// Polynomial factor on the left: p * this.
  friend RadialForm operator*(const MVPolynomial& p, const RadialForm& r) {
    return RadialForm(p * r.numerator_, r.weight_, r.radius_);
  }
  friend RadialForm operator*(const MV& c, const RadialForm& r) {
    return RadialForm(c * r.numerator_, r.weight_, r.radius_);
  }
  friend RadialForm operator*(const RadialForm& r, const Rational& s) {
    return RadialForm(r.numerator_ * s, r.weight_, r.radius_);
  }

  friend RadialForm operator*(const RadialForm& a, const RadialForm& b) {
    a.require_compatible(b);
    const Var g = a.is_zero() ? b.radius_ : a.radius_;
    return RadialForm(a.numerator_ * b.numerator_, a.weight_ + b.weight_, g);
  }

  /// this * |g|^{power}
  RadialForm times_norm_power(int power) const { return RadialForm(numerator_, weight_ - power, radius_); }

  friend RadialForm operator+(const RadialForm& a, const RadialForm& b) {
    a.require_compatible(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if ((a.weight_ - b.weight_) % 2 != 0)
      throw std::domain_error("RadialForm sum needs an odd power of the radius; not representable");
    const int w = std::max(a.weight_, b.weight_);
    return RadialForm(a.numerator_at_weight(w) + b.numerator_at_weight(w), w, a.radius_);
  }
  friend RadialForm operator-(const RadialForm& a) {
    return RadialForm(-a.numerator_, a.weight_, a.radius_);
  }
  friend RadialForm operator-(const RadialForm& a, const RadialForm& b) { return a + (-b); }

  /// Equality by cross-multiplication: n1*|g|^{t2} == n2*|g|^{t1}.
  friend bool operator==(const RadialForm& a, const RadialForm& b) {
    if (a.dimension() != b.dimension()) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.radius_ != b.radius_) return false;
    if ((a.weight_ - b.weight_) % 2 != 0) return false;
    const int w = std::max(a.weight_, b.weight_);
    return a.numerator_at_weight(w) == b.numerator_at_weight(w);
  }
  friend bool operator!=(const RadialForm& a, const RadialForm& b) { return !(a == b); }

 private:
  void require_compatible(const RadialForm& o) const {
    if (dimension() != o.dimension()) throw std::invalid_argument("RadialForm dimension mismatch");
    if (radius_ != o.radius_ && !is_zero() && !o.is_zero())
      throw std::invalid_argument("RadialForm radius group mismatch");
  }

  void canonicalize() {
    if (numerator_.is_zero()) {
      weight_ = 0;
      return;
    }
    if (weight_ < 0) {
      const int absorb = (-weight_) / 2;
      const MVPolynomial n2 = MVPolynomial::norm_squared(dimension(), radius_);
      for (int i = 0; i < absorb; ++i) numerator_ = numerator_ * n2;
      weight_ += 2 * absorb;
      return;
    }
    while (weight_ >= 2) {
      auto q = divide_by_norm_squared(numerator_, radius_);
      if (!q) break;
      numerator_ = std::move(*q);
      weight_ -= 2;
    }
  }

  MVPolynomial numerator_;
  int weight_;
  Var radius_;
};

/// D_g applied to N |g|^{-t}: ((D_g N)|g|^2 - t g N) |g|^{-t-2}, with the
/// vector g = sum g_i e_i multiplying from the left.
inline RadialForm dirac_left_radial(const RadialForm& r) {
  const int m = r.dimension();
  const Var g = r.radius_group();
  const int t = r.weight();
  if (t == 0) return RadialForm(dirac_left(r.numerator(), g), 0, g);
  MVPolynomial num = dirac_left(r.numerator(), g) * MVPolynomial::norm_squared(m, g);
  if (t != 0) num -= (MVPolynomial::vector_variable(m, g) * r.numerator()) * Rational(t);
  return RadialForm(std::move(num), t + 2, g);
}

/// The pair of groups a function lives in: a point variable and a
/// direction variable (x,u) or (y,w).
struct VarPair {
  Var point = Var::x;
  Var direction = Var::u;
};

inline constexpr VarPair kXU{Var::x, Var::u};
inline constexpr VarPair kYW{Var::y, Var::w};

/// Substitutes point -> target.point^{-1} = -y/|y|^2 and
/// direction -> y w y/|y|^2 = w - 2 y <w,y>/|y|^2 (no kernel factor). The
/// input's radius group must be `source.point` (or the input may ignore it).
inline RadialForm inversion_substitute(const RadialForm& r, VarPair source, VarPair target) {
  const int m = r.dimension();
  const MVPolynomial& p = r.numerator();
  if (r.radius_group() != source.point && r.weight() != 0)
    throw std::invalid_argument("inversion: radius group must be the source point group");
  if (p.uses(target.point) || p.uses(target.direction))
    throw std::invalid_argument("inversion: target groups already in use");

  const MVPolynomial n2 = MVPolynomial::norm_squared(m, target.point);
  std::vector<MVPolynomial> point_images;
  std::vector<MVPolynomial> dir_images;
  MVPolynomial dot(m);  // <w, y>
  for (int i = 1; i <= m; ++i)
    dot += MVPolynomial::variable(m, target.direction, i) * MVPolynomial::variable(m, target.point, i);
  for (int i = 1; i <= m; ++i) {
    point_images.push_back(-MVPolynomial::variable(m, target.point, i));
    dir_images.push_back(MVPolynomial::variable(m, target.direction, i) * n2 -
                         MVPolynomial::variable(m, target.point, i) * dot * Rational(2));
  }

  // Each substituted variable contributes one factor |y|^{-2}; collect the
  // pieces by their total substituted degree, then bring them to a common
  // denominator.
  std::map<int, MVPolynomial> by_degree;
  for (auto& [dd, part] : substitute_graded(p, source.direction, std::span<const MVPolynomial>(dir_images)))
    for (auto& [pd, piece] : substitute_graded(part, source.point, std::span<const MVPolynomial>(point_images))) {
      auto [it, inserted] = by_degree.try_emplace(dd + pd, piece);
      if (!inserted) it->second += piece;
    }
  if (by_degree.empty()) return RadialForm(MVPolynomial(m), 0, target.point);
  const int top = by_degree.rbegin()->first;
  MVPolynomial num(m);
  std::vector<MVPolynomial> n2_powers{MVPolynomial::scalar(m, Rational(1))};
  for (auto& [d, piece] : by_degree) {
    const int lift = top - d;
    while (static_cast<int>(n2_powers.size()) <= lift) n2_powers.push_back(n2_powers.back() * n2);
    num += lift == 0 ? piece : piece * n2_powers[static_cast<std::size_t>(lift)];
  }
  // |x|^{-t} with |x| = 1/|y| becomes |y|^{t}.
  return RadialForm(std::move(num), 2 * top - r.weight(), target.point);
}

/// G(y) f(y^{-1}, y w y/|y|^2) with G(y) = y/|y|^m.
inline RadialForm inversion_image(const RadialForm& r, VarPair source = kXU, VarPair target = kYW) {
  const int m = r.dimension();
  RadialForm sub = inversion_substitute(r, source, target);
  return (MVPolynomial::vector_variable(m, target.point) * sub).times_norm_power(-m);
}

/// Kelvin-type inversion image of f(x,u), which must be homogeneous of
/// degree k in u.
inline RadialForm inversion_image(const MVPolynomial& f, int k, VarPair source = kXU, VarPair target = kYW) {
  if (!f.is_homogeneous(source.direction, k))
    throw std::invalid_argument("inversion_image: f is not homogeneous of degree " + std::to_string(k) +
                                " in the direction variable");
  return inversion_image(RadialForm::from_polynomial(f, source.point), source, target);
}

/// The Cauchy kernel G(y) = y |y|^{-m}.
inline RadialForm cauchy_kernel(int m, Var g = Var::y) {
  return RadialForm(MVPolynomial::vector_variable(m, g), m, g);
}

/// Result of evaluating a RadialForm at a rational point. When the weight
/// is odd the radius factor would need a square root, so only the
/// numerator value, |g|^2 and the weight are reported.
struct RadialValue {
  MV numerator;
  Rational norm_squared;
  int weight = 0;
  std::optional<MV> value;
};

inline RadialValue evaluate(const RadialForm& r, const PointAssignment& point) {
  RadialValue out{evaluate(r.numerator(), point), Rational(0), r.weight(), std::nullopt};
  auto it = point.find(r.radius_group());
  if (it != point.end())
    for (const auto& c : it->second) out.norm_squared += c * c;
  if (r.weight() > 0 && is_zero(out.norm_squared))
    throw std::domain_error("evaluate: zero radius with positive weight");
  if (r.weight() % 2 == 0) {
    MV v = out.numerator;
    const int half = r.weight() / 2;
    if (half > 0) v *= Rational(1 / pow(out.norm_squared, static_cast<unsigned>(half)));
    out.value = std::move(v);
  }
  return out;
}

}  // namespace cliffverify
