#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffverify/operators.hpp"
#include "cliffverify/radial.hpp"

namespace cliffverify {

enum class MapClass { translation, dilation, reflection, inversion, composite };

inline std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::translation: return "translation";
    case MapClass::dilation: return "dilation";
    case MapClass::reflection: return "reflection";
    case MapClass::inversion: return "inversion";
    case MapClass::composite: return "composite";
  }
  return "?";
}

inline MapClass parse_map_class(std::string_view s) {
  if (s == "translation") return MapClass::translation;
  if (s == "dilation") return MapClass::dilation;
  if (s == "reflection") return MapClass::reflection;
  if (s == "inversion") return MapClass::inversion;
  throw std::invalid_argument("unknown map '" + std::string(s) + "' (expected inversion, translation, dilation, reflection)");
}

/// x -> (a x + b)(c x + d)^{-1}
struct MoebiusMap {
  MV a;
  MV b;
  MV c;
  MV d;
  MapClass classification = MapClass::composite;

  int dimension() const { return a.dimension(); }

  static MoebiusMap identity(int m) {
    return {MV::scalar(m, Rational(1)), MV(m), MV(m), MV::scalar(m, Rational(1)), MapClass::translation};
  }
  static MoebiusMap translation(const MV& shift) {
    if (!shift.is_vector()) throw std::invalid_argument("translation: shift must be a vector");
    const int m = shift.dimension();
    return {MV::scalar(m, Rational(1)), shift, MV(m), MV::scalar(m, Rational(1)), MapClass::translation};
  }
  /// (s, 0, 0, 1/s): x -> s^2 x, with a d~ = 1.
  static MoebiusMap dilation(int m, const Rational& s) {
    if (sgn(s) <= 0) throw std::invalid_argument("dilation: factor must be positive");
    return {MV::scalar(m, s), MV(m), MV(m), MV::scalar(m, Rational(1 / s)), MapClass::dilation};
  }
  /// (n, 0, 0, n): x -> n x n^{-1}.
  static MoebiusMap reflection(const MV& n) {
    require_unit_vector(n);
    const int m = n.dimension();
    return {n, MV(m), MV(m), n, MapClass::reflection};
  }
  /// (n, 0, 0, -n): x -> n x n, the hyperplane reflection itself.
  static MoebiusMap true_reflection(const MV& n) {
    require_unit_vector(n);
    const int m = n.dimension();
    return {n, MV(m), MV(m), -n, MapClass::reflection};
  }
  /// (0, 1, 1, 0): x -> x^{-1}.
  static MoebiusMap inversion(int m) {
    return {MV(m), MV::scalar(m, Rational(1)), MV::scalar(m, Rational(1)), MV(m), MapClass::inversion};
  }
  /// (0, 1, -1, 0): x -> -x^{-1} = x/|x|^2.
  static MoebiusMap kelvin(int m) {
    return {MV(m), MV::scalar(m, Rational(1)), MV::scalar(m, Rational(-1)), MV(m), MapClass::inversion};
  }

 private:
  static void require_unit_vector(const MV& n) {
    if (!n.is_vector() || norm_squared(n) != 1)
      throw std::invalid_argument("reflection: n must be a unit vector with rational coordinates");
  }
};

/// Matrix product: the map x -> first(second(x)).
inline MoebiusMap compose(const MoebiusMap& first, const MoebiusMap& second) {
  MoebiusMap out{first.a * second.a + first.b * second.c, first.a * second.b + first.b * second.d,
                 first.c * second.a + first.d * second.c, first.c * second.b + first.d * second.d,
                 MapClass::composite};
  if (first.classification == second.classification &&
      (first.classification == MapClass::translation || first.classification == MapClass::dilation))
    out.classification = first.classification;
  return out;
}

struct VahlenDiagnostics {
  bool valid = true;
  std::vector<std::string> failures;
  std::optional<int> pseudo_determinant;
};

namespace detail {

/// Zero, or an invertible element of the Clifford group: parity
/// homogeneous, v v~ a nonzero scalar, and v e_i v~ a vector for all i.
inline bool is_vector_product(const MV& v) {
  if (v.is_zero()) return true;
  if (!v.has_even_parity() && !v.has_odd_parity()) return false;
  const MV vv = v * reverse(v);
  if (!vv.is_scalar() || vv.is_zero()) return false;
  for (int i = 1; i <= v.dimension(); ++i)
    if (!(v * MV::generator(v.dimension(), i) * reverse(v)).is_vector()) return false;
  return true;
}

}  // namespace detail

/// The three Vahlen conditions. Condition 2 is checked on the pairs
/// a b~, c d~, c~ a, d~ b (each a vector or zero).
inline VahlenDiagnostics validate_vahlen(const MoebiusMap& map) {
  VahlenDiagnostics diag;
  const char* names[] = {"a", "b", "c", "d"};
  const MV* entries[] = {&map.a, &map.b, &map.c, &map.d};
  for (int i = 0; i < 4; ++i)
    if (!detail::is_vector_product(*entries[i]))
      diag.failures.push_back(std::string("condition 1: ") + names[i] + " is not a product of vectors");
  const std::pair<const char*, MV> pairs[] = {{"a*reverse(b)", map.a * reverse(map.b)},
                                              {"c*reverse(d)", map.c * reverse(map.d)},
                                              {"reverse(c)*a", reverse(map.c) * map.a},
                                              {"reverse(d)*b", reverse(map.d) * map.b}};
  for (const auto& [name, value] : pairs)
    if (!value.is_vector()) diag.failures.push_back(std::string("condition 2: ") + name + " is not a vector");
  const MV pdet = map.a * reverse(map.d) - map.b * reverse(map.c);
  if (pdet == MV::scalar(map.dimension(), Rational(1))) {
    diag.pseudo_determinant = 1;
  } else if (pdet == MV::scalar(map.dimension(), Rational(-1))) {
    diag.pseudo_determinant = -1;
  } else {
    diag.failures.push_back("condition 3: a*reverse(d) - b*reverse(c) = " + to_text(pdet) + " is not +-1");
  }
  diag.valid = diag.failures.empty();
  return diag;
}

inline MV apply_map(const MoebiusMap& map, const MV& x) {
  if (!x.is_vector()) throw std::invalid_argument("apply_map: x must be a vector");
  const MV den = map.c * x + map.d;
  MV inv(x.dimension());
  try {
    inv = versor_inverse(den);
  } catch (const std::domain_error&) {
    throw std::domain_error("apply_map: x = " + to_text(x) + " is a pole (c x + d not invertible)");
  }
  MV y = (map.a * x + map.b) * inv;
  if (!y.is_vector()) throw std::domain_error("apply_map: image is not a vector; invalid Vahlen matrix");
  return y;
}

namespace detail {

/// |v|^power for a rational-coefficient v; needs an exact square root when
/// the power is odd.
inline Rational norm_power(const MV& v, int power) {
  const Rational n2 = norm_squared(v);
  if (is_zero(n2)) throw std::domain_error("conformal weight at a pole");
  Rational base = n2;
  int e = power;
  if (power % 2 != 0) {
    auto root = exact_sqrt(n2);
    if (!root) throw std::domain_error("conformal weight needs an irrational |cx+d|");
    base = *root;
  } else {
    e = power / 2;
  }
  return e >= 0 ? pow(base, static_cast<unsigned>(e)) : Rational(1 / pow(base, static_cast<unsigned>(-e)));
}

}  // namespace detail

/// J_1 = reverse(cx+d)/|cx+d|^m
inline MV j1_weight(const MoebiusMap& map, const MV& x) {
  const MV v = map.c * x + map.d;
  return reverse(v) * Rational(1 / detail::norm_power(v, map.dimension()));
}

/// J_{-1} = (cx+d)/|cx+d|^{m+2}
inline MV jm1_weight(const MoebiusMap& map, const MV& x) {
  const MV v = map.c * x + map.d;
  return v * Rational(1 / detail::norm_power(v, map.dimension() + 2));
}

namespace detail {

/// Maps handled symbolically: c = 0 (affine) or a = d = 0 with scalar
/// b, c in {+1, -1} (inversion up to sign).
struct SymbolicForm {
  bool affine = false;
  std::vector<std::vector<Rational>> linear;   // x = linear * y + offset
  std::vector<Rational> offset;
  std::vector<std::vector<Rational>> direction;  // u = direction * w
  MV j1_constant{2};
  MV jm1_inverse_constant{2};
  int point_sign = 1;  // x = point_sign * y^{-1}
  int c_sign = 1;
};

inline int unit_scalar_sign(const MV& v) {
  if (v == MV::scalar(v.dimension(), Rational(1))) return 1;
  if (v == MV::scalar(v.dimension(), Rational(-1))) return -1;
  return 0;
}

inline SymbolicForm symbolic_form(const MoebiusMap& map) {
  const int m = map.dimension();
  SymbolicForm s;
  if (map.c.is_zero()) {
    s.affine = true;
    const MV dinv = versor_inverse(map.d);
    const MV drev = reverse(map.d);
    const Rational dn2 = norm_squared(map.d);
    s.linear.assign(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
    s.direction = s.linear;
    for (int j = 1; j <= m; ++j) {
      const MV ej = MV::generator(m, j);
      const auto col = (map.a * ej * dinv).vector_coordinates();
      const auto dcol = (drev * ej * map.d * Rational(1 / dn2)).vector_coordinates();
      if (!col || !dcol) throw std::invalid_argument("transform: map does not send vectors to vectors");
      for (int i = 0; i < m; ++i) {
        s.linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = (*col)[static_cast<std::size_t>(i)];
        s.direction[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = (*dcol)[static_cast<std::size_t>(i)];
      }
    }
    const auto off = (map.b * dinv).vector_coordinates();
    if (!off) throw std::invalid_argument("transform: translation part is not a vector");
    s.offset = *off;
    s.j1_constant = drev * Rational(1 / norm_power(map.d, m));
    s.jm1_inverse_constant = dinv * norm_power(map.d, m + 2);
    return s;
  }
  const int bs = unit_scalar_sign(map.b);
  const int cs = unit_scalar_sign(map.c);
  if (map.a.is_zero() && map.d.is_zero() && bs != 0 && cs != 0) {
    s.point_sign = bs * cs;
    s.c_sign = cs;
    return s;
  }
  throw std::invalid_argument("transform: only affine maps (c = 0) and inversions are supported; factor composites first");
}

}  // namespace detail

/// p(phi(y), reverse(cy+d) w (cy+d)/|cy+d|^2) with no weight factor.
inline RadialForm transport(const MoebiusMap& map, const MVPolynomial& p, VarPair source = kXU,
                            VarPair target = kYW) {
  const int m = p.dimension();
  if (p.uses(target.point) || p.uses(target.direction))
    throw std::invalid_argument("transport: target groups already in use");
  const auto s = detail::symbolic_form(map);
  if (s.affine) {
    std::vector<MVPolynomial> point_images;
    std::vector<MVPolynomial> dir_images;
    for (int i = 0; i < m; ++i) {
      MVPolynomial img = MVPolynomial::scalar(m, s.offset[static_cast<std::size_t>(i)]);
      MVPolynomial dimg(m);
      for (int j = 0; j < m; ++j) {
        img += MVPolynomial::variable(m, target.point, j + 1) * s.linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        dimg += MVPolynomial::variable(m, target.direction, j + 1) *
                s.direction[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      point_images.push_back(std::move(img));
      dir_images.push_back(std::move(dimg));
    }
    MVPolynomial out = substitute(p, source.point, std::span<const MVPolynomial>(point_images));
    out = substitute(out, source.direction, std::span<const MVPolynomial>(dir_images));
    return RadialForm(std::move(out), 0, target.point);
  }
  MVPolynomial q = p;
  if (s.point_sign < 0) {
    std::vector<std::vector<Rational>> neg(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) neg[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(-1);
    q = substitute_linear(q, source.point, neg);
  }
  return inversion_substitute(RadialForm(q, 0, source.point), source, target);
}

/// J_1(phi,y) as a RadialForm in the target point group.
inline RadialForm j1_symbolic(const MoebiusMap& map, Var g = Var::y) {
  const int m = map.dimension();
  const auto s = detail::symbolic_form(map);
  if (s.affine) return RadialForm(MVPolynomial::constant(s.j1_constant), 0, g);
  return RadialForm(MVPolynomial::vector_variable(m, g) * Rational(s.c_sign), m, g);
}

/// J_{-1}(phi,y) as a RadialForm.
inline RadialForm jm1_symbolic(const MoebiusMap& map, Var g = Var::y) {
  const int m = map.dimension();
  const auto s = detail::symbolic_form(map);
  if (s.affine) return RadialForm(MVPolynomial::constant(versor_inverse(s.jm1_inverse_constant)), 0, g);
  return RadialForm(MVPolynomial::vector_variable(m, g) * Rational(s.c_sign), m + 2, g);
}

/// J_{-1}(phi,y)^{-1}; for inversion -c y |y|^m in closed form.
inline RadialForm jm1_inverse_symbolic(const MoebiusMap& map, Var g = Var::y) {
  const int m = map.dimension();
  const auto s = detail::symbolic_form(map);
  if (s.affine) return RadialForm(MVPolynomial::constant(s.jm1_inverse_constant), 0, g);
  return RadialForm(MVPolynomial::vector_variable(m, g) * Rational(-s.c_sign), -m, g);
}

/// J_1(phi,y) f(phi(y), reverse(cy+d) w (cy+d)/|cy+d|^2).
inline RadialForm transform_function(const MoebiusMap& map, const MVPolynomial& f, int k, VarPair source = kXU,
                                     VarPair target = kYW) {
  if (!f.is_homogeneous(source.direction, k))
    throw std::invalid_argument("transform_function: f is not homogeneous of degree " + std::to_string(k));
  return j1_symbolic(map, target.point) * transport(map, f, source, target);
}

/// R_k in the target variables applied to a RadialForm: P_k in the
/// direction group after the radial Dirac operator in the point group.
inline RadialForm apply_Rk_radial(const RadialForm& r, int k, ProjectionRule rule = {}, VarPair vars = kYW) {
  if (r.radius_group() != vars.point && r.weight() != 0)
    throw std::invalid_argument("apply_Rk_radial: radius group must be the point group");
  RadialForm d = dirac_left_radial(RadialForm(r.numerator(), r.weight(), vars.point));
  return d.map_numerator([&](const MVPolynomial& n) { return project_Pk(n, k, rule, vars.direction); });
}

/// J_{-1}^{-1} R_{k,y,w} J_1 f(phi(y), ...) minus (R_k f) transported to
/// (y, w). Zero when the intertwining identity holds.
inline RadialForm intertwine_residual(const MoebiusMap& map, const MVPolynomial& f, int k, ProjectionRule rule = {}) {
  validate_operator_input({OperatorTag::Rk, Side::left, f.dimension(), k}, f);
  const RadialForm lhs = jm1_inverse_symbolic(map) * apply_Rk_radial(transform_function(map, f, k), k, rule);
  const RadialForm rhs = transport(map, apply_Rk(f, k, rule));
  return lhs - rhs;
}

}  // namespace cliffverify
