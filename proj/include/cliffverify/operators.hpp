#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cliffverify/integrate.hpp"
#include "cliffverify/spaces.hpp"

namespace cliffverify {

enum class OperatorTag { Rk, Tk, TkStar, Qk };

inline std::string to_string(OperatorTag t) {
  switch (t) {
    case OperatorTag::Rk: return "rk";
    case OperatorTag::Tk: return "tk";
    case OperatorTag::TkStar: return "tkstar";
    case OperatorTag::Qk: return "qk";
  }
  return "?";
}

inline OperatorTag parse_operator(std::string_view s) {
  if (s == "rk") return OperatorTag::Rk;
  if (s == "tk") return OperatorTag::Tk;
  if (s == "tkstar") return OperatorTag::TkStar;
  if (s == "qk") return OperatorTag::Qk;
  throw std::invalid_argument("unknown operator '" + std::string(s) + "' (expected rk, tk, tkstar, qk)");
}

struct OperatorKind {
  OperatorTag tag = OperatorTag::Rk;
  Side side = Side::left;
  int m = 3;
  int k = 1;

  /// Tk and Qk consume uM_{k-1} (or M_{k-1}u on the right).
  bool consumes_u_factor() const { return tag == OperatorTag::Tk || tag == OperatorTag::Qk; }
  /// Rk and Tk project onto M_k; TkStar and Qk onto the complement.
  bool projects_onto_monogenic() const { return tag == OperatorTag::Rk || tag == OperatorTag::Tk; }
};

/// Point and direction groups the operator acts on.
struct Vars {
  Var point = Var::x;
  Var dir = Var::u;
};

/// Validates the value-type hypothesis of the operator; throws naming the
/// failed check.
inline void validate_operator_input(const OperatorKind& kind, const MVPolynomial& f, Vars v = {}) {
  if (f.dimension() != kind.m) throw std::invalid_argument("operator input: dimension does not match m");
  if (kind.k < 0) throw std::invalid_argument("operator input: k must be nonnegative");
  const std::string name = to_string(kind.tag) + (kind.side == Side::right ? ",r" : "");
  if (kind.consumes_u_factor()) {
    if (kind.k < 1) throw std::invalid_argument(name + ": requires k >= 1");
    if (!extract_u_factor(f, kind.k, kind.side, v.dir))
      throw std::invalid_argument(name + ": input is not of the form " +
                                  (kind.side == Side::left ? "u*(left-monogenic of degree k-1)"
                                                           : "(right-monogenic of degree k-1)*u"));
    return;
  }
  if (!f.is_homogeneous(v.dir, kind.k))
    throw std::invalid_argument(name + ": input not homogeneous of degree " + std::to_string(kind.k) + " in " +
                                var_name(v.dir));
  if (!is_monogenic(f, kind.k, kind.side, v.dir))
    throw std::invalid_argument(name + ": input not " + (kind.side == Side::left ? "left" : "right") +
                                "-monogenic in " + var_name(v.dir));
}

/// Applies one of the four operators, left: proj(D_x f); right: proj_r(f D_x).
inline MVPolynomial apply_operator(const OperatorKind& kind, const MVPolynomial& f, ProjectionRule rule = {},
                                   Vars v = {}) {
  validate_operator_input(kind, f, v);
  MVPolynomial d = kind.side == Side::left ? dirac_left(f, v.point) : dirac_right(f, v.point);
  if (kind.projects_onto_monogenic()) return project_Pk(d, kind.k, kind.side, rule, v.dir);
  return complement_Pk(d, kind.k, kind.side, rule, v.dir);
}

inline MVPolynomial apply_Rk(const MVPolynomial& f, int k, ProjectionRule rule = {}, Vars v = {}) {
  return apply_operator({OperatorTag::Rk, Side::left, f.dimension(), k}, f, rule, v);
}
inline MVPolynomial apply_TkStar(const MVPolynomial& f, int k, ProjectionRule rule = {}, Vars v = {}) {
  return apply_operator({OperatorTag::TkStar, Side::left, f.dimension(), k}, f, rule, v);
}
inline MVPolynomial apply_Tk(const MVPolynomial& g, int k, ProjectionRule rule = {}, Vars v = {}) {
  return apply_operator({OperatorTag::Tk, Side::left, g.dimension(), k}, g, rule, v);
}
inline MVPolynomial apply_Qk(const MVPolynomial& g, int k, ProjectionRule rule = {}, Vars v = {}) {
  return apply_operator({OperatorTag::Qk, Side::left, g.dimension(), k}, g, rule, v);
}
inline MVPolynomial apply_right(OperatorTag tag, const MVPolynomial& f, int k, ProjectionRule rule = {},
                                Vars v = {}) {
  return apply_operator({tag, Side::right, f.dimension(), k}, f, rule, v);
}

/// For f in M_k: one residual per q in the M_k basis,
/// (q, D_x f)_u - (q, R_k f)_u with the conjugated Fischer product. Each
/// residual is a polynomial in the point variables and must vanish.
inline std::vector<MVPolynomial> stein_weiss_residual(const MVPolynomial& f, int k, ProjectionRule rule = {},
                                                      Vars v = {}) {
  const int m = f.dimension();
  const MVPolynomial dx = dirac_left(f, v.point);
  const MVPolynomial rk = apply_Rk(f, k, rule, v);
  std::vector<MVPolynomial> out;
  for (const auto& q : cached_basis(m, k, SpaceKind::left_monogenic, v.dir)->elements)
    out.push_back(pairing_u(q, dx, true, v.dir) - pairing_u(q, rk, true, v.dir));
  return out;
}

}  // namespace cliffverify
