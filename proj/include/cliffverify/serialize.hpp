#pragma once

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "cliffverify/moebius.hpp"
#include "cliffverify/radial.hpp"
#include "cliffverify/spaces.hpp"

namespace cliffverify {

using Json = nlohmann::ordered_json;

namespace detail {

/// Integers that fit in int64 are emitted as JSON numbers, others as
/// decimal strings.
inline Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer or integer string");
}

inline Rational rational_from_json(const Json& num, const Json& den) {
  Rational r(integer_from_json(num), integer_from_json(den));
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

}  // namespace detail

inline Json to_json(const MV& a) {
  Json terms = Json::array();
  for (const auto& [b, c] : a.terms()) {
    Json blade = Json::array();
    for (int i = 1; i <= kMaxDimension; ++i)
      if ((b & generator_blade(i)) != 0) blade.push_back(i);
    terms.push_back({{"blade", blade}, {"num", detail::integer_to_json(c.get_num())},
                     {"den", detail::integer_to_json(c.get_den())}});
  }
  return {{"m", a.dimension()}, {"terms", terms}};
}

inline MV multivector_from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  std::vector<MV::Term> terms;
  for (const auto& t : j.at("terms")) {
    MV blade = MV::scalar(m, Rational(1));
    for (const auto& i : t.at("blade")) blade = blade * MV::generator(m, i.get<int>());
    const Rational c = detail::rational_from_json(t.at("num"), t.at("den"));
    for (const auto& [b, v] : blade.terms()) terms.emplace_back(b, v * c);
  }
  return MV(m, std::move(terms));
}

inline Json to_json(const MVPolynomial& p) {
  const int m = p.dimension();
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json exps = Json::object();
    for (Var g : kAllVars) {
      if (mono.degree(g) == 0) continue;
      Json e = Json::array();
      for (int i = 0; i < m; ++i) e.push_back(mono.exponent(g, i));
      exps[std::string(1, var_name(g))] = e;
    }
    terms.push_back({{"exponents", exps}, {"coefficient", to_json(c)["terms"]}});
  }
  return {{"m", m}, {"terms", terms}};
}

inline MVPolynomial polynomial_from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  MVPolynomial p(m);
  for (const auto& t : j.at("terms")) {
    Monomial mono;
    for (const auto& [name, exps] : t.at("exponents").items()) {
      const Var g = parse_var(name);
      if (static_cast<int>(exps.size()) != m) throw std::invalid_argument("exponent list length must equal m");
      for (int i = 0; i < m; ++i) mono.set_exponent(g, i, exps.at(static_cast<std::size_t>(i)).get<int>());
    }
    p.add_term(mono, multivector_from_json(Json{{"m", m}, {"terms", t.at("coefficient")}}));
  }
  return p;
}

inline Json to_json(const RadialForm& r) {
  return {{"numerator", to_json(r.numerator())},
          {"weight", r.weight()},
          {"radius", std::string(1, var_name(r.radius_group()))}};
}

inline RadialForm radial_from_json(const Json& j) {
  return RadialForm(polynomial_from_json(j.at("numerator")), j.at("weight").get<int>(),
                    parse_var(j.at("radius").get<std::string>()));
}

inline Json to_json(const PolySpaceBasis& b) {
  Json elements = Json::array();
  for (const auto& e : b.elements) elements.push_back(to_json(e));
  return {{"m", b.m},
          {"k", b.k},
          {"kind", to_string(b.kind)},
          {"group", std::string(1, var_name(b.group))},
          {"scalar_rank", b.scalar_rank},
          {"clifford_rank", b.clifford_rank()},
          {"elements", elements}};
}

inline Json to_json(const MoebiusMap& map) {
  return {{"classification", to_string(map.classification)},
          {"a", to_json(map.a)},
          {"b", to_json(map.b)},
          {"c", to_json(map.c)},
          {"d", to_json(map.d)}};
}

}  // namespace cliffverify
