#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cliffverify {

/// Arbitrary-precision rational; mpq_class keeps itself canonical after
/// every arithmetic operation (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// "p/q" or "p" (when q == 1).
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (r.get_den() == 0)
    throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

/// Exact square root, if the argument is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(r.get_den_mpz_t()) == 0)
    return std::nullopt;
  Rational out;
  mpz_sqrt(out.get_num_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(out.get_den_mpz_t(), r.get_den_mpz_t());
  out.canonicalize();
  return out;
}

/// Element of Q(i): the scalar field of the complexified algebra.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(long r) : re(r) {}                 // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational j = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(j);
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) {
    return {Rational(-a.re), Rational(-a.im)};
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }
};

inline bool is_zero(const ComplexRational& c) { return is_zero(c.re) && is_zero(c.im); }

inline std::string to_string(const ComplexRational& c) {
  if (is_zero(c.im)) return to_string(c.re);
  if (is_zero(c.re)) return "(" + to_string(c.im) + "i)";
  std::string im = to_string(c.im);
  return "(" + to_string(c.re) + (sgn(c.im) < 0 ? "" : "+") + im + "i)";
}

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& c) {
  return os << to_string(c);
}

/// Scalar-type hooks used by the templated algebra.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_complex = false;
  static Rational from_rational(const Rational& r) { return r; }
};

template <>
struct ScalarTraits<ComplexRational> {
  static constexpr bool is_complex = true;
  static ComplexRational from_rational(const Rational& r) { return ComplexRational(r); }
};

}  // namespace cliffverify
