#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliffverify/rational.hpp"

namespace cliffverify {

/// Basis blade e_A encoded as a bitmask; bit (i-1) set means e_i is a factor.
using Blade = std::uint16_t;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 12;

inline void check_dimension(int m) {
  if (m < kMinDimension || m > kMaxDimension)
    throw std::invalid_argument("Clifford dimension m=" + std::to_string(m) +
                                " outside supported range [2, 12]");
}

inline int grade(Blade b) { return std::popcount(static_cast<unsigned>(b)); }

/// Sign of e_A e_B relative to e_{A xor B} in Cl_m with e_i^2 = -1.
/// Reordering parity counts the transpositions needed to sort the
/// concatenated index lists; each contracted pair contributes a -1.
inline int blade_product_sign(Blade a, Blade b) {
  unsigned lhs = static_cast<unsigned>(a) >> 1U;
  int swaps = 0;
  while (lhs != 0U) {
    swaps += std::popcount(lhs & b);
    lhs >>= 1U;
  }
  swaps += std::popcount(static_cast<unsigned>(a & b));
  return (swaps & 1) != 0 ? -1 : 1;
}

/// (-1)^{r(r-1)/2} for a grade-r blade.
inline int reverse_sign(Blade b) {
  const int r = grade(b);
  return ((r * (r - 1) / 2) & 1) != 0 ? -1 : 1;
}

/// (-1)^{r(r+1)/2} for a grade-r blade.
inline int conjugate_sign(Blade b) {
  const int r = grade(b);
  return ((r * (r + 1) / 2) & 1) != 0 ? -1 : 1;
}

inline Blade generator_blade(int i) { return static_cast<Blade>(1U << (i - 1)); }

/// Sparse element of Cl_m (S = Rational) or Cl_m(C) (S = ComplexRational).
/// Terms are kept sorted by blade with no zero coefficients, so equality is
/// structural.
template <class S>
class Multivector {
 public:
  using Scalar = S;
  using Term = std::pair<Blade, S>;

  explicit Multivector(int m) : m_(m) { check_dimension(m); }

  Multivector(int m, std::vector<Term> terms) : m_(m), terms_(std::move(terms)) {
    check_dimension(m);
    normalize();
  }

  static Multivector scalar(int m, S value) {
    return Multivector(m, std::vector<Term>{{Blade{0}, std::move(value)}});
  }

  /// e_i with 1-based index.
  static Multivector generator(int m, int i) {
    if (i < 1 || i > m) throw std::out_of_range("generator index out of range");
    return Multivector(m, std::vector<Term>{{generator_blade(i), S(1)}});
  }

  static Multivector blade(int m, Blade b, S coeff = S(1)) {
    if ((static_cast<unsigned>(b) >> m) != 0U)
      throw std::invalid_argument("blade uses generators beyond dimension");
    return Multivector(m, std::vector<Term>{{b, std::move(coeff)}});
  }

  /// sum_i coords[i] e_{i+1}
  static Multivector vector(int m, std::span<const S> coords) {
    if (static_cast<int>(coords.size()) != m)
      throw std::invalid_argument("vector coordinate count must equal m");
    std::vector<Term> t;
    for (int i = 0; i < m; ++i) t.emplace_back(generator_blade(i + 1), coords[i]);
    return Multivector(m, std::move(t));
  }

  int dimension() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(Blade b) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const Term& t, Blade key) { return t.first < key; });
    if (it != terms_.end() && it->first == b) return it->second;
    return S(0);
  }
  S scalar_part() const { return coefficient(0); }

  Multivector grade_part(int r) const {
    Multivector out(m_);
    for (const auto& [b, c] : terms_)
      if (grade(b) == r) out.terms_.emplace_back(b, c);
    return out;
  }

  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
  }
  bool is_vector() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return grade(t.first) == 1; });
  }
  bool has_even_parity() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return grade(t.first) % 2 == 0; });
  }
  bool has_odd_parity() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return grade(t.first) % 2 == 1; });
  }

  /// Coordinates (x_1..x_m) if this is a grade-1 element.
  std::optional<std::vector<S>> vector_coordinates() const {
    if (!is_vector()) return std::nullopt;
    std::vector<S> out(static_cast<std::size_t>(m_), S(0));
    for (const auto& [b, c] : terms_) out[static_cast<std::size_t>(std::countr_zero(b))] = c;
    return out;
  }

  Multivector& operator+=(const Multivector& o) {
    require_same_dimension(o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        merged.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        merged.push_back(*b++);
      } else {
        S sum = a->second + b->second;
        if (!cliffverify::is_zero(sum)) merged.emplace_back(a->first, std::move(sum));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  Multivector& operator-=(const Multivector& o) { return *this += -o; }

  Multivector& operator*=(const S& s) {
    if (cliffverify::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend Multivector operator*(Multivector a, const S& s) { return a *= s; }
  friend Multivector operator*(const S& s, Multivector a) { return a *= s; }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.require_same_dimension(b);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ba, ca] : a.terms_) {
      for (const auto& [bb, cb] : b.terms_) {
        S c = ca * cb;
        if (blade_product_sign(ba, bb) < 0) c = -c;
        out.emplace_back(static_cast<Blade>(ba ^ bb), std::move(c));
      }
    }
    return Multivector(a.m_, std::move(out));
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  /// Adds c*e_b; callers accumulating many terms should prefer the
  /// vector-of-terms constructor.
  void add_term(Blade b, const S& c) { *this += Multivector(m_, std::vector<Term>{{b, c}}); }

  template <class F>
  Multivector map_terms(F&& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [b, c] : terms_) out.emplace_back(b, f(b, c));
    return Multivector(m_, std::move(out));
  }

 private:
  void require_same_dimension(const Multivector& o) const {
    if (m_ != o.m_)
      throw std::invalid_argument("multivector dimension mismatch (" + std::to_string(m_) +
                                  " vs " + std::to_string(o.m_) + ")");
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if ((static_cast<unsigned>(t.first) >> m_) != 0U)
        throw std::invalid_argument("blade uses generators beyond dimension");
      if (!merged.empty() && merged.back().first == t.first) {
        merged.back().second += t.second;
      } else {
        if (!merged.empty() && cliffverify::is_zero(merged.back().second)) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && cliffverify::is_zero(merged.back().second)) merged.pop_back();
    terms_ = std::move(merged);
  }

  int m_;
  std::vector<Term> terms_;
};

using MV = Multivector<Rational>;
using CMV = Multivector<ComplexRational>;

template <class S>
Multivector<S> geometric_product(const Multivector<S>& lhs, const Multivector<S>& rhs) {
  return lhs * rhs;
}

template <class S>
Multivector<S> reverse(const Multivector<S>& a) {
  return a.map_terms([](Blade b, const S& c) { return reverse_sign(b) < 0 ? S(-c) : c; });
}

template <class S>
Multivector<S> conjugate(const Multivector<S>& a) {
  return a.map_terms([](Blade b, const S& c) { return conjugate_sign(b) < 0 ? S(-c) : c; });
}

template <class S>
Multivector<S> grade_involution(const Multivector<S>& a) {
  return a.map_terms([](Blade b, const S& c) { return grade(b) % 2 != 0 ? S(-c) : c; });
}

/// Euclidean norm of the coefficient vector, squared. Equals a*conjugate(a)
/// for products of vectors.
inline Rational norm_squared(const MV& a) {
  Rational s(0);
  for (const auto& [b, c] : a.terms()) s += c * c;
  return s;
}

/// v^{-1} = -v/|v|^2 for a nonzero vector v (since v^2 = -|v|^2).
inline MV vector_inverse(const MV& v) {
  if (!v.is_vector()) throw std::invalid_argument("vector_inverse: argument is not a vector");
  if (v.is_zero()) throw std::domain_error("vector_inverse: zero vector");
  Rational n2 = norm_squared(v);
  return -v * Rational(1 / n2);
}

/// Inverse of a product of vectors a: a^{-1} = reverse(a)/(a reverse(a)).
inline MV versor_inverse(const MV& a) {
  MV rev = reverse(a);
  MV prod = a * rev;
  if (!prod.is_scalar() || prod.is_zero())
    throw std::domain_error("element is not an invertible product of vectors");
  return rev * Rational(1 / prod.scalar_part());
}

/// a x reverse(a) for a unit vector a: the reflection of x in the hyperplane
/// orthogonal to a.
inline MV reflect(const MV& a, const MV& x) {
  if (!a.is_vector() || norm_squared(a) != 1)
    throw std::invalid_argument("reflect: a must be a unit vector with rational coordinates");
  if (!x.is_vector()) throw std::invalid_argument("reflect: x must be a vector");
  return a * x * reverse(a);
}

inline CMV complexify(const MV& a) {
  std::vector<CMV::Term> t;
  t.reserve(a.size());
  for (const auto& [b, c] : a.terms()) t.emplace_back(b, ComplexRational(c));
  return CMV(a.dimension(), std::move(t));
}

/// Isotropic Witt basis of Cl_{2n}(C) and the primitive idempotent
/// I = f_1 f_1^dagger ... f_n f_n^dagger generating the spinor left ideal.
struct WittBasis {
  int m = 0;
  std::vector<CMV> f;
  std::vector<CMV> f_dagger;
  CMV idempotent{2};
};

inline WittBasis witt_basis(int m) {
  check_dimension(m);
  if (m % 2 != 0) throw std::invalid_argument("witt_basis: dimension must be even");
  const int n = m / 2;
  const Rational half(1, 2);
  const ComplexRational i_half(Rational(0), half);
  WittBasis wb;
  wb.m = m;
  CMV idem = CMV::scalar(m, ComplexRational(1));
  for (int j = 1; j <= n; ++j) {
    // f_j = (e_j - i e_{j+n})/2, f_j^dagger = -(e_j + i e_{j+n})/2
    CMV fj(m, {{generator_blade(j), ComplexRational(half)},
               {generator_blade(j + n), ComplexRational(-i_half)}});
    CMV fdj(m, {{generator_blade(j), ComplexRational(Rational(-half))},
                {generator_blade(j + n), ComplexRational(-i_half)}});
    idem = idem * fj * fdj;
    wb.f.push_back(std::move(fj));
    wb.f_dagger.push_back(std::move(fdj));
  }
  wb.idempotent = std::move(idem);
  return wb;
}

// ---------------------------------------------------------------------------
// Text form: "coeff*e{i}e{j}..." terms joined by " + " / " - "; scalar blade
// printed as a bare coefficient; the zero element prints as "0".

inline std::string blade_to_text(Blade b) {
  std::string s;
  for (int i = 1; i <= kMaxDimension; ++i)
    if ((b & generator_blade(i)) != 0) s += "e" + std::to_string(i);
  return s;
}

inline std::string to_text(const MV& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : a.terms()) {
    Rational mag = abs(c);
    if (first) {
      out += sgn(c) < 0 ? "-" : "";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    out += to_string(mag);
    if (b != 0) out += "*" + blade_to_text(b);
  }
  return out;
}

/// Parses the text form. Generator products need not be sorted ("e2e1" is
/// read as the product, i.e. -e1e2); a bare blade means coefficient 1.
inline MV parse_text(std::string_view text, int m) {
  std::string s;
  for (char ch : text)
    if (std::isspace(static_cast<unsigned char>(ch)) == 0) s += ch;
  if (s.empty()) throw std::invalid_argument("parse_text: empty input");
  MV out(m);
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw std::invalid_argument("parse_text: expected sign at offset " + std::to_string(pos));
    }
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    if (term.empty()) throw std::invalid_argument("parse_text: empty term");

    std::string coeff_text;
    std::string blade_text;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coeff_text = term.substr(0, star);
      blade_text = term.substr(star + 1);
      if (blade_text.empty()) throw std::invalid_argument("parse_text: dangling '*'");
    } else if (term[0] == 'e') {
      coeff_text = "1";
      blade_text = term;
    } else {
      coeff_text = term;
    }
    Rational coeff = parse_rational(coeff_text);
    if (negative) coeff = -coeff;
    MV value = MV::scalar(m, coeff);
    std::size_t bp = 0;
    while (bp < blade_text.size()) {
      if (blade_text[bp] != 'e') throw std::invalid_argument("parse_text: malformed blade '" + blade_text + "'");
      std::size_t q = bp + 1;
      while (q < blade_text.size() && std::isdigit(static_cast<unsigned char>(blade_text[q])) != 0) ++q;
      if (q == bp + 1) throw std::invalid_argument("parse_text: generator index missing");
      int idx = std::stoi(blade_text.substr(bp + 1, q - bp - 1));
      if (idx < 1 || idx > m) throw std::invalid_argument("parse_text: generator e" + std::to_string(idx) + " outside dimension");
      value = value * MV::generator(m, idx);
      bp = q;
    }
    out += value;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const MV& a) { return os << to_text(a); }

inline std::ostream& operator<<(std::ostream& os, const CMV& a) {
  if (a.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [b, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    if (b != 0) os << "*" << blade_to_text(b);
  }
  return os;
}

}  // namespace cliffverify
