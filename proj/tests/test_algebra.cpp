#include <gtest/gtest.h>

#include <random>

#include "cliffverify.hpp"

using namespace cliffverify;

namespace {

// Independent product of basis blades: concatenate index lists, bubble sort
// counting transpositions, contract e_i e_i = -1.
std::pair<int, Blade> oracle_blade_product(Blade a, Blade b) {
  std::vector<int> idx;
  for (int i = 1; i <= 16; ++i)
    if (a & (1U << (i - 1))) idx.push_back(i);
  for (int i = 1; i <= 16; ++i)
    if (b & (1U << (i - 1))) idx.push_back(i);
  int sign = 1;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t j = 0; j + 1 < idx.size(); ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
        swapped = true;
      }
  }
  std::vector<int> reduced;
  for (int i : idx) {
    if (!reduced.empty() && reduced.back() == i) {
      reduced.pop_back();
      sign = -sign;
    } else {
      reduced.push_back(i);
    }
  }
  Blade out = 0;
  for (int i : reduced) out |= static_cast<Blade>(1U << (i - 1));
  return {sign, out};
}

MV random_mv(int m, std::mt19937_64& rng, int terms = 5) {
  MV out(m);
  for (int t = 0; t < terms; ++t)
    out += MV::blade(m, static_cast<Blade>(rng() % (1U << m)), Rational(static_cast<long>(rng() % 7) - 3));
  return out;
}

}  // namespace

TEST(Multivector, BladeProductMatchesPermutationOracle) {
  for (int m : {2, 3, 5}) {
    const unsigned n = 1U << m;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b) {
        const auto [sign, blade] = oracle_blade_product(static_cast<Blade>(a), static_cast<Blade>(b));
        EXPECT_EQ(MV::blade(m, static_cast<Blade>(a)) * MV::blade(m, static_cast<Blade>(b)),
                  MV::blade(m, blade, Rational(sign)));
      }
  }
}

TEST(Multivector, AnticommutationUpToTwelve) {
  for (int m = 2; m <= 12; ++m)
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) {
        const MV s = MV::generator(m, i) * MV::generator(m, j) + MV::generator(m, j) * MV::generator(m, i);
        EXPECT_EQ(s, i == j ? MV::scalar(m, Rational(-2)) : MV(m));
      }
}

TEST(Multivector, AssociativeAndDistributive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 5;
    const MV a = random_mv(m, rng), b = random_mv(m, rng), c = random_mv(m, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Multivector, InvolutionSignsOnBlades) {
  const int m = 5;
  for (unsigned b = 0; b < (1U << m); ++b) {
    const int r = std::popcount(b);
    const MV e = MV::blade(m, static_cast<Blade>(b));
    const int rev = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
    const int conj = (r * (r + 1) / 2) % 2 == 0 ? 1 : -1;
    EXPECT_EQ(reverse(e), e * Rational(rev));
    EXPECT_EQ(conjugate(e), e * Rational(conj));
  }
}

TEST(Multivector, AntiInvolutions) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 4;
    const MV a = random_mv(m, rng), b = random_mv(m, rng);
    EXPECT_EQ(reverse(a * b), reverse(b) * reverse(a));
    EXPECT_EQ(conjugate(a * b), conjugate(b) * conjugate(a));
    EXPECT_EQ(conjugate(a), grade_involution(reverse(a)));
  }
}

TEST(Multivector, VectorSquareIsMinusNorm) {
  const std::vector<Rational> x{Rational(1, 2), Rational(-3), Rational(2, 7), Rational(5)};
  const MV v = MV::vector(4, x);
  Rational n(0);
  for (const auto& c : x) n += c * c;
  EXPECT_EQ(v * v, MV::scalar(4, -n));
  EXPECT_EQ(norm_squared(v), n);
  EXPECT_EQ(v * vector_inverse(v), MV::scalar(4, Rational(1)));
}

TEST(Multivector, ReflectionFlipsNormalComponent) {
  const MV n = MV::generator(3, 1);
  const MV x = MV::generator(3, 1) * Rational(2) + MV::generator(3, 2) * Rational(5);
  EXPECT_EQ(n * x * n, MV::generator(3, 2) * Rational(5) - MV::generator(3, 1) * Rational(2));
  EXPECT_EQ(reflect(n, x), n * x * n);
}

TEST(Multivector, TextRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const MV a = random_mv(4, rng);
    EXPECT_EQ(parse_text(to_text(a), 4), a) << to_text(a);
  }
}

TEST(Multivector, DimensionBounds) {
  EXPECT_THROW(MV(1), std::invalid_argument);
  EXPECT_THROW(MV(13), std::invalid_argument);
  EXPECT_THROW(MV::generator(3, 4), std::out_of_range);
}

TEST(Witt, IdempotentAndNilpotents) {
  for (int m : {2, 4, 6}) {
    const WittBasis wb = witt_basis(m);
    ASSERT_EQ(static_cast<int>(wb.f.size()), m / 2);
    EXPECT_FALSE(wb.idempotent.is_zero());
    EXPECT_EQ(wb.idempotent * wb.idempotent, wb.idempotent);
    for (std::size_t j = 0; j < wb.f.size(); ++j) {
      EXPECT_TRUE((wb.f[j] * wb.f[j]).is_zero());
      EXPECT_TRUE((wb.f_dagger[j] * wb.f_dagger[j]).is_zero());
      const CMV anti = wb.f[j] * wb.f_dagger[j] + wb.f_dagger[j] * wb.f[j];
      EXPECT_EQ(anti, CMV::scalar(m, ComplexRational(Rational(1))));
    }
  }
  EXPECT_THROW(witt_basis(3), std::invalid_argument);
}

TEST(Polynomial, DiracSquaredIsMinusLaplacian) {
  FixtureRng rng(1, "dirac-square-test");
  for (int i = 0; i < 50; ++i) {
    const int m = 2 + i % 4;
    const MVPolynomial p = random_polynomial(m, 4, 8, rng);
    EXPECT_EQ(dirac_left(dirac_left(p, Var::x), Var::x), -laplacian(p, Var::x));
    EXPECT_EQ(dirac_right(dirac_right(p, Var::x), Var::x), -laplacian(p, Var::x));
  }
}

TEST(Polynomial, EulerOnHomogeneousParts) {
  FixtureRng rng(2, "euler");
  const MVPolynomial p = random_polynomial(3, 5, 12, rng);
  for (int d = 0; d <= 5; ++d) {
    const MVPolynomial h = homogeneous_part(p, Var::x, d);
    EXPECT_EQ(euler(h, Var::x), h * Rational(d));
  }
}

TEST(Polynomial, DiracOfVectorVariable) {
  for (int m = 2; m <= 6; ++m) {
    const MVPolynomial x = MVPolynomial::vector_variable(m, Var::x);
    EXPECT_EQ(dirac_left(x, Var::x), MVPolynomial::scalar(m, Rational(-m)));
    EXPECT_EQ(x * x, -MVPolynomial::norm_squared(m, Var::x));
  }
}

TEST(Polynomial, LeibnizRule) {
  FixtureRng rng(4, "leibniz");
  for (int i = 0; i < 10; ++i) {
    const MVPolynomial a = random_polynomial(3, 3, 5, rng), b = random_polynomial(3, 3, 5, rng);
    for (int j = 1; j <= 3; ++j)
      EXPECT_EQ(partial(a * b, Var::x, j), partial(a, Var::x, j) * b + a * partial(b, Var::x, j));
  }
}

TEST(Polynomial, EvaluateIsRingHomomorphism) {
  FixtureRng rng(6, "evaluate");
  const PointAssignment pt{{Var::x, {Rational(1, 2), Rational(-2), Rational(3)}}};
  for (int i = 0; i < 10; ++i) {
    const MVPolynomial a = random_polynomial(3, 3, 5, rng), b = random_polynomial(3, 3, 5, rng);
    EXPECT_EQ(evaluate(a * b, pt), evaluate(a, pt) * evaluate(b, pt));
    EXPECT_EQ(evaluate(a + b, pt), evaluate(a, pt) + evaluate(b, pt));
  }
}

TEST(Linalg, RankAndNullspaceOfKnownMatrix) {
  // columns (1,2,3), (2,4,6), (0,1,1), (1,3,4): rank 2
  auto col = [](long a, long b, long c) {
    SparseVector v;
    if (a) v.emplace_back(0, Rational(a));
    if (b) v.emplace_back(1, Rational(b));
    if (c) v.emplace_back(2, Rational(c));
    return v;
  };
  const std::vector<SparseVector> cols{col(1, 2, 3), col(2, 4, 6), col(0, 1, 1), col(1, 3, 4)};
  EXPECT_EQ(rank(cols), 2U);
  const auto ns = nullspace(cols);
  EXPECT_EQ(ns.size(), 2U);
  for (const auto& v : ns)
    for (std::size_t row = 0; row < 3; ++row) {
      Rational s(0);
      for (const auto& [j, c] : v)
        if (const Rational* e = detail::find_entry(cols[j], row)) s += c * *e;
      EXPECT_EQ(s, 0);
    }
}

TEST(Linalg, SpanMembership) {
  const int m = 3;
  const MVPolynomial a = MVPolynomial::variable(m, Var::u, 1), b = MVPolynomial::variable(m, Var::u, 2);
  EXPECT_EQ(span_rank({a, b, a * Rational(3) - b}), 2U);
  EXPECT_TRUE(in_span({a, b}, a + b * Rational(5)));
  EXPECT_FALSE(in_span({a, b}, MVPolynomial::variable(m, Var::u, 3)));
}

TEST(Serialize, RoundTrips) {
  FixtureRng rng(9, "serialize");
  for (int i = 0; i < 10; ++i) {
    const MVPolynomial p = random_polynomial(4, 3, 6, rng) * Rational(1, 3);
    EXPECT_EQ(polynomial_from_json(Json::parse(to_json(p).dump())), p);
    const RadialForm r(p, 3, Var::x);
    EXPECT_EQ(radial_from_json(Json::parse(to_json(r).dump())), r);
  }
  Rational q(Integer("123456789012345678901234567890"), Integer(7));
  q.canonicalize();
  const MV big = MV::scalar(3, q);
  const Json j = to_json(big);
  EXPECT_TRUE(j["terms"][0]["num"].is_string());
  EXPECT_EQ(multivector_from_json(j), big);
}

TEST(Serialize, RejectsMalformedInput) {
  EXPECT_THROW(polynomial_from_json(Json::parse(R"({"m":3,"terms":[{"exponents":{"x":[1,0]},"coefficient":[]}]})")),
               std::invalid_argument);
  EXPECT_THROW(multivector_from_json(Json::parse(R"({"m":3,"terms":[{"blade":[1],"num":1,"den":0}]})")),
               std::domain_error);
}
