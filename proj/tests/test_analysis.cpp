#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cliffverify.hpp"

using namespace cliffverify;

namespace {

std::vector<Rational> coords(const MV& v) {
  std::vector<Rational> out;
  for (int i = 1; i <= v.dimension(); ++i) out.push_back(v.coefficient(generator_blade(i)));
  return out;
}

MV vec(int m, std::initializer_list<long> xs) {
  std::vector<Rational> c;
  for (long x : xs) c.emplace_back(x);
  c.resize(static_cast<std::size_t>(m), Rational(0));
  return MV::vector(m, c);
}

}  // namespace

// ---------------------------------------------------------------- spaces

TEST(Spaces, HarmonicDimensionsInLowDimensions) {
  for (int k = 0; k <= 6; ++k) {
    EXPECT_EQ(harmonic_dimension(3, k), 2 * k + 1);
    EXPECT_EQ(harmonic_dimension(4, k), (k + 1) * (k + 1));
    EXPECT_EQ(harmonic_dimension(2, k), k == 0 ? 1 : 2);
    EXPECT_EQ(monogenic_dimension(3, k), 8 * (k + 1));
  }
}

TEST(Spaces, BasisRanksMatchClosedForms) {
  for (int m = 2; m <= 5; ++m)
    for (int k = 0; k <= 3; ++k) {
      EXPECT_EQ(static_cast<long long>(cached_basis(m, k, SpaceKind::harmonic)->scalar_rank),
                harmonic_dimension(m, k));
      EXPECT_EQ(static_cast<long long>(cached_basis(m, k, SpaceKind::left_monogenic)->scalar_rank),
                monogenic_dimension(m, k));
      EXPECT_EQ(static_cast<long long>(cached_basis(m, k, SpaceKind::right_monogenic)->scalar_rank),
                monogenic_dimension(m, k));
    }
}

TEST(Spaces, LaplacianRankBruteForce) {
  // dim ker = dim P_k - rank of the Laplacian on monomials.
  for (int m = 3; m <= 5; ++m)
    for (int k = 2; k <= 4; ++k) {
      std::vector<MVPolynomial> images;
      const auto monos = homogeneous_monomials(m, k, Var::u);
      for (const auto& p : monos) images.push_back(laplacian(p, Var::u));
      const long long kernel = static_cast<long long>(monos.size()) - static_cast<long long>(span_rank(images));
      EXPECT_EQ(kernel, harmonic_dimension(m, k)) << "m=" << m << " k=" << k;
    }
}

TEST(Spaces, BasisElementsSatisfyTheirEquations) {
  for (int m : {3, 4}) {
    for (const auto& h : cached_basis(m, 3, SpaceKind::harmonic)->elements)
      EXPECT_TRUE(laplacian(h, Var::u).is_zero());
    for (const auto& f : cached_basis(m, 2, SpaceKind::left_monogenic)->elements)
      EXPECT_TRUE(dirac_left(f, Var::u).is_zero());
    for (const auto& f : cached_basis(m, 2, SpaceKind::right_monogenic)->elements)
      EXPECT_TRUE(dirac_right(f, Var::u).is_zero());
  }
}

TEST(Spaces, ProjectionProperties) {
  FixtureRng rng(1, "projection");
  for (int m : {3, 4})
    for (int k = 1; k <= 3; ++k) {
      const MVPolynomial h = random_harmonic(m, k, rng, {1, 3, Var::x});
      const MVPolynomial p = project_Pk(h, k);
      EXPECT_TRUE(is_monogenic(p, k));
      EXPECT_EQ(project_Pk(p, k), p);
      const MVPolynomial pr = project_Pk_right(h, k);
      EXPECT_TRUE(is_monogenic(pr, k, Side::right));
      EXPECT_EQ(project_Pk_right(pr, k), pr);
      const auto q = extract_u_factor(complement_Pk(h, k), k);
      ASSERT_TRUE(q.has_value());
      EXPECT_TRUE(is_monogenic(*q, k - 1));
      const auto split = almansi_fischer_split(h, k);
      EXPECT_EQ(split.p_k + MVPolynomial::vector_variable(m, Var::u) * split.p_km1, h);
    }
}

TEST(Spaces, MutatedProjectionIsNotIdempotent) {
  FixtureRng rng(2, "mutation");
  const ProjectionRule mutated{-1};
  const MVPolynomial h = random_harmonic(3, 2, rng);
  const MVPolynomial once = project_Pk(h, 2, mutated);
  EXPECT_FALSE(is_monogenic(once, 2));
  EXPECT_NE(project_Pk(once, 2, mutated), once);
}

TEST(Spaces, RejectsNonHarmonicInput) {
  const MVPolynomial bad = MVPolynomial::norm_squared(3, Var::u);
  EXPECT_THROW(project_Pk(bad, 2), std::invalid_argument);
}

TEST(Spaces, SpinorRestrictionStaysInIdeal) {
  FixtureRng rng(3, "spinor");
  const MVPolynomial f = random_monogenic(4, 1, Side::left, rng);
  EXPECT_TRUE(in_spinor_ideal(spinor_restrict(f)));
}

// ---------------------------------------------------------------- integration

TEST(Integrate, KnownSphereMoments) {
  for (int m = 2; m <= 7; ++m) {
    EXPECT_EQ(sphere_moment(std::vector<int>(static_cast<std::size_t>(m), 0), m), 1);
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    a[0] = 2;
    EXPECT_EQ(sphere_moment(a, m), Rational(1, m));
    a[0] = 4;
    EXPECT_EQ(sphere_moment(a, m), Rational(3) / (m * (m + 2)));
    a[0] = 2;
    a[1] = 2;
    EXPECT_EQ(sphere_moment(a, m), Rational(1) / (m * (m + 2)));
    a[1] = 1;
    EXPECT_EQ(sphere_moment(a, m), 0);
  }
}

TEST(Integrate, SphereRecurrence) {
  // sum_i M(alpha + 2 e_i) = M(alpha) because |x|^2 = 1 on the sphere.
  for (int m = 3; m <= 5; ++m)
    for (int d = 0; d <= 4; ++d)
      for (const auto& a : exponent_vectors(m, d)) {
        Rational s(0);
        for (int i = 0; i < m; ++i) {
          auto b = a;
          b[static_cast<std::size_t>(i)] += 2;
          s += sphere_moment(b, m);
        }
        EXPECT_EQ(s, sphere_moment(a, m));
        EXPECT_EQ(ball_moment(a, m), sphere_moment(a, m) / (d + m));
      }
}

TEST(Integrate, MonteCarloSphereMoment) {
  // x1^2 x2^4 on S^2: 3 / (3 5 7) = 1/35.
  std::mt19937_64 gen(42);
  std::normal_distribution<double> normal;
  const int n = 400000;
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    const double a = normal(gen), b = normal(gen), c = normal(gen);
    const double r2 = a * a + b * b + c * c;
    acc += a * a * b * b * b * b / (r2 * r2 * r2);
  }
  const double exact = sphere_moment({2, 4, 0}, 3).get_d();
  EXPECT_DOUBLE_EQ(exact, 1.0 / 35.0);
  EXPECT_NEAR(acc / n, exact, 0.0015);
}

TEST(Integrate, DivergenceTheorem) {
  // int_B Lap p = int_S d/dn p = sum_d d int_S p_d.
  FixtureRng rng(5, "divergence");
  for (int m : {3, 4, 5}) {
    const MVPolynomial p = random_polynomial(m, 5, 10, rng);
    MV rhs(m);
    for (int d = 1; d <= 5; ++d) rhs += sphere_integral(homogeneous_part(p, Var::x, d)) * Rational(d);
    EXPECT_EQ(ball_integral(laplacian(p, Var::x)), rhs);
  }
}

TEST(Integrate, ProductRouteMatchesDirectRoute) {
  FixtureRng rng(6, "product");
  const MeasureMap measures{{Var::x, Measure::ball}, {Var::u, Measure::sphere}};
  for (int i = 0; i < 5; ++i) {
    const MVPolynomial f = random_monogenic(3, 2, Side::left, rng, {2, 2, Var::x});
    const MVPolynomial g = random_monogenic(3, 2, Side::right, rng, {2, 2, Var::x});
    EXPECT_EQ(integrate_product(g, f, measures), integrate(g * f, measures));
  }
}

// ---------------------------------------------------------------- operators

TEST(Operators, RangesAndDecomposition) {
  FixtureRng rng(7, "ranges");
  for (int m : {3, 4})
    for (int k : {1, 2}) {
      const MVPolynomial f = random_monogenic(m, k, Side::left, rng, {2, 2, Var::x});
      const MVPolynomial rk = apply_Rk(f, k);
      const MVPolynomial tks = apply_TkStar(f, k);
      EXPECT_TRUE(is_monogenic(rk, k));
      EXPECT_TRUE(project_Pk(tks, k).is_zero());
      EXPECT_EQ(rk + tks, dirac_left(f, Var::x));

      const MVPolynomial q = random_monogenic(m, k - 1, Side::left, rng, {2, 2, Var::x});
      const MVPolynomial uq = MVPolynomial::vector_variable(m, Var::u) * q;
      EXPECT_TRUE(is_monogenic(apply_Tk(uq, k), k));
      EXPECT_TRUE(project_Pk(apply_Qk(uq, k), k).is_zero());
      EXPECT_EQ(apply_Tk(uq, k) + apply_Qk(uq, k), dirac_left(uq, Var::x));
    }
}

TEST(Operators, RightOperatorsLandInRightSpaces) {
  FixtureRng rng(8, "right");
  const int m = 3, k = 2;
  const MVPolynomial f = random_monogenic(m, k, Side::right, rng, {2, 2, Var::x});
  EXPECT_TRUE(is_monogenic(apply_right(OperatorTag::Rk, f, k), k, Side::right));
  EXPECT_TRUE(project_Pk_right(apply_right(OperatorTag::TkStar, f, k), k).is_zero());
}

TEST(Operators, ConjugationAndReversionDuality) {
  FixtureRng rng(9, "duality");
  for (int k : {1, 2}) {
    const MVPolynomial f = random_monogenic(3, k, Side::left, rng, {2, 2, Var::x});
    EXPECT_EQ(conjugate(apply_Rk(f, k)), -apply_right(OperatorTag::Rk, conjugate(f), k));
    EXPECT_EQ(reverse(apply_Rk(f, k)), apply_right(OperatorTag::Rk, reverse(f), k));
  }
}

TEST(Operators, SteinWeissGradientPairing) {
  FixtureRng rng(10, "stein-weiss");
  for (int k : {1, 2}) {
    const MVPolynomial f = random_monogenic(4, k, Side::left, rng, {1, 2, Var::x});
    for (const auto& r : stein_weiss_residual(f, k)) EXPECT_TRUE(r.is_zero());
  }
}

TEST(Operators, InputValidation) {
  const int m = 3;
  const MVPolynomial bad = MVPolynomial::variable(m, Var::u, 1) * MV::generator(m, 1);
  EXPECT_THROW(apply_Rk(bad, 1), std::invalid_argument);
  const MVPolynomial good = MVPolynomial::variable(m, Var::u, 1) * MV::generator(m, 1) -
                            MVPolynomial::variable(m, Var::u, 2) * MV::generator(m, 2);
  EXPECT_THROW(apply_Tk(good, 1), std::invalid_argument);
  EXPECT_THROW(apply_Rk(good, 2), std::invalid_argument);
  EXPECT_EQ(parse_operator("tkstar"), OperatorTag::TkStar);
  EXPECT_THROW(parse_operator("xx"), std::invalid_argument);
}

// ---------------------------------------------------------------- radial forms

TEST(Radial, CanonicalFormAndEquality) {
  FixtureRng rng(11, "radial");
  const MVPolynomial p = random_polynomial(3, 2, 4, rng);
  const MVPolynomial py(relabel(p, Var::x, Var::y));
  const RadialForm a(py, 3);
  const RadialForm b(py * MVPolynomial::norm_squared(3, Var::y), 5);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b.weight(), a.weight());
  EXPECT_TRUE(RadialForm(MVPolynomial(3), 7).is_zero());
  EXPECT_EQ(RadialForm(MVPolynomial(3), 7).weight(), 0);
}

TEST(Radial, CauchyKernelIsMonogenicAndFundamentalSolutionHarmonic) {
  for (int m = 2; m <= 6; ++m) {
    EXPECT_TRUE(dirac_left_radial(cauchy_kernel(m)).is_zero()) << m;
    const RadialForm phi(MVPolynomial::scalar(m, Rational(1)), m - 2);
    EXPECT_TRUE(dirac_left_radial(dirac_left_radial(phi)).is_zero()) << m;
    EXPECT_EQ(dirac_left_radial(phi), cauchy_kernel(m) * Rational(2 - m));
  }
}

TEST(Radial, InversionImageMatchesPointwiseEvaluation) {
  const int m = 4;
  FixtureRng rng(12, "inversion-pointwise");
  const MVPolynomial f = random_monogenic(m, 2, Side::left, rng, {2, 2, Var::x});
  const RadialForm img = inversion_image(f, 2);
  for (const auto& [yc, wc] : std::vector<std::pair<MV, MV>>{{vec(m, {1, 2, 0, -1}), vec(m, {3, 0, 1, 1})},
                                                             {vec(m, {2, -1, 1, 1}), vec(m, {0, 1, -2, 5})}}) {
    const Rational n2 = norm_squared(yc);
    const MV x = vector_inverse(yc);
    const MV u = yc * wc * yc * Rational(1 / n2);
    const MV expected = yc * Rational(1 / (n2 * n2)) * evaluate(f, {{Var::x, coords(x)}, {Var::u, coords(u)}});
    const RadialValue v = evaluate(img, {{Var::y, coords(yc)}, {Var::w, coords(wc)}});
    ASSERT_TRUE(v.value.has_value());
    EXPECT_EQ(*v.value, expected);
  }
}

// ---------------------------------------------------------------- moebius

TEST(Moebius, VahlenConditions) {
  const int m = 3;
  const MV n = MV::generator(m, 2);
  for (const auto& map : {MoebiusMap::identity(m), MoebiusMap::translation(vec(m, {1, -2, 3})),
                          MoebiusMap::dilation(m, Rational(3, 2)), MoebiusMap::reflection(n),
                          MoebiusMap::true_reflection(n), MoebiusMap::inversion(m), MoebiusMap::kelvin(m)}) {
    const auto diag = validate_vahlen(map);
    EXPECT_TRUE(diag.valid) << to_string(map.classification);
  }
  const MoebiusMap bad{MV::scalar(m, Rational(2)), MV(m), MV(m), MV::scalar(m, Rational(1)), MapClass::dilation};
  const auto diag = validate_vahlen(bad);
  EXPECT_FALSE(diag.valid);
  EXPECT_FALSE(diag.failures.empty());
  EXPECT_THROW(MoebiusMap::reflection(vec(m, {1, 1, 0})), std::invalid_argument);
}

TEST(Moebius, PointMaps) {
  const int m = 3;
  const MV x = vec(m, {1, 2, -2});
  EXPECT_EQ(apply_map(MoebiusMap::inversion(m), x), x * Rational(-1, 9));
  EXPECT_EQ(apply_map(MoebiusMap::kelvin(m), x), x * Rational(1, 9));
  EXPECT_EQ(apply_map(MoebiusMap::dilation(m, Rational(2)), x), x * Rational(4));
  EXPECT_EQ(apply_map(MoebiusMap::translation(vec(m, {1, 0, 0})), x), vec(m, {2, 2, -2}));
  const MV n = MV::generator(m, 1);
  EXPECT_EQ(apply_map(MoebiusMap::true_reflection(n), x), vec(m, {-1, 2, -2}));
  EXPECT_EQ(apply_map(MoebiusMap::reflection(n), x), vec(m, {1, -2, 2}));
  EXPECT_THROW(apply_map(MoebiusMap::inversion(m), MV(m)), std::domain_error);
  const MoebiusMap t = MoebiusMap::translation(vec(m, {0, 1, 0}));
  const MoebiusMap inv = MoebiusMap::inversion(m);
  EXPECT_EQ(apply_map(compose(t, inv), x), apply_map(t, apply_map(inv, x)));
}

TEST(Moebius, CounterexampleImage) {
  for (int m : {3, 4, 5}) {
    const auto r = check_counterexample(m);
    EXPECT_TRUE(r.pass) << r.residual.dump();
    EXPECT_TRUE(r.details["dirac_image_nonzero"].get<bool>());
  }
  EXPECT_THROW(check_counterexample(2), std::invalid_argument);
  EXPECT_FALSE(check_counterexample(3, ProjectionRule{-1}).pass);
}

TEST(Moebius, ConformalInvarianceOfCounterexampleFunction) {
  for (int m : {3, 4}) {
    const MVPolynomial f = counterexample_function(m);
    const RadialForm img = transform_function(MoebiusMap::inversion(m), f, 1);
    EXPECT_FALSE(dirac_left_radial(img).is_zero());
    EXPECT_TRUE(apply_Rk_radial(img, 1).is_zero());
  }
  const MVPolynomial one = MVPolynomial::scalar(3, Rational(1));
  EXPECT_TRUE(apply_Rk_radial(transform_function(MoebiusMap::inversion(3), one, 0), 0).is_zero());
}

TEST(Moebius, ReflectionAndKelvinSigns) {
  FixtureRng rng(13, "signs");
  const int m = 3;
  const MVPolynomial f = random_monogenic(m, 1, Side::left, rng, {2, 2, Var::x});
  const MV n = MV::generator(m, 3);
  EXPECT_EQ(intertwine_relation(MoebiusMap::reflection(n), f, 1, {}), "lhs = rhs");
  EXPECT_EQ(intertwine_relation(MoebiusMap::true_reflection(n), f, 1, {}), "lhs = -rhs");
  EXPECT_EQ(intertwine_relation(MoebiusMap::inversion(m), f, 1, {}), "lhs = rhs");
  EXPECT_EQ(intertwine_relation(MoebiusMap::kelvin(m), f, 1, {}), "lhs = -rhs");
}

TEST(Moebius, IntertwiningUnderComposedAffineMap) {
  FixtureRng rng(14, "composite");
  const int m = 3;
  const MVPolynomial f = random_monogenic(m, 1, Side::left, rng, {2, 2, Var::x});
  const MoebiusMap map = compose(MoebiusMap::translation(vec(m, {1, -1, 2})), MoebiusMap::dilation(m, Rational(2)));
  EXPECT_TRUE(intertwine_residual(map, f, 1).is_zero());
}
