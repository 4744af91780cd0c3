// Randomised properties.  Each test draws from its own fixed-seed mt19937.

#include "qsc/congruence.hpp"
#include "qsc/qseries.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qsc;

namespace {

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  BigRat rational(long bound = 9) {
    long d = integer(1, bound);
    return make_rat(integer(-bound, bound), d);
  }

  BigRat nonzero_rational(long bound = 9) {
    BigRat x;
    do x = rational(bound);
    while (x == 0);
    return x;
  }

  UniPoly poly(long max_deg, long bound = 5) {
    std::vector<BigRat> c(static_cast<std::size_t>(integer(0, max_deg)) + 1);
    for (auto& x : c) x = integer(-bound, bound);
    return UniPoly(std::move(c));
  }

  UniPoly nonzero_poly(long max_deg) {
    UniPoly p;
    do p = poly(max_deg);
    while (p.is_zero());
    return p;
  }
};

constexpr int kRounds = 60;

int multiplicity(UniPoly p, const UniPoly& phi) {
  int m = 0;
  while (true) {
    auto [q, r] = divrem(p, phi);
    if (!r.is_zero()) return m;
    p = q;
    ++m;
  }
}

}  // namespace

TEST(PolyProperty, DivremReconstructs) {
  Gen g(1);
  for (int i = 0; i < kRounds; ++i) {
    const UniPoly a = g.poly(9), b = g.nonzero_poly(5);
    auto [q, r] = divrem(a, b);
    EXPECT_EQ(q * b + r, a);
    if (!r.is_zero()) {
      EXPECT_LT(*r.degree(), *b.degree());
    }
  }
}

TEST(PolyProperty, GcdDividesAndContainsCommonFactor) {
  Gen g(2);
  for (int i = 0; i < kRounds; ++i) {
    const UniPoly c = g.nonzero_poly(3);
    const UniPoly a = g.nonzero_poly(5) * c, b = g.nonzero_poly(5) * c;
    const UniPoly d = gcd(a, b);
    EXPECT_TRUE(divrem(a, d).second.is_zero());
    EXPECT_TRUE(divrem(b, d).second.is_zero());
    EXPECT_TRUE(divrem(d, c).second.is_zero());
  }
}

TEST(PolyProperty, InverseModCyclotomic) {
  Gen g(3);
  for (int i = 0; i < kRounds; ++i) {
    const UniPoly m = cyclotomic(g.integer(2, 40));
    UniPoly a;
    do a = g.poly(12);
    while (rem(a, m).is_zero());
    const UniPoly inv = inverse_mod(a, m);
    EXPECT_EQ(rem(a * inv, m), UniPoly::constant(1));
    if (!inv.is_zero()) {
      EXPECT_LT(*inv.degree(), *m.degree());
    }
  }
}

TEST(PolyProperty, CrtOfTwoCyclotomics) {
  Gen g(4);
  for (int i = 0; i < kRounds; ++i) {
    const long d1 = g.integer(1, 20);
    long d2;
    do d2 = g.integer(1, 20);
    while (d2 == d1);
    const UniPoly m1 = cyclotomic(d1), m2 = cyclotomic(d2);
    const UniPoly r1 = rem(g.poly(6), m1), r2 = rem(g.poly(6), m2);
    const UniPoly x = poly_crt(r1, m1, r2, m2);
    EXPECT_EQ(rem(x, m1), r1);
    EXPECT_EQ(rem(x, m2), r2);
  }
}

TEST(RatFunProperty, FieldLaws) {
  Gen g(5);
  for (int i = 0; i < kRounds; ++i) {
    const RatFun f(g.poly(4), g.nonzero_poly(3)), h(g.poly(4), g.nonzero_poly(3)), k(g.poly(3), g.nonzero_poly(3));
    EXPECT_EQ(f + h, h + f);
    EXPECT_EQ(f * h, h * f);
    EXPECT_EQ((f + h) + k, f + (h + k));
    EXPECT_EQ(f * (h + k), f * h + f * k);
    EXPECT_TRUE((f - f).is_zero());
    if (!h.is_zero()) {
      EXPECT_EQ(f / h * h, f);
    }
    // evaluation is a ring homomorphism away from poles
    const BigRat q = g.rational();
    if (f.den().eval(q) != 0 && h.den().eval(q) != 0) {
      EXPECT_EQ((f * h).eval(q), f.eval(q) * h.eval(q));
      EXPECT_EQ((f + h).eval(q), f.eval(q) + h.eval(q));
    }
  }
}

TEST(FactoredProperty, ProductsOfOneMinusQPowers) {
  Gen g(6);
  for (int i = 0; i < kRounds; ++i) {
    const BigRat c = g.nonzero_rational();
    CycloFactored x = CycloFactored::scalar(c);
    const long shift = g.integer(-4, 4);
    x *= CycloFactored::q_power(shift);
    std::vector<std::pair<long, long>> factors;
    for (int j = g.integer(0, 5); j > 0; --j) {
      long m;
      do m = g.integer(-12, 12);
      while (m == 0);
      const long e = g.integer(-2, 2);
      factors.emplace_back(m, e);
      x *= qpow_factor(m).pow(e);
    }
    for (long qv : {2, -3, 5}) {
      const BigRat q(qv);
      BigRat want = c * rpow(q, shift);
      for (auto [m, e] : factors) want *= rpow(1 - rpow(q, m), e);
      EXPECT_EQ(to_factored_value(x).eval(q), want);
    }
    // the cyclotomic exponents add up to the multiplicity count
    for (long d : {1, 2, 3, 5})
      EXPECT_EQ(cyclo_multiplicity(x, d), x.cyclo_exponent(d)) << d;
  }
}

TEST(QMonomialProperty, ParseRoundTrip) {
  Gen g(7);
  for (int i = 0; i < kRounds; ++i) {
    const QMonomial x{g.nonzero_rational(30), g.integer(-20, 20)};
    const QMonomial y = parse_qmonomial(to_string(x));
    EXPECT_EQ(y.coef, x.coef);
    EXPECT_EQ(y.q_exp, x.q_exp);
  }
}

TEST(LocalCheckProperty, AgreesWithDivisionOracle) {
  Gen g(8);
  const long d = 5;
  const UniPoly phi = cyclotomic(d);
  int seen[3] = {0, 0, 0};
  for (int i = 0; i < 150; ++i) {
    const int common = static_cast<int>(g.integer(-1, 3));
    std::vector<FactoredValue> terms;
    UniPoly num, den = UniPoly::constant(1);  // oracle: num/den as plain polynomials
    for (int j = g.integer(1, 4); j > 0; --j) {
      FactoredValue v = FactoredValue::constant(g.nonzero_rational());
      UniPoly tn = UniPoly::constant(v.scalar()), td = UniPoly::constant(1);
      for (long c : {1L, 2L, 3L, 5L, 10L}) {
        const int e = static_cast<int>(g.integer(-1, 2)) + (c == d ? common : 0);
        v.mul_cyclo(c, e);
        for (int k = 0; k < std::abs(e); ++k) (e > 0 ? tn : td) *= cyclotomic(c);
      }
      if (g.integer(0, 1)) {
        const UniPoly p = g.nonzero_poly(3);
        v.mul_poly(p, 1);
        tn *= p;
      }
      terms.push_back(v);
      num = num * td + tn * den;
      den = den * td;
    }
    const int e = static_cast<int>(g.integer(1, 3));
    Status want;
    if (num.is_zero()) {
      want = Status::Pass;
    } else {
      const int val = multiplicity(num, phi) - multiplicity(den, phi);
      want = val < 0 ? Status::IllPosed : val >= e ? Status::Pass : Status::Fail;
    }
    const LocalOutcome got = local_check(terms, d, e);
    EXPECT_EQ(got.status, want) << "round " << i;
    ++seen[static_cast<int>(want)];
  }
  // the generator reaches all three verdicts
  EXPECT_GT(seen[0], 0);
  EXPECT_GT(seen[1], 0);
  EXPECT_GT(seen[2], 0);
}

TEST(IdentityProperty, RandomPfaff) {
  Gen g(9);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const QMonomial a{g.nonzero_rational(), g.integer(-3, 3)}, b{g.nonzero_rational(), g.integer(-3, 3)},
        c{g.nonzero_rational(), g.integer(-3, 3)};
    const long m = g.integer(0, 6), base = g.integer(1, 3);
    try {
      EXPECT_TRUE(pfaff_sides(a, b, c, m, base).equal()) << to_string(a) << " " << to_string(b) << " " << m;
      ++checked;
    } catch (const zero_denominator&) {
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(IdentityProperty, RandomWatson) {
  Gen g(10);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    auto mono = [&] { return QMonomial{g.nonzero_rational(), g.integer(-3, 3)}; };
    const QMonomial a = mono(), b = mono(), c = mono(), d = mono(), e = mono();
    const long m = g.integer(0, 5);
    try {
      EXPECT_TRUE(watson_sides(a, b, c, d, e, m, g.integer(1, 2)).equal()) << i;
      ++checked;
    } catch (const zero_denominator&) {
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(ParametricProperty, SeedInvariantVerdicts) {
  Gen g(11);
  for (int i = 0; i < 12; ++i) {
    const int e = static_cast<int>(g.integer(0, 2));
    CycloFactored f = CycloFactored::cyclotomic(5, e);
    for (int j = g.integer(1, 3); j > 0; --j) {
      int ai, bj;
      do {
        ai = static_cast<int>(g.integer(-1, 1));
        bj = static_cast<int>(g.integer(-1, 1));
      } while (ai == 0 && bj == 0);
      f.multiply_atom(ai, bj, g.integer(1, 4), g.integer(0, 1) ? 1 : -1);
    }
    const ParamSum s{ParamTerm(f)};
    const Status want = e >= 1 ? Status::Pass : Status::Fail;
    for (std::size_t seed : {0u, 3u, 17u})
      EXPECT_EQ(param_cyclotomic_check(s, {{5, 1}}, seed, "x", "").status, want) << i << " seed " << seed;
  }
}
