#include "qsc/factored.hpp"
#include "qsc/qfactor.hpp"

#include <gtest/gtest.h>

using namespace qsc;

namespace {

// (x; Q)_k by the defining product
BigRat poch(const BigRat& x, const BigRat& Q, long k) {
  BigRat r = 1, f = 1;
  for (long j = 0; j < k; ++j) {
    r *= 1 - x * f;
    f *= Q;
  }
  return r;
}

BigRat qpow(const BigRat& q, long e) { return rpow(q, e); }

BigRat value(const CycloFactored& x, const BigRat& a, const BigRat& b, const BigRat& q) {
  auto v = evaluate(x, a, b);
  if (!v) return 0;
  return v->eval(q);
}

}  // namespace

TEST(QPowFactor, PositiveAndNegativeExponents) {
  for (long m : {1, 2, 6, 15, -1, -4, -9}) {
    const auto v = to_factored_value(qpow_factor(m));
    for (long qv : {2, 3, -5}) EXPECT_EQ(v.eval(qv), 1 - qpow(qv, m)) << "m=" << m;
  }
  EXPECT_THROW(qpow_factor(0), std::domain_error);
}

TEST(QPowFactor, CyclotomicContent) {
  // 1 - q^12 = -Phi1 Phi2 Phi3 Phi4 Phi6 Phi12
  const auto x = qpow_factor(12);
  EXPECT_EQ(x.sign(), -1);
  EXPECT_EQ(x.cyclo(), (std::map<long, int>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {6, 1}, {12, 1}}));
}

TEST(QInteger, ValueAndZero) {
  EXPECT_FALSE(q_integer_factor(0));
  // [5] at q = 2 is 31; [-3] = (1 - q^-3)/(1 - q) = -q^-3 [3]
  EXPECT_EQ(to_factored_value(*q_integer_factor(5)).eval(2), 31);
  EXPECT_EQ(to_factored_value(*q_integer_factor(-3)).eval(2), make_rat(-7, 8));
}

TEST(CycloMultiplicity, Examples) {
  // (q;q)_10 has Phi_5 to the power 2 (from 1-q^5 and 1-q^10)
  EXPECT_EQ(cyclo_multiplicity(pochhammer(PochBase::q(1), 1, 10), 5), 2);
  // [15] contains Phi_15 once, Phi_1 not at all
  EXPECT_EQ(cyclo_multiplicity(*q_integer_factor(15), 15), 1);
  EXPECT_EQ(cyclo_multiplicity(*q_integer_factor(15), 1), 0);
  // (q;q^2)_3 / (q^2;q^2)_3 : Phi_3 from 1-q^3 up, 1-q^6 down
  auto r = pochhammer(PochBase::q(1), 2, 3) / pochhammer(PochBase::q(2), 2, 3);
  EXPECT_EQ(cyclo_multiplicity(r, 3), 0);
  EXPECT_EQ(cyclo_multiplicity(r, 5), 1);
}

TEST(Pochhammer, PureQAgainstProduct) {
  for (long step : {1, 2, 4})
    for (long r : {-3, -1, 1, 2, 3})
      for (long k = 0; k <= 5; ++k) {
        auto x = pochhammer_or_zero(PochBase::q(r), step, k);
        for (long qv : {2, -3}) {
          const BigRat want = poch(qpow(qv, r), qpow(qv, step), k);
          if (!x) {
            EXPECT_EQ(want, 0);
            continue;
          }
          EXPECT_EQ(to_factored_value(*x).eval(qv), want) << "r=" << r << " step=" << step << " k=" << k;
        }
      }
}

TEST(Pochhammer, VanishingSymbol) {
  // (q^-4; q^4)_2 contains 1 - q^0
  EXPECT_FALSE(pochhammer_or_zero(PochBase::q(-4), 4, 2));
  EXPECT_TRUE(pochhammer_or_zero(PochBase::q(-4), 4, 1));
}

TEST(Pochhammer, ParametricAgainstProduct) {
  const BigRat a = make_rat(3, 7), b = -5, q = 2;
  struct Case {
    PochBase base;
    BigRat x;
  };
  const std::vector<Case> cases{{PochBase::a_times(1), a * q},
                                {PochBase::over_a(4), q * q * q * q / a},
                                {PochBase::b_times(-3), b / (q * q * q)},
                                {PochBase::over_b(0), 1 / b}};
  for (const auto& c : cases)
    for (long k = 0; k <= 4; ++k)
      EXPECT_EQ(value(pochhammer(c.base, 4, k), a, b, q), poch(c.x, q * q * q * q, k));
}

TEST(Atoms, CanonicalisationKeepsValue) {
  const BigRat a = 5, b = make_rat(-2, 3), q = 3;
  for (int i : {-1, 0, 1})
    for (int j : {-1, 0, 1}) {
      if (i == 0 && j == 0) continue;
      for (long e : {-4, 0, 2}) {
        if (e == 0 && i == 0 && j == 0) continue;
        CycloFactored x;
        x.multiply_atom(i, j, e, 1);
        for (const auto& [atom, m] : x.atoms()) EXPECT_TRUE(atom.is_canonical());
        const BigRat want = 1 - rpow(a, i) * rpow(b, j) * qpow(q, e);
        EXPECT_EQ(value(x, a, b, q), want) << i << " " << j << " " << e;
      }
    }
}

TEST(Atoms, InverseAndPower) {
  CycloFactored x = CycloFactored::monomial(1, -1) * qpow_factor(3);
  x.multiply_atom(1, 0, -2, 2);
  const BigRat a = 7, b = 11, q = 2;
  EXPECT_EQ(value(x.inverse(), a, b, q), 1 / value(x, a, b, q));
  EXPECT_EQ(value(x.pow(3), a, b, q), rpow(value(x, a, b, q), 3));
  EXPECT_TRUE((x / x).is_parameter_free());
}

TEST(Substitute, RootOfAtomVanishes) {
  // (1 - a q^3) at a = q^-3 is 0
  CycloFactored x;
  x.multiply_atom(1, 0, 3, 1);
  EXPECT_FALSE(substitute(x, 0, -3));
  // at a = q^2 it is 1 - q^5
  auto y = substitute(x, 0, 2);
  ASSERT_TRUE(y);
  EXPECT_EQ(value(*y, 1, 1, 2), 1 - 32);
}

TEST(Substitute, PoleThrows) {
  CycloFactored x;
  x.multiply_atom(0, 1, 1, -1);  // 1/(1 - b q)
  EXPECT_THROW(substitute(x, 1, -1), zero_denominator);
}

TEST(Evaluate, ParamTermWithPolynomial) {
  // (1 - ab q) * (a + b q^-1)
  CycloFactored f;
  f.multiply_atom(1, 1, 1, 1);
  TriPoly p;
  p.add(1, 0, 1, 0);
  p.add(1, -1, 0, 1);
  ParamTerm t(f, {p});
  const BigRat a = 3, b = -2, q = 5;
  auto v = evaluate(t, a, b);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->eval(q), (1 - a * b * q) * (a + b / q));
  // a and b exchanged
  auto w = evaluate(swap_ab(t), b, a);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->eval(q), v->eval(q));
}

TEST(DegreeBound, CoversTheActualDegree) {
  // a^2 (1 - a q)(1 - q/a)^-1 + 1: clearing denominators gives degree <= 3 in a
  CycloFactored f = CycloFactored::monomial(2, 0);
  f.multiply_atom(1, 0, 1, 1);
  f.multiply_atom(-1, 0, 1, -1);
  ParamSum s{ParamTerm(f), ParamTerm(CycloFactored())};
  EXPECT_GE(parameter_degree_bound(s, 0), 3);
  EXPECT_EQ(parameter_degree_bound(s, 1), 0);
}

TEST(FactoredValue, OneMinusSpecialCases) {
  for (const BigRat& c : {BigRat(1), BigRat(-1), make_rat(2, 3), BigRat(0)})
    for (long e : {-3, 0, 1, 4}) {
      auto v = fv_one_minus(c, e);
      const BigRat want = 1 - c * qpow(3, e);
      if (!v) {
        EXPECT_EQ(want, 0);
        continue;
      }
      EXPECT_EQ(v->eval(3), want) << c << " " << e;
    }
}

TEST(FactoredValue, ExpandMatchesEval) {
  FactoredValue v = FactoredValue::constant(make_rat(-5, 2));
  v.mul_q(-3);
  v.mul_cyclo(4, 2);
  v.mul_cyclo(3, -1);
  v.mul_poly(UniPoly(std::vector<BigRat>{2, 0, 1}), -1);
  const LaurentRatFun x = v.expand();
  for (long qv : {2, 5, -7}) EXPECT_EQ(x.eval(qv), v.eval(qv));
  EXPECT_EQ(v.valuation(4), 2);
  EXPECT_EQ(v.valuation(3), -1);
}

TEST(QPochFV, MonomialBase) {
  // (2q^-1; q^2)_3
  auto v = fv_pochhammer(QMonomial{2, -1}, 2, 3);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->eval(3), poch(BigRat(2) / 3, 9, 3));
  EXPECT_FALSE(fv_pochhammer(QMonomial{1, -4}, 2, 3));
}
