#pragma once

// Summands, right-hand sides and identity instances.
//
// Notation: (x;q^4)_k products are built with step 4; P(m) below is the ratio
// (q^2;q^4)_m / (q^4;q^4)_m that appears squared on most right-hand sides.

#include "qsc/accumulate.hpp"
#include "qsc/factored.hpp"
#include "qsc/qfactor.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsc {

namespace detail {

inline void require_odd(long n, const char* who) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument(std::string(who) + ": n must be a positive odd integer");
}

/// [m] with m != 0.
inline CycloFactored qint(long m) {
  auto x = q_integer_factor(m);
  if (!x) throw std::logic_error("q-integer [0] requested");
  return *x;
}

/// Pure-q Pochhammer that must not vanish; a zero factor in a denominator is
/// reported as zero_denominator.
inline CycloFactored den_poch(PochBase base, long step, long k) {
  auto x = pochhammer_or_zero(base, step, k);
  if (!x) throw zero_denominator("denominator Pochhammer product vanishes");
  return *x;
}

/// Multiplies x by a product of Pochhammer symbols; false if one vanishes.
inline bool mul_poch(CycloFactored& x, std::initializer_list<PochBase> bases, long step, long k, int sign) {
  for (const auto& b : bases) {
    if (sign > 0) {
      auto p = pochhammer_or_zero(b, step, k);
      if (!p) return false;
      x *= *p;
    } else {
      x /= den_poch(b, step, k);
    }
  }
  return true;
}

}  // namespace detail

/// (q^2;q^4)_m / (q^4;q^4)_m
inline CycloFactored p_ratio(long m) {
  return pochhammer(PochBase::q(2), 4, m) / pochhammer(PochBase::q(4), 4, m);
}

/// (x q^2, q^2/x; q^4)_m / (x q^4, q^4/x; q^4)_m for x = a (which = 0) or b.
inline CycloFactored param_ratio(int which, long m) {
  PochBase up = PochBase::a_times(2), down = PochBase::over_a(2);
  PochBase up4 = PochBase::a_times(4), down4 = PochBase::over_a(4);
  if (which == 1) {
    up = up.swapped();
    down = down.swapped();
    up4 = up4.swapped();
    down4 = down4.swapped();
  }
  return pochhammer(up, 4, m) * pochhammer(down, 4, m) / (pochhammer(up4, 4, m) * pochhammer(down4, 4, m));
}

// ---------------------------------------------------------------------------
// Summands

/// k-th summand of the [8k+1] sum, (q^2;q^2)_{2k}/(q;q^2)_{2k} form.
inline CycloFactored term_more5(long k) {
  if (k < 0) throw std::invalid_argument("term_more5: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k + 1) * CycloFactored::q_power(4 * k);
  x *= pochhammer(PochBase::q(1), 4, k).pow(6) * pochhammer(PochBase::q(2), 2, 2 * k);
  x /= pochhammer(PochBase::q(4), 4, k).pow(6) * pochhammer(PochBase::q(1), 2, 2 * k);
  return x;
}

/// Same summand written with (q^2;q^4)_k/(q^3;q^4)_k.
inline CycloFactored term_more5_reduced(long k) {
  if (k < 0) throw std::invalid_argument("term_more5_reduced: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k + 1) * CycloFactored::q_power(4 * k);
  x *= pochhammer(PochBase::q(1), 4, k).pow(5) * pochhammer(PochBase::q(2), 4, k);
  x /= pochhammer(PochBase::q(4), 4, k).pow(5) * pochhammer(PochBase::q(3), 4, k);
  return x;
}

/// Summand with parameters a, b.
inline ParamTerm term_more5_param(long k) {
  if (k < 0) throw std::invalid_argument("term_more5_param: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k + 1) * CycloFactored::q_power(4 * k);
  detail::mul_poch(x,
                   {PochBase::a_times(1), PochBase::over_a(1), PochBase::b_times(1), PochBase::over_b(1),
                    PochBase::q(1), PochBase::q(2)},
                   4, k, 1);
  detail::mul_poch(x,
                   {PochBase::a_times(4), PochBase::over_a(4), PochBase::b_times(4), PochBase::over_b(4),
                    PochBase::q(4), PochBase::q(3)},
                   4, k, -1);
  return ParamTerm(std::move(x));
}

/// k-th summand of the [8k-1] sum.
inline CycloFactored term_more6(long k) {
  if (k < 0) throw std::invalid_argument("term_more6: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k - 1) * CycloFactored::q_power(8 * k);
  x *= pochhammer(PochBase::q(-1), 4, k).pow(6) * pochhammer(PochBase::q(2), 2, 2 * k);
  x /= pochhammer(PochBase::q(4), 4, k).pow(6) * pochhammer(PochBase::q(-1), 2, 2 * k);
  return x;
}

inline CycloFactored term_more6_reduced(long k) {
  if (k < 0) throw std::invalid_argument("term_more6_reduced: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k - 1) * CycloFactored::q_power(8 * k);
  x *= pochhammer(PochBase::q(-1), 4, k).pow(5) * pochhammer(PochBase::q(2), 4, k);
  x /= pochhammer(PochBase::q(4), 4, k).pow(5) * pochhammer(PochBase::q(1), 4, k);
  return x;
}

inline ParamTerm term_more6_param(long k) {
  if (k < 0) throw std::invalid_argument("term_more6_param: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k - 1) * CycloFactored::q_power(8 * k);
  detail::mul_poch(x,
                   {PochBase::q(-1), PochBase::a_times(-1), PochBase::over_a(-1), PochBase::b_times(-1),
                    PochBase::over_b(-1), PochBase::q(2)},
                   4, k, 1);
  detail::mul_poch(x,
                   {PochBase::a_times(4), PochBase::over_a(4), PochBase::b_times(4), PochBase::over_b(4),
                    PochBase::q(4), PochBase::q(1)},
                   4, k, -1);
  return ParamTerm(std::move(x));
}

/// c_q(k) = [8k+r] (q^r;q^4)_k^5 (q^2;q^4)_k / ((q^4;q^4)_k^5 (q^{2+r};q^4)_k) q^{(6-2r)k}.
/// The step of the last denominator symbol is taken to be 4.
inline CycloFactored c_q(long k, int r) {
  if (r != 1 && r != -1) throw std::invalid_argument("c_q: r must be 1 or -1");
  if (k < 0) throw std::invalid_argument("c_q: k must be nonnegative");
  CycloFactored x = detail::qint(8 * k + r) * CycloFactored::q_power((6 - 2 * r) * k);
  x *= pochhammer(PochBase::q(r), 4, k).pow(5) * pochhammer(PochBase::q(2), 4, k);
  x /= pochhammer(PochBase::q(4), 4, k).pow(5) * pochhammer(PochBase::q(2 + r), 4, k);
  return x;
}

/// k-th summand of the two-parameter base q^d sum; std::nullopt when it vanishes
/// identically.  Throws zero_denominator if a denominator symbol vanishes.
inline std::optional<ParamTerm> lemma22_term(long d, long r, long k) {
  if (d < 1 || k < 0) throw std::invalid_argument("lemma22_term: need d >= 1, k >= 0");
  auto qi = q_integer_factor(2 * d * k + r);
  CycloFactored x = CycloFactored::q_power((2 * d - 2 * r - 2) * k);
  bool zero = !qi;
  if (qi) x *= *qi;
  if (!detail::mul_poch(x,
                        {PochBase::q(r), PochBase::a_times(r), PochBase::over_a(r), PochBase::b_times(r),
                         PochBase::over_b(r), PochBase::q(2)},
                        d, k, 1))
    zero = true;
  // denominators are checked even when the numerator vanishes
  detail::mul_poch(x,
                   {PochBase::a_times(d), PochBase::over_a(d), PochBase::over_b(d), PochBase::q(d),
                    PochBase::b_times(d), PochBase::q(d + r - 2)},
                   d, k, -1);
  if (zero) return std::nullopt;
  return ParamTerm(std::move(x));
}

/// The truncation m of the reflection lemmas: 0 <= m <= n-1 with d m = -r (mod n).
inline std::optional<long> lemma_m(long n, long d, long r) {
  if (n < 1) throw std::invalid_argument("lemma_m: n must be positive");
  for (long m = 0; m < n; ++m)
    if (mod_floor(d * m + r, n) == 0) return m;
  return std::nullopt;
}

/// Left side minus right side of the Pochhammer reflection (parameter a only).
inline ParamSum lemma21_difference(long d, long r, long m, long k) {
  if (k < 0 || k > m) throw std::invalid_argument("lemma21: need 0 <= k <= m");
  auto ratio = [&](long len) {
    return pochhammer(PochBase::a_times(r), d, len) / pochhammer(PochBase::over_a(d), d, len);
  };
  ParamSum s;
  s.emplace_back(ratio(m - k));
  const long e = m * (d * m - d + 2 * r) / 2 + (d - r) * k;
  CycloFactored rhs = ratio(k) * CycloFactored::q_power(e) *
                      CycloFactored::monomial(static_cast<int>(m - 2 * k), 0) *
                      CycloFactored::scalar((m - 2 * k) % 2 == 0 ? 1 : -1);
  s.push_back(-ParamTerm(std::move(rhs)));
  return s;
}

// ---------------------------------------------------------------------------
// Right-hand sides of the [8k+1] and [8k-1] sums

/// [n] P((n-1)/4)^2 for n = 1 (mod 4); std::nullopt (zero) for n = 3 (mod 4).
inline std::optional<CycloFactored> rhs_more5(long n) {
  detail::require_odd(n, "rhs_more5");
  if (n % 4 == 3) return std::nullopt;
  return detail::qint(n) * p_ratio((n - 1) / 4).pow(2);
}

/// A_n as a parameter-free ParamTerm (the bracketed numerator is a difference,
/// kept as a polynomial factor).
inline ParamTerm A_n(long n) {
  detail::require_odd(n, "A_n");
  if (n <= 3) throw std::invalid_argument("A_n: n must exceed 3");
  // (1 - q^{1-n})^3
  TriPoly u = TriPoly::monomial(1, 0) - TriPoly::monomial(1, 1 - n);
  TriPoly num = u * u * u;
  // q^{-n-2} (1+q)(1-q^2)^2(1-q^{2-n})
  TriPoly v = TriPoly::monomial(1, -n - 2) * (TriPoly::monomial(1, 0) + TriPoly::monomial(1, 1));
  TriPoly w = TriPoly::monomial(1, 0) - TriPoly::monomial(1, 2);
  v = v * w * w * (TriPoly::monomial(1, 0) - TriPoly::monomial(1, 2 - n));
  num = num - v;
  const TriPoly qn2 = TriPoly::monomial(1, n) - TriPoly::monomial(2, 0);
  CycloFactored f = CycloFactored::q_power(n + 1) * detail::qint(n);
  f /= qpow_factor(3 - n) * qpow_factor(1 - n).pow(2);
  return ParamTerm(std::move(f), {qn2, num});
}

/// A_n P((n+1)/4)^2 for n = 3 (mod 4); std::nullopt (zero) for n = 1 (mod 4).
inline std::optional<ParamTerm> rhs_more6(long n) {
  detail::require_odd(n, "rhs_more6");
  if (n <= 3) throw std::invalid_argument("rhs_more6: n must exceed 3");
  if (n % 4 == 1) return std::nullopt;
  return A_n(n) * p_ratio((n + 1) / 4).pow(2);
}

// ---------------------------------------------------------------------------
// Parametric forms

struct CaseParams {
  long t = 1;
  long M = 0;
};

/// t and truncation M for the [8k+1] parametric sum.
inline CaseParams thm31_case(long n) {
  detail::require_odd(n, "thm31_case");
  if (n % 4 == 1) return {1, (n - 1) / 4};
  return {3, (3 * n - 1) / 4};
}

/// t and truncation M for the [8k-1] parametric sum.
inline CaseParams thm41_case(long n) {
  detail::require_odd(n, "thm41_case");
  if (n % 4 == 1) return {3, (3 * n + 1) / 4};
  return {1, (n + 1) / 4};
}

namespace detail {

inline void require_tn(long tn, const char* who) {
  if (tn < 3 || tn % 2 == 0) throw std::invalid_argument(std::string(who) + ": tn must be odd and at least 3");
}

inline TriPoly one() { return TriPoly::monomial(1, 0); }

}  // namespace detail

/// T(tn,b,q) as one fraction:
///   (1-q) P / (q (1 - b q^{1-tn})(1 - b q^{tn-1})(1 - q^{tn+2})),
///   P = b q^2 x^2 + (b^2 q^2 - b q^4 - b q^3 - b q - b + q^2) x + b q^2,  x = q^tn.
/// Agrees with the two-summand form for tn >= 5 and stays finite at tn = 3.
inline ParamTerm T_factor(long tn) {
  detail::require_tn(tn, "T_factor");
  TriPoly p;
  p.add(1, 2 + 2 * tn, 0, 1);
  p.add(1, 2 + tn, 0, 2);
  p.add(-1, 4 + tn, 0, 1);
  p.add(-1, 3 + tn, 0, 1);
  p.add(-1, 1 + tn, 0, 1);
  p.add(-1, tn, 0, 1);
  p.add(1, 2 + tn, 0, 0);
  p.add(1, 2, 0, 1);
  CycloFactored f = qpow_factor(1) * CycloFactored::q_power(-1) / qpow_factor(tn + 2);
  f.multiply_atom(0, 1, 1 - tn, -1);
  f.multiply_atom(0, 1, tn - 1, -1);
  return ParamTerm(std::move(f), {p});
}

/// T(tn,b,q) as the displayed sum of two fractions.  Throws zero_denominator
/// at tn = 3, where (q^{-2} - q^{1-tn}) vanishes.
inline ParamSum T_two_summand(long tn) {
  detail::require_tn(tn, "T_two_summand");
  if (tn == 3) throw zero_denominator("T: the factor q^{-2} - q^{1-tn} vanishes at tn = 3");
  // (q^{-2} - q^e) = q^{-2} (1 - q^{e+2})
  auto gap = [](long e) { return CycloFactored::q_power(-2) * qpow_factor(e + 2); };
  CycloFactored x1 = qpow_factor(1) * gap(-1 - tn) / (qpow_factor(-2 - tn) * gap(1 - tn));
  // (q^{-tn} - q^{-2-tn}) = q^{-tn}(1 - q^{-2})
  CycloFactored x2 = CycloFactored::q_power(-tn) * qpow_factor(-2) * gap(-tn);
  // (b q^{-1} - q)(q^{-1}/b - q) = q^{-2} (1 - b^{-1} q^2)(1 - b q^2)
  x2 *= CycloFactored::q_power(-2);
  x2.multiply_atom(0, -1, 2, 1);
  x2.multiply_atom(0, 1, 2, 1);
  // (b q^{-1} - q^{-tn})(q^{-1}/b - q^{-tn}) = q^{-2} (1 - b^{-1} q^{1-tn})(1 - b q^{1-tn})
  x2 /= CycloFactored::q_power(-2) * qpow_factor(-2 - tn) * gap(1 - tn);
  x2.multiply_atom(0, -1, 1 - tn, -1);
  x2.multiply_atom(0, 1, 1 - tn, -1);
  return {ParamTerm(std::move(x1)), ParamTerm(std::move(x2))};
}

/// (1 - b q^tn)(b - q^tn)(-1 - a^2 + a q^tn) / ((a - b)(1 - ab)): the weight that
/// is 1 modulo (1 - a q^tn)(a - q^tn).
inline ParamTerm weight_a(long tn) {
  CycloFactored f = CycloFactored::monomial(0, 1);  // b - q^tn = b (1 - b^{-1} q^tn)
  f.multiply_atom(0, 1, tn, 1);
  f.multiply_atom(0, -1, tn, 1);
  // a - b = a (1 - a^{-1} b)
  f *= CycloFactored::monomial(-1, 0);
  f.multiply_atom(-1, 1, 0, -1);
  f.multiply_atom(1, 1, 0, -1);
  TriPoly p;
  p.add(-1, 0);
  p.add(-1, 0, 2, 0);
  p.add(1, tn, 1, 0);
  return ParamTerm(std::move(f), {p});
}

/// The complementary weight (a and b exchanged).
inline ParamTerm weight_b(long tn) { return swap_ab(weight_a(tn)); }

/// Two-parameter [8k+1] sum, k = 0..M.
inline ParamSum super11_lhs(long n) {
  const CaseParams c = thm31_case(n);
  ParamSum s;
  for (long k = 0; k <= c.M; ++k) s.push_back(term_more5_param(k));
  return s;
}

/// [tn] (W_a P_b + W_b P_a) with P_x = (xq^2,q^2/x;q^4)_m/(xq^4,q^4/x;q^4)_m, m = (tn-1)/4.
inline ParamSum super11_rhs(long n) {
  const CaseParams c = thm31_case(n);
  const long tn = c.t * n;
  const long m = (tn - 1) / 4;
  const CycloFactored pre = detail::qint(tn);
  return {weight_a(tn) * (pre * param_ratio(1, m)), weight_b(tn) * (pre * param_ratio(0, m))};
}

/// [tn] P_b: the value of the two-parameter [8k+1] sum modulo (1 - a q^tn)(a - q^tn).
inline ParamSum super11_single_rhs(long n) {
  const CaseParams c = thm31_case(n);
  const long tn = c.t * n;
  return {ParamTerm(detail::qint(tn) * param_ratio(1, (tn - 1) / 4))};
}

inline ParamSum section41_lhs(long n) {
  detail::require_odd(n, "section41_lhs");
  if (n <= 3) throw std::invalid_argument("section41_lhs: n must exceed 3");
  const CaseParams c = thm41_case(n);
  ParamSum s;
  for (long k = 0; k <= c.M; ++k) s.push_back(term_more6_param(k));
  return s;
}

inline ParamSum section41_rhs(long n) {
  detail::require_odd(n, "section41_rhs");
  if (n <= 3) throw std::invalid_argument("section41_rhs: n must exceed 3");
  const CaseParams c = thm41_case(n);
  const long tn = c.t * n;
  const long m = (tn + 1) / 4;
  const CycloFactored pre = CycloFactored::q_power(-1 - tn) * detail::qint(tn) * detail::qint(tn + 2);
  const ParamTerm tb = T_factor(tn);
  return {weight_a(tn) * tb * (pre * param_ratio(1, m)), weight_b(tn) * swap_ab(tb) * (pre * param_ratio(0, m))};
}

/// q^{-1-tn} [tn][tn+2] T(tn,b,q) P_b with m = (tn+1)/4.
inline ParamSum section41_single_rhs(long n) {
  detail::require_odd(n, "section41_single_rhs");
  if (n <= 3) throw std::invalid_argument("section41_single_rhs: n must exceed 3");
  const CaseParams c = thm41_case(n);
  const long tn = c.t * n;
  const CycloFactored pre = CycloFactored::q_power(-1 - tn) * detail::qint(tn) * detail::qint(tn + 2);
  return {T_factor(tn) * (pre * param_ratio(1, (tn + 1) / 4))};
}

namespace detail {

/// (1 - b q^tn)(b - q^tn)(-2 + q^tn)/(1 - b)^2 as a ParamTerm.
inline ParamTerm mu_weight(long tn) {
  CycloFactored f = CycloFactored::monomial(0, 1);
  f.multiply_atom(0, 1, tn, 1);
  f.multiply_atom(0, -1, tn, 1);
  f.multiply_atom(0, 1, 0, -2);
  TriPoly p = TriPoly::monomial(1, tn) - TriPoly::monomial(2, 0);
  return ParamTerm(std::move(f), {p});
}

/// (1 - q^tn)^2 (-1 - b^2 + b q^tn)/(1 - b)^2
inline ParamTerm mu_companion(long tn) {
  CycloFactored f = qpow_factor(tn).pow(2);
  f.multiply_atom(0, 1, 0, -2);
  TriPoly p;
  p.add(-1, 0);
  p.add(-1, 0, 0, 2);
  p.add(1, tn, 0, 1);
  return ParamTerm(std::move(f), {p});
}

}  // namespace detail

/// mu(b,tn) of the a -> 1 limit of the [8k+1] parametric sum.
inline ParamSum mu_section24(long tn) {
  if (tn < 1 || tn % 2 == 0) throw std::invalid_argument("mu_section24: tn must be odd");
  const long m = (tn - 1) / 4;
  const CycloFactored pre = detail::qint(tn);
  return {detail::mu_weight(tn) * (pre * param_ratio(1, m)),
          -(detail::mu_companion(tn) * (pre * p_ratio(m).pow(2)))};
}

/// nu(tn,b,q) of the a -> 1 limit of the [8k-1] parametric sum.
inline ParamSum nu_section4(long tn) {
  detail::require_tn(tn, "nu_section4");
  const long m = (tn + 1) / 4;
  const ParamTerm t = T_factor(tn);
  auto t1 = substitute(t, 1, 0);
  if (!t1) throw std::logic_error("T(tn,1,q) vanished");
  return {detail::mu_weight(tn) * t * param_ratio(1, m), -(detail::mu_companion(tn) * *t1 * p_ratio(m).pow(2))};
}

/// The two-parameter [8k+1] sum at a = 1 (parameter b only).
inline ParamSum section24_lhs(long n) { return substitute(super11_lhs(n), 0, 0); }

/// Parameter-free ParamTerm as a FactoredValue (std::nullopt when zero).
inline std::optional<FactoredValue> fv(const ParamTerm& t) { return evaluate(t, BigRat(1), BigRat(1)); }

inline std::vector<FactoredValue> fv_list(const std::vector<CycloFactored>& xs) {
  std::vector<FactoredValue> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(to_factored_value(x));
  return out;
}

namespace detail {

/// Terms of sum_{j=1}^{m} q^{4j}/(1-q^{4j})^2 - sum_{j=0}^{m-1} q^{4j+2}/(1-q^{4j+2})^2.
inline std::vector<CycloFactored> harmonic_terms(long m) {
  std::vector<CycloFactored> out;
  for (long j = 1; j <= m; ++j) out.push_back(CycloFactored::q_power(4 * j) / qpow_factor(4 * j).pow(2));
  for (long j = 0; j < m; ++j)
    out.push_back(CycloFactored::scalar(-1) * CycloFactored::q_power(4 * j + 2) / qpow_factor(4 * j + 2).pow(2));
  return out;
}

inline FactoredValue poly_fv(const TriPoly& p) {
  auto v = fv(ParamTerm(CycloFactored(), {p}));
  if (!v) throw std::logic_error("zero polynomial factor");
  return *v;
}

}  // namespace detail

/// Terms of [tn] P(m)^2 [1 + (1-q^tn)^2 (q^tn - 2) H(m)], m = (tn-1)/4: the
/// b -> 1 limit of mu(b,tn).
inline std::vector<FactoredValue> limit_more5_terms(long n) {
  const CaseParams c = thm31_case(n);
  const long tn = c.t * n;
  const long m = (tn - 1) / 4;
  const FactoredValue base = to_factored_value(detail::qint(tn) * p_ratio(m).pow(2));
  std::vector<FactoredValue> out{base};
  if (tn == 1) return out;
  const FactoredValue mid = base * to_factored_value(qpow_factor(tn).pow(2)) *
                            detail::poly_fv(TriPoly::monomial(1, tn) - TriPoly::monomial(2, 0));
  for (const auto& h : detail::harmonic_terms(m)) out.push_back(mid * to_factored_value(h));
  return out;
}

/// Terms of q^{-1-tn}[tn][tn+2] P(m)^2 [(1-q^tn)^2 (q^tn-2) T(tn,1,q) H(m)
///   - q^tn (q^tn - 2) T(tn,1,q)],  m = (tn+1)/4.
inline std::vector<FactoredValue> limit_more6_terms(long n) {
  const CaseParams c = thm41_case(n);
  const long tn = c.t * n;
  const long m = (tn + 1) / 4;
  auto t1 = substitute(T_factor(tn), 1, 0);
  if (!t1) throw std::logic_error("T(tn,1,q) vanished");
  const FactoredValue base =
      to_factored_value(CycloFactored::q_power(-1 - tn) * detail::qint(tn) * detail::qint(tn + 2) *
                        p_ratio(m).pow(2)) *
      *fv(*t1) * detail::poly_fv(TriPoly::monomial(1, tn) - TriPoly::monomial(2, 0));
  std::vector<FactoredValue> out;
  FactoredValue last = base;
  last.mul_q(tn);
  last.mul_scalar(-1);
  out.push_back(last);
  const FactoredValue mid = base * to_factored_value(qpow_factor(tn).pow(2));
  for (const auto& h : detail::harmonic_terms(m)) out.push_back(mid * to_factored_value(h));
  return out;
}

// ---------------------------------------------------------------------------
// The (1/2)_k^4 family and the q -> 1 sums

/// (q;q^2)_k^2 (q^2;q^4)_k / ((q^2;q^2)_k^2 (q^4;q^4)_k) q^{2k}
inline CycloFactored term_mod_phi(long k) {
  if (k < 0) throw std::invalid_argument("term_mod_phi: k must be nonnegative");
  CycloFactored x = CycloFactored::q_power(2 * k);
  x *= pochhammer(PochBase::q(1), 2, k).pow(2) * pochhammer(PochBase::q(2), 4, k);
  x /= pochhammer(PochBase::q(2), 2, k).pow(2) * pochhammer(PochBase::q(4), 4, k);
  return x;
}

/// P((n-1)/4)^2 q^{(n-1)/2} for n = 1 (mod 4); std::nullopt (zero) otherwise.
inline std::optional<CycloFactored> rhs_mod_phi(long n) {
  detail::require_odd(n, "rhs_mod_phi");
  if (n % 4 == 3) return std::nullopt;
  return p_ratio((n - 1) / 4).pow(2) * CycloFactored::q_power((n - 1) / 2);
}

// ---------------------------------------------------------------------------
// Identity instances

enum class IdentityKind { Watson, Pfaff, Phi43T };

inline const char* identity_name(IdentityKind k) {
  switch (k) {
    case IdentityKind::Watson:
      return "watson";
    case IdentityKind::Pfaff:
      return "pfaff";
    case IdentityKind::Phi43T:
      return "phi43t";
  }
  return "?";
}

struct IdentityInstance {
  IdentityKind kind = IdentityKind::Watson;
  std::map<std::string, std::string> parameters;
  long m = 0;
  SumFraction lhs;
  SumFraction rhs;

  /// Exact equality of the two rational functions of q.
  bool equal() const { return lhs.num * rhs.den == rhs.num * lhs.den; }

  /// Both sides at a rational q (not a pole).
  std::pair<BigRat, BigRat> at(const BigRat& q) const {
    auto value = [&q](const SumFraction& s) {
      const BigRat d = s.den.eval<BigRat>(q);
      if (d == 0) throw std::domain_error("identity side evaluated at a pole");
      return BigRat(s.num.eval<BigRat>(q) / d);
    };
    return {value(lhs), value(rhs)};
  }
};

inline std::string to_string(const QMonomial& x) {
  if (x.q_exp == 0) return x.coef.get_str();
  std::string s = x.coef == 1 ? std::string() : x.coef.get_str() + "*";
  return s + "q^" + std::to_string(x.q_exp);
}

/// Reads "c", "q", "q^e", "c*q^e" or "cq^e" with c an integer or fraction.
inline QMonomial parse_qmonomial(std::string s) {
  std::erase(s, ' ');
  const auto bad = [&s] { return std::invalid_argument("cannot read q-monomial '" + s + "'"); };
  if (s.empty()) throw bad();
  QMonomial out;
  const auto qpos = s.find('q');
  std::string coef = qpos == std::string::npos ? s : s.substr(0, qpos);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  if (coef.empty() || coef == "+") coef = "1";
  if (coef == "-") coef = "-1";
  try {
    out.coef = BigRat(coef);
  } catch (const std::invalid_argument&) {
    throw bad();
  }
  out.coef.canonicalize();
  if (qpos != std::string::npos) {
    const std::string rest = s.substr(qpos + 1);
    if (rest.empty()) {
      out.q_exp = 1;
    } else {
      if (rest[0] != '^' || rest.size() < 2) throw bad();
      std::size_t used = 0;
      try {
        out.q_exp = std::stol(rest.substr(1), &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != rest.size() - 1) throw bad();
    }
  }
  return out;
}

namespace detail {

/// Numerator Pochhammer; false when it vanishes.
inline bool mul_num(FactoredValue& v, const QMonomial& x, long step, long k) {
  auto p = fv_pochhammer(x, step, k);
  if (!p) return false;
  v *= *p;
  return true;
}

inline void mul_den(FactoredValue& v, const QMonomial& x, long step, long k) {
  auto p = fv_pochhammer(x, step, k);
  if (!p) throw zero_denominator("denominator Pochhammer factor vanishes");
  v *= p->inverse();
}

inline FactoredValue fv_monomial(const QMonomial& x) {
  FactoredValue v = FactoredValue::constant(x.coef);
  v.mul_q(x.q_exp);
  return v;
}

}  // namespace detail

/// Watson's 8phi7 -> 4phi3 transformation in base Q = q^base.  The
/// q a^{1/2}, -q a^{1/2} columns over a^{1/2}, -a^{1/2} are written as
/// (1 - a Q^{2k})/(1 - a).
inline IdentityInstance watson_sides(const QMonomial& a, const QMonomial& b, const QMonomial& c,
                                     const QMonomial& d, const QMonomial& e, long m, long base = 1) {
  if (m < 0 || base < 1) throw std::invalid_argument("watson_sides: need m >= 0 and base >= 1");
  const QMonomial Q = QMonomial::q(base);
  const QMonomial qm = QMonomial::q(-m * base);
  const QMonomial z = a * a * QMonomial::q(base * (m + 2)) / (b * c * d * e);
  auto one_minus_a = fv_one_minus(a.coef, a.q_exp);
  if (!one_minus_a) throw zero_denominator("watson_sides: a = 1");

  std::vector<FactoredValue> left;
  for (long k = 0; k <= m; ++k) {
    FactoredValue v = one_minus_a->inverse();
    auto wp = fv_one_minus(a.coef, a.q_exp + 2 * k * base);
    bool zero = !wp;
    if (wp) v *= *wp;
    for (const QMonomial& x : {a, b, c, d, e, qm}) zero = zero || !detail::mul_num(v, x, base, k);
    // denominators are checked even when the numerator vanishes
    for (const QMonomial& x : {Q, a * Q / b, a * Q / c, a * Q / d, a * Q / e, a * QMonomial::q(base * (m + 1))})
      detail::mul_den(v, x, base, k);
    if (zero) continue;
    v *= detail::fv_monomial(z).pow(k);
    left.push_back(std::move(v));
  }

  FactoredValue pre;
  const bool pre_zero = !detail::mul_num(pre, a * Q, base, m) || !detail::mul_num(pre, a * Q / (d * e), base, m);
  detail::mul_den(pre, a * Q / d, base, m);
  detail::mul_den(pre, a * Q / e, base, m);
  std::vector<FactoredValue> right;
  for (long k = 0; k <= m; ++k) {
    FactoredValue v = pre;
    bool zero = pre_zero;
    for (const QMonomial& x : {a * Q / (b * c), d, e, qm}) zero = zero || !detail::mul_num(v, x, base, k);
    for (const QMonomial& x : {Q, a * Q / b, a * Q / c, d * e * qm / a}) detail::mul_den(v, x, base, k);
    if (zero) continue;
    v *= detail::fv_monomial(Q).pow(k);
    right.push_back(std::move(v));
  }
  IdentityInstance out;
  out.kind = IdentityKind::Watson;
  out.m = m;
  out.parameters = {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)},
                    {"d", to_string(d)}, {"e", to_string(e)}, {"base", "q^" + std::to_string(base)}};
  out.lhs = exact_sum(left);
  out.rhs = exact_sum(right);
  return out;
}

inline IdentityInstance watson_sides(const BigRat& a, const BigRat& b, const BigRat& c, const BigRat& d,
                                     const BigRat& e, long m) {
  return watson_sides(QMonomial::scalar(a), QMonomial::scalar(b), QMonomial::scalar(c), QMonomial::scalar(d),
                      QMonomial::scalar(e), m, 1);
}

/// q-Pfaff-Saalschutz in base Q = q^base.
inline IdentityInstance pfaff_sides(const QMonomial& a, const QMonomial& b, const QMonomial& c, long m,
                                    long base = 1) {
  if (m < 0 || base < 1) throw std::invalid_argument("pfaff_sides: need m >= 0 and base >= 1");
  const QMonomial Q = QMonomial::q(base);
  const QMonomial qm = QMonomial::q(-m * base);
  const QMonomial last = a * b * QMonomial::q(base * (1 - m)) / c;
  std::vector<FactoredValue> left;
  for (long k = 0; k <= m; ++k) {
    FactoredValue v;
    bool zero = false;
    for (const QMonomial& x : {a, b, qm}) zero = zero || !detail::mul_num(v, x, base, k);
    for (const QMonomial& x : {Q, c, last}) detail::mul_den(v, x, base, k);
    if (zero) continue;
    v *= detail::fv_monomial(Q).pow(k);
    left.push_back(std::move(v));
  }
  std::vector<FactoredValue> right;
  FactoredValue r;
  bool zero = false;
  for (const QMonomial& x : {c / a, c / b}) zero = zero || !detail::mul_num(r, x, base, m);
  for (const QMonomial& x : {c, c / (a * b)}) detail::mul_den(r, x, base, m);
  if (!zero) right.push_back(r);
  IdentityInstance out;
  out.kind = IdentityKind::Pfaff;
  out.m = m;
  out.parameters = {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)},
                    {"base", "q^" + std::to_string(base)}};
  out.lhs = exact_sum(left);
  out.rhs = exact_sum(right);
  return out;
}

inline IdentityInstance pfaff_sides(const BigRat& a, const BigRat& b, const BigRat& c, long m) {
  return pfaff_sides(QMonomial::scalar(a), QMonomial::scalar(b), QMonomial::scalar(c), m, 1);
}

/// The terminating 4phi3 behind the [8k-1] parametric sum against its closed form
/// q^{-tn-1} T(tn,b,q) (bq^2,q^2/b;q^4)_m / (q^{-1},q;q^4)_m, m = (tn+1)/4.
inline IdentityInstance phi43_T_sides(long n, long t, const BigRat& b) {
  const long tn = t * n;
  detail::require_tn(tn, "phi43_T_sides");
  if (tn % 4 != 3) throw std::invalid_argument("phi43_T_sides: tn must be 3 mod 4");
  if (b == 0) throw std::invalid_argument("phi43_T_sides: b must be nonzero");
  const long m = (tn + 1) / 4;
  const QMonomial B = QMonomial::scalar(b);
  const QMonomial q = QMonomial::q(1);
  std::vector<FactoredValue> left;
  for (long k = 0; k <= m; ++k) {
    FactoredValue v;
    bool zero = false;
    for (const QMonomial& x : {QMonomial::q(2 - tn), B / q, QMonomial::scalar(1) / (B * q), QMonomial::q(-1 - tn)})
      zero = zero || !detail::mul_num(v, x, 4, k);
    for (const QMonomial& x : {QMonomial::q(4), QMonomial::q(4 - tn), q, QMonomial::q(-2 - tn)})
      detail::mul_den(v, x, 4, k);
    if (zero) continue;
    v.mul_q(4 * k);
    left.push_back(std::move(v));
  }
  auto tv = evaluate(T_factor(tn), BigRat(1), b);
  std::vector<FactoredValue> right;
  if (tv) {
    FactoredValue r = *tv;
    r.mul_q(-tn - 1);
    bool zero = false;
    for (const QMonomial& x : {B * QMonomial::q(2), QMonomial::q(2) / B}) zero = zero || !detail::mul_num(r, x, 4, m);
    for (const QMonomial& x : {QMonomial::q(-1), q}) detail::mul_den(r, x, 4, m);
    if (!zero) right.push_back(r);
  }
  IdentityInstance out;
  out.kind = IdentityKind::Phi43T;
  out.m = m;
  out.parameters = {{"n", std::to_string(n)}, {"t", std::to_string(t)}, {"b", b.get_str()}};
  out.lhs = exact_sum(left);
  out.rhs = exact_sum(right);
  return out;
}

/// The Watson instance behind the [8k+1] parametric sum: base q^4, a = q,
/// b = q^{1-tn}, c = q^{1+tn}, d = beta q, e = q/beta, m = (tn-1)/4.
inline IdentityInstance watson_section3(long tn, const BigRat& beta) {
  if (tn < 1 || tn % 4 != 1) throw std::invalid_argument("watson_section3: tn must be 1 mod 4");
  const QMonomial q = QMonomial::q(1);
  return watson_sides(q, QMonomial::q(1 - tn), QMonomial::q(1 + tn), QMonomial::scalar(beta) * q,
                      q / QMonomial::scalar(beta), (tn - 1) / 4, 4);
}

// ---------------------------------------------------------------------------
// Classical (q = 1) sums

enum class ClassicalKind { Cor1Lhs, Cor1Rhs, Cor2Lhs, Cor2Rhs, VanHammeC2, Conj5Lhs, Conj5Rhs };

/// Rising factorial (x)_k.
inline BigRat rising(const BigRat& x, long k) {
  BigRat r = 1;
  for (long j = 0; j < k; ++j) r *= x + j;
  return r;
}

inline BigRat classical_sum(ClassicalKind kind, long p, long r = 1) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("classical_sum: p must be an odd prime");
  const BigRat quarter = make_rat(1, 4), half = make_rat(1, 2), three_q = make_rat(3, 4);
  auto cor1 = [&](long len) {
    // sum_{k<len} (8k+1) (1/4)_k^5 (1/2)_k / ((3/4)_k k!^5), term ratios applied incrementally
    BigRat sum = 0, core = 1;
    for (long k = 0; k < len; ++k) {
      if (k > 0) {
        const BigRat a = quarter + (k - 1);
        core *= a * a * a * a * a * (half + (k - 1)) / ((three_q + (k - 1)) * rpow(BigRat(k), 5));
      }
      sum += core * (8 * k + 1);
    }
    return sum;
  };
  switch (kind) {
    case ClassicalKind::Cor1Lhs:
      return cor1(p);
    case ClassicalKind::Cor1Rhs: {
      if (p % 4 == 3) return 0;
      const long h = (p - 1) / 4;
      const BigRat f = rising(1, h);
      return p * rising(half, h) * rising(half, h) / (f * f);
    }
    case ClassicalKind::Cor2Lhs: {
      if (p == 3) throw std::invalid_argument("classical_sum: the second corollary needs p > 3");
      BigRat sum = 0, core = 1;
      const BigRat mq = make_rat(-1, 4);
      for (long k = 0; k < p; ++k) {
        if (k > 0) {
          const BigRat a = mq + (k - 1);
          core *= (half + (k - 1)) * a * a * a * a * a / ((quarter + (k - 1)) * rpow(BigRat(k), 5));
        }
        sum += core * (8 * k - 1);
      }
      return sum;
    }
    case ClassicalKind::Cor2Rhs: {
      if (p == 3) throw std::invalid_argument("classical_sum: the second corollary needs p > 3");
      if (p % 4 == 1) return 0;
      const long h = (p + 1) / 4;
      const BigRat f = rising(1, h);
      return BigRat(5 * p * (p - 3)) * rising(half, h) * rising(half, h) / (BigRat(7 * p - 3) * f * f);
    }
    case ClassicalKind::VanHammeC2: {
      BigRat sum = 0, core = 1;
      for (long k = 0; k <= (p - 1) / 2; ++k) {
        if (k > 0) core *= rpow((half + (k - 1)) / k, 4);
        sum += core * (4 * k + 1);
      }
      return sum;
    }
    case ClassicalKind::Conj5Lhs:
    case ClassicalKind::Conj5Rhs: {
      if (r < 1) throw std::invalid_argument("classical_sum: r must be positive");
      long pr = 1;
      for (long i = 0; i < r; ++i) {
        if (pr > 10000 / p) throw std::invalid_argument("classical_sum: p^r exceeds 10^4");
        pr *= p;
      }
      if (kind == ClassicalKind::Conj5Lhs) return cor1(pr);
      BigRat sum = 0, core = 1;
      for (long k = 0; k < pr; ++k) {
        if (k > 0) core *= rpow((half + (k - 1)) / k, 3);
        sum += core;
      }
      return pr * sum;
    }
  }
  return 0;
}

}  // namespace qsc
