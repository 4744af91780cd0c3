#pragma once

// One entry point per result.  Each returns a CongruenceVerdict whose parts
// cover the headline modulus and the stronger congruences used along the way.

#include "qsc/congruence.hpp"
#include "qsc/qseries.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsc {

/// Precondition violations of a verify_* call (distinct from a failed check).
struct bad_instance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void want_odd(long n, long min, const char* who) {
  if (n < min || n % 2 == 0)
    throw bad_instance(std::string(who) + ": n must be odd and at least " + std::to_string(min));
}

inline std::string n_instance(long n) { return "n=" + std::to_string(n); }

template <class F>
std::vector<FactoredValue> collect(long from, long to, F term) {
  std::vector<FactoredValue> out;
  for (long k = from; k <= to; ++k) out.push_back(to_factored_value(term(k)));
  return out;
}

inline void subtract(std::vector<FactoredValue>& terms, const std::vector<FactoredValue>& rhs) {
  for (FactoredValue v : rhs) {
    v.mul_scalar(-1);
    terms.push_back(std::move(v));
  }
}

inline void subtract(std::vector<FactoredValue>& terms, const std::optional<CycloFactored>& rhs) {
  if (rhs) subtract(terms, {to_factored_value(*rhs)});
}

inline std::vector<FactoredValue> fv_of(const std::optional<ParamTerm>& t) {
  if (!t) return {};
  auto v = fv(*t);
  if (!v) return {};
  return {*v};
}

inline ParamSum difference(ParamSum lhs, const ParamSum& rhs) {
  append(lhs, negated(rhs));
  return lhs;
}

inline Modulus four_atoms(long tn) {
  return Modulus::one_minus(0, tn) * Modulus::minus(0, tn) * Modulus::one_minus(1, tn) * Modulus::minus(1, tn);
}

}  // namespace detail

/// The [8k+1] sum for one odd n.
inline CongruenceVerdict verify_more5(long n) {
  detail::want_odd(n, 1, "verify_more5");
  CongruenceVerdict v;
  v.target = "more5";
  v.instance = detail::n_instance(n);
  const Modulus headline = Modulus::q_integer(n) * Modulus::cyclotomic(n, 2);
  v.modulus = headline.to_string();
  const auto full = detail::collect(0, n - 1, term_more5);
  const auto rhs = rhs_more5(n);

  auto diff = full;
  detail::subtract(diff, rhs);
  v.add(sum_congruent_zero(diff, headline, "full sum minus RHS"));
  v.add(sum_congruent_zero(diff, Modulus::cyclotomic(n, 3), "full sum minus RHS, stronger modulus"));

  const CaseParams c = thm31_case(n);
  auto head = detail::collect(0, std::min(c.M, n - 1), term_more5);
  if (c.M > n - 1) {
    auto more = detail::collect(n, c.M, term_more5);
    head.insert(head.end(), more.begin(), more.end());
  }
  auto lim = head;
  detail::subtract(lim, limit_more5_terms(n));
  v.add(sum_congruent_zero(lim, Modulus::cyclotomic(n, 3), "truncated sum minus b->1 limit of mu"));

  auto bridge = head;
  detail::subtract(bridge, full);
  v.add(sum_congruent_zero(bridge, Modulus::cyclotomic(n, 3), "truncated sum minus full sum"));
  return v;
}

/// The [8k-1] sum for one odd n > 3.  The right-hand side is a rational
/// function; the congruence is read in the rational-function sense.
inline CongruenceVerdict verify_more6(long n) {
  detail::want_odd(n, 5, "verify_more6");
  CongruenceVerdict v;
  v.target = "more6";
  v.instance = detail::n_instance(n);
  const Modulus headline = Modulus::q_integer(n) * Modulus::cyclotomic(n, 2);
  v.modulus = headline.to_string();
  v.notes.push_back("A_n is a rational function: congruence read as numerator divisibility, denominator coprime");
  const auto full = detail::collect(0, n - 1, term_more6);
  const auto rhs = detail::fv_of(rhs_more6(n));

  auto diff = full;
  detail::subtract(diff, rhs);
  v.add(sum_congruent_zero(diff, headline, "full sum minus RHS"));
  v.add(sum_congruent_zero(diff, Modulus::cyclotomic(n, 3), "full sum minus RHS, stronger modulus"));

  const CaseParams c = thm41_case(n);
  auto head = detail::collect(0, c.M, term_more6);
  auto lim = head;
  detail::subtract(lim, limit_more6_terms(n));
  v.add(sum_congruent_zero(lim, Modulus::cyclotomic(n, 3), "truncated sum minus b->1 limit of nu"));

  auto bridge = head;
  detail::subtract(bridge, full);
  v.add(sum_congruent_zero(bridge, Modulus::cyclotomic(n, 3), "truncated sum minus full sum"));

  if (n % 4 == 3) {
    // A_n = -q^{-1}(q^n - 2)[n][n+2] T(n,1,q), exactly
    auto t1 = substitute(T_factor(n), 1, 0);
    ParamTerm alt = *t1 * ParamTerm(CycloFactored::scalar(-1) * CycloFactored::q_power(-1) *
                                        *q_integer_factor(n) * *q_integer_factor(n + 2),
                                    {TriPoly::monomial(1, n) - TriPoly::monomial(2, 0)});
    std::vector<FactoredValue> d = detail::fv_of(A_n(n));
    detail::subtract(d, detail::fv_of(alt));
    const SumFraction f = exact_sum(d);
    v.add(CheckPart{"A_n against the T(n,1,q) form", "exact", f.is_zero() ? Status::Pass : Status::Fail,
                    digest(f.is_zero() ? "exact-zero" : "residue;" + canonical(f.num)), ""});
  }
  return v;
}

/// The two-parameter [8k+1] congruence for one odd n.
inline CongruenceVerdict verify_super11(long n, std::size_t seed = 0) {
  detail::want_odd(n, 1, "verify_super11");
  const CaseParams c = thm31_case(n);
  const long tn = c.t * n;
  CongruenceVerdict v;
  v.target = "super11";
  v.instance = detail::n_instance(n) + ",t=" + std::to_string(c.t) + ",M=" + std::to_string(c.M);
  const Modulus m = Modulus::cyclotomic(n) * detail::four_atoms(tn);
  v.modulus = m.to_string();
  const ParamSum lhs = super11_lhs(n);
  for (auto& p : parametric_congruent_zero(detail::difference(lhs, super11_rhs(n)), m, seed, "sum minus RHS"))
    v.add(std::move(p));
  const ParamSum single = detail::difference(lhs, super11_single_rhs(n));
  for (const auto& f : (Modulus::one_minus(0, tn) * Modulus::minus(0, tn)).parametric()) {
    CheckPart p = param_factor_check(single, f, seed);
    p.label = "single-factor form, " + p.label;
    v.add(std::move(p));
  }
  return v;
}

/// The two-parameter [8k-1] congruence for one odd n > 3, with its single-factor form.
inline CongruenceVerdict verify_section41(long n, std::size_t seed = 0) {
  detail::want_odd(n, 5, "verify_section41");
  const CaseParams c = thm41_case(n);
  const long tn = c.t * n;
  CongruenceVerdict v;
  v.target = "section41";
  v.instance = detail::n_instance(n) + ",t=" + std::to_string(c.t) + ",M=" + std::to_string(c.M);
  const Modulus m = Modulus::cyclotomic(n) * detail::four_atoms(tn);
  v.modulus = m.to_string();
  const ParamSum lhs = section41_lhs(n);
  for (auto& p : parametric_congruent_zero(detail::difference(lhs, section41_rhs(n)), m, seed, "sum minus RHS"))
    v.add(std::move(p));
  const ParamSum single = detail::difference(lhs, section41_single_rhs(n));
  for (const auto& f : (Modulus::one_minus(0, tn) * Modulus::minus(0, tn)).parametric()) {
    CheckPart p = param_factor_check(single, f, seed);
    p.label = "single-factor form, " + p.label;
    v.add(std::move(p));
  }
  return v;
}

/// The a = 1 specialisation of the two-parameter [8k+1] sum against mu(b,tn), modulo
/// Phi_n^2 (1 - b q^tn)(b - q^tn).
inline CongruenceVerdict verify_section24(long n, std::size_t seed = 0) {
  detail::want_odd(n, 1, "verify_section24");
  const CaseParams c = thm31_case(n);
  const long tn = c.t * n;
  CongruenceVerdict v;
  v.target = "section24";
  v.instance = detail::n_instance(n) + ",t=" + std::to_string(c.t);
  const Modulus m = Modulus::cyclotomic(n, 2) * Modulus::one_minus(1, tn) * Modulus::minus(1, tn);
  v.modulus = m.to_string();
  for (auto& p : parametric_congruent_zero(detail::difference(section24_lhs(n), mu_section24(tn)), m, seed,
                                           "a=1 sum minus mu"))
    v.add(std::move(p));
  return v;
}

/// The a = 1 specialisation of the two-parameter [8k-1] sum against q^{-1-tn}[tn][tn+2] nu.
inline CongruenceVerdict verify_section4_nu(long n, std::size_t seed = 0) {
  detail::want_odd(n, 5, "verify_section4_nu");
  const CaseParams c = thm41_case(n);
  const long tn = c.t * n;
  CongruenceVerdict v;
  v.target = "section4-nu";
  v.instance = detail::n_instance(n) + ",t=" + std::to_string(c.t);
  const Modulus m = Modulus::cyclotomic(n, 2) * Modulus::one_minus(1, tn) * Modulus::minus(1, tn);
  v.modulus = m.to_string();
  const ParamSum lhs = substitute(section41_lhs(n), 0, 0);
  const ParamSum rhs =
      nu_section4(tn) *
      ParamTerm(CycloFactored::q_power(-1 - tn) * *q_integer_factor(tn) * *q_integer_factor(tn + 2));
  for (auto& p : parametric_congruent_zero(detail::difference(lhs, rhs), m, seed, "a=1 sum minus nu"))
    v.add(std::move(p));
  return v;
}

/// Pochhammer reflection modulo Phi_n, interpolation-complete in a.
inline CongruenceVerdict verify_lemma21(long n, long d, long m, long r, long k, std::size_t seed = 0) {
  if (n < 2 || d < 1 || m < 1 || m > n - 1) throw bad_instance("verify_lemma21: need n >= 2, d >= 1, 1 <= m <= n-1");
  if (mod_floor(d * m + r, n) != 0) throw bad_instance("verify_lemma21: need d m = -r (mod n)");
  if (k < 0 || k > m) throw bad_instance("verify_lemma21: need 0 <= k <= m");
  CongruenceVerdict v;
  v.target = "lemma21";
  v.instance = "n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",m=" + std::to_string(m) +
               ",r=" + std::to_string(r) + ",k=" + std::to_string(k);
  const Modulus mod = Modulus::cyclotomic(n);
  v.modulus = mod.to_string();
  for (auto& p : parametric_congruent_zero(lemma21_difference(d, r, m, k), mod, seed, "left minus right"))
    v.add(std::move(p));
  return v;
}

/// Truncated base q^d two-parameter sum modulo Phi_n, interpolation-complete in (a, b).
inline CongruenceVerdict verify_super3(long n, long d, long r, std::size_t seed = 0) {
  if (n < 1 || d < 1) throw bad_instance("verify_super3: need n, d >= 1");
  if (std::gcd(n, d) != 1) throw bad_instance("verify_super3: need gcd(n, d) = 1");
  const auto m = lemma_m(n, d, r);
  if (!m) throw bad_instance("verify_super3: no m with d m = -r (mod n)");
  CongruenceVerdict v;
  v.target = "super3";
  v.instance = "n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",r=" + std::to_string(r) +
               ",m=" + std::to_string(*m);
  const Modulus mod = Modulus::cyclotomic(n);
  v.modulus = mod.to_string();
  ParamSum sum;
  try {
    for (long k = 0; k <= *m; ++k) append(sum, lemma22_term(d, r, k));
  } catch (const zero_denominator& e) {
    v.add(CheckPart{"sum", v.modulus, Status::IllPosed, digest("illposed;" + v.instance), e.what()});
    v.notes.push_back("a denominator symbol is identically zero for this (d, r)");
    return v;
  }
  for (auto& p : parametric_congruent_zero(sum, mod, seed, "sum")) v.add(std::move(p));
  return v;
}

/// Truncation m of the c_q sums.
inline long lemma23_m(long n, int r) {
  if (mod_floor(n - r, 4) == 0) return (n - r) / 4;
  return (3 * n - r) / 4;
}

/// c_q sums: both truncations modulo [n].
inline CongruenceVerdict verify_super56(long n, int r) {
  detail::want_odd(n, 1, "verify_super56");
  if (r != 1 && r != -1) throw bad_instance("verify_super56: r must be 1 or -1");
  const long m = lemma23_m(n, r);
  CongruenceVerdict v;
  v.target = "super56";
  v.instance = "n=" + std::to_string(n) + ",r=" + std::to_string(r) + ",m=" + std::to_string(m);
  const Modulus mod = Modulus::q_integer(n);
  v.modulus = mod.to_string();
  v.notes.push_back("step 4 used for the (q^{2+r}) symbol");
  auto term = [r](long k) { return c_q(k, r); };
  v.add(sum_congruent_zero(detail::collect(0, m, term), mod, "sum to m"));
  v.add(sum_congruent_zero(detail::collect(0, n - 1, term), mod, "sum to n-1"));
  return v;
}

namespace detail {

inline CheckPart valuation_part(const std::string& label, const BigRat& diff, long p, long need) {
  CheckPart part{label, "p^" + std::to_string(need), Status::Pass, "", ""};
  const auto val = padic_valuation(diff, static_cast<unsigned long>(p));
  part.detail = val ? "valuation " + std::to_string(*val) : "difference is 0";
  if (val && *val < need) part.status = Status::Fail;
  part.digest = digest("valuation;" + diff.get_str());
  return part;
}

}  // namespace detail

/// The q -> 1 corollaries, computed with classical Pochhammer symbols.
inline CongruenceVerdict verify_corollary(int which, long p) {
  if (which != 1 && which != 2) throw bad_instance("verify_corollary: which must be 1 or 2");
  if (p < 3 || !is_prime(p)) throw bad_instance("verify_corollary: p must be an odd prime");
  if (which == 2 && p == 3) throw bad_instance("verify_corollary: the second corollary needs p > 3");
  CongruenceVerdict v;
  v.target = which == 1 ? "corollary1" : "corollary2";
  v.instance = "p=" + std::to_string(p);
  v.modulus = "p³";
  const BigRat lhs = classical_sum(which == 1 ? ClassicalKind::Cor1Lhs : ClassicalKind::Cor2Lhs, p);
  const BigRat rhs = classical_sum(which == 1 ? ClassicalKind::Cor1Rhs : ClassicalKind::Cor2Rhs, p);
  v.add(detail::valuation_part("LHS minus RHS", lhs - rhs, p, 3));
  return v;
}

/// Calibration: sum of (4k+1)(1/2)_k^4/k!^4 = p modulo p^3.
inline CongruenceVerdict verify_vanhamme(long p) {
  if (p < 3 || !is_prime(p)) throw bad_instance("verify_vanhamme: p must be an odd prime");
  CongruenceVerdict v;
  v.target = "vanhamme-c2";
  v.instance = "p=" + std::to_string(p);
  v.modulus = "p³";
  v.add(detail::valuation_part("sum minus p", classical_sum(ClassicalKind::VanHammeC2, p) - p, p, 3));
  return v;
}

/// q-analogue of the (1/2)_k^4 sum, modulo Phi_n^2.
inline CongruenceVerdict verify_mod_phi(long n) {
  detail::want_odd(n, 1, "verify_mod_phi");
  CongruenceVerdict v;
  v.target = "mod-phi";
  v.instance = detail::n_instance(n);
  const Modulus mod = Modulus::cyclotomic(n, 2);
  v.modulus = mod.to_string();
  auto diff = detail::collect(0, n - 1, term_mod_phi);
  detail::subtract(diff, rhs_mod_phi(n));
  v.add(sum_congruent_zero(diff, mod, "sum minus RHS"));
  return v;
}

/// The [8k+1] sum against [n] q^{(1-n)/2} times the (1/2)_k^4 sum, modulo [n] Phi_n^2.
inline CongruenceVerdict verify_more_fin(long n) {
  detail::want_odd(n, 1, "verify_more_fin");
  CongruenceVerdict v;
  v.target = "more-fin";
  v.instance = detail::n_instance(n);
  const Modulus mod = Modulus::q_integer(n) * Modulus::cyclotomic(n, 2);
  v.modulus = mod.to_string();
  auto diff = detail::collect(0, n - 1, term_more5);
  const CycloFactored pre = *q_integer_factor(n) * CycloFactored::q_power((1 - n) / 2);
  auto other = detail::collect(0, n - 1, [&](long k) { return pre * term_mod_phi(k); });
  detail::subtract(diff, other);
  v.add(sum_congruent_zero(diff, mod, "difference of the two sums"));
  return v;
}

/// Terms of the [8k+1] (or [8k-1]) sum with M < k <= n-1 are 0 modulo
/// Phi_n^3, M from the matching case table.
inline CongruenceVerdict verify_term_multiplicity(long n, int which = 5) {
  detail::want_odd(n, which == 5 ? 1 : 5, "verify_term_multiplicity");
  CongruenceVerdict v;
  v.target = which == 5 ? "terms-more5" : "terms-more6";
  const long M = which == 5 ? thm31_case(n).M : thm41_case(n).M;
  v.instance = detail::n_instance(n) + ",M=" + std::to_string(M);
  v.modulus = Modulus::cyclotomic(n, 3).to_string();
  std::string all;
  Status s = Status::Pass;
  std::string detail;
  for (long k = M + 1; k <= n - 1; ++k) {
    const int mult = cyclo_multiplicity(which == 5 ? term_more5(k) : term_more6(k), n);
    all += std::to_string(k) + ":" + std::to_string(mult) + ";";
    if (mult < 3) {
      s = Status::Fail;
      if (detail.empty()) detail = "k=" + std::to_string(k) + " has multiplicity " + std::to_string(mult);
    }
  }
  v.add(CheckPart{"terms beyond M", v.modulus, s, digest("multiplicity;" + all), detail});
  return v;
}

struct ConjectureRow {
  long p = 0;
  long r = 0;
  long threshold = 0;
  std::optional<long> valuation;  // std::nullopt: difference is exactly 0
  bool meets = false;
  std::string skipped;  // nonempty when the guard was exceeded
};

/// Observed p-adic valuation against the conjectured r+3 (p = 1 mod 4) or
/// 2r+1 (p = 3 mod 4).  Evidence only.
inline ConjectureRow explore_conjecture(long p, long r) {
  if (p < 3 || !is_prime(p)) throw bad_instance("explore_conjecture: p must be an odd prime");
  if (r < 1) throw bad_instance("explore_conjecture: r must be positive");
  ConjectureRow row;
  row.p = p;
  row.r = r;
  row.threshold = p % 4 == 1 ? r + 3 : 2 * r + 1;
  BigRat diff;
  try {
    diff = classical_sum(ClassicalKind::Conj5Lhs, p, r) - classical_sum(ClassicalKind::Conj5Rhs, p, r);
  } catch (const std::invalid_argument& e) {
    row.skipped = e.what();
    return row;
  }
  row.valuation = padic_valuation(diff, static_cast<unsigned long>(p));
  row.meets = !row.valuation || *row.valuation >= row.threshold;
  return row;
}

}  // namespace qsc
