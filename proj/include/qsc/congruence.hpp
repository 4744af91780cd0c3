#pragma once

// Congruence decisions.
//
// A congruence A = B (mod M) means M divides the numerator of the reduced
// rational function A - B and shares no factor with its denominator; the
// latter failing is reported as ill-posed, never as a failure.
//
// Parametric moduli (1 - a q^s) are decided by substituting a = q^{-s} and
// testing the result for identical vanishing at more values of the remaining
// parameter than its certified degree; cyclotomic factors of a parametric
// congruence are checked on a full grid of (a, b) values.  Both are proofs
// for the fixed instance, not samples.

#include "qsc/accumulate.hpp"
#include "qsc/factored.hpp"
#include "qsc/qseries.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsc {

// ---------------------------------------------------------------------------
// Moduli

enum class ModKind { Cyclotomic, QInteger, ParamAtom };

/// One factor of a modulus.  ParamAtom stands for the linear factor in the
/// parameter (0 = a, 1 = b) vanishing at param = q^root:
/// root < 0 is (1 - x q^{-root}), root > 0 is (x - q^root).
struct ModFactor {
  ModKind kind = ModKind::Cyclotomic;
  long n = 1;
  int mult = 1;
  int param = 0;
  long root = 0;
};

namespace detail {

inline std::string digits(long v, const char* const table[10]) {
  std::string s;
  for (char c : std::to_string(v)) s += c == '-' ? "⁻" : table[c - '0'];
  return s;
}

inline std::string subscript(long v) {
  static const char* const t[10] = {"₀", "₁", "₂", "₃", "₄",
                                    "₅", "₆", "₇", "₈", "₉"};
  return digits(v, t);
}

inline std::string superscript(long v) {
  static const char* const t[10] = {"⁰", "¹", "²", "³", "⁴",
                                    "⁵", "⁶", "⁷", "⁸", "⁹"};
  return digits(v, t);
}

}  // namespace detail

class Modulus {
 public:
  Modulus() = default;
  static Modulus cyclotomic(long n, int mult = 1) { return Modulus({ModFactor{ModKind::Cyclotomic, n, mult}}); }
  static Modulus q_integer(long n) { return Modulus({ModFactor{ModKind::QInteger, n, 1}}); }
  /// (1 - x q^s) for x = a (param 0) or b.
  static Modulus one_minus(int param, long s) { return Modulus({ModFactor{ModKind::ParamAtom, 0, 1, param, -s}}); }
  /// (x - q^s)
  static Modulus minus(int param, long s) { return Modulus({ModFactor{ModKind::ParamAtom, 0, 1, param, s}}); }

  friend Modulus operator*(Modulus x, const Modulus& y) {
    x.factors_.insert(x.factors_.end(), y.factors_.begin(), y.factors_.end());
    return x;
  }

  const std::vector<ModFactor>& factors() const { return factors_; }

  /// Cyclotomic exponents after expanding q-integers; exponents of repeated
  /// factors add, so [n] Phi_n^2 has Phi_n to the third power.
  std::map<long, int> cyclotomic_exponents() const {
    std::map<long, int> r;
    for (const auto& f : factors_) {
      if (f.kind == ModKind::Cyclotomic) r[f.n] += f.mult;
      if (f.kind == ModKind::QInteger)
        for (long d : divisors(f.n))
          if (d > 1) r[d] += f.mult;
    }
    return r;
  }

  std::vector<ModFactor> parametric() const {
    std::vector<ModFactor> r;
    for (const auto& f : factors_)
      if (f.kind == ModKind::ParamAtom) r.push_back(f);
    return r;
  }

  /// Expanded polynomial of the parameter-free part.
  UniPoly polynomial() const {
    UniPoly p = UniPoly::constant(1);
    for (const auto& [d, e] : cyclotomic_exponents()) p *= qsc::pow(qsc::cyclotomic(d), static_cast<unsigned long>(e));
    return p;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& f : factors_) {
      if (!s.empty()) s += "·";
      const std::string power = f.mult == 1 ? "" : detail::superscript(f.mult);
      const char* x = f.param == 0 ? "a" : "b";
      switch (f.kind) {
        case ModKind::Cyclotomic:
          s += "Φ" + detail::subscript(f.n) + "(q)" + power;
          break;
        case ModKind::QInteger:
          s += "[" + std::to_string(f.n) + "]" + power;
          break;
        case ModKind::ParamAtom: {
          const long e = f.root < 0 ? -f.root : f.root;
          const std::string qe = e == 1 ? "q" : "q" + detail::superscript(e);
          if (f.root < 0)
            s += std::string("(1−") + x + qe + ")";
          else
            s += std::string("(") + x + "−" + qe + ")";
          break;
        }
      }
    }
    return s.empty() ? "1" : s;
  }

 private:
  explicit Modulus(std::vector<ModFactor> f) : factors_(std::move(f)) {}
  std::vector<ModFactor> factors_;
};

// ---------------------------------------------------------------------------
// Verdicts

struct CheckPart {
  std::string label;
  std::string modulus;
  Status status = Status::Pass;
  std::string digest;
  std::string detail;
};

/// Fail dominates ill-posed, which dominates pass.
inline Status combine(Status x, Status y) {
  if (x == Status::Fail || y == Status::Fail) return Status::Fail;
  if (x == Status::IllPosed || y == Status::IllPosed) return Status::IllPosed;
  return Status::Pass;
}

struct CongruenceVerdict {
  std::string target;
  std::string instance;
  std::string modulus;
  Status status = Status::Pass;
  std::string digest;
  std::vector<CheckPart> parts;
  std::vector<std::string> notes;

  bool pass() const { return status == Status::Pass && !digest.empty(); }

  void add(CheckPart p) {
    status = combine(status, p.status);
    parts.push_back(std::move(p));
    std::string all;
    for (const auto& q : parts) all += q.label + "=" + q.digest + ";";
    digest = qsc::digest(all);
  }
};

/// Combines several checks into one part.
inline CheckPart merge_parts(std::string label, std::string modulus, const std::vector<CheckPart>& ps) {
  CheckPart out{std::move(label), std::move(modulus), Status::Pass, "", ""};
  std::string all;
  for (const auto& p : ps) {
    out.status = combine(out.status, p.status);
    all += p.digest + ";";
    if (p.status != Status::Pass && out.detail.empty()) out.detail = p.label + ": " + p.detail;
  }
  out.digest = digest(all);
  return out;
}

// ---------------------------------------------------------------------------
// Univariate decisions

/// Residue of a rational function modulo m (denominator coprime to m).
inline UniPoly residue_mod(const LaurentRatFun& x, const UniPoly& m) {
  if (x.is_zero()) return UniPoly();
  UniPoly num = x.num(), den = x.den();
  if (x.shift() > 0) num = num.shifted(static_cast<std::size_t>(x.shift()));
  if (x.shift() < 0) den = den.shifted(static_cast<std::size_t>(-x.shift()));
  return rem(num * inverse_mod(den, m), m);
}

/// x = 0 modulo the polynomial m in the rational-function sense.
inline CheckPart ratfun_divisible(const LaurentRatFun& x, const UniPoly& m, std::string label = "",
                                  std::string modulus = "") {
  if (m.is_zero()) throw std::invalid_argument("ratfun_divisible: zero modulus");
  CheckPart part{std::move(label), std::move(modulus), Status::Pass, "", ""};
  if (m.is_constant()) {
    part.digest = digest("unit-modulus");
    return part;
  }
  // q is a unit modulo m only when m(0) != 0
  if (m[0] == 0) throw std::invalid_argument("ratfun_divisible: modulus divisible by q");
  if (x.is_zero()) {
    part.digest = digest("quotient;0");
    return part;
  }
  if (!gcd(x.den(), m).is_one()) {
    part.status = Status::IllPosed;
    part.detail = "denominator shares a factor with the modulus";
    part.digest = digest("illposed;" + x.den().to_string());
    return part;
  }
  auto [quo, r] = divrem(x.num(), m);
  if (r.is_zero()) {
    part.digest = digest("quotient;" + canonical(quo));
    return part;
  }
  part.status = Status::Fail;
  const UniPoly residue = residue_mod(x, m);
  part.detail = "nonzero residue";
  part.digest = digest("residue;" + canonical(residue));
  return part;
}

/// Parameter-free modulus only.
inline CheckPart ratfun_congruent_zero(const LaurentRatFun& x, const Modulus& m, std::string label = "") {
  if (!m.parametric().empty()) throw std::invalid_argument("ratfun_congruent_zero: parametric modulus");
  return ratfun_divisible(x, m.polynomial(), std::move(label), m.to_string());
}

/// The sum of the terms is 0 modulo the parameter-free modulus.
inline CheckPart sum_congruent_zero(const std::vector<FactoredValue>& terms, const Modulus& m, std::string label) {
  if (!m.parametric().empty()) throw std::invalid_argument("sum_congruent_zero: parametric modulus");
  CheckPart part{std::move(label), m.to_string(), Status::Pass, "", ""};
  std::string all;
  for (const auto& [d, e] : m.cyclotomic_exponents()) {
    const LocalOutcome o = local_check(terms, d, e);
    part.status = combine(part.status, o.status);
    all += o.digest + ";";
    if (o.status != Status::Pass && part.detail.empty())
      part.detail = std::string(status_name(o.status)) + " at Phi_" + std::to_string(d) + "^" + std::to_string(e) +
                    " (pole order " + std::to_string(o.pole_order) + ")";
  }
  part.digest = digest(all.empty() ? "unit-modulus" : all);
  return part;
}

// ---------------------------------------------------------------------------
// CRT

/// R mod M1 M2 with R = r1 (mod M1), R = r2 (mod M2).
inline UniPoly poly_crt(const UniPoly& r1, const UniPoly& m1, const UniPoly& r2, const UniPoly& m2) {
  auto [g, s, t] = xgcd(m1, m2);
  if (!g.is_one()) throw std::domain_error("poly_crt: moduli are not coprime");
  // s m1 + t m2 = 1
  const UniPoly m = m1 * m2;
  return rem(r1 * t * m2 + r2 * s * m1, m);
}

// ---------------------------------------------------------------------------
// Parametric decisions

/// Deterministic evaluation points.  a runs through the primes = 1 (mod 4),
/// b through the negatives of the primes = 3 (mod 4), so a^i b^j is never
/// +-1 and a != b, ab != 1.
class PointStream {
 public:
  PointStream(int param, std::size_t seed) : param_(param) {
    for (std::size_t i = 0; i < seed; ++i) next();
  }
  BigRat next() {
    const long want = param_ == 0 ? 1 : 3;
    while (true) {
      const long p = primes_.next();
      if (p % 4 == want) return BigRat(param_ == 0 ? p : -p);
    }
  }

 private:
  int param_;
  PrimeStream primes_;
};

/// Certified count of distinct values at which a polynomial of the sum's
/// degree bound in `which` must vanish (bound + 2 slack + 1).
inline long point_count(const ParamSum& s, int which) { return parameter_degree_bound(s, which) + 3; }

namespace detail {

inline std::string point_name(const BigRat& a, const BigRat& b) { return "(" + a.get_str() + "," + b.get_str() + ")"; }

/// Zero test of a sum depending on at most the parameter `free_param`.
inline CheckPart substitution_zero(const ParamSum& s, int free_param, std::size_t seed, std::string label,
                                   std::string modulus) {
  CheckPart part{std::move(label), std::move(modulus), Status::Pass, "", ""};
  const long need = point_count(s, free_param);
  PointStream points(free_param, seed);
  std::string all;
  long used = 0;
  long tries = 0;
  while (used < need) {
    if (++tries > need + 1000) throw std::runtime_error("substitution_zero: admissible points exhausted");
    const BigRat v = points.next();
    const BigRat a = free_param == 0 ? v : BigRat(1);
    const BigRat b = free_param == 1 ? v : BigRat(1);
    if (!admissible_point(s, a, b)) continue;
    std::vector<FactoredValue> terms;
    try {
      terms = evaluate(s, a, b);
    } catch (const zero_denominator&) {
      continue;
    }
    const SumFraction f = exact_sum(terms);
    ++used;
    if (!f.is_zero()) {
      part.status = Status::Fail;
      part.detail = "nonzero at point " + point_name(a, b);
      part.digest = digest("residue;" + point_name(a, b) + ";" + canonical(f.num));
      return part;
    }
    all += v.get_str() + ",";
  }
  if (used <= parameter_degree_bound(s, free_param)) throw std::logic_error("point count does not exceed bound");
  part.detail = std::to_string(used) + " points";
  part.digest = digest("zero;" + all);
  return part;
}

}  // namespace detail

/// Substitutes the root of a parametric modulus factor and proves the result
/// vanishes identically.
inline CheckPart param_factor_check(const ParamSum& diff, const ModFactor& f, std::size_t seed) {
  Modulus single = f.root < 0 ? Modulus::one_minus(f.param, -f.root) : Modulus::minus(f.param, f.root);
  const std::string x = f.param == 0 ? "a" : "b";
  const std::string label = x + " = q^" + std::to_string(f.root) + " substitution";
  ParamSum sub;
  try {
    sub = substitute(diff, f.param, f.root);
  } catch (const zero_denominator& e) {
    return CheckPart{label, single.to_string(), Status::IllPosed, digest("illposed;" + label), e.what()};
  }
  return detail::substitution_zero(sub, 1 - f.param, seed, label, single.to_string());
}

/// diff = 0 modulo the cyclotomic part, on a complete grid of (a, b) values.
inline CheckPart param_cyclotomic_check(const ParamSum& diff, const std::map<long, int>& cyclo, std::size_t seed,
                                        std::string label, std::string modulus) {
  CheckPart part{std::move(label), std::move(modulus), Status::Pass, "", ""};
  const long na = point_count(diff, 0), nb = point_count(diff, 1);
  std::vector<BigRat> as, bs;
  PointStream pa(0, seed), pb(1, seed);
  while (static_cast<long>(as.size()) < na) as.push_back(pa.next());
  while (static_cast<long>(bs.size()) < nb) bs.push_back(pb.next());
  std::string all;
  long used = 0;
  for (const auto& a : as) {
    for (const auto& b : bs) {
      if (!admissible_point(diff, a, b)) throw std::logic_error("grid point is not admissible");
      std::vector<FactoredValue> terms;
      try {
        terms = evaluate(diff, a, b);
      } catch (const zero_denominator&) {
        throw std::logic_error("denominator vanished at an admissible grid point");
      }
      ++used;
      for (const auto& [d, e] : cyclo) {
        const LocalOutcome o = local_check(terms, d, e);
        if (o.status != Status::Pass) {
          part.status = o.status;
          part.detail = std::string(status_name(o.status)) + " at point " + detail::point_name(a, b);
          part.digest = digest(detail::point_name(a, b) + ";" + o.digest);
          return part;
        }
        all += o.digest;
      }
    }
  }
  part.detail = std::to_string(as.size()) + "x" + std::to_string(bs.size()) + " grid";
  part.digest = digest(all);
  return part;
}

/// diff = 0 modulo a product of cyclotomic and parametric factors; one part
/// per factor.
inline std::vector<CheckPart> parametric_congruent_zero(const ParamSum& diff, const Modulus& m, std::size_t seed,
                                                        const std::string& label) {
  std::vector<CheckPart> parts;
  for (const auto& f : m.parametric()) {
    CheckPart p = param_factor_check(diff, f, seed);
    p.label = label + ", " + p.label;
    parts.push_back(std::move(p));
  }
  const auto cyclo = m.cyclotomic_exponents();
  if (!cyclo.empty()) {
    Modulus cm;
    for (const auto& [d, e] : cyclo) cm = cm * Modulus::cyclotomic(d, e);
    parts.push_back(param_cyclotomic_check(diff, cyclo, seed, label + ", (a,b) grid", cm.to_string()));
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Structural checks

/// lcm(Phi_n^3, [n]) = [n] Phi_n^2, as polynomials.  Fails at n = 1, where [1] = 1.
inline CongruenceVerdict lcm_identity_check(long n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("lcm_identity_check: n must be odd and positive");
  CongruenceVerdict v;
  v.target = "lcm";
  v.instance = "n=" + std::to_string(n);
  const UniPoly phi3 = pow(cyclotomic(n), 3);
  const UniPoly qn = q_integer(n);
  const UniPoly l = exact_div(phi3 * qn, gcd(phi3, qn));
  const UniPoly want = qn * pow(cyclotomic(n), 2);
  const Modulus m = Modulus::q_integer(n) * Modulus::cyclotomic(n, 2);
  v.modulus = m.to_string();
  CheckPart p{"lcm of Φn³ and [n]", v.modulus, l == make_monic(want) ? Status::Pass : Status::Fail,
              digest("lcm;" + l.to_string()), ""};
  if (p.status == Status::Fail) p.detail = "lcm is " + l.to_string();
  v.add(p);
  // the same fact through exponent bookkeeping
  std::map<long, int> lhs;
  for (long d : divisors(n))
    if (d > 1) lhs[d] = 1;
  lhs[n] = 3;
  CheckPart q{"exponent bookkeeping", v.modulus, lhs == m.cyclotomic_exponents() ? Status::Pass : Status::Fail,
              digest("exponents;" + std::to_string(n)), ""};
  v.add(q);
  return v;
}

/// The two CRT weights: W_a = 1 mod (1 - a q^tn)(a - q^tn), W_a = 0 mod the b
/// factors, and symmetrically for W_b.  Symbolic by substitution; numeric at
/// the given (a, b) pairs by polynomial division in q.
inline CongruenceVerdict crt_weight_check(long n, long t, const std::vector<std::pair<BigRat, BigRat>>& pairs,
                                          std::size_t seed = 0) {
  if (n < 1 || n % 2 == 0 || t < 1) throw std::invalid_argument("crt_weight_check: n odd, t positive");
  const long tn = t * n;
  CongruenceVerdict v;
  v.target = "crt-weights";
  v.instance = "n=" + std::to_string(n) + ",t=" + std::to_string(t);
  const Modulus ma = Modulus::one_minus(0, tn) * Modulus::minus(0, tn);
  const Modulus mb = Modulus::one_minus(1, tn) * Modulus::minus(1, tn);
  v.modulus = (ma * mb).to_string();
  const ParamTerm wa = weight_a(tn), wb = weight_b(tn);
  const ParamTerm one(CycloFactored{});
  auto sym = [&](const ParamSum& s, const Modulus& m, const std::string& label) {
    std::vector<CheckPart> ps;
    for (const auto& f : m.parametric()) ps.push_back(param_factor_check(s, f, seed));
    v.add(merge_parts(label, m.to_string(), ps));
  };
  sym({wa, -one}, ma, "W_a − 1 symbolic");
  sym({wb, -one}, mb, "W_b − 1 symbolic");
  sym({wa}, mb, "W_a symbolic");
  sym({wb}, ma, "W_b symbolic");
  for (const auto& [a, b] : pairs) {
    if (a == b || a * b == 1) throw std::invalid_argument("crt_weight_check: need a != b and ab != 1");
    auto modpoly = [tn](const BigRat& x) {
      // (1 - x q^tn)(x - q^tn)
      return UniPoly::binomial(BigRat(1), BigRat(-x), static_cast<std::size_t>(tn)) *
             UniPoly::binomial(x, BigRat(-1), static_cast<std::size_t>(tn));
    };
    const UniPoly pa = modpoly(a), pb = modpoly(b);
    auto value = [&](const ParamTerm& w, bool minus_one) {
      LaurentRatFun x = evaluate(w, a, b)->expand();
      if (minus_one) x = x - LaurentRatFun::constant(1);
      return x;
    };
    const std::string at = "(a,b)=(" + a.get_str() + "," + b.get_str() + ")";
    std::vector<CheckPart> ps;
    ps.push_back(ratfun_divisible(value(wa, true), pa, "W_a−1"));
    ps.push_back(ratfun_divisible(value(wb, true), pb, "W_b−1"));
    ps.push_back(ratfun_divisible(value(wa, false), pb, "W_a"));
    ps.push_back(ratfun_divisible(value(wb, false), pa, "W_b"));
    // W_a + W_b as the CRT lift of (1 mod pa, 1 mod pb)
    const UniPoly lift = poly_crt(UniPoly::constant(1), pa, UniPoly::constant(1), pb);
    const UniPoly sum = residue_mod(value(wa, false) + value(wb, false), pa * pb);
    ps.push_back(CheckPart{"CRT lift", "", sum == lift ? Status::Pass : Status::Fail, digest("lift;" + canonical(sum)),
                           ""});
    v.add(merge_parts("numeric " + at, (ma * mb).to_string(), ps));
  }
  return v;
}

}  // namespace qsc
