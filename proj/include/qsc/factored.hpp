#pragma once

// Univariate factored values and parametric terms.
//
// FactoredValue is the q-only counterpart of CycloFactored once a and b have
// numeric values: scalar * q^shift * prod Phi_d^e * prod p_i^f_i, where the p_i
// are primitive integer polynomials with positive leading coefficient and
// nonzero constant term (the binomials 1 - c q^e for |c| != 1, and evaluated
// TriPoly factors).
//
// ParamTerm is a CycloFactored times a list of TriPoly numerator factors; a
// ParamSum is a list of such terms.  Terms that vanish identically are never
// stored.

#include "qsc/cyclotomic.hpp"
#include "qsc/qfactor.hpp"
#include "qsc/ratfun.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsc {

/// Thrown when a denominator factor evaluates to zero.
struct zero_denominator : std::domain_error {
  using std::domain_error::domain_error;
};

class FactoredValue {
 public:
  FactoredValue() = default;
  static FactoredValue constant(const BigRat& c) {
    if (c == 0) throw std::domain_error("FactoredValue cannot hold zero");
    FactoredValue v;
    v.scalar_ = c;
    return v;
  }

  const BigRat& scalar() const { return scalar_; }
  long q_shift() const { return q_shift_; }
  const std::map<long, int>& cyclo() const { return cyclo_; }
  const std::map<IntPoly, int>& polys() const { return polys_; }

  void mul_scalar(const BigRat& c) {
    if (c == 0) throw std::domain_error("FactoredValue cannot hold zero");
    scalar_ *= c;
  }
  void mul_q(long e) { q_shift_ += e; }
  void mul_cyclo(long d, int e) { bump(cyclo_, d, e); }

  /// Multiplies by p^e for a nonzero polynomial; the q-power, content and sign
  /// of p are moved into q_shift and scalar.
  void mul_poly(const UniPoly& p, int e) {
    if (p.is_zero()) throw std::domain_error("FactoredValue cannot hold zero");
    if (e == 0) return;
    const std::size_t v = *p.valuation_at_zero();
    q_shift_ += static_cast<long>(v) * e;
    UniPoly body = v == 0 ? p
                          : UniPoly(std::vector<BigRat>(p.coefficients().begin() + static_cast<long>(v),
                                                        p.coefficients().end()));
    auto [scale, prim] = primitive_part(body);
    scalar_ *= rpow(scale, e);
    if (prim.is_constant()) return;
    bump(polys_, prim, e);
  }

  FactoredValue& operator*=(const FactoredValue& o) {
    scalar_ *= o.scalar_;
    q_shift_ += o.q_shift_;
    for (const auto& [d, e] : o.cyclo_) bump(cyclo_, d, e);
    for (const auto& [p, e] : o.polys_) bump(polys_, p, e);
    return *this;
  }
  friend FactoredValue operator*(FactoredValue a, const FactoredValue& b) { return a *= b; }

  FactoredValue pow(long e) const {
    FactoredValue r;
    if (e == 0) return r;
    r.scalar_ = rpow(scalar_, e);
    r.q_shift_ = q_shift_ * e;
    for (const auto& [d, x] : cyclo_) r.cyclo_[d] = static_cast<int>(x * e);
    for (const auto& [p, x] : polys_) r.polys_[p] = static_cast<int>(x * e);
    return r;
  }
  FactoredValue inverse() const { return pow(-1); }

  friend bool operator==(const FactoredValue&, const FactoredValue&) = default;

  /// Net exponent of Phi_d, counting cyclotomic divisors of the polynomial factors.
  int valuation(long d) const {
    auto it = cyclo_.find(d);
    int v = it == cyclo_.end() ? 0 : it->second;
    const IntPoly& phi = cyclotomic_int(d);
    for (const auto& [p, e] : polys_) {
      IntPoly x = p;
      int k = 0;
      while (true) {
        auto qr = divrem(x, phi);
        if (!qr.second.is_zero()) break;
        x = std::move(qr.first);
        ++k;
      }
      v += k * e;
    }
    return v;
  }

  /// Expanded numerator and denominator (integer polynomials, no q-power).
  std::pair<IntPoly, IntPoly> expand_parts() const {
    IntPoly num = IntPoly::constant(BigInt(scalar_.get_num()));
    IntPoly den = IntPoly::constant(BigInt(scalar_.get_den()));
    for (const auto& [d, e] : cyclo_) (e > 0 ? num : den) *= qsc::pow(cyclotomic_int(d), std::abs(e));
    for (const auto& [p, e] : polys_) (e > 0 ? num : den) *= qsc::pow(p, std::abs(e));
    return {std::move(num), std::move(den)};
  }

  LaurentRatFun expand() const {
    auto [num, den] = expand_parts();
    return LaurentRatFun(RatFun(to_rational(num), to_rational(den)), q_shift_);
  }

  BigRat eval(const BigRat& q) const {
    BigRat r = scalar_ * rpow(q, q_shift_);
    for (const auto& [d, e] : cyclo_) r *= rpow(cyclotomic_int(d).eval<BigRat>(q), e);
    for (const auto& [p, e] : polys_) r *= rpow(p.eval<BigRat>(q), e);
    return r;
  }

  std::string to_string() const {
    std::string s = scalar_.get_str();
    if (q_shift_ != 0) s += "*q^" + std::to_string(q_shift_);
    for (const auto& [d, e] : cyclo_) s += "*Phi" + std::to_string(d) + "^" + std::to_string(e);
    for (const auto& [p, e] : polys_) s += "*(" + p.to_string() + ")^" + std::to_string(e);
    return s;
  }

 private:
  template <class K>
  static void bump(std::map<K, int>& m, const K& k, int by) {
    if (by == 0) return;
    auto [it, inserted] = m.try_emplace(k, by);
    if (!inserted) {
      it->second += by;
      if (it->second == 0) m.erase(it);
    }
  }

  BigRat scalar_ = 1;
  long q_shift_ = 0;
  std::map<long, int> cyclo_;
  std::map<IntPoly, int> polys_;
};

/// Parameter-free CycloFactored as a FactoredValue.
inline FactoredValue to_factored_value(const CycloFactored& x) {
  if (x.has_atoms() || x.a_pow() != 0 || x.b_pow() != 0)
    throw std::invalid_argument("to_factored_value: value still depends on a or b");
  FactoredValue v = FactoredValue::constant(x.coefficient());
  v.mul_q(x.q_shift());
  for (const auto& [d, e] : x.cyclo()) v.mul_cyclo(d, e);
  return v;
}

/// The value 1 - c q^e; std::nullopt when it is identically zero.
inline std::optional<FactoredValue> fv_one_minus(const BigRat& c, long e) {
  if (c == 0) return FactoredValue();
  if (e == 0) {
    if (c == 1) return std::nullopt;
    return FactoredValue::constant(1 - c);
  }
  if (e < 0) {
    // 1 - c q^e = -c q^e (1 - q^{-e}/c)
    FactoredValue v = *fv_one_minus(1 / c, -e);
    v.mul_scalar(-c);
    v.mul_q(e);
    return v;
  }
  FactoredValue v;
  if (c == 1) return to_factored_value(qpow_factor(e));
  if (c == -1) {
    // 1 + q^e = (1 - q^{2e}) / (1 - q^e)
    for (long d : divisors(2 * e))
      if (e % d != 0) v.mul_cyclo(d, 1);
    return v;
  }
  v.mul_poly(UniPoly::binomial(BigRat(1), BigRat(-c), static_cast<std::size_t>(e)), 1);
  return v;
}

/// coef * q^q_exp
struct QMonomial {
  BigRat coef = 1;
  long q_exp = 0;

  friend QMonomial operator*(const QMonomial& x, const QMonomial& y) {
    return {x.coef * y.coef, x.q_exp + y.q_exp};
  }
  friend QMonomial operator/(const QMonomial& x, const QMonomial& y) {
    if (y.coef == 0) throw std::domain_error("QMonomial division by zero");
    return {x.coef / y.coef, x.q_exp - y.q_exp};
  }
  static QMonomial q(long e) { return {1, e}; }
  static QMonomial scalar(const BigRat& c) { return {c, 0}; }
};

/// (base; q^step)_k as a FactoredValue; std::nullopt if a factor vanishes.
inline std::optional<FactoredValue> fv_pochhammer(const QMonomial& base, long step, long k) {
  if (k < 0) throw std::invalid_argument("fv_pochhammer: negative length");
  FactoredValue v;
  for (long j = 0; j < k; ++j) {
    auto f = fv_one_minus(base.coef, base.q_exp + j * step);
    if (!f) return std::nullopt;
    v *= *f;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Parametric terms

struct ParamTerm {
  CycloFactored factor;
  std::vector<TriPoly> polys;  // extra numerator factors, none identically zero

  ParamTerm() = default;
  explicit ParamTerm(CycloFactored f) : factor(std::move(f)) {}
  ParamTerm(CycloFactored f, std::vector<TriPoly> p) : factor(std::move(f)), polys(std::move(p)) {
    for (const auto& t : polys)
      if (t.is_zero()) throw std::domain_error("ParamTerm: zero polynomial factor");
  }

  ParamTerm& operator*=(const ParamTerm& o) {
    factor *= o.factor;
    polys.insert(polys.end(), o.polys.begin(), o.polys.end());
    return *this;
  }
  ParamTerm& operator*=(const CycloFactored& o) {
    factor *= o;
    return *this;
  }
  friend ParamTerm operator*(ParamTerm x, const ParamTerm& y) { return x *= y; }
  friend ParamTerm operator*(ParamTerm x, const CycloFactored& y) { return x *= y; }
  ParamTerm operator-() const {
    ParamTerm r = *this;
    r.factor *= CycloFactored::scalar(-1);
    return r;
  }

  std::string to_string() const {
    std::string s = factor.to_string();
    for (const auto& p : polys) s += "*[" + p.to_string() + "]";
    return s;
  }
};

using ParamSum = std::vector<ParamTerm>;

inline void append(ParamSum& s, const std::optional<ParamTerm>& t) {
  if (t) s.push_back(*t);
}
inline void append(ParamSum& s, const ParamSum& t) { s.insert(s.end(), t.begin(), t.end()); }
inline ParamSum negated(const ParamSum& s) {
  ParamSum r;
  r.reserve(s.size());
  for (const auto& t : s) r.push_back(-t);
  return r;
}
inline ParamSum operator*(const ParamSum& s, const ParamTerm& t) {
  ParamSum r;
  r.reserve(s.size());
  for (const auto& x : s) r.push_back(x * t);
  return r;
}

/// Exchanges a and b.
inline CycloFactored swap_ab(const CycloFactored& x) {
  CycloFactored r = CycloFactored::scalar(x.coefficient()) * CycloFactored::q_power(x.q_shift()) *
                    CycloFactored::monomial(x.b_pow(), x.a_pow());
  for (const auto& [d, e] : x.cyclo()) r *= CycloFactored::cyclotomic(d, e);
  for (const auto& [a, m] : x.atoms()) r.multiply_atom(a.b_exp, a.a_exp, a.q_exp, m);
  return r;
}
inline ParamTerm swap_ab(const ParamTerm& t) {
  ParamTerm r(swap_ab(t.factor));
  for (const auto& p : t.polys) r.polys.push_back(p.swapped());
  return r;
}
inline ParamSum swap_ab(const ParamSum& s) {
  ParamSum r;
  for (const auto& t : s) r.push_back(swap_ab(t));
  return r;
}

/// Replaces the parameter (0 = a, 1 = b) by q^s.  Returns std::nullopt when a
/// numerator factor becomes zero; throws zero_denominator when a denominator
/// factor does.
inline std::optional<CycloFactored> substitute(const CycloFactored& x, int which, long s) {
  const int keep_a = which == 0 ? 0 : x.a_pow();
  const int keep_b = which == 1 ? 0 : x.b_pow();
  const long moved = which == 0 ? x.a_pow() : x.b_pow();
  CycloFactored r = CycloFactored::scalar(x.coefficient()) *
                    CycloFactored::q_power(x.q_shift() + moved * s) *
                    CycloFactored::monomial(keep_a, keep_b);
  for (const auto& [d, e] : x.cyclo()) r *= CycloFactored::cyclotomic(d, e);
  bool zero = false;
  for (const auto& [a, m] : x.atoms()) {
    const int i = which == 0 ? a.a_exp : a.b_exp;
    const int other = which == 0 ? a.b_exp : a.a_exp;
    if (i == 0) {
      r.multiply_atom(a.a_exp, a.b_exp, a.q_exp, m);
      continue;
    }
    const long e = a.q_exp + i * s;
    if (other != 0) {
      if (which == 0)
        r.multiply_atom(0, other, e, m);
      else
        r.multiply_atom(other, 0, e, m);
      continue;
    }
    if (e == 0) {
      if (m < 0) throw zero_denominator("substitution makes a denominator factor vanish");
      zero = true;
      continue;
    }
    r *= qpow_factor(e).pow(m);
  }
  if (zero) return std::nullopt;
  return r;
}

inline std::optional<ParamTerm> substitute(const ParamTerm& t, int which, long s) {
  auto f = substitute(t.factor, which, s);
  if (!f) return std::nullopt;
  ParamTerm r(std::move(*f));
  for (const auto& p : t.polys) {
    TriPoly x = p.substitute_q_power(which, s);
    if (x.is_zero()) return std::nullopt;
    r.polys.push_back(std::move(x));
  }
  return r;
}

inline ParamSum substitute(const ParamSum& sum, int which, long s) {
  ParamSum r;
  for (const auto& t : sum) append(r, substitute(t, which, s));
  return r;
}

/// Laurent polynomial in q obtained by giving a and b numeric values.
inline LaurentPoly evaluate(const TriPoly& p, const BigRat& a, const BigRat& b) {
  std::map<long, BigRat> coeffs;
  for (const auto& [k, c] : p.terms()) {
    auto [qe, ae, be] = k;
    BigRat v = c * rpow(a, ae) * rpow(b, be);
    coeffs[qe] += v;
  }
  if (coeffs.empty()) return LaurentPoly();
  const long lo = coeffs.begin()->first;
  const long hi = coeffs.rbegin()->first;
  std::vector<BigRat> body(static_cast<std::size_t>(hi - lo + 1), BigRat(0));
  for (const auto& [e, c] : coeffs) body[static_cast<std::size_t>(e - lo)] = c;
  return LaurentPoly(UniPoly(std::move(body)), lo);
}

/// Value at numeric a, b.  std::nullopt for an identically zero value; throws
/// zero_denominator if a denominator factor vanishes.
inline std::optional<FactoredValue> evaluate(const CycloFactored& x, const BigRat& a,
                                             const BigRat& b) {
  FactoredValue v = FactoredValue::constant(x.coefficient() * rpow(a, x.a_pow()) * rpow(b, x.b_pow()));
  v.mul_q(x.q_shift());
  for (const auto& [d, e] : x.cyclo()) v.mul_cyclo(d, e);
  bool zero = false;
  for (const auto& [atom, m] : x.atoms()) {
    const BigRat c = rpow(a, atom.a_exp) * rpow(b, atom.b_exp);
    auto f = fv_one_minus(c, atom.q_exp);
    if (!f) {
      if (m < 0) throw zero_denominator("denominator factor vanishes at this point");
      zero = true;
      continue;
    }
    v *= f->pow(m);
  }
  if (zero) return std::nullopt;
  return v;
}

inline std::optional<FactoredValue> evaluate(const ParamTerm& t, const BigRat& a, const BigRat& b) {
  auto v = evaluate(t.factor, a, b);
  if (!v) return std::nullopt;
  for (const auto& p : t.polys) {
    LaurentPoly lp = evaluate(p, a, b);
    if (lp.is_zero()) return std::nullopt;
    v->mul_q(lp.shift());
    v->mul_poly(lp.body(), 1);
  }
  return v;
}

inline std::vector<FactoredValue> evaluate(const ParamSum& s, const BigRat& a, const BigRat& b) {
  std::vector<FactoredValue> out;
  out.reserve(s.size());
  for (const auto& t : s) {
    auto v = evaluate(t, a, b);
    if (v) out.push_back(std::move(*v));
  }
  return out;
}

/// Every denominator atom stays a unit modulo all cyclotomic polynomials at
/// (a, b): no vanishing constant factor and no root of unity among the roots.
inline bool admissible_point(const ParamSum& s, const BigRat& a, const BigRat& b) {
  for (const auto& t : s) {
    for (const auto& [atom, m] : t.factor.atoms()) {
      const BigRat c = rpow(a, atom.a_exp) * rpow(b, atom.b_exp);
      if (atom.q_exp == 0) {
        if (c == 1) return false;
      } else if (c == 1 || c == -1 || c == 0) {
        return false;
      }
    }
  }
  return true;
}

/// Upper bound for the degree in the parameter (0 = a, 1 = b) of the sum after
/// multiplying by the common denominator of its atoms and by the power of the
/// parameter that makes it a polynomial.
inline long parameter_degree_bound(const ParamSum& s, int which) {
  if (s.empty()) return 0;
  std::map<Atom, int> common;  // atom -> largest denominator multiplicity
  for (const auto& t : s)
    for (const auto& [atom, m] : t.factor.atoms())
      if (m < 0) common[atom] = std::max(common[atom], -m);
  auto exp_of = [which](const Atom& a) { return which == 0 ? a.a_exp : a.b_exp; };
  long lo_min = 0, hi_max = 0;
  bool first = true;
  for (const auto& t : s) {
    long lo = which == 0 ? t.factor.a_pow() : t.factor.b_pow();
    long hi = lo;
    auto add = [&](int i, long mult) {
      if (i > 0) hi += mult;
      if (i < 0) lo -= mult;
    };
    std::map<Atom, int> den;
    for (const auto& [atom, m] : t.factor.atoms()) {
      if (m > 0)
        add(exp_of(atom), m);
      else
        den[atom] = -m;
    }
    for (const auto& [atom, cm] : common) {
      auto it = den.find(atom);
      const int here = it == den.end() ? 0 : it->second;
      add(exp_of(atom), cm - here);
    }
    for (const auto& p : t.polys) {
      auto [plo, phi] = p.parameter_range(which);
      lo += plo;
      hi += phi;
    }
    if (first || lo < lo_min) lo_min = lo;
    if (first || hi > hi_max) hi_max = hi;
    first = false;
  }
  return hi_max - lo_min;
}

}  // namespace qsc
