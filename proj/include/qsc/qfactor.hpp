#pragma once

// Factored q-Pochhammer products.
//
// A CycloFactored value is
//
//   sign * scalar * q^q_shift * a^a_pow * b^b_pow * prod_d Phi_d(q)^e_d
//        * prod (1 - a^i b^j q^e)^m
//
// Pure-q factors (1 - q^m) never appear as atoms: they are always split into
// cyclotomic polynomials, so divisibility by Phi_n is an exponent lookup.
// Parametric atoms are stored with a signed multiplicity (positive in the
// numerator, negative in the denominator), which makes numerator/denominator
// cancellation automatic.

#include "qsc/cyclotomic.hpp"
#include "qsc/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace qsc {

/// The factor (1 - a^a_exp * b^b_exp * q^q_exp), a_exp and b_exp in {-1, 0, 1},
/// not both zero.  Canonical: q_exp > 0, or q_exp == 0 and the first nonzero
/// of (a_exp, b_exp) positive.
struct Atom {
  int a_exp = 0;
  int b_exp = 0;
  long q_exp = 0;

  auto operator<=>(const Atom&) const = default;

  bool is_canonical() const {
    if (q_exp != 0) return q_exp > 0;
    return a_exp > 0 || (a_exp == 0 && b_exp > 0);
  }
  std::string to_string() const {
    std::ostringstream os;
    os << "(1 - ";
    bool any = false;
    auto put = [&](const char* sym, long e) {
      if (e == 0) return;
      if (any) os << "*";
      os << sym;
      if (e != 1) os << "^" << e;
      any = true;
    };
    put("a", a_exp);
    put("b", b_exp);
    put("q", q_exp);
    os << ")";
    return os.str();
  }
};

class CycloFactored {
 public:
  /// The value 1.
  CycloFactored() = default;

  static CycloFactored scalar(const BigRat& c) {
    if (c == 0) throw std::domain_error("CycloFactored cannot hold zero");
    CycloFactored x;
    x.sign_ = c < 0 ? -1 : 1;
    x.scalar_ = abs(c);
    return x;
  }
  static CycloFactored q_power(long e) {
    CycloFactored x;
    x.q_shift_ = e;
    return x;
  }
  static CycloFactored monomial(int a_pow, int b_pow) {
    CycloFactored x;
    x.a_pow_ = a_pow;
    x.b_pow_ = b_pow;
    return x;
  }
  static CycloFactored cyclotomic(long d, int e = 1) {
    if (d < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
    CycloFactored x;
    if (e != 0) x.cyclo_[d] = e;
    return x;
  }

  int sign() const { return sign_; }
  const BigRat& scalar_part() const { return scalar_; }
  /// sign * scalar as one rational.
  BigRat coefficient() const { return sign_ < 0 ? BigRat(-scalar_) : scalar_; }
  long q_shift() const { return q_shift_; }
  int a_pow() const { return a_pow_; }
  int b_pow() const { return b_pow_; }
  const std::map<long, int>& cyclo() const { return cyclo_; }
  /// Signed multiplicities: positive entries are numerator atoms.
  const std::map<Atom, int>& atoms() const { return atoms_; }

  std::map<Atom, int> atoms_num() const {
    std::map<Atom, int> r;
    for (const auto& [a, m] : atoms_)
      if (m > 0) r.emplace(a, m);
    return r;
  }
  std::map<Atom, int> atoms_den() const {
    std::map<Atom, int> r;
    for (const auto& [a, m] : atoms_)
      if (m < 0) r.emplace(a, -m);
    return r;
  }

  bool has_atoms() const { return !atoms_.empty(); }
  bool is_parameter_free() const { return atoms_.empty() && a_pow_ == 0 && b_pow_ == 0; }

  int cyclo_exponent(long d) const {
    auto it = cyclo_.find(d);
    return it == cyclo_.end() ? 0 : it->second;
  }

  CycloFactored& operator*=(const CycloFactored& o) {
    sign_ *= o.sign_;
    scalar_ *= o.scalar_;
    q_shift_ += o.q_shift_;
    a_pow_ += o.a_pow_;
    b_pow_ += o.b_pow_;
    for (const auto& [d, e] : o.cyclo_) bump(cyclo_, d, e);
    for (const auto& [a, m] : o.atoms_) bump(atoms_, a, m);
    return *this;
  }
  CycloFactored& operator/=(const CycloFactored& o) { return *this *= o.inverse(); }
  friend CycloFactored operator*(CycloFactored a, const CycloFactored& b) { return a *= b; }
  friend CycloFactored operator/(CycloFactored a, const CycloFactored& b) { return a /= b; }
  friend bool operator==(const CycloFactored&, const CycloFactored&) = default;

  CycloFactored inverse() const {
    CycloFactored r;
    r.sign_ = sign_;
    r.scalar_ = 1 / scalar_;
    r.q_shift_ = -q_shift_;
    r.a_pow_ = -a_pow_;
    r.b_pow_ = -b_pow_;
    for (const auto& [d, e] : cyclo_) r.cyclo_[d] = -e;
    for (const auto& [a, m] : atoms_) r.atoms_[a] = -m;
    return r;
  }

  CycloFactored pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloFactored r;
    r.sign_ = (e % 2 == 0) ? 1 : sign_;
    r.scalar_ = rpow(scalar_, e);
    r.q_shift_ = q_shift_ * e;
    r.a_pow_ = static_cast<int>(a_pow_ * e);
    r.b_pow_ = static_cast<int>(b_pow_ * e);
    if (e == 0) return r;
    for (const auto& [d, x] : cyclo_) r.cyclo_[d] = static_cast<int>(x * e);
    for (const auto& [a, m] : atoms_) r.atoms_[a] = static_cast<int>(m * e);
    return r;
  }

  /// Multiplies by (1 - a^i b^j q^e)^mult with a parametric base, normalising
  /// to a canonical atom.  Pure-q factors must go through qpow_factor.
  void multiply_atom(int a_exp, int b_exp, long q_exp, int mult) {
    if (a_exp < -1 || a_exp > 1 || b_exp < -1 || b_exp > 1)
      throw std::invalid_argument("atom exponents of a and b must lie in {-1, 0, 1}");
    if (a_exp == 0 && b_exp == 0)
      throw std::invalid_argument("pure-q factor passed as a parametric atom");
    Atom atom{a_exp, b_exp, q_exp};
    if (!atom.is_canonical()) {
      // 1 - X = -X (1 - 1/X)
      if (mult % 2 != 0) sign_ = -sign_;
      a_pow_ += a_exp * mult;
      b_pow_ += b_exp * mult;
      q_shift_ += q_exp * mult;
      atom = Atom{-a_exp, -b_exp, -q_exp};
    }
    bump(atoms_, atom, mult);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (sign_ < 0 ? "-" : "") << scalar_.get_str();
    if (q_shift_ != 0) os << "*q^" << q_shift_;
    if (a_pow_ != 0) os << "*a^" << a_pow_;
    if (b_pow_ != 0) os << "*b^" << b_pow_;
    for (const auto& [d, e] : cyclo_) os << "*Phi" << d << "^" << e;
    for (const auto& [a, m] : atoms_) os << "*" << a.to_string() << "^" << m;
    return os.str();
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

  int sign_ = 1;
  BigRat scalar_ = 1;
  long q_shift_ = 0;
  int a_pow_ = 0;
  int b_pow_ = 0;
  std::map<long, int> cyclo_;
  std::map<Atom, int> atoms_;
};

/// (1 - q^m) in cyclotomic form; m != 0.
inline CycloFactored qpow_factor(long m) {
  if (m == 0) throw std::domain_error("qpow_factor: 1 - q^0 vanishes");
  const long am = m < 0 ? -m : m;
  CycloFactored x;
  for (long d : divisors(am)) x *= CycloFactored::cyclotomic(d);
  // 1 - q^m = -(q^m - 1) for m > 0;  1 - q^m = q^m (q^|m| - 1) for m < 0.
  if (m > 0) return CycloFactored::scalar(-1) * x;
  return CycloFactored::q_power(m) * x;
}

/// q-integer [m] = (1 - q^m)/(1 - q); std::nullopt for m = 0.
inline std::optional<CycloFactored> q_integer_factor(long m) {
  if (m == 0) return std::nullopt;
  return qpow_factor(m) / qpow_factor(1);
}

/// The single factor (1 - a^i b^j q^e); std::nullopt when it vanishes (pure q^0).
inline std::optional<CycloFactored> factor_or_zero(int a_exp, int b_exp, long q_exp) {
  if (a_exp == 0 && b_exp == 0) {
    if (q_exp == 0) return std::nullopt;
    return qpow_factor(q_exp);
  }
  CycloFactored x;
  x.multiply_atom(a_exp, b_exp, q_exp, 1);
  return x;
}

/// Base of a q-shifted factorial: a^a_exp b^b_exp q^q_exp.
struct PochBase {
  int a_exp = 0;
  int b_exp = 0;
  long q_exp = 0;

  static PochBase q(long r) { return {0, 0, r}; }
  static PochBase a_times(long r) { return {1, 0, r}; }
  static PochBase over_a(long r) { return {-1, 0, r}; }
  static PochBase b_times(long r) { return {0, 1, r}; }
  static PochBase over_b(long r) { return {0, -1, r}; }
  /// Swaps the roles of a and b.
  PochBase swapped() const { return {b_exp, a_exp, q_exp}; }
};

/// (base; q^step)_k, or std::nullopt when one of the factors is zero.
inline std::optional<CycloFactored> pochhammer_or_zero(PochBase base, long step, long k) {
  if (step <= 0) throw std::invalid_argument("pochhammer: step must be positive");
  if (k < 0) throw std::invalid_argument("pochhammer: negative length");
  CycloFactored x;
  for (long j = 0; j < k; ++j) {
    auto f = factor_or_zero(base.a_exp, base.b_exp, base.q_exp + j * step);
    if (!f) return std::nullopt;
    x *= *f;
  }
  return x;
}

/// (base; q^step)_k; throws if a factor vanishes.
inline CycloFactored pochhammer(PochBase base, long step, long k) {
  auto x = pochhammer_or_zero(base, step, k);
  if (!x) throw std::domain_error("pochhammer: a factor vanishes");
  return *x;
}

inline CycloFactored cf_mul(const CycloFactored& x, const CycloFactored& y) { return x * y; }
inline CycloFactored cf_div(const CycloFactored& x, const CycloFactored& y) { return x / y; }

/// Net exponent of Phi_n.  Symbolic atoms (1 - a^i b^j q^e) are coprime to
/// Phi_n(q) in Q(a, b)[q], so only the cyclotomic part contributes.
inline int cyclo_multiplicity(const CycloFactored& x, long n) {
  if (n < 1) throw std::invalid_argument("cyclo_multiplicity: n must be >= 1");
  return x.cyclo_exponent(n);
}

/// Sparse Laurent polynomial in (q, a, b) with rational coefficients.
class TriPoly {
 public:
  using Key = std::tuple<long, int, int>;  // (q_exp, a_exp, b_exp)

  TriPoly() = default;
  static TriPoly monomial(const BigRat& c, long q_exp, int a_exp = 0, int b_exp = 0) {
    TriPoly t;
    t.add(c, q_exp, a_exp, b_exp);
    return t;
  }

  void add(const BigRat& c, long q_exp, int a_exp = 0, int b_exp = 0) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Key{q_exp, a_exp, b_exp}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Key, BigRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend TriPoly operator+(TriPoly x, const TriPoly& y) {
    for (const auto& [k, c] : y.terms_) x.add(c, std::get<0>(k), std::get<1>(k), std::get<2>(k));
    return x;
  }
  friend TriPoly operator*(const TriPoly& x, const TriPoly& y) {
    TriPoly r;
    for (const auto& [kx, cx] : x.terms_)
      for (const auto& [ky, cy] : y.terms_)
        r.add(cx * cy, std::get<0>(kx) + std::get<0>(ky), std::get<1>(kx) + std::get<1>(ky),
              std::get<2>(kx) + std::get<2>(ky));
    return r;
  }
  friend TriPoly operator-(const TriPoly& x) { return x * TriPoly::monomial(BigRat(-1), 0); }
  friend TriPoly operator-(const TriPoly& x, const TriPoly& y) { return x + (-y); }
  friend bool operator==(const TriPoly&, const TriPoly&) = default;

  /// Exponent range of the named parameter (0 = a, 1 = b); {0, 0} for zero.
  std::pair<int, int> parameter_range(int which) const {
    if (terms_.empty()) return {0, 0};
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      const int e = which == 0 ? std::get<1>(k) : std::get<2>(k);
      if (first || e < lo) lo = e;
      if (first || e > hi) hi = e;
      first = false;
    }
    return {lo, hi};
  }

  /// Replaces the parameter (0 = a, 1 = b) by q^s.
  TriPoly substitute_q_power(int which, long s) const {
    TriPoly r;
    for (const auto& [k, c] : terms_) {
      auto [qe, ae, be] = k;
      if (which == 0) {
        r.add(c, qe + static_cast<long>(ae) * s, 0, be);
      } else {
        r.add(c, qe + static_cast<long>(be) * s, ae, 0);
      }
    }
    return r;
  }

  TriPoly swapped() const {
    TriPoly r;
    for (const auto& [k, c] : terms_) r.add(c, std::get<0>(k), std::get<2>(k), std::get<1>(k));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.get_str();
      auto [qe, ae, be] = k;
      if (qe) os << "*q^" << qe;
      if (ae) os << "*a^" << ae;
      if (be) os << "*b^" << be;
    }
    return os.str();
  }

 private:
  std::map<Key, BigRat> terms_;
};

}  // namespace qsc
