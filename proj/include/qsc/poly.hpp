#pragma once

// Dense univariate polynomials in q over an exact coefficient ring.
//
// Poly<BigRat> (UniPoly) is the field case used for gcd, CRT and general
// division.  Poly<BigInt> (IntPoly) carries the heavy expansions: products of
// cyclotomic and binomial factors stay integral once their rational content is
// pulled out into a separate scalar, and large products go through Kronecker
// substitution so that GMP's big-integer multiplication does the work.

#include "qsc/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace qsc {

template <class R>
class Poly {
 public:
  using coeff_type = R;

  Poly() = default;
  Poly(std::initializer_list<R> c) : c_(c) { trim(); }
  explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }

  static Poly constant(const R& c) { return Poly(std::vector<R>{c}); }
  static Poly monomial(const R& c, std::size_t e) {
    std::vector<R> v(e + 1, R(0));
    v[e] = c;
    return Poly(std::move(v));
  }
  /// c0 + ce * q^e
  static Poly binomial(const R& c0, const R& ce, std::size_t e) {
    std::vector<R> v(e + 1, R(0));
    v[0] += c0;
    v[e] += ce;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// Zero polynomial has no degree.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coefficients() const { return c_; }
  const R& operator[](std::size_t i) const { return c_[i]; }
  R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R(0); }
  const R& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  /// Lowest exponent carrying a nonzero coefficient (zero polynomial: none).
  std::optional<std::size_t> valuation_at_zero() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return std::nullopt;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const R& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = multiply(*this, o);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }
  friend Poly operator*(Poly a, const R& s) { return a *= s; }
  friend Poly operator*(const R& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Multiply by q^k.
  Poly shifted(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<R> v(k, R(0));
    v.insert(v.end(), c_.begin(), c_.end());
    Poly r;
    r.c_ = std::move(v);
    return r;
  }

  /// Horner evaluation in any ring the coefficients embed into.
  template <class S>
  S eval(const S& x) const {
    S acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
    return acc;
  }
  R operator()(const R& x) const { return eval<R>(x); }

  std::string to_string(const std::string& var = "q") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const R& c = c_[i];
      if (c == 0) continue;
      R mag = c < 0 ? R(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (i == 0 || mag != 1) {
        os << mag.get_str();
        if (i > 0) os << "*";
      }
      if (i >= 1) os << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

  /// Ordering for use as a map key: by degree, then coefficientwise.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      const int s = cmp(a.c_[i], b.c_[i]);
      if (s != 0) return s < 0;
    }
    return false;
  }

  static Poly multiply(const Poly& a, const Poly& b);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<R> c_;

  template <class>
  friend class Poly;
};

using IntPoly = Poly<BigInt>;
using UniPoly = Poly<BigRat>;

namespace detail {

inline std::size_t max_bits(const IntPoly& p) {
  std::size_t b = 0;
  for (const auto& c : p.coefficients())
    if (c != 0) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

inline std::size_t bit_length(std::size_t n) {
  std::size_t b = 0;
  while (n) {
    ++b;
    n >>= 1;
  }
  return b;
}

// Packs a signed polynomial into one integer: sum c_i 2^(64*limbs*i).
inline BigInt kronecker_pack(const IntPoly& p, std::size_t limbs) {
  const std::size_t n = p.size();
  std::vector<mp_limb_t> pos(n * limbs, 0), neg(n * limbs, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_srcptr z = p[i].get_mpz_t();
    const int s = mpz_sgn(z);
    if (s == 0) continue;
    std::size_t count = 0;
    mp_limb_t* dst = (s > 0 ? pos.data() : neg.data()) + i * limbs;
    mpz_export(dst, &count, -1, sizeof(mp_limb_t), 0, 0, z);
    if (s < 0) any_neg = true;
  }
  BigInt x;
  mpz_import(x.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  if (any_neg) {
    BigInt y;
    mpz_import(y.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
    x -= y;
  }
  return x;
}

inline IntPoly kronecker_unpack(const BigInt& z, std::size_t limbs, std::size_t n) {
  const int sign = sgn(z);
  std::vector<BigInt> out(n, BigInt(0));
  if (sign == 0) return IntPoly(std::move(out));
  std::vector<mp_limb_t> buf(n * limbs + 2, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, z.get_mpz_t());
  const std::size_t bits = limbs * GMP_NUMB_BITS;
  BigInt slot, carry = 0, full;
  mpz_setbit(full.get_mpz_t(), bits);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_import(slot.get_mpz_t(), limbs, -1, sizeof(mp_limb_t), 0, 0, buf.data() + i * limbs);
    slot += carry;
    if (mpz_sizeinbase(slot.get_mpz_t(), 2) >= bits && slot != 0) {
      slot -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = sign > 0 ? slot : BigInt(-slot);
  }
  return IntPoly(std::move(out));
}

inline IntPoly kronecker_mul(const IntPoly& a, const IntPoly& b) {
  const std::size_t bits =
      max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 2;
  const std::size_t limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  const BigInt x = kronecker_pack(a, limbs);
  const BigInt y = kronecker_pack(b, limbs);
  const BigInt z = x * y;
  return kronecker_unpack(z, limbs, a.size() + b.size() - 1);
}

inline constexpr std::size_t kKroneckerThreshold = 24;

}  // namespace detail

template <class R>
Poly<R> Poly<R>::multiply(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if constexpr (std::is_same_v<R, BigInt>) {
    if (std::min(a.size(), b.size()) >= detail::kKroneckerThreshold)
      return detail::kronecker_mul(a, b);
    std::vector<BigInt> r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.c_[i] == 0) continue;
      const mpz_srcptr ai = a.c_[i].get_mpz_t();
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b.c_[j] == 0) continue;
        mpz_addmul(r[i + j].get_mpz_t(), ai, b.c_[j].get_mpz_t());
      }
    }
    return Poly(std::move(r));
  } else {
    std::vector<R> r(a.size() + b.size() - 1, R(0));
    R t;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b.c_[j] == 0) continue;
        t = a.c_[i] * b.c_[j];
        r[i + j] += t;
      }
    }
    return Poly(std::move(r));
  }
}

template <class R>
Poly<R> pow(Poly<R> base, unsigned long e) {
  Poly<R> r = Poly<R>::constant(R(1));
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

/// a = b*quotient + remainder, deg remainder < deg b.  Over BigInt the divisor
/// must have leading coefficient +-1.
template <class R>
std::pair<Poly<R>, Poly<R>> divrem(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {Poly<R>(), a};
  const R& lead = b.leading();
  if constexpr (std::is_same_v<R, BigInt>) {
    if (lead != 1 && lead != -1)
      throw std::domain_error("integer polynomial division needs a unit leading coefficient");
  }
  std::vector<R> rem = a.coefficients();
  std::vector<R> quo(a.size() - b.size() + 1, R(0));
  const std::size_t db = b.size() - 1;
  for (std::size_t i = quo.size(); i-- > 0;) {
    R c = rem[i + db];
    if (c == 0) continue;
    if constexpr (std::is_same_v<R, BigInt>) {
      if (lead == -1) c = -c;
    } else {
      c /= lead;
    }
    quo[i] = c;
    for (std::size_t j = 0; j <= db; ++j) {
      if (b[j] == 0) continue;
      if constexpr (std::is_same_v<R, BigInt>) {
        mpz_submul(rem[i + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
      } else {
        rem[i + j] -= c * b[j];
      }
    }
  }
  rem.resize(db);
  return {Poly<R>(std::move(quo)), Poly<R>(std::move(rem))};
}

template <class R>
Poly<R> rem(const Poly<R>& a, const Poly<R>& b) {
  return divrem(a, b).second;
}

/// Quotient of an exact division; throws when b does not divide a.
template <class R>
Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw std::domain_error("exact_div: divisor does not divide");
  return q;
}

/// If b divides a, returns the quotient.
template <class R>
std::optional<Poly<R>> try_div(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

inline UniPoly to_rational(const IntPoly& p) {
  std::vector<BigRat> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.emplace_back(c);
  return UniPoly(std::move(v));
}

inline BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coefficients()) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// p = scale * primitive, with primitive integral, content 1 and positive
/// leading coefficient.  The zero polynomial maps to (0, 0).
inline std::pair<BigRat, IntPoly> primitive_part(const UniPoly& p) {
  if (p.is_zero()) return {BigRat(0), IntPoly()};
  BigInt l = 1;
  for (const auto& c : p.coefficients())
    if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<BigInt> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.emplace_back(BigInt(c.get_num() * (l / c.get_den())));
  IntPoly ip(std::move(v));
  BigInt g = content(ip);
  if (ip.leading() < 0) g = -g;
  std::vector<BigInt> w = ip.coefficients();
  for (auto& c : w) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return {make_rat(g, l), IntPoly(std::move(w))};
}

inline std::pair<BigRat, IntPoly> primitive_part(const IntPoly& p) {
  if (p.is_zero()) return {BigRat(0), IntPoly()};
  BigInt g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<BigInt> w = p.coefficients();
  for (auto& c : w) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return {BigRat(g), IntPoly(std::move(w))};
}

inline UniPoly make_monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  return p * BigRat(1 / p.leading());
}

/// Monic gcd over the rationals.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  // Euclid on primitive integer representatives keeps coefficients small.
  auto prim = [](const UniPoly& p) { return to_rational(primitive_part(p).second); };
  if (!a.is_zero()) a = prim(a);
  if (!b.is_zero()) b = prim(b);
  while (!b.is_zero()) {
    UniPoly r = rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : prim(r);
  }
  return make_monic(a);
}

template <class R>
struct XgcdResult {
  Poly<R> g, s, t;  // s*a + t*b = g, g monic
};

inline XgcdResult<BigRat> xgcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("xgcd of two zero polynomials");
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(1), s1;
  UniPoly t0, t1 = UniPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    UniPoly s2 = s0 - q * s1;
    UniPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const BigRat inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Inverse of a modulo m; throws when they are not coprime.
inline UniPoly inverse_mod(const UniPoly& a, const UniPoly& m) {
  // Remainder sequence with s_i a = r_i (mod m); each r_i is replaced by its
  // primitive part (and s_i scaled to match) to stop coefficient growth.
  auto prim = [](UniPoly& r, UniPoly& s) {
    auto [c, pp] = primitive_part(r);
    r = to_rational(pp);
    s = s * BigRat(1 / c);
  };
  UniPoly r0 = m, s0;
  UniPoly r1 = rem(a, m), s1 = UniPoly::constant(1);
  if (r1.is_zero()) throw std::domain_error("inverse_mod: not coprime to the modulus");
  prim(r1, s1);
  while (*r1.degree() > 0) {
    auto [q, r] = divrem(r0, r1);
    if (r.is_zero()) throw std::domain_error("inverse_mod: not coprime to the modulus");
    UniPoly s2 = rem(s0 - q * s1, m);
    prim(r, s2);
    r0 = std::move(r1);
    s0 = std::move(s1);
    r1 = std::move(r);
    s1 = std::move(s2);
  }
  return rem(s1 * BigRat(1 / r1.leading()), m);
}

/// (a*b) mod m for integer polynomials and a monic modulus.
inline IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const IntPoly& m) {
  return rem(a * b, m);
}

inline IntPoly to_integer_exact(const UniPoly& p) {
  std::vector<BigInt> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) {
    if (c.get_den() != 1) throw std::domain_error("to_integer_exact: non-integral coefficient");
    v.emplace_back(c.get_num());
  }
  return IntPoly(std::move(v));
}

}  // namespace qsc
