#pragma once

// Laurent polynomials and reduced rational functions in q.

#include "qsc/poly.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace qsc {

/// q^shift * body with body(0) != 0 unless the value is zero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(UniPoly body, long shift) : body_(std::move(body)), shift_(shift) { normalize(); }
  explicit LaurentPoly(UniPoly body) : LaurentPoly(std::move(body), 0) {}

  /// c * q^e
  static LaurentPoly monomial(const BigRat& c, long e) {
    return LaurentPoly(UniPoly::constant(c), e);
  }

  const UniPoly& body() const { return body_; }
  long shift() const { return shift_; }
  bool is_zero() const { return body_.is_zero(); }
  std::optional<long> low_degree() const {
    if (is_zero()) return std::nullopt;
    return shift_;
  }
  std::optional<long> high_degree() const {
    if (is_zero()) return std::nullopt;
    return shift_ + static_cast<long>(*body_.degree());
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    return LaurentPoly(a.body_ * b.body_, a.shift_ + b.shift_);
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long s = std::min(a.shift_, b.shift_);
    return LaurentPoly(a.body_.shifted(static_cast<std::size_t>(a.shift_ - s)) +
                           b.body_.shifted(static_cast<std::size_t>(b.shift_ - s)),
                       s);
  }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly(-a.body_, a.shift_); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.body_ == b.body_ && a.shift_ == b.shift_;
  }

  BigRat eval(const BigRat& q) const {
    if (is_zero()) return 0;
    if (q == 0 && shift_ < 0) throw std::domain_error("Laurent polynomial evaluated at q = 0");
    return body_(q) * rpow(q, shift_);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    if (shift_ == 0) return body_.to_string();
    return "q^" + std::to_string(shift_) + "*(" + body_.to_string() + ")";
  }

 private:
  void normalize() {
    if (body_.is_zero()) {
      shift_ = 0;
      return;
    }
    const std::size_t v = *body_.valuation_at_zero();
    if (v == 0) return;
    std::vector<BigRat> c(body_.coefficients().begin() + static_cast<long>(v),
                          body_.coefficients().end());
    body_ = UniPoly(std::move(c));
    shift_ += static_cast<long>(v);
  }
  UniPoly body_;
  long shift_ = 0;
};

/// num/den with gcd(num, den) = 1, den monic and nonzero.
class RatFun {
 public:
  RatFun() : num_(), den_(UniPoly::constant(1)) {}
  explicit RatFun(UniPoly p) : num_(std::move(p)), den_(UniPoly::constant(1)) {}
  RatFun(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  /// Caller guarantees gcd(num, den) = 1; only the monic normalisation is applied.
  static RatFun assume_reduced(UniPoly num, UniPoly den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    RatFun r;
    const BigRat l = den.leading();
    r.num_ = num * BigRat(1 / l);
    r.den_ = den * BigRat(1 / l);
    if (r.num_.is_zero()) r.den_ = UniPoly::constant(1);
    return r;
  }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  BigRat eval(const BigRat& q) const {
    const BigRat d = den_(q);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_(q) / d;
  }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = UniPoly::constant(1);
      return;
    }
    const UniPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    const BigRat l = den_.leading();
    if (l != 1) {
      num_ *= BigRat(1 / l);
      den_ *= BigRat(1 / l);
    }
  }
  UniPoly num_, den_;
};

/// q^shift * f where num(0) != 0 and den(0) != 0 (shift is 0 for the zero value).
class LaurentRatFun {
 public:
  LaurentRatFun() = default;
  LaurentRatFun(RatFun f, long shift) : f_(std::move(f)), shift_(shift) { normalize(); }
  explicit LaurentRatFun(RatFun f) : LaurentRatFun(std::move(f), 0) {}
  explicit LaurentRatFun(const LaurentPoly& p) : LaurentRatFun(RatFun(p.body()), p.shift()) {}
  static LaurentRatFun constant(const BigRat& c) {
    return LaurentRatFun(RatFun(UniPoly::constant(c)), 0);
  }

  const RatFun& fraction() const { return f_; }
  const UniPoly& num() const { return f_.num(); }
  const UniPoly& den() const { return f_.den(); }
  long shift() const { return shift_; }
  bool is_zero() const { return f_.is_zero(); }

  friend LaurentRatFun operator*(const LaurentRatFun& a, const LaurentRatFun& b) {
    return LaurentRatFun(a.f_ * b.f_, a.shift_ + b.shift_);
  }
  friend LaurentRatFun operator/(const LaurentRatFun& a, const LaurentRatFun& b) {
    return LaurentRatFun(a.f_ / b.f_, a.shift_ - b.shift_);
  }
  friend LaurentRatFun operator+(const LaurentRatFun& a, const LaurentRatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long s = std::min(a.shift_, b.shift_);
    const RatFun fa(a.num().shifted(static_cast<std::size_t>(a.shift_ - s)), a.den());
    const RatFun fb(b.num().shifted(static_cast<std::size_t>(b.shift_ - s)), b.den());
    return LaurentRatFun(fa + fb, s);
  }
  friend LaurentRatFun operator-(const LaurentRatFun& a) { return LaurentRatFun(-a.f_, a.shift_); }
  friend LaurentRatFun operator-(const LaurentRatFun& a, const LaurentRatFun& b) {
    return a + (-b);
  }
  friend bool operator==(const LaurentRatFun& a, const LaurentRatFun& b) {
    return a.f_ == b.f_ && a.shift_ == b.shift_;
  }

  BigRat eval(const BigRat& q) const {
    if (is_zero()) return 0;
    if (q == 0) throw std::domain_error("Laurent rational function evaluated at q = 0");
    return f_.eval(q) * rpow(q, shift_);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    if (shift_ == 0) return f_.to_string();
    return "q^" + std::to_string(shift_) + "*" + f_.to_string();
  }

 private:
  void normalize() {
    if (f_.is_zero()) {
      shift_ = 0;
      return;
    }
    auto strip = [](const UniPoly& p, long& count) {
      const std::size_t v = *p.valuation_at_zero();
      count = static_cast<long>(v);
      if (v == 0) return p;
      return UniPoly(std::vector<BigRat>(p.coefficients().begin() + static_cast<long>(v),
                                         p.coefficients().end()));
    };
    long vn = 0, vd = 0;
    UniPoly n = strip(f_.num(), vn);
    UniPoly d = strip(f_.den(), vd);
    if (vn != 0 || vd != 0) {
      f_ = RatFun::assume_reduced(std::move(n), std::move(d));
      shift_ += vn - vd;
    }
  }
  RatFun f_;
  long shift_ = 0;
};

}  // namespace qsc
