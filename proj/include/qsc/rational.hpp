#pragma once

// Exact scalars: arbitrary-precision integers and rationals backed by GMP,
// plus the small number-theoretic helpers the rest of the library needs.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsc {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Canonical rational num/den (denominator made positive, gcd removed).
inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline BigRat make_rat(long num, long den = 1) {
  return make_rat(BigInt(num), BigInt(den));
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const BigRat& x) { return x.get_str(); }

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigRat rpow(const BigRat& base, long e) {
  if (e == 0) return BigRat(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("0 raised to a negative power");
    return BigRat(0);
  }
  const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  BigRat r(ipow(base.get_num(), ue), ipow(base.get_den(), ue));
  if (e < 0) r = 1 / r;
  return r;
}

/// Exponent of p in a nonzero rational; std::nullopt stands for +infinity (x = 0).
inline std::optional<long> padic_valuation(const BigRat& x, unsigned long p) {
  if (p < 2) throw std::invalid_argument("padic_valuation: p must be a prime");
  if (x == 0) return std::nullopt;
  long v = 0;
  BigInt n = abs(x.get_num());
  BigInt d = x.get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    --v;
  }
  return v;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Positive divisors of n in increasing order.
inline std::vector<long> divisors(long n) {
  if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<long> lo, hi;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

inline long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Non-negative residue of x mod m (m > 0).
constexpr long mod_floor(long x, long m) { return ((x % m) + m) % m; }

/// Deterministic stream of primes 2, 3, 5, ... starting at the given index.
class PrimeStream {
 public:
  explicit PrimeStream(std::size_t start_index = 0) {
    for (std::size_t i = 0; i < start_index; ++i) advance();
  }
  long current() const { return current_; }
  long next() {
    const long v = current_;
    advance();
    return v;
  }

 private:
  void advance() {
    long c = current_ + 1;
    while (!is_prime(c)) ++c;
    current_ = c;
  }
  long current_ = 2;
};

}  // namespace qsc
