#pragma once

// Cyclotomic polynomials and q-integers.
//
// Phi_n is computed once per process as (q^n - 1) / prod_{d | n, d < n} Phi_d
// and kept in a shared cache: many readers, one-time insertion per n.  The
// cache can be persisted to a plain-text file (see save_cyclotomic_cache).

#include "qsc/poly.hpp"
#include "qsc/rational.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsc {

namespace detail {

struct CyclotomicCache {
  std::shared_mutex mutex;
  std::map<long, IntPoly> table;  // node-based: references stay valid

  static CyclotomicCache& instance() {
    static CyclotomicCache c;
    return c;
  }
};

inline constexpr const char* kCacheHeader = "qsc-cyclotomic-cache v1";

}  // namespace detail

/// Phi_n(q) with integer coefficients.  The reference stays valid for the
/// lifetime of the process.
inline const IntPoly& cyclotomic_int(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n must be >= 1");
  auto& cache = detail::CyclotomicCache::instance();
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.table.find(n);
    if (it != cache.table.end()) return it->second;
  }
  IntPoly phi = IntPoly::binomial(BigInt(-1), BigInt(1), static_cast<std::size_t>(n));
  for (long d : divisors(n)) {
    if (d == n) continue;
    phi = exact_div(phi, cyclotomic_int(d));
  }
  std::unique_lock lock(cache.mutex);
  return cache.table.try_emplace(n, std::move(phi)).first->second;
}

inline UniPoly cyclotomic(long n) { return to_rational(cyclotomic_int(n)); }

/// [n] = 1 + q + ... + q^(n-1); [0] = 0.
inline IntPoly q_integer_int(long n) {
  if (n < 0) throw std::invalid_argument("q_integer: n must be >= 0");
  return IntPoly(std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(1)));
}

inline UniPoly q_integer(long n) { return to_rational(q_integer_int(n)); }

inline std::size_t cyclotomic_cache_size() {
  auto& cache = detail::CyclotomicCache::instance();
  std::shared_lock lock(cache.mutex);
  return cache.table.size();
}

/// Writes every cached Phi_n as "n: c0 c1 ... cdeg" under a version header.
inline void save_cyclotomic_cache(const std::filesystem::path& file) {
  auto& cache = detail::CyclotomicCache::instance();
  std::shared_lock lock(cache.mutex);
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write cyclotomic cache " + file.string());
  out << detail::kCacheHeader << '\n';
  for (const auto& [n, p] : cache.table) {
    out << n << ':';
    for (const auto& c : p.coefficients()) out << ' ' << c.get_str();
    out << '\n';
  }
}

/// Loads a cache file written by save_cyclotomic_cache.  Every entry is
/// checked against its defining degree and divisibility of q^n - 1 before it is
/// accepted; a file with the wrong header is ignored.  Returns the number of
/// entries loaded.
inline std::size_t load_cyclotomic_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return 0;
  std::string line;
  if (!std::getline(in, line) || line != detail::kCacheHeader) return 0;
  std::map<long, IntPoly> loaded;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw std::runtime_error("malformed cyclotomic cache line");
    const long n = std::stol(line.substr(0, colon));
    std::istringstream coeffs(line.substr(colon + 1));
    std::vector<BigInt> v;
    std::string tok;
    while (coeffs >> tok) v.emplace_back(tok);
    IntPoly p(std::move(v));
    const auto deg = p.degree();
    bool ok = n >= 1 && deg && static_cast<long>(*deg) == euler_phi(n) && p.leading() == 1 &&
              rem(IntPoly::binomial(BigInt(-1), BigInt(1), static_cast<std::size_t>(n)), p).is_zero();
    // A divisor of q^n - 1 of the right degree is Phi_n iff it shares no root
    // with q^(n/r) - 1 for the primes r | n.
    for (long r = 2; ok && r <= n; ++r) {
      if (n % r != 0 || !is_prime(r)) continue;
      const UniPoly lower = to_rational(
          IntPoly::binomial(BigInt(-1), BigInt(1), static_cast<std::size_t>(n / r)));
      ok = gcd(to_rational(p), lower).is_one();
    }
    if (!ok)
      throw std::runtime_error("cyclotomic cache entry for n=" + std::to_string(n) + " is invalid");
    loaded.emplace(n, std::move(p));
  }
  auto& cache = detail::CyclotomicCache::instance();
  std::unique_lock lock(cache.mutex);
  std::size_t count = 0;
  for (auto& [n, p] : loaded) count += cache.table.try_emplace(n, std::move(p)).second ? 1 : 0;
  return count;
}

}  // namespace qsc
