#pragma once

// Summation of factored terms.
//
// Consecutive summands of a q-hypergeometric sum differ by a handful of
// factors, so the sum is accumulated as N/B where the running term is A/B and
// only the factor-exponent differences between neighbouring terms are
// multiplied in:
//
//   A_k = A_{k-1} * alpha_k,  B_k = B_{k-1} * beta_k,  N_k = N_{k-1} * beta_k + A_k.
//
// Every multiplication is by a small polynomial.  The same recurrence runs
// either over Z[q] (exact sums, zero tests) or over Z[q]/(Phi_d^K) with the
// Phi_d-part of each term kept aside as an exponent (local congruence checks).

#include "qsc/cyclotomic.hpp"
#include "qsc/factored.hpp"

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace qsc {

/// FNV-1a 64-bit digest as 16 hex digits.
inline std::string digest(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class R>
std::string canonical(const Poly<R>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += p[i].get_str();
  }
  return s;
}

namespace detail {

struct Row {
  BigRat scalar = 1;
  long shift = 0;
  std::map<IntPoly, int> factors;
  int val = 0;  // exponent of the tracked cyclotomic factor (local mode)
};

struct ExactRing {
  IntPoly mul(const IntPoly& x, const IntPoly& y) const { return x * y; }
};

struct ModRing {
  IntPoly modulus;
  IntPoly mul(const IntPoly& x, const IntPoly& y) const { return rem(x * y, modulus); }
  IntPoly reduce(const IntPoly& x) const { return rem(x, modulus); }
};

template <class Ring>
class Accumulator {
 public:
  explicit Accumulator(const Ring& ring) : ring_(ring) {}

  /// Adds the term described by r, multiplied by extra (nullptr means 1).
  void add(const Row& r, const IntPoly* extra) {
    std::vector<IntPoly> up, down;
    const BigRat ratio = r.scalar / prev_.scalar;
    if (ratio.get_num() != 1) up.push_back(IntPoly::constant(BigInt(ratio.get_num())));
    if (ratio.get_den() != 1) down.push_back(IntPoly::constant(BigInt(ratio.get_den())));
    const long ds = r.shift - prev_.shift;
    if (ds > 0) up.push_back(IntPoly::monomial(BigInt(1), static_cast<std::size_t>(ds)));
    if (ds < 0) down.push_back(IntPoly::monomial(BigInt(1), static_cast<std::size_t>(-ds)));
    auto it = r.factors.begin();
    auto jt = prev_.factors.begin();
    auto push = [&](const IntPoly& f, int delta) {
      auto& dst = delta > 0 ? up : down;
      for (int i = 0; i < std::abs(delta); ++i) dst.push_back(f);
    };
    while (it != r.factors.end() || jt != prev_.factors.end()) {
      if (jt == prev_.factors.end() || (it != r.factors.end() && it->first < jt->first)) {
        push(it->first, it->second);
        ++it;
      } else if (it == r.factors.end() || jt->first < it->first) {
        push(jt->first, -jt->second);
        ++jt;
      } else {
        push(it->first, it->second - jt->second);
        ++it;
        ++jt;
      }
    }
    const IntPoly alpha = product(up);
    const IntPoly beta = product(down);
    if (!alpha.is_one()) a_ = ring_.mul(a_, alpha);
    if (!beta.is_one()) {
      b_ = ring_.mul(b_, beta);
      if (!n_.is_zero()) n_ = ring_.mul(n_, beta);
    }
    if (extra == nullptr) {
      n_ += a_;
    } else if (!extra->is_zero()) {
      n_ += ring_.mul(a_, *extra);
    }
    prev_ = r;
  }

  const IntPoly& numerator() const { return n_; }
  const IntPoly& denominator() const { return b_; }

 private:
  IntPoly product(std::vector<IntPoly>& fs) const {
    if (fs.empty()) return IntPoly::constant(BigInt(1));
    // balanced pairing keeps the operands of similar size
    while (fs.size() > 1) {
      std::vector<IntPoly> next;
      next.reserve((fs.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(ring_.mul(fs[i], fs[i + 1]));
      if (fs.size() % 2) next.push_back(std::move(fs.back()));
      fs = std::move(next);
    }
    return fs.front();
  }

  const Ring& ring_;
  IntPoly a_ = IntPoly::constant(BigInt(1));
  IntPoly b_ = IntPoly::constant(BigInt(1));
  IntPoly n_;
  Row prev_;
};

inline Row to_row(const FactoredValue& v) {
  Row r;
  r.scalar = v.scalar();
  r.shift = v.q_shift();
  for (const auto& [d, e] : v.cyclo()) r.factors.emplace(cyclotomic_int(d), e);
  for (const auto& [p, e] : v.polys()) {
    auto [it, inserted] = r.factors.try_emplace(p, e);
    if (!inserted) {
      it->second += e;
      if (it->second == 0) r.factors.erase(it);
    }
  }
  return r;
}

}  // namespace detail

/// A sum held as the unreduced fraction num/den (den != 0).
struct SumFraction {
  IntPoly num;
  IntPoly den = IntPoly::constant(BigInt(1));

  bool is_zero() const { return num.is_zero(); }
  LaurentRatFun reduced() const {
    return LaurentRatFun(RatFun(to_rational(num), to_rational(den)), 0);
  }
};

/// Exact value of the sum of the given terms.
inline SumFraction exact_sum(const std::vector<FactoredValue>& terms) {
  detail::ExactRing ring;
  detail::Accumulator<detail::ExactRing> acc(ring);
  for (const auto& t : terms) acc.add(detail::to_row(t), nullptr);
  return {acc.numerator(), acc.denominator()};
}

enum class Status { Pass, Fail, IllPosed };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::IllPosed:
      return "ill-posed";
  }
  return "?";
}

/// Outcome of S = sum of terms being 0 modulo Phi_d^e.
struct LocalOutcome {
  Status status = Status::Pass;
  int pole_order = 0;  // w: largest Phi_d power in a term denominator
  /// Pass: (S / Phi_d^e) mod Phi_d.  Fail: S * Phi_d^w mod Phi_d^(e+w).
  /// Ill-posed: S * Phi_d^w mod Phi_d^w (nonzero).
  UniPoly witness;
  std::string digest;
};

namespace detail {

/// Splits the tracked cyclotomic factor out of a row.
struct LocalSplitter {
  long d;
  const IntPoly& phi;
  std::map<IntPoly, std::pair<int, IntPoly>> cache;

  Row split(const FactoredValue& v) {
    Row r;
    r.scalar = v.scalar();
    r.shift = v.q_shift();
    auto bump = [&r](const IntPoly& p, int e) {
      if (e == 0 || p.is_one()) return;
      auto [it, inserted] = r.factors.try_emplace(p, e);
      if (!inserted) {
        it->second += e;
        if (it->second == 0) r.factors.erase(it);
      }
    };
    for (const auto& [c, e] : v.cyclo()) {
      if (c == d)
        r.val += e;
      else
        bump(cyclotomic_int(c), e);
    }
    for (const auto& [p, e] : v.polys()) {
      auto it = cache.find(p);
      if (it == cache.end()) {
        IntPoly x = p;
        int k = 0;
        while (x.size() > 1) {
          auto qr = divrem(x, phi);
          if (!qr.second.is_zero()) break;
          x = std::move(qr.first);
          ++k;
        }
        it = cache.emplace(p, std::make_pair(k, std::move(x))).first;
      }
      r.val += it->second.first * e;
      bump(it->second.second, e);
    }
    return r;
  }
};

}  // namespace detail

/// Decides Phi_d(q)^e | S for S the sum of the terms (as a reduced rational
/// function), reporting an ill-posed congruence when Phi_d divides the
/// reduced denominator of S.
inline LocalOutcome local_check(const std::vector<FactoredValue>& terms, long d, int e) {
  if (e < 1) throw std::invalid_argument("local_check: exponent must be positive");
  const IntPoly& phi = cyclotomic_int(d);
  detail::LocalSplitter splitter{d, phi, {}};
  std::vector<detail::Row> rows;
  rows.reserve(terms.size());
  int min_val = 0;
  for (const auto& t : terms) {
    rows.push_back(splitter.split(t));
    min_val = std::min(min_val, rows.back().val);
  }
  const int w = -min_val;
  const int K = e + w + 1;
  std::vector<IntPoly> phi_pow(static_cast<std::size_t>(K) + 1);
  phi_pow[0] = IntPoly::constant(BigInt(1));
  for (int i = 1; i <= K; ++i) phi_pow[static_cast<std::size_t>(i)] = phi_pow[static_cast<std::size_t>(i) - 1] * phi;
  detail::ModRing ring{phi_pow[static_cast<std::size_t>(K)]};
  detail::Accumulator<detail::ModRing> acc(ring);
  const IntPoly zero;
  for (auto& r : rows) {
    // factors are reduced once so that products stay small
    std::map<IntPoly, int> reduced;
    for (auto& [p, x] : r.factors) {
      IntPoly rp = *p.degree() >= *ring.modulus.degree() ? ring.reduce(p) : p;
      if (rp.is_zero()) throw std::logic_error("local_check: unit factor vanished modulo Phi_d^K");
      auto [it, inserted] = reduced.try_emplace(std::move(rp), x);
      if (!inserted) it->second += x;
    }
    r.factors = std::move(reduced);
    const int ex = r.val + w;
    acc.add(r, ex >= K ? &zero : &phi_pow[static_cast<std::size_t>(ex)]);
  }
  const IntPoly n = rem(acc.numerator(), ring.modulus);
  const UniPoly b = to_rational(acc.denominator());

  LocalOutcome out;
  out.pole_order = w;
  const std::string tag = "Phi" + std::to_string(d) + "^" + std::to_string(e) + ";w=" + std::to_string(w) + ";";
  if (w > 0) {
    const IntPoly low = rem(n, phi_pow[static_cast<std::size_t>(w)]);
    if (!low.is_zero()) {
      out.status = Status::IllPosed;
      const UniPoly m = to_rational(phi_pow[static_cast<std::size_t>(w)]);
      out.witness = rem(to_rational(low) * inverse_mod(b, m), m);
      out.digest = digest("illposed;" + tag + canonical(out.witness));
      return out;
    }
  }
  const IntPoly& pe = phi_pow[static_cast<std::size_t>(e + w)];
  auto [quot, r] = divrem(n, pe);
  if (!r.is_zero()) {
    out.status = Status::Fail;
    const UniPoly m = to_rational(pe);
    out.witness = rem(to_rational(r) * inverse_mod(b, m), m);
    out.digest = digest("residue;" + tag + canonical(out.witness));
    return out;
  }
  const UniPoly ph = to_rational(phi);
  out.status = Status::Pass;
  out.witness = rem(to_rational(quot) * inverse_mod(b, ph), ph);
  out.digest = digest("quotient;" + tag + canonical(out.witness));
  return out;
}

}  // namespace qsc
