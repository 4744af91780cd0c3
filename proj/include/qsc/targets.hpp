#pragma once

// Name -> verification dispatch shared by the CLI and the tests.

#include "qsc/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsc {

/// Parameters a target may read.  Missing required ones raise bad_instance.
struct TargetParams {
  std::optional<long> n, p, r, d, m, k;
  std::size_t seed = 0;
};

enum class Axis { N, P };

struct TargetInfo {
  std::string name;
  Axis axis;
  std::string summary;
  std::function<CongruenceVerdict(const TargetParams&)> run;
};

namespace detail {

inline long need(const std::optional<long>& x, const char* what) {
  if (!x) throw bad_instance(std::string("missing --") + what);
  return *x;
}

inline const std::vector<std::pair<BigRat, BigRat>>& crt_pairs() {
  static const std::vector<std::pair<BigRat, BigRat>> pairs{
      {2, 3}, {5, -3}, {13, -7}, {BigRat(1, 2), 7}, {-2, 5}};
  return pairs;
}

}  // namespace detail

inline const std::vector<TargetInfo>& targets() {
  using detail::need;
  static const std::vector<TargetInfo> all{
      {"more5", Axis::N, "sum of [8k+1](q;q^4)_k^6(q^2;q^2)_2k/((q^4;q^4)_k^6(q;q^2)_2k) q^4k mod [n]Φn²",
       [](const TargetParams& x) { return verify_more5(need(x.n, "n")); }},
      {"more6", Axis::N, "sum of [8k-1](q^-1;q^4)_k^6(q^2;q^2)_2k/((q^4;q^4)_k^6(q^-1;q^2)_2k) q^8k mod [n]Φn², n > 3",
       [](const TargetParams& x) { return verify_more6(need(x.n, "n")); }},
      {"super11", Axis::N, "two-parameter congruence behind more5",
       [](const TargetParams& x) { return verify_super11(need(x.n, "n"), x.seed); }},
      {"section41", Axis::N, "two-parameter congruence behind more6, n > 3",
       [](const TargetParams& x) { return verify_section41(need(x.n, "n"), x.seed); }},
      {"section24", Axis::N, "a = 1 case of super11 against mu",
       [](const TargetParams& x) { return verify_section24(need(x.n, "n"), x.seed); }},
      {"section4-nu", Axis::N, "a = 1 case of section41 against nu, n > 3",
       [](const TargetParams& x) { return verify_section4_nu(need(x.n, "n"), x.seed); }},
      {"lemma21", Axis::N, "Pochhammer reflection mod Φn (needs --d --m --r --k)",
       [](const TargetParams& x) {
         return verify_lemma21(need(x.n, "n"), need(x.d, "d"), need(x.m, "m"), need(x.r, "r"), need(x.k, "k"),
                               x.seed);
       }},
      {"super3", Axis::N, "truncated two-parameter sum mod Φn (needs --d --r)",
       [](const TargetParams& x) { return verify_super3(need(x.n, "n"), need(x.d, "d"), need(x.r, "r"), x.seed); }},
      {"super56", Axis::N, "c_q sums mod [n] (needs --r 1 or -1)",
       [](const TargetParams& x) { return verify_super56(need(x.n, "n"), static_cast<int>(need(x.r, "r"))); }},
      {"mod-phi", Axis::N, "q-analogue of (4k+1)(1/2)_k^4/k!^4 mod Φn²",
       [](const TargetParams& x) { return verify_mod_phi(need(x.n, "n")); }},
      {"more-fin", Axis::N, "more5 sum against [n] times the mod-phi sum",
       [](const TargetParams& x) { return verify_more_fin(need(x.n, "n")); }},
      {"terms-more5", Axis::N, "terms of the more5 sum beyond M vanish to order 3",
       [](const TargetParams& x) { return verify_term_multiplicity(need(x.n, "n"), 5); }},
      {"terms-more6", Axis::N, "terms of the more6 sum beyond M vanish to order 3",
       [](const TargetParams& x) { return verify_term_multiplicity(need(x.n, "n"), 6); }},
      {"lcm", Axis::N, "lcm(Φn³, [n]) = [n]Φn²",
       [](const TargetParams& x) { return lcm_identity_check(need(x.n, "n")); }},
      {"crt", Axis::N, "CRT weights, symbolic and at five (a,b) pairs",
       [](const TargetParams& x) {
         const long n = need(x.n, "n");
         return crt_weight_check(n, thm31_case(n).t, detail::crt_pairs(), x.seed);
       }},
      {"corollary1", Axis::P, "q -> 1 form of more5 mod p³",
       [](const TargetParams& x) { return verify_corollary(1, need(x.p, "p")); }},
      {"corollary2", Axis::P, "q -> 1 form of more6 mod p³, p > 3",
       [](const TargetParams& x) { return verify_corollary(2, need(x.p, "p")); }},
      {"vanhamme", Axis::P, "calibration: sum (4k+1)(1/2)_k^4/k!^4 = p mod p³",
       [](const TargetParams& x) { return verify_vanhamme(need(x.p, "p")); }},
  };
  return all;
}

inline const TargetInfo* find_target(const std::string& name) {
  for (const auto& t : targets())
    if (t.name == name) return &t;
  return nullptr;
}

/// Group names accepted by sweeps.
inline std::vector<std::string> expand_target(const std::string& name) {
  if (name == "corollaries") return {"corollary1", "corollary2"};
  return {name};
}

struct Record {
  CongruenceVerdict verdict;
  double runtime_ms = 0;
};

inline Record run_timed(const TargetInfo& t, const TargetParams& x) {
  const auto t0 = std::chrono::steady_clock::now();
  Record rec{t.run(x), 0};
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rec.verdict.target = t.name;
  return rec;
}

/// 0 all pass, 1 any fail, 2 any ill-posed and no fail.
inline int exit_code(const std::vector<Record>& recs) {
  Status s = Status::Pass;
  for (const auto& r : recs) s = combine(s, r.verdict.status);
  if (s == Status::Fail) return 1;
  if (s == Status::IllPosed) return 2;
  return 0;
}

}  // namespace qsc
