// qc: command-line front end for the verification engine.
//
//   qc verify <target> [--n N | --p P] [--r R] [--d D] [--m M] [--k K]
//   qc sweep <targets...> (--n-range A:B | --p-set LIST) [--r-set LIST] [--format F] [--jobs J]
//   qc conjecture --p-set LIST --r-set LIST [--format F]
//   qc identity <watson|pfaff|phi43t> [params]
//   qc targets
//
// Exit codes: 0 all pass, 1 any fail, 2 any ill-posed (and no fail), 64 usage.

#include "qsc/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

constexpr int kUsage = 64;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(cur, &used);
    } catch (const std::exception&) {
      throw usage_error("bad list entry '" + cur + "'");
    }
    if (used != cur.size()) throw usage_error("bad list entry '" + cur + "'");
    out.push_back(v);
    cur.clear();
  };
  for (char c : s) {
    if (c == ',' || c == ' ')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

// Odd n in [A, B].
std::vector<long> parse_n_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw usage_error("--n-range wants A:B");
  const auto a = parse_list(s.substr(0, colon)), b = parse_list(s.substr(colon + 1));
  if (a.size() != 1 || b.size() != 1) throw usage_error("--n-range wants A:B");
  std::vector<long> out;
  for (long n = a[0]; n <= b[0]; ++n)
    if (n % 2 != 0) out.push_back(n);
  return out;
}

void load_cache() {
  if (const char* dir = std::getenv("QC_CACHE_DIR")) {
    const auto file = std::filesystem::path(dir) / "cyclotomic.txt";
    if (std::filesystem::exists(file)) {
      try {
        qsc::load_cyclotomic_cache(file);
      } catch (const std::exception& e) {
        std::cerr << "qc: ignoring cache " << file << ": " << e.what() << "\n";
      }
    }
  }
}

void save_cache() {
  if (const char* dir = std::getenv("QC_CACHE_DIR")) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    try {
      qsc::save_cyclotomic_cache(std::filesystem::path(dir) / "cyclotomic.txt");
    } catch (const std::exception& e) {
      std::cerr << "qc: cannot write cache: " << e.what() << "\n";
    }
  }
}

const qsc::TargetInfo& lookup(const std::string& name) {
  const auto* t = qsc::find_target(name);
  if (!t) throw usage_error("unknown target '" + name + "' (see `qc targets`)");
  return *t;
}

struct Job {
  const qsc::TargetInfo* target;
  qsc::TargetParams params;
};

// Runs jobs on up to `jobs` threads; results come back in job order.
std::vector<std::optional<qsc::Record>> run_jobs(const std::vector<Job>& work, unsigned jobs,
                                                 std::vector<std::string>& skipped) {
  std::vector<std::optional<qsc::Record>> out(work.size());
  std::vector<std::string> why(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      try {
        out[i] = qsc::run_timed(*work[i].target, work[i].params);
      } catch (const std::invalid_argument& e) {
        why[i] = work[i].target->name + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& w : why)
    if (!w.empty()) skipped.push_back(w);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of q-supercongruences"};
  app.require_subcommand(1);

  std::string format = "pretty";
  std::size_t seed = 0;
  bool all_parts = false;

  // verify
  auto* verify = app.add_subcommand("verify", "check one instance");
  std::string v_target;
  qsc::TargetParams vp;
  long v_n = 0, v_p = 0, v_r = 0, v_d = 0, v_m = 0, v_k = 0;
  verify->add_option("target", v_target, "target name")->required();
  auto* o_n = verify->add_option("--n", v_n, "n");
  auto* o_p = verify->add_option("--p", v_p, "prime p");
  auto* o_r = verify->add_option("--r", v_r, "r");
  auto* o_d = verify->add_option("--d", v_d, "d");
  auto* o_m = verify->add_option("--m", v_m, "m");
  auto* o_k = verify->add_option("--k", v_k, "k");
  o_n->excludes(o_p);
  verify->add_option("--format", format, "pretty|json|csv");
  verify->add_option("--seed-points", seed, "start of the evaluation-point streams");
  verify->add_flag("--all-parts", all_parts, "list passing parts too");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "check many instances");
  std::vector<std::string> s_targets;
  std::string s_nrange, s_pset, s_rset;
  unsigned s_jobs = 1;
  sweep->add_option("targets", s_targets, "target names")->required();
  auto* o_nr = sweep->add_option("--n-range", s_nrange, "A:B, odd n only");
  auto* o_ps = sweep->add_option("--p-set", s_pset, "comma-separated primes");
  o_nr->excludes(o_ps);
  sweep->add_option("--r-set", s_rset, "comma-separated r values");
  sweep->add_option("--format", format, "pretty|json|csv");
  sweep->add_option("--jobs", s_jobs, "worker threads");
  sweep->add_option("--seed-points", seed, "start of the evaluation-point streams");

  // conjecture
  auto* conj = app.add_subcommand("conjecture", "p-adic valuations against the conjectured thresholds");
  std::string c_pset, c_rset;
  conj->add_option("--p-set", c_pset, "comma-separated odd primes")->required();
  conj->add_option("--r-set", c_rset, "comma-separated r >= 1")->required();
  conj->add_option("--format", format, "pretty|json|csv");

  // identity
  auto* ident = app.add_subcommand("identity", "check a terminating summation/transformation exactly");
  std::string i_kind;
  std::map<std::string, std::string> i_args;
  long i_m = -1, i_n = 0, i_t = 1;
  ident->add_option("kind", i_kind, "watson|pfaff|phi43t")->required();
  for (const char* key : {"a", "b", "c", "d", "e"})
    ident->add_option(std::string("--") + key, i_args[key], "q-monomial, e.g. 3, q^-5, 1/2*q^2");
  ident->add_option("--m", i_m, "terminating index");
  ident->add_option("--n", i_n, "n (phi43t)");
  ident->add_option("--t", i_t, "t (phi43t)");

  auto* list = app.add_subcommand("targets", "list target names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    const qsc::Format fmt = qsc::parse_format(format);
    load_cache();

    if (*list) {
      for (const auto& t : qsc::targets())
        std::cout << t.name << (t.axis == qsc::Axis::P ? "  [p]  " : "  [n]  ") << t.summary << "\n";
      return 0;
    }

    if (*verify) {
      const auto& t = lookup(v_target);
      if (*o_n) vp.n = v_n;
      if (*o_p) vp.p = v_p;
      if (*o_r) vp.r = v_r;
      if (*o_d) vp.d = v_d;
      if (*o_m) vp.m = v_m;
      if (*o_k) vp.k = v_k;
      vp.seed = seed;
      qsc::Record rec;
      try {
        rec = qsc::run_timed(t, vp);
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
      if (fmt == qsc::Format::Csv) std::cout << qsc::csv_header() << "\n";
      std::cout << qsc::format_record(rec, fmt, all_parts);
      save_cache();
      return qsc::exit_code({rec});
    }

    if (*sweep) {
      std::vector<const qsc::TargetInfo*> ts;
      for (const auto& name : s_targets)
        for (const auto& x : qsc::expand_target(name)) ts.push_back(&lookup(x));
      std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) { return a->name < b->name; });
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      const std::vector<long> ns = *o_nr ? parse_n_range(s_nrange) : std::vector<long>{};
      const std::vector<long> ps = *o_ps ? parse_list(s_pset) : std::vector<long>{};
      std::vector<std::optional<long>> rs{std::nullopt};
      if (!s_rset.empty()) {
        rs.clear();
        for (long r : parse_list(s_rset)) rs.emplace_back(r);
      }
      std::vector<Job> work;
      for (const auto* t : ts) {
        const auto& axis = t->axis == qsc::Axis::N ? ns : ps;
        for (long x : axis)
          for (const auto& r : rs) {
            Job j{t, {}};
            (t->axis == qsc::Axis::N ? j.params.n : j.params.p) = x;
            j.params.r = r;
            j.params.seed = seed;
            work.push_back(j);
          }
      }
      if (work.empty()) throw usage_error("sweep: empty range");
      std::vector<std::string> skipped;
      const auto results = run_jobs(work, s_jobs, skipped);
      std::vector<qsc::Record> recs;
      for (const auto& r : results)
        if (r) recs.push_back(*r);
      for (const auto& s : skipped) std::cerr << "qc: skipped " << s << "\n";
      if (recs.empty()) throw usage_error("sweep: no admissible instance in range");
      if (fmt == qsc::Format::Csv) std::cout << qsc::csv_header() << "\n";
      for (const auto& r : recs) std::cout << qsc::format_record(r, fmt);
      if (fmt == qsc::Format::Pretty) {
        std::size_t pass = std::count_if(recs.begin(), recs.end(), [](auto& r) { return r.verdict.pass(); });
        std::cout << pass << "/" << recs.size() << " pass\n";
      }
      save_cache();
      return qsc::exit_code(recs);
    }

    if (*conj) {
      const auto ps = parse_list(c_pset), rs = parse_list(c_rset);
      if (ps.empty() || rs.empty()) throw usage_error("conjecture: empty --p-set or --r-set");
      if (fmt == qsc::Format::Csv) std::cout << qsc::conjecture_csv_header() << "\n";
      bool shortfall = false;
      for (long p : ps)
        for (long r : rs) {
          qsc::ConjectureRow row;
          try {
            row = qsc::explore_conjecture(p, r);
          } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
          }
          shortfall = shortfall || (row.skipped.empty() && !row.meets);
          std::cout << qsc::format_row(row, fmt);
        }
      if (shortfall) std::cerr << "qc: SHORTFALL against the conjectured valuation (evidence only)\n";
      return 0;
    }

    if (*ident) {
      auto mono = [&](const char* key) {
        if (i_args[key].empty()) throw usage_error(std::string("identity: missing --") + key);
        try {
          return qsc::parse_qmonomial(i_args[key]);
        } catch (const std::invalid_argument& e) {
          throw usage_error(e.what());
        }
      };
      qsc::IdentityInstance inst;
      try {
        if (i_kind == "watson") {
          if (i_m < 0) throw usage_error("identity: missing --m");
          inst = qsc::watson_sides(mono("a"), mono("b"), mono("c"), mono("d"), mono("e"), i_m);
        } else if (i_kind == "pfaff") {
          if (i_m < 0) throw usage_error("identity: missing --m");
          inst = qsc::pfaff_sides(mono("a"), mono("b"), mono("c"), i_m);
        } else if (i_kind == "phi43t") {
          const qsc::QMonomial b = mono("b");
          if (b.q_exp != 0) throw usage_error("identity: phi43t needs a rational --b");
          inst = qsc::phi43_T_sides(i_n, i_t, b.coef);
        } else {
          throw usage_error("identity: unknown kind '" + i_kind + "'");
        }
      } catch (const qsc::zero_denominator& e) {
        std::cout << i_kind << "  ill-posed: " << e.what() << "\n";
        return 2;
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
      const bool ok = inst.equal();
      std::cout << qsc::identity_name(inst.kind);
      for (const auto& [k, v] : inst.parameters) std::cout << " " << k << "=" << v;
      std::cout << "  " << (ok ? "lhs = rhs" : "lhs != rhs") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const usage_error& e) {
    std::cerr << "qc: " << e.what() << "\n";
    return kUsage;
  } catch (const qsc::bad_instance& e) {
    std::cerr << "qc: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
