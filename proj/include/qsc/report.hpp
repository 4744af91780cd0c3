#pragma once

// Pretty, JSON-lines and CSV output for verification records.

#include "qsc/targets.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>

namespace qsc {

enum class Format { Pretty, Json, Csv };

inline Format parse_format(const std::string& s) {
  if (s == "pretty") return Format::Pretty;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw bad_instance("unknown format " + s);
}

namespace detail {

inline std::string ms(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline const char* csv_header() { return "target,instance,modulus,verdict,runtime_ms,witness_digest"; }

inline std::string to_json(const Record& r) {
  nlohmann::ordered_json j;
  j["target"] = r.verdict.target;
  j["instance"] = r.verdict.instance;
  j["modulus"] = r.verdict.modulus;
  j["verdict"] = status_name(r.verdict.status);
  j["runtime_ms"] = std::stod(detail::ms(r.runtime_ms));
  j["witness_digest"] = r.verdict.digest;
  return j.dump();
}

inline std::string to_csv(const Record& r) {
  using detail::csv_field;
  return csv_field(r.verdict.target) + "," + csv_field(r.verdict.instance) + "," + csv_field(r.verdict.modulus) +
         "," + status_name(r.verdict.status) + "," + detail::ms(r.runtime_ms) + "," + r.verdict.digest;
}

/// Multi-line human-readable block; failing parts are listed with their detail.
inline std::string to_pretty(const Record& r, bool all_parts = false) {
  const auto& v = r.verdict;
  std::ostringstream os;
  os << v.target << " " << v.instance << "  mod " << v.modulus << "  " << status_name(v.status) << "  ("
     << detail::ms(r.runtime_ms) << " ms, " << v.digest << ")\n";
  for (const auto& p : v.parts) {
    if (!all_parts && p.status == Status::Pass) continue;
    os << "  " << status_name(p.status) << "  " << p.label;
    if (!p.modulus.empty()) os << "  mod " << p.modulus;
    if (!p.detail.empty()) os << "  " << p.detail;
    os << "\n";
  }
  for (const auto& n : v.notes) os << "  note: " << n << "\n";
  return os.str();
}

inline std::string format_record(const Record& r, Format f, bool all_parts = false) {
  switch (f) {
    case Format::Json: return to_json(r) + "\n";
    case Format::Csv: return to_csv(r) + "\n";
    default: return to_pretty(r, all_parts);
  }
}

inline const char* conjecture_csv_header() { return "p,r,valuation,threshold,meets,skipped"; }

inline std::string format_row(const ConjectureRow& row, Format f) {
  const std::string val = row.valuation ? std::to_string(*row.valuation) : "inf";
  if (f == Format::Json) {
    nlohmann::ordered_json j;
    j["p"] = row.p;
    j["r"] = row.r;
    j["valuation"] = row.valuation ? nlohmann::ordered_json(*row.valuation) : nlohmann::ordered_json(nullptr);
    j["threshold"] = row.threshold;
    j["meets"] = row.meets;
    j["skipped"] = row.skipped;
    return j.dump() + "\n";
  }
  if (f == Format::Csv)
    return std::to_string(row.p) + "," + std::to_string(row.r) + "," + val + "," + std::to_string(row.threshold) +
           "," + (row.meets ? "yes" : "no") + "," + detail::csv_field(row.skipped) + "\n";
  std::ostringstream os;
  os << "p=" << row.p << " r=" << row.r << "  ";
  if (!row.skipped.empty()) {
    os << "skipped: " << row.skipped << "\n";
    return os.str();
  }
  os << "v_p = " << val << "  conjectured >= " << row.threshold << "  "
     << (row.meets ? "meets" : "SHORTFALL") << "\n";
  return os.str();
}

}  // namespace qsc
