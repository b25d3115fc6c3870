// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "trace_repair/errors.hpp"
#include "trace_repair/field.hpp"
#include "trace_repair/repair.hpp"
#include "trace_repair/repair_types.hpp"
#include "trace_repair/rs_code.hpp"

namespace trace_repair {

/// SplitMix64. Trial i of a run with seed s uses the i-th output of
/// SplitMix64(s) as its own seed; field elements are next() % n.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Field size cap, overridable through TRACE_REPAIR_MAX_FIELD.
inline std::uint64_t max_field_from_env() {
  if (const char* v = std::getenv("TRACE_REPAIR_MAX_FIELD")) {
    char* end = nullptr;
    const auto x = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && x > 0) return x;
    throw ParseError(std::string("TRACE_REPAIR_MAX_FIELD is not a positive integer: ") + v);
  }
  return FieldTower::kDefaultMaxField;
}

struct Scenario {
  std::uint32_t p = 2, m = 1, t = 4;
  std::optional<std::size_t> k;
  std::vector<std::string> erasures;  // positions, element strings, or one "random:N"
  std::string scheme = "auto";
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::optional<std::vector<std::string>> message;
  std::optional<std::string> out;
  std::optional<std::string> transcript;
};

namespace detail {

inline std::string trim_copy(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits on commas that are not inside brackets.
inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim_copy(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim_copy(cur).empty() || !out.empty()) out.push_back(trim_copy(cur));
  return out;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used != v.size()) throw ParseError("");
    return x;
  } catch (const std::exception&) {
    throw ParseError("bad value for " + key + ": '" + v + "'");
  }
}

}  // namespace detail

/// Applies one key=value setting.
inline void scenario_set(Scenario& sc, const std::string& key, const std::string& value) {
  const std::string v = detail::trim_copy(value);
  if (key == "p") {
    sc.p = static_cast<std::uint32_t>(detail::parse_uint(key, v));
  } else if (key == "m") {
    sc.m = static_cast<std::uint32_t>(detail::parse_uint(key, v));
  } else if (key == "t") {
    sc.t = static_cast<std::uint32_t>(detail::parse_uint(key, v));
  } else if (key == "k") {
    sc.k = detail::parse_uint(key, v);
  } else if (key == "erasures") {
    sc.erasures = detail::split_list(v);
  } else if (key == "scheme") {
    sc.scheme = v;
  } else if (key == "trials") {
    sc.trials = detail::parse_uint(key, v);
  } else if (key == "seed") {
    sc.seed = detail::parse_uint(key, v);
  } else if (key == "message") {
    sc.message = detail::split_list(v);
  } else if (key == "out") {
    sc.out = v;
  } else if (key == "transcript") {
    sc.transcript = v;
  } else {
    throw ParseError("unknown scenario key '" + key + "'");
  }
}

/// Flat key=value text; '#' starts a comment line.
inline Scenario parse_scenario(std::istream& is, Scenario sc = {}) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = detail::trim_copy(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
    scenario_set(sc, detail::trim_copy(s.substr(0, eq)), s.substr(eq + 1));
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path, Scenario sc = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  return parse_scenario(in, std::move(sc));
}

struct TrialRow {
  std::size_t trial = 0;
  std::string scheme;
  std::vector<std::size_t> erasures;
  std::optional<std::size_t> bandwidth;
  bool success = false;
  bool closed_form = false;
  bool fallback = false;
  std::string diagnostic;
};

struct RunReport {
  std::string tower;
  std::size_t n = 0, k = 0;
  bool char_divides_t = false;
  std::vector<TrialRow> rows;

  bool passed() const {
    if (rows.empty()) return false;
    return std::all_of(rows.begin(), rows.end(), [](const TrialRow& r) { return r.success && r.closed_form; });
  }
};

inline void write_report_csv(std::ostream& os, const RunReport& rep) {
  os << "scheme,n,k,erasures,trial,bandwidth_subsymbols,success\n";
  for (const auto& r : rep.rows) {
    os << r.scheme << ',' << rep.n << ',' << rep.k << ',';
    for (std::size_t i = 0; i < r.erasures.size(); ++i) os << (i ? ";" : "") << r.erasures[i];
    os << ',' << r.trial << ',';
    if (r.bandwidth) os << *r.bandwidth;
    os << ',' << (r.success ? 1 : 0) << '\n';
  }
}

inline void write_report_summary(std::ostream& os, const RunReport& rep) {
  std::size_t ok = 0, fallbacks = 0;
  std::optional<std::size_t> lo, hi;
  double sum = 0;
  std::size_t counted = 0;
  for (const auto& r : rep.rows) {
    ok += r.success ? 1 : 0;
    fallbacks += r.fallback ? 1 : 0;
    if (r.bandwidth) {
      lo = lo ? std::min(*lo, *r.bandwidth) : *r.bandwidth;
      hi = hi ? std::max(*hi, *r.bandwidth) : *r.bandwidth;
      sum += static_cast<double>(*r.bandwidth);
      ++counted;
    }
  }
  os << "tower " << rep.tower << " n=" << rep.n << " k=" << rep.k
     << " char_divides_t=" << (rep.char_divides_t ? "yes" : "no") << '\n';
  os << "trials " << rep.rows.size() << " succeeded " << ok << " fallback " << fallbacks << '\n';
  if (counted) {
    os << "bandwidth min " << *lo << " max " << *hi << " mean " << std::fixed << std::setprecision(2)
       << sum / static_cast<double>(counted) << '\n';
  }
  std::map<std::string, std::size_t> diags;
  for (const auto& r : rep.rows) {
    if (!r.diagnostic.empty()) ++diags[r.diagnostic];
  }
  for (const auto& [d, c] : diags) os << "diagnostic (" << c << " trials): " << d << '\n';
}

namespace detail {

inline std::size_t resolve_position(const CodeParams& params, const std::string& tok) {
  bool digits = !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (digits) {
    const auto v = parse_uint("erasures", tok);
    if (v >= params.n) throw PatternError("erased position " + tok + " out of range");
    return v;
  }
  return params.position_of(params.tower.parse(tok));
}

}  // namespace detail

/// Runs every trial of a scenario. Configuration errors throw; per-trial
/// condition failures become diagnostics in the report.
inline RunReport cmd_repair(const Scenario& sc, std::ostream* transcript = nullptr) {
  FieldTower tw(sc.p, sc.m, sc.t, max_field_from_env());
  CodeParams params = sc.k ? CodeParams(tw, *sc.k) : CodeParams(tw);
  if (std::find(scheme_names().begin(), scheme_names().end(), sc.scheme) == scheme_names().end()) {
    throw ParseError("unknown scheme '" + sc.scheme + "'");
  }
  std::optional<std::size_t> random_count;
  std::vector<std::size_t> fixed;
  for (const auto& tok : sc.erasures) {
    if (tok.rfind("random:", 0) == 0) {
      random_count = detail::parse_uint("erasures", tok.substr(7));
    } else {
      fixed.push_back(detail::resolve_position(params, tok));
    }
  }
  if (random_count && !fixed.empty()) throw ParseError("erasures: random:N cannot be mixed with fixed positions");
  if (!random_count && fixed.empty()) throw ParseError("erasures: none given");
  std::optional<std::vector<Fel>> message;
  if (sc.message) {
    message.emplace();
    for (const auto& tok : *sc.message) message->push_back(tw.parse(tok));
  }

  RunReport rep;
  rep.tower = tw.name();
  rep.n = params.n;
  rep.k = params.k;
  rep.char_divides_t = tw.char_divides_t();
  SplitMix64 master(sc.seed);
  for (std::size_t trial = 0; trial < sc.trials; ++trial) {
    SplitMix64 rng(master.next());
    std::vector<Fel> msg;
    if (message) {
      msg = *message;
    } else {
      for (std::size_t i = 0; i < params.k; ++i) msg.push_back(tw.element_at(rng.next() % params.n));
    }
    std::vector<std::size_t> pos = fixed;
    if (random_count) {
      if (*random_count > params.n) throw PatternError("random:N exceeds n");
      while (pos.size() < *random_count) {
        const std::size_t q = rng.next() % params.n;
        if (std::find(pos.begin(), pos.end(), q) == pos.end()) pos.push_back(q);
      }
    }
    TrialRow row;
    row.trial = trial;
    row.scheme = sc.scheme;
    row.erasures = pos;
    try {
      const auto cw = encode(params, msg);
      ErasedCodeword ew(params, cw, ErasurePattern(pos, params));
      const auto res = repair(params, ew, sc.scheme);
      row.scheme = res.fallback ? "fallback" : res.scheme;
      row.fallback = res.fallback;
      row.bandwidth = res.ledger.total();
      row.success = true;
      for (std::size_t i = 0; i < pos.size(); ++i) row.success = row.success && res.recovered[i] == cw.symbols[pos[i]];
      row.closed_form = *row.bandwidth == expected_bandwidth(res, params);
      if (!row.success) row.diagnostic = "recovered symbols differ from the encoded ones";
      if (!row.closed_form) row.diagnostic = "bandwidth differs from the closed form";
      if (transcript) {
        auto j = to_json(tw, res);
        j["trial"] = trial;
        *transcript << j.dump() << '\n';
      }
    } catch (const DivisibilityError& e) {
      row.diagnostic = std::string("DivisibilityError: ") + e.what();
    } catch (const NotCorrectable& e) {
      row.diagnostic = std::string("NotCorrectable: ") + e.what();
    } catch (const PatternError& e) {
      row.diagnostic = std::string("PatternError: ") + e.what();
    } catch (const DegreeError& e) {
      row.diagnostic = std::string("DegreeError: ") + e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace trace_repair
