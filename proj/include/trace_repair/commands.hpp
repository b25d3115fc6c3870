// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "trace_repair/analysis.hpp"
#include "trace_repair/field.hpp"
#include "trace_repair/repair.hpp"
#include "trace_repair/rs_code.hpp"
#include "trace_repair/sim.hpp"

namespace trace_repair {

struct CensusRow {
  std::uint32_t p, m, t;
  std::size_t correctable;
  std::size_t total;
};

/// Reference correctable-triple counts with the pair (0, 1) fixed.
inline const std::vector<CensusRow>& reference_census() {
  static const std::vector<CensusRow> rows{
      {2, 1, 4, 14, 14},       {2, 1, 6, 60, 62},         {2, 1, 8, 206, 254},      {2, 1, 10, 900, 1022},
      {2, 2, 4, 158, 254},     {2, 2, 6, 2330, 4094},     {2, 2, 8, 37886, 65534},  {2, 3, 4, 1406, 4094},
      {2, 3, 6, 86694, 262142}, {3, 1, 3, 19, 25},        {3, 1, 6, 529, 727},      {3, 1, 9, 14083, 19681},
      {3, 2, 3, 223, 727},     {3, 2, 6, 158263, 531439},
  };
  return rows;
}

/// Dual codewords p1..p4 (u = xi^i at 0) and q1..q4 (v = xi^i at 1) over
/// GF(16), one token per evaluation point in canonical order.
inline const std::array<std::array<const char*, 16>, 8>& reference_check_table() {
  static const std::array<std::array<const char*, 16>, 8> rows{{
      {"1", "0", "0", "0", "x^12", "0", "0", "x^9", "x^8", "0", "x^6", "0", "x^4", "x^3", "x^2", "x^1"},
      {"x^1", "0", "0", "x^13", "0", "0", "x^10", "x^9", "0", "x^7", "0", "x^5", "x^4", "x^3", "x^2", "0"},
      {"x^2", "0", "x^14", "0", "0", "x^11", "x^10", "0", "x^8", "0", "x^6", "x^5", "x^4", "x^3", "0", "0"},
      {"x^3", "1", "0", "0", "x^12", "x^11", "0", "x^9", "0", "x^7", "x^6", "x^5", "x^4", "0", "0", "0"},
      {"0", "1", "0", "0", "x^1", "0", "0", "x^2", "x^6", "0", "x^8", "0", "x^3", "x^4", "x^9", "x^12"},
      {"0", "x^1", "0", "x^7", "0", "0", "x^5", "x^2", "0", "x^13", "0", "x^10", "x^3", "x^4", "x^9", "0"},
      {"0", "x^2", "x^11", "0", "0", "x^14", "x^5", "0", "x^6", "0", "x^8", "x^10", "x^3", "x^4", "0", "0"},
      {"1", "x^3", "x^11", "x^7", "0", "0", "x^5", "0", "x^6", "0", "0", "0", "0", "x^4", "x^9", "x^12"},
  }};
  return rows;
}

inline TripleCensus cmd_count_triples(const FieldTower& tw, std::ostream& os, std::optional<Fel> alpha = {},
                                      std::optional<Fel> beta = {}, bool header = true) {
  const auto c = count_correctable(tw, alpha.value_or(tw.zero()), beta.value_or(tw.one()), 0);
  if (header) write_census_header(os);
  write_census_row(os, tw, c);
  return c;
}

/// Bandwidth of every scheme next to the naive baseline and the lower bound.
inline void cmd_compare(const FieldTower& tw, std::size_t k, std::ostream& os) {
  const std::uint64_t n = tw.size();
  const double lb = repair_lower_bound(n, k, tw.subfield_size(), tw.t());
  os << "scheme,erasures,bandwidth_subsymbols,naive_baseline,distributed_lower_bound,needs,available\n";
  for (const auto& r : scheme_table(tw, k)) {
    std::string needs;
    if (r.needs_divisibility) needs = "char|t";
    if (r.needs_correctable) needs += "+correctable";
    if (needs.empty()) needs = "-";
    std::ostringstream lbs;
    lbs << static_cast<double>(r.erasures) * lb;
    os << r.scheme << ',' << r.erasures << ',' << r.bandwidth << ',' << k * tw.t() << ',' << lbs.str() << ',' << needs
       << ',' << (r.available ? "yes" : "no") << '\n';
  }
  const auto th = threshold_report(tw.subfield_size(), tw.t());
  if (th.k == k) {
    os << "# dist1 " << th.dist1_total << " vs naive+gw " << th.naive_plus_gw << ": "
       << (th.dist1_beats ? "smaller" : "not smaller") << " (t >= (2|B|-1)/(|B|-1): "
       << (th.dist1_condition ? "yes" : "no") << ")\n";
    os << "# central2 " << th.central2_total << " vs naive " << th.naive_central << ": "
       << (th.central2_beats ? "smaller" : "not smaller") << " (t >= 2|B|/(|B|-1): "
       << (th.central2_condition ? "yes" : "no") << ")\n";
  }
}

namespace detail {

struct SelfTestLog {
  std::ostream& os;
  bool ok = true;
  void item(const std::string& name, const std::vector<std::string>& diffs) {
    if (diffs.empty()) {
      os << "PASS " << name << '\n';
      return;
    }
    ok = false;
    os << "FAIL " << name << '\n';
    for (const auto& d : diffs) os << "  " << d << '\n';
  }
};

inline std::vector<std::string> selftest_check_table() {
  std::vector<std::string> diffs;
  const FieldTower tw(2, 1, 4);
  const CodeParams params(tw, 8);
  const auto& gold = reference_check_table();
  for (std::size_t r = 0; r < 8; ++r) {
    const Fel u = tw.pow(tw.generator(), static_cast<std::int64_t>(r % 4));
    const Fel a = r < 4 ? tw.zero() : tw.one();
    const auto chk = check_vector(params, u, a);
    const std::string name = std::string(r < 4 ? "p" : "q") + std::to_string(r % 4 + 1);
    for (std::size_t j = 0; j < 16; ++j) {
      const std::string got = tw.format(chk.values[j]);
      if (got != gold[r][j]) {
        diffs.push_back(name + " at " + tw.format(params.point(j)) + ": expected " + gold[r][j] + ", got " + got);
      }
    }
  }
  return diffs;
}

/// Message bits of the four-node example: f(x) = a + (b - a)x over GF(4).
struct ToyBits {
  int a1, a2, b1, b2;
};

inline std::vector<std::string> selftest_toy_example() {
  std::vector<std::string> diffs;
  const FieldTower tw(2, 1, 2);
  const CodeParams params(tw, 2);
  auto bit = [&](Bel v) { return v.is_zero() ? 0 : 1; };
  auto find_atom = [](const RepairResult& r, Endpoint to, std::size_t pos, const std::string& kind) {
    for (std::size_t i = 0; i < r.transcript.atoms.size(); ++i) {
      const auto& a = r.transcript.atoms[i];
      if (a.to == to && a.position == pos && a.kind == kind) return std::optional<std::size_t>(i);
    }
    return std::optional<std::size_t>();
  };
  for (int mask = 0; mask < 16; ++mask) {
    const ToyBits x{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
    const std::string tag = "bits a1a2b1b2=" + std::to_string(x.a1) + std::to_string(x.a2) + std::to_string(x.b1) +
                            std::to_string(x.b2) + ": ";
    const Fel a = tw.from_b_coordinates(std::vector<Bel>{tw.scalar(x.a1), tw.scalar(x.a2)});
    const Fel b = tw.from_b_coordinates(std::vector<Bel>{tw.scalar(x.b1), tw.scalar(x.b2)});
    const auto cw = encode(params, std::vector<Fel>{a, tw.sub(b, a)});
    const auto coords = [&](std::size_t pos) { return tw.b_coordinates(cw.symbols[pos]); };
    // f(xi) and f(xi^2) in bits.
    const auto fx = coords(2), fx2 = coords(3);
    if (bit(fx[0]) != (x.a1 ^ x.a2 ^ x.b2) || bit(fx[1]) != (x.a1 ^ x.b1 ^ x.b2) ||
        bit(fx2[0]) != (x.a2 ^ x.b1 ^ x.b2) || bit(fx2[1]) != (x.a1 ^ x.a2 ^ x.b1)) {
      diffs.push_back(tag + "stored symbols differ from the expected bit expressions");
    }

    // Node 2 (the point 1) fails.
    const auto single = repair_single_gw(params, ErasedCodeword(params, cw, ErasurePattern({1}, params)));
    const Endpoint r0 = Endpoint::replacement(0), r1 = Endpoint::replacement(1);
    const std::array<int, 3> expect{x.a2, x.a2 ^ x.b1, x.a2 ^ x.b1 ^ x.b2};
    const std::array<std::size_t, 3> from{0, 2, 3};
    std::array<std::size_t, 3> ids{};
    for (std::size_t l = 0; l < 3; ++l) {
      const auto id = find_atom(single, r0, from[l], "helping");
      if (!id) {
        diffs.push_back(tag + "missing download from position " + std::to_string(from[l]));
        continue;
      }
      ids[l] = *id;
      if (bit(single.transcript.atoms[*id].value) != expect[l]) {
        diffs.push_back(tag + "download from position " + std::to_string(from[l]) + " has the wrong value");
      }
    }
    const auto* p1 = single.transcript.find("p1");
    const auto* p2 = single.transcript.find("p2");
    const LinearForm b1_form{{ids[0], tw.one()}, {ids[1], tw.one()}};
    const LinearForm b2_form{{ids[1], tw.one()}, {ids[2], tw.one()}};
    if (!p1 || p1->form != b1_form || bit(p1->trace) != x.b1) diffs.push_back(tag + "b1 is not a2 + (a2+b1)");
    if (!p2 || p2->form != b2_form || bit(p2->trace) != x.b2) {
      diffs.push_back(tag + "b2 is not (a2+b1) + (a2+b1+b2)");
    }
    if (single.recovered[0] != b || single.ledger.total() != 3) diffs.push_back(tag + "single repair result");

    // Nodes 2 and 3 (the points 1 and xi) fail.
    const auto twice = repair_two_distributed_II(params, ErasedCodeword(params, cw, ErasurePattern({1, 2}, params)));
    const auto r0a = find_atom(twice, r0, 0, "helping"), r0b = find_atom(twice, r0, 3, "helping");
    const auto r1a = find_atom(twice, r1, 0, "helping"), r1b = find_atom(twice, r1, 3, "helping");
    if (!r0a || !r0b || !r1a || !r1b) {
      diffs.push_back(tag + "missing downloads in the two-erasure repair");
      continue;
    }
    const auto& at = twice.transcript.atoms;
    if (bit(at[*r0a].value) != x.a2 || bit(at[*r0b].value) != (x.a2 ^ x.b1 ^ x.b2) || bit(at[*r1a].value) != x.a1 ||
        bit(at[*r1b].value) != (x.a1 ^ x.a2 ^ x.b1)) {
      diffs.push_back(tag + "two-erasure downloads have the wrong values");
    }
    // Exchanged bits and how each sender built them.
    bool saw_to_r0 = false, saw_to_r1 = false;
    for (const auto& chk : twice.transcript.checks) {
      for (const auto& c : chk.cancellations) {
        if (!c.exchange_atom) continue;
        const Bel v = at[*c.exchange_atom].value;
        if (chk.target == 0) {
          saw_to_r0 = true;
          const LinearForm want{{*r1a, tw.one()}, {*r1b, tw.one()}};
          if (bit(v) != (x.a2 ^ x.b1) || c.sender_form != want) {
            diffs.push_back(tag + "exchange to node 2 is not a1 + (a1+a2+b1) = a2+b1");
          }
        } else {
          saw_to_r1 = true;
          const LinearForm want{{*r0a, tw.one()}, {*r0b, tw.one()}};
          if (bit(v) != (x.b1 ^ x.b2) || c.sender_form != want) {
            diffs.push_back(tag + "exchange to node 3 is not a2 + (a2+b1+b2) = b1+b2");
          }
        }
      }
    }
    if (!saw_to_r0 || !saw_to_r1) diffs.push_back(tag + "expected one exchange in each direction");
    if (twice.recovered[0] != b || twice.recovered[1] != cw.symbols[2] || twice.ledger.total() != 6 ||
        twice.ledger.exchanges() != 2) {
      diffs.push_back(tag + "two-erasure repair result");
    }
  }
  return diffs;
}

inline std::vector<std::string> selftest_census(std::uint64_t max_n) {
  std::vector<std::string> diffs;
  for (const auto& row : reference_census()) {
    if (row.total + 2 > max_n) continue;
    const FieldTower tw(row.p, row.m, row.t);
    const auto c = count_correctable(tw, tw.zero(), tw.one(), 1);
    if (c.correctable != row.correctable || c.total != row.total) {
      diffs.push_back(tw.name() + ": expected " + std::to_string(row.correctable) + "/" + std::to_string(row.total) +
                      ", got " + std::to_string(c.correctable) + "/" + std::to_string(c.total));
    }
  }
  return diffs;
}

inline std::vector<std::string> selftest_bandwidths() {
  std::vector<std::string> diffs;
  const FieldTower tw(2, 1, 4);
  const CodeParams params(tw, 8);
  SplitMix64 rng(7);
  std::vector<Fel> msg;
  for (std::size_t i = 0; i < params.k; ++i) msg.push_back(tw.element_at(rng.next() % params.n));
  const auto cw = encode(params, msg);
  const std::vector<std::pair<std::string, std::vector<std::size_t>>> runs{
      {"gw", {0}},         {"dist1", {0, 1}},       {"central2", {0, 1}}, {"dist2", {0, 1}},
      {"central3", {0, 1, 2}}, {"dist3", {0, 1, 2}}, {"naive", {0}}};
  const std::map<std::string, std::size_t> want{{"gw", 15},     {"dist1", 37},    {"central2", 28}, {"dist2", 30},
                                                {"central3", 39}, {"dist3", 45}, {"naive", 32}};
  for (const auto& [scheme, pos] : runs) {
    const auto r = repair(params, ErasedCodeword(params, cw, ErasurePattern(pos, params)), scheme);
    bool ok = r.ledger.total() == want.at(scheme);
    for (std::size_t i = 0; i < pos.size(); ++i) ok = ok && r.recovered[i] == cw.symbols[pos[i]];
    if (!ok) diffs.push_back(scheme + ": bandwidth " + std::to_string(r.ledger.total()) + ", expected " +
                             std::to_string(want.at(scheme)));
  }
  return diffs;
}

}  // namespace detail

/// Regenerates the reference check rows, replays the four-node example,
/// recounts the census rows up to 2^16 points and checks GF(16) bandwidths.
inline bool cmd_selftest(std::ostream& os) {
  detail::SelfTestLog log{os};
  log.item("check table GF(16)", detail::selftest_check_table());
  log.item("four-node example GF(4)", detail::selftest_toy_example());
  log.item("triple census up to 65536 points", detail::selftest_census(65536));
  log.item("scheme bandwidths GF(16) k=8", detail::selftest_bandwidths());
  os << (log.ok ? "selftest passed" : "selftest FAILED") << '\n';
  return log.ok;
}

}  // namespace trace_repair
