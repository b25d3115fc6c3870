// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trace_repair/errors.hpp"
#include "trace_repair/field.hpp"
#include "trace_repair/rs_code.hpp"

namespace trace_repair {

/// One to three distinct erased positions. Listed order names them
/// alpha*, alpha-bar, alpha' (pattern indices 0, 1, 2).
struct ErasurePattern {
  std::vector<std::size_t> positions;

  ErasurePattern() = default;
  ErasurePattern(std::vector<std::size_t> pos, const CodeParams& params) : positions(std::move(pos)) {
    if (positions.empty() || positions.size() > 3) throw PatternError("erasure pattern must have 1 to 3 positions");
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (positions[i] >= params.n) throw PatternError("erased position out of range");
      for (std::size_t j = 0; j < i; ++j) {
        if (positions[i] == positions[j]) throw PatternError("erased positions must be distinct");
      }
    }
    if (positions.size() > params.n - params.k) {
      throw PatternError("code corrects at most n-k = " + std::to_string(params.n - params.k) + " erasures");
    }
  }

  std::size_t size() const { return positions.size(); }
  std::size_t operator[](std::size_t i) const { return positions[i]; }
};

/// A codeword with some positions blanked. Reading a blanked position is a
/// programming error.
class ErasedCodeword {
 public:
  ErasedCodeword(const CodeParams& params, const Codeword& cw, ErasurePattern pattern)
      : pattern_(std::move(pattern)) {
    if (cw.symbols.size() != params.n) throw ShapeError("codeword length must equal n");
    symbols_.assign(cw.symbols.begin(), cw.symbols.end());
    for (auto p : pattern_.positions) symbols_[p].reset();
  }

  const ErasurePattern& pattern() const { return pattern_; }
  std::size_t size() const { return symbols_.size(); }
  bool is_erased(std::size_t j) const { return !symbols_[j].has_value(); }
  Fel symbol(std::size_t j) const {
    if (!symbols_[j]) throw std::logic_error("read of erased position " + std::to_string(j));
    return *symbols_[j];
  }
  const std::vector<std::optional<Fel>>& view() const { return symbols_; }

 private:
  ErasurePattern pattern_;
  std::vector<std::optional<Fel>> symbols_;
};

enum class Role { Node, Replacement, Center };

struct Endpoint {
  Role role = Role::Node;
  std::size_t index = 0;  // codeword position for nodes, pattern index for replacements

  static Endpoint node(std::size_t pos) { return {Role::Node, pos}; }
  static Endpoint replacement(std::size_t i) { return {Role::Replacement, i}; }
  static Endpoint center() { return {Role::Center, 0}; }

  std::string label() const {
    switch (role) {
      case Role::Node: return "node:" + std::to_string(index);
      case Role::Replacement: return "replacement:" + std::to_string(index);
      case Role::Center: return "center";
    }
    return "?";
  }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// One link usage, in sub-symbols.
struct Transfer {
  Endpoint from;
  Endpoint to;
  std::size_t count = 1;
  std::string kind;  // "helping", "extra", "exchange", "symbol"
};

class BandwidthLedger {
 public:
  void add(Transfer tr) {
    if (tr.count == 0) throw std::logic_error("ledger transfers must be positive");
    rows_.push_back(std::move(tr));
  }
  const std::vector<Transfer>& transfers() const { return rows_; }

  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& r : rows_) s += r.count;
    return s;
  }
  std::size_t received_by(const Endpoint& e) const {
    std::size_t s = 0;
    for (const auto& r : rows_) {
      if (r.to == e) s += r.count;
    }
    return s;
  }
  std::size_t center_downloads() const { return received_by(Endpoint::center()); }
  std::size_t exchanges() const {
    std::size_t s = 0;
    for (const auto& r : rows_) {
      if (r.from.role == Role::Replacement && r.to.role == Role::Replacement) s += r.count;
    }
    return s;
  }
  std::size_t of_kind(const std::string& kind) const {
    std::size_t s = 0;
    for (const auto& r : rows_) {
      if (r.kind == kind) s += r.count;
    }
    return s;
  }

 private:
  std::vector<Transfer> rows_;
};

/// A sub-symbol that entered the computation: downloaded, exchanged, or
/// computed locally from data the receiver already holds.
struct Atom {
  Endpoint from;
  Endpoint to;
  std::string kind;
  std::size_t position = 0;  // codeword position the value is derived from
  Fel target;                // evaluation point of the symbol being repaired
  Fel scale;                 // value is Tr(scale * f(position) / (point - target)) for helping atoms
  Bel value;
  std::optional<std::size_t> transfer;  // ledger row when it cost bandwidth
};

/// B-linear combination of atoms (atom index -> coefficient).
using LinearForm = std::map<std::size_t, Bel>;

inline void axpy(const FieldTower& tw, LinearForm& acc, Bel c, const LinearForm& x) {
  if (c.is_zero()) return;
  for (const auto& [a, v] : x) {
    const Bel nv = tw.add(acc[a], tw.mul(c, v));
    if (nv.is_zero()) {
      acc.erase(a);
    } else {
      acc[a] = nv;
    }
  }
}

/// How one interfering trace was removed from a repair equation.
struct Cancellation {
  std::size_t interferer = 0;  // pattern index of the other erased symbol
  Fel check_value;             // value of the check at the interferer
  std::vector<Fel> over;       // elements whose known traces were combined
  std::vector<Bel> lambdas;    // coefficients over `over`
  Bel value;                   // the interfering trace
  std::optional<std::size_t> exchange_atom;
  Bel multiplier;              // value = multiplier * exchanged sub-symbol
  LinearForm sender_form;      // how the sender built the exchanged sub-symbol
};

struct CheckRecord {
  std::string name;
  int round = 1;
  std::size_t target = 0;  // pattern index
  Fel element;             // u such that this row yields Tr(u f(target))
  Fel scale;
  std::vector<Bel> coefficients;  // -Tr(u (beta - target)) for each position beta, zero where unused
  Bel rhs;
  Bel trace;
  LinearForm form;
  std::vector<Cancellation> cancellations;
};

struct Transcript {
  std::vector<Atom> atoms;
  std::vector<CheckRecord> checks;
  std::vector<std::string> notes;

  const CheckRecord* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

/// Three-erasure parameters: s, the shared basis of the triple root space and
/// the extension elements of the later rounds.
struct ThreeErasureContext {
  std::size_t s = 0;
  std::vector<Fel> shared_basis;
  std::optional<Fel> u_s1, u_s2, v_s1, v_s2, w_s1, w_s2;
  std::optional<Fel> u_s3, v_s3, w_s3;
  std::optional<int> activation;  // 1..3, which ratio lies in K
  std::optional<Fel> activation_ratio;
  std::vector<std::string> cycle_one;
  std::vector<std::string> cycle_two;
};

struct RepairResult {
  std::string scheme;
  ErasurePattern pattern;
  std::vector<Fel> recovered;  // in pattern order
  BandwidthLedger ledger;
  Transcript transcript;
  std::optional<ThreeErasureContext> three;
  bool fallback = false;
};

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::ordered_json form_to_json(const FieldTower& tw, const LinearForm& f) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& [a, c] : f) out.push_back({{"atom", a}, {"coef", tw.format(c)}});
  return out;
}

inline nlohmann::ordered_json to_json(const FieldTower& tw, const RepairResult& r, bool with_transcript = true) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["scheme"] = r.scheme;
  j["fallback"] = r.fallback;
  j["pattern"] = r.pattern.positions;
  auto rec = ordered_json::array();
  for (const Fel v : r.recovered) rec.push_back(tw.format(v));
  j["recovered"] = rec;
  ordered_json ledger;
  ledger["total"] = r.ledger.total();
  ledger["center_downloads"] = r.ledger.center_downloads();
  ledger["exchanges"] = r.ledger.exchanges();
  auto rows = ordered_json::array();
  for (const auto& t : r.ledger.transfers()) {
    rows.push_back({{"from", t.from.label()}, {"to", t.to.label()}, {"count", t.count}, {"kind", t.kind}});
  }
  ledger["transfers"] = rows;
  j["ledger"] = ledger;
  if (r.three) {
    const auto& c = *r.three;
    ordered_json ctx;
    ctx["s"] = c.s;
    auto basis = ordered_json::array();
    for (const Fel b : c.shared_basis) basis.push_back(tw.format(b));
    ctx["shared_basis"] = basis;
    auto opt = [&](const std::optional<Fel>& v) -> ordered_json {
      return v ? ordered_json(tw.format(*v)) : ordered_json(nullptr);
    };
    ctx["u_s1"] = opt(c.u_s1);
    ctx["u_s2"] = opt(c.u_s2);
    ctx["v_s1"] = opt(c.v_s1);
    ctx["v_s2"] = opt(c.v_s2);
    ctx["w_s1"] = opt(c.w_s1);
    ctx["w_s2"] = opt(c.w_s2);
    ctx["u_s3"] = opt(c.u_s3);
    ctx["v_s3"] = opt(c.v_s3);
    ctx["w_s3"] = opt(c.w_s3);
    ctx["activation"] = c.activation ? ordered_json(*c.activation) : ordered_json(nullptr);
    ctx["activation_ratio"] = opt(c.activation_ratio);
    ctx["cycle_one"] = c.cycle_one;
    ctx["cycle_two"] = c.cycle_two;
    j["three_erasure"] = ctx;
  }
  if (with_transcript) {
    auto atoms = ordered_json::array();
    for (std::size_t i = 0; i < r.transcript.atoms.size(); ++i) {
      const auto& a = r.transcript.atoms[i];
      atoms.push_back({{"id", i},
                       {"from", a.from.label()},
                       {"to", a.to.label()},
                       {"kind", a.kind},
                       {"position", a.position},
                       {"value", tw.format(a.value)},
                       {"paid", a.transfer.has_value()}});
    }
    auto checks = ordered_json::array();
    for (const auto& c : r.transcript.checks) {
      ordered_json cj;
      cj["check"] = c.name;
      cj["round"] = c.round;
      cj["target"] = c.target;
      cj["element"] = tw.format(c.element);
      cj["scale"] = tw.format(c.scale);
      cj["rhs"] = tw.format(c.rhs);
      cj["trace"] = tw.format(c.trace);
      cj["form"] = form_to_json(tw, c.form);
      auto canc = ordered_json::array();
      for (const auto& x : c.cancellations) {
        ordered_json xj;
        xj["interferer"] = x.interferer;
        xj["check_value"] = tw.format(x.check_value);
        auto over = ordered_json::array();
        for (const Fel e : x.over) over.push_back(tw.format(e));
        auto lam = ordered_json::array();
        for (const Fel e : x.lambdas) lam.push_back(tw.format(e));
        xj["over"] = over;
        xj["lambdas"] = lam;
        xj["value"] = tw.format(x.value);
        xj["via_exchange"] = x.exchange_atom ? ordered_json(*x.exchange_atom) : ordered_json(nullptr);
        if (x.exchange_atom) xj["sender_form"] = form_to_json(tw, x.sender_form);
        canc.push_back(xj);
      }
      cj["cancellations"] = canc;
      checks.push_back(cj);
    }
    j["atoms"] = atoms;
    j["checks"] = checks;
    j["notes"] = r.transcript.notes;
  }
  return j;
}

}  // namespace trace_repair
