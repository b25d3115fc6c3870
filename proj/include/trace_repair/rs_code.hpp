// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "trace_repair/errors.hpp"
#include "trace_repair/field.hpp"

namespace trace_repair {

/// Full-length RS code over F: evaluation points are all of F in canonical order.
struct CodeParams {
  FieldTower tower;
  std::size_t n = 0;
  std::size_t k = 0;

  explicit CodeParams(FieldTower tw) : tower(std::move(tw)) {
    n = tower.size();
    k = n - n / tower.subfield_size();
    validate();
  }
  CodeParams(FieldTower tw, std::size_t dim) : tower(std::move(tw)), n(tower.size()), k(dim) { validate(); }

  Fel point(std::size_t j) const { return tower.element_at(j); }
  std::size_t position_of(Fel a) const { return tower.position_of(a); }

 private:
  void validate() const {
    if (k < 1 || k >= n) throw DegenerateInput("code dimension must satisfy 1 <= k < n");
  }
};

struct Codeword {
  std::vector<Fel> symbols;
  std::optional<std::vector<Fel>> message;
};

/// Evaluations of p_{u,a}(x) = Tr(u (x - a)) / (x - a) at every point.
struct CheckVector {
  Fel u;
  Fel alpha;
  std::vector<Fel> values;
};

inline Codeword encode(const CodeParams& params, std::span<const Fel> message) {
  if (message.size() > params.k) {
    throw DegreeError("message has " + std::to_string(message.size()) + " coefficients, code dimension is " +
                      std::to_string(params.k));
  }
  const auto& tw = params.tower;
  Codeword cw;
  cw.message = std::vector<Fel>(message.begin(), message.end());
  cw.symbols.reserve(params.n);
  for (std::size_t j = 0; j < params.n; ++j) {
    const Fel x = params.point(j);
    Fel acc = tw.zero();
    for (std::size_t i = message.size(); i-- > 0;) acc = tw.add(tw.mul(acc, x), message[i]);
    cw.symbols.push_back(acc);
  }
  return cw;
}

/// Value of p_{u,a} at x.
inline Fel check_value(const FieldTower& tw, Fel u, Fel alpha, Fel x) {
  if (x == alpha) return u;
  const Fel d = tw.sub(x, alpha);
  return tw.div(tw.trace(tw.mul(u, d)), d);
}

inline CheckVector check_vector(const CodeParams& params, Fel u, Fel alpha) {
  if (u.is_zero()) throw DegenerateInput("check multiplier must be nonzero");
  CheckVector chk{u, alpha, {}};
  chk.values.reserve(params.n);
  for (std::size_t j = 0; j < params.n; ++j) chk.values.push_back(check_value(params.tower, u, alpha, params.point(j)));
  return chk;
}

inline bool verify_dual(const CodeParams& params, const CheckVector& chk, const Codeword& cw) {
  if (chk.values.size() != params.n || cw.symbols.size() != params.n) {
    throw ShapeError("check and codeword lengths must both equal n");
  }
  const auto& tw = params.tower;
  Fel acc = tw.zero();
  for (std::size_t j = 0; j < params.n; ++j) acc = tw.add(acc, tw.mul(chk.values[j], cw.symbols[j]));
  return acc.is_zero();
}

/// Coefficients of the dual codeword supported exactly on `support` (k+1 points):
/// y_b = 1 / prod_{c in support, c != b} (b - c).
inline std::vector<Fel> dual_on_support(const FieldTower& tw, std::span<const Fel> support) {
  std::vector<Fel> y;
  y.reserve(support.size());
  for (const Fel b : support) {
    Fel prod = tw.one();
    for (const Fel c : support) {
      if (c != b) prod = tw.mul(prod, tw.sub(b, c));
    }
    y.push_back(tw.inv(prod));
  }
  return y;
}

/// Support used by the naive repair of `target`: the target followed by the
/// first k positions that are neither the target nor in `excluded`.
inline std::vector<std::size_t> naive_support(const CodeParams& params, std::size_t target,
                                              std::span<const std::size_t> excluded) {
  std::vector<std::size_t> sup{target};
  for (std::size_t j = 0; j < params.n && sup.size() < params.k + 1; ++j) {
    if (j == target) continue;
    bool skip = false;
    for (auto e : excluded) skip = skip || e == j;
    if (!skip) sup.push_back(j);
  }
  if (sup.size() != params.k + 1) throw PatternError("not enough surviving positions for naive repair");
  return sup;
}

/// Recovers symbol `target` from k full symbols on `support` (target first).
inline Fel naive_recover(const CodeParams& params, std::span<const std::size_t> support,
                         const std::vector<std::optional<Fel>>& known) {
  const auto& tw = params.tower;
  std::vector<Fel> pts;
  for (auto j : support) pts.push_back(params.point(j));
  const auto y = dual_on_support(tw, pts);
  Fel acc = tw.zero();
  for (std::size_t i = 1; i < support.size(); ++i) acc = tw.add(acc, tw.mul(y[i], known[support[i]].value()));
  return tw.neg(tw.div(acc, y[0]));
}

struct NaiveRepair {
  Fel value;
  std::size_t bandwidth = 0;
  std::vector<std::size_t> sources;
};

/// Classical repair of one erased position from k full symbols.
inline NaiveRepair naive_repair(const CodeParams& params, const std::vector<std::optional<Fel>>& symbols) {
  if (symbols.size() != params.n) throw ShapeError("codeword length must equal n");
  std::vector<std::size_t> erased;
  for (std::size_t j = 0; j < params.n; ++j) {
    if (!symbols[j]) erased.push_back(j);
  }
  if (erased.size() != 1) throw PatternError("naive repair needs exactly one erasure");
  const auto sup = naive_support(params, erased[0], {});
  NaiveRepair out;
  out.value = naive_recover(params, sup, symbols);
  out.sources.assign(sup.begin() + 1, sup.end());
  out.bandwidth = params.k * params.tower.t();
  return out;
}

inline void write_codeword(std::ostream& os, const FieldTower& tw, const Codeword& cw) {
  for (std::size_t j = 0; j < cw.symbols.size(); ++j) os << j << ' ' << tw.format(cw.symbols[j]) << '\n';
}

inline Codeword read_codeword(std::istream& is, const FieldTower& tw) {
  Codeword cw;
  std::string line;
  std::size_t expect = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t idx = 0;
    std::string elem;
    if (!(ls >> idx >> elem) || idx != expect) throw ParseError("bad codeword line '" + line + "'");
    cw.symbols.push_back(tw.parse(elem));
    ++expect;
  }
  return cw;
}

}  // namespace trace_repair
