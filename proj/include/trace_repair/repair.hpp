// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "trace_repair/errors.hpp"
#include "trace_repair/field.hpp"
#include "trace_repair/repair_types.hpp"
#include "trace_repair/rs_code.hpp"
#include "trace_repair/subspace.hpp"

namespace trace_repair {

/// Tr(symbol / (alpha - center)): the one sub-symbol a surviving node at
/// `alpha` sends toward repairing the symbol at `center`.
inline Bel helping_trace(const FieldTower& tw, Fel symbol, Fel alpha, Fel center) {
  if (alpha == center) throw DegenerateInput("helping trace needs alpha != center");
  return tw.trace(tw.div(symbol, tw.sub(alpha, center)));
}

/// The trace-dual of the power basis. Tr(u_i a) is then the i-th power-basis
/// coordinate of a, so each trace reads off one sub-symbol of the lost symbol.
inline std::vector<Fel> gw_basis(const FieldTower& tw) {
  const auto pb = tw.power_basis();
  return *dual_basis(tw, pb).dual;
}

/// (b - a)/(b - c), (c - b)/(c - a), (a - c)/(a - b).
inline std::array<Fel, 3> triple_ratios(const FieldTower& tw, Fel a, Fel b, Fel c) {
  return {tw.div(tw.sub(b, a), tw.sub(b, c)), tw.div(tw.sub(c, b), tw.sub(c, a)), tw.div(tw.sub(a, c), tw.sub(a, b))};
}

inline bool is_correctable_triple(const FieldTower& tw, Fel a, Fel b, Fel c) {
  if (a == b || b == c || a == c) throw DegenerateInput("triple must have distinct points");
  for (const Fel r : triple_ratios(tw, a, b, c)) {
    if (tw.trace(r).is_zero()) return true;
  }
  return false;
}

enum class Mode { Central, Distributed };

/// Bookkeeping shared by every scheme: who knows which traces of which lost
/// symbol, what was downloaded or exchanged, and the repair equations used.
///
/// In central mode a single center downloads everything. In distributed mode
/// the replacement for pattern index i only ever sees data sent to it.
class RepairSession {
 public:
  struct Prepared {
    CheckRecord rec;
  };

  RepairSession(const CodeParams& params, const ErasedCodeword& ew, Mode mode, std::string scheme)
      : params_(params), tw_(params.tower), ew_(ew), mode_(mode) {
    result_.scheme = std::move(scheme);
    result_.pattern = ew.pattern();
    known_.resize(ew.pattern().size());
    restored_.resize(ew.pattern().size());
  }

  const FieldTower& tower() const { return tw_; }
  std::size_t erased_count() const { return ew_.pattern().size(); }
  std::size_t position(std::size_t i) const { return ew_.pattern()[i]; }
  Fel point_of(std::size_t i) const { return params_.point(position(i)); }
  Endpoint dest(std::size_t i) const { return mode_ == Mode::Central ? Endpoint::center() : Endpoint::replacement(i); }

  void note(std::string s) { result_.transcript.notes.push_back(std::move(s)); }

  /// Downloads one helping trace toward target i from every available position.
  void prefetch(std::size_t i) {
    for (std::size_t pos = 0; pos < params_.n; ++pos) {
      if (pos == position(i) || unrecovered(pos)) continue;
      helping(i, pos, tw_.one());
    }
  }

  /// Tr(sigma f(pos) / (pos - target)) as seen by the destination of target i.
  std::size_t helping(std::size_t i, std::size_t pos, Fel sigma) {
    const auto key = std::make_tuple(i, pos, sigma.value);
    if (auto it = helping_cache_.find(key); it != helping_cache_.end()) return it->second;
    const Fel x = params_.point(pos);
    Atom a;
    a.from = source_of(pos);
    a.to = dest(i);
    a.kind = sigma == tw_.one() ? "helping" : "extra";
    a.position = pos;
    a.target = point_of(i);
    a.scale = sigma;
    a.value = helping_trace(tw_, tw_.mul(sigma, symbol_at(pos)), x, point_of(i));
    const std::size_t id = add_atom(std::move(a), !held_by(pos, dest(i)));
    helping_cache_.emplace(key, id);
    return id;
  }

  /// The center (or replacement 0 for a single erasure) fetches a full symbol.
  void download_symbol(std::size_t pos, Endpoint to) {
    result_.ledger.add(Transfer{Endpoint::node(pos), to, tw_.t(), "symbol"});
    held_.insert(pos);
  }

  void restore(std::size_t i, Fel value) { restored_[i] = value; }

  /// Traced repair equation of the check sigma * p_{u, point_of(i)}.
  Prepared prepare(const std::string& name, int round, std::size_t i, Fel u, Fel sigma) {
    CheckRecord rec;
    rec.name = name;
    rec.round = round;
    rec.target = i;
    rec.element = tw_.mul(sigma, u);
    rec.scale = sigma;
    rec.coefficients.assign(params_.n, tw_.zero());
    const Fel c = point_of(i);
    Bel rhs = tw_.zero();
    LinearForm form;
    for (std::size_t pos = 0; pos < params_.n; ++pos) {
      if (pos == position(i) || unrecovered(pos)) continue;
      const Bel coef = tw_.trace(tw_.mul(u, tw_.sub(params_.point(pos), c)));
      if (coef.is_zero()) continue;
      const std::size_t a = helping(i, pos, sigma);
      const Bel nc = tw_.neg(coef);
      rec.coefficients[pos] = nc;
      rhs = tw_.add(rhs, tw_.mul(nc, atoms()[a].value));
      axpy(tw_, form, nc, LinearForm{{a, tw_.one()}});
    }
    Bel trace = rhs;
    for (std::size_t j = 0; j < erased_count(); ++j) {
      if (j == i || restored_[j]) continue;
      const Fel d = tw_.sub(point_of(j), c);
      const Bel cp = tw_.trace(tw_.mul(u, d));
      if (cp.is_zero()) continue;
      Cancellation x;
      x.interferer = j;
      x.check_value = tw_.div(tw_.mul(sigma, cp), d);
      LinearForm term;
      if (mode_ == Mode::Central) {
        auto der = derive(j, x.check_value);
        if (!der) throw Error("check " + name + ": interfering trace is not determined by known traces");
        x.over = known_[j].elements;
        x.lambdas = std::move(der->lambdas);
        x.value = der->value;
        term = std::move(der->form);
      } else {
        if (sigma != tw_.one()) throw Error("scaled checks cannot cancel through an exchange");
        const std::size_t g = exchange(j, i);
        x.exchange_atom = g;
        x.multiplier = cp;
        x.value = tw_.mul(cp, atoms()[g].value);
        x.over = known_[j].elements;
        x.lambdas = exchange_info_.at(g).first;
        x.sender_form = exchange_info_.at(g).second;
        term = LinearForm{{g, cp}};
      }
      trace = tw_.sub(trace, x.value);
      axpy(tw_, form, tw_.neg(tw_.one()), term);
      rec.cancellations.push_back(std::move(x));
    }
    rec.rhs = rhs;
    rec.trace = trace;
    rec.form = std::move(form);
    return Prepared{std::move(rec)};
  }

  void commit(Prepared p) {
    auto& k = known_[p.rec.target];
    k.elements.push_back(p.rec.element);
    k.values.push_back(p.rec.trace);
    k.forms.push_back(p.rec.form);
    result_.transcript.checks.push_back(std::move(p.rec));
  }

  void apply(const std::string& name, int round, std::size_t i, Fel u) { commit(prepare(name, round, i, u, tw_.one())); }
  void apply(const std::string& name, int round, std::size_t i, Fel u, Fel sigma) {
    commit(prepare(name, round, i, u, sigma));
  }

  struct Derived {
    std::vector<Bel> lambdas;
    Bel value;
    LinearForm form;
  };

  /// Tr(x f(target i)) from the traces already known for target i.
  std::optional<Derived> derive(std::size_t i, Fel x) const {
    const auto& k = known_[i];
    auto lam = express_in_span(tw_, x, k.elements);
    if (!lam) return std::nullopt;
    Derived d{*lam, tw_.zero(), {}};
    for (std::size_t l = 0; l < lam->size(); ++l) {
      d.value = tw_.add(d.value, tw_.mul((*lam)[l], k.values[l]));
      axpy(tw_, d.form, (*lam)[l], k.forms[l]);
    }
    return d;
  }

  /// Rebuilds the symbol at target i from t independent known traces.
  Fel recover(std::size_t i) {
    const auto& k = known_[i];
    std::vector<Fel> sel;
    std::vector<Bel> vals;
    for (std::size_t l = 0; l < k.elements.size() && sel.size() < tw_.t(); ++l) {
      sel.push_back(k.elements[l]);
      if (rank(tw_, sel) == sel.size()) {
        vals.push_back(k.values[l]);
      } else {
        sel.pop_back();
      }
    }
    if (sel.size() != tw_.t()) {
      throw Error("only " + std::to_string(sel.size()) + " independent traces known for position " +
                  std::to_string(position(i)));
    }
    const auto dual = *dual_basis(tw_, sel).dual;
    Fel v = tw_.zero();
    for (std::size_t l = 0; l < sel.size(); ++l) v = tw_.add(v, tw_.mul(vals[l], dual[l]));
    restored_[i] = v;
    return v;
  }

  const std::vector<Atom>& atoms() const { return result_.transcript.atoms; }
  const std::vector<Fel>& known_elements(std::size_t i) const { return known_[i].elements; }
  const BandwidthLedger& ledger() const { return result_.ledger; }

  RepairResult finish() {
    result_.recovered.clear();
    for (std::size_t i = 0; i < erased_count(); ++i) {
      if (!restored_[i]) throw Error("position " + std::to_string(position(i)) + " was not recovered");
      result_.recovered.push_back(*restored_[i]);
    }
    return std::move(result_);
  }

  RepairResult& result() { return result_; }

 private:
  struct Knowledge {
    std::vector<Fel> elements;
    std::vector<Bel> values;
    std::vector<LinearForm> forms;
  };

  std::optional<std::size_t> pattern_index(std::size_t pos) const {
    for (std::size_t i = 0; i < erased_count(); ++i) {
      if (position(i) == pos) return i;
    }
    return std::nullopt;
  }

  bool unrecovered(std::size_t pos) const {
    const auto i = pattern_index(pos);
    return i && !restored_[*i];
  }

  Fel symbol_at(std::size_t pos) const {
    if (const auto i = pattern_index(pos)) {
      if (!restored_[*i]) throw std::logic_error("erased position read before recovery");
      return *restored_[*i];
    }
    return ew_.symbol(pos);
  }

  Endpoint source_of(std::size_t pos) const {
    if (const auto i = pattern_index(pos)) return mode_ == Mode::Central ? Endpoint::center() : Endpoint::replacement(*i);
    return Endpoint::node(pos);
  }

  bool held_by(std::size_t pos, const Endpoint& to) const {
    if (held_.count(pos)) return true;
    return source_of(pos) == to;
  }

  std::size_t add_atom(Atom a, bool paid) {
    if (paid) {
      a.transfer = result_.ledger.transfers().size();
      result_.ledger.add(Transfer{a.from, a.to, 1, a.kind});
    }
    result_.transcript.atoms.push_back(std::move(a));
    return result_.transcript.atoms.size() - 1;
  }

  /// Replacement j sends Tr(f(e_j) / (e_j - e_i)) to replacement i.
  std::size_t exchange(std::size_t j, std::size_t i) {
    const auto key = std::make_pair(j, i);
    if (auto it = exchange_cache_.find(key); it != exchange_cache_.end()) return it->second;
    const Fel x = tw_.inv(tw_.sub(point_of(j), point_of(i)));
    auto der = derive(j, x);
    if (!der) {
      throw Error("replacement " + std::to_string(j) + " cannot form the sub-symbol requested by replacement " +
                  std::to_string(i));
    }
    Atom a;
    a.from = Endpoint::replacement(j);
    a.to = Endpoint::replacement(i);
    a.kind = "exchange";
    a.position = position(j);
    a.target = point_of(i);
    a.scale = tw_.one();
    a.value = der->value;
    const std::size_t id = add_atom(std::move(a), true);
    exchange_cache_.emplace(key, id);
    exchange_info_.emplace(id, std::make_pair(std::move(der->lambdas), std::move(der->form)));
    return id;
  }

  const CodeParams& params_;
  FieldTower tw_;
  const ErasedCodeword& ew_;
  Mode mode_;
  RepairResult result_;
  std::vector<Knowledge> known_;
  std::vector<std::optional<Fel>> restored_;
  std::set<std::size_t> held_;
  std::map<std::tuple<std::size_t, std::size_t, std::uint32_t>, std::size_t> helping_cache_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> exchange_cache_;
  std::map<std::size_t, std::pair<std::vector<Bel>, LinearForm>> exchange_info_;
};

// ---------------------------------------------------------------------------
// Schemes

namespace detail {

inline void require_size(const ErasedCodeword& ew, std::size_t e, const char* scheme) {
  if (ew.pattern().size() != e) {
    throw PatternError(std::string(scheme) + " needs exactly " + std::to_string(e) + " erasure" + (e == 1 ? "" : "s"));
  }
}

inline void require_divisible(const FieldTower& tw, const char* scheme) {
  if (!tw.char_divides_t()) {
    throw DivisibilityError(std::string(scheme) + " needs t divisible by the characteristic (p=" +
                            std::to_string(tw.characteristic()) + ", t=" + std::to_string(tw.t()) + ")");
  }
}

inline std::string check_name(std::size_t target, std::size_t index) {
  static constexpr char kLetters[] = {'p', 'q', 'r'};
  return std::string(1, kLetters[target]) + std::to_string(index);
}

/// Single-erasure trace repair of pattern index i inside an existing session.
inline void run_gw(RepairSession& s, std::size_t i, int round) {
  s.prefetch(i);
  const auto u = gw_basis(s.tower());
  for (std::size_t l = 0; l < u.size(); ++l) s.apply(check_name(i, l + 1), round, i, u[l]);
  s.recover(i);
}

/// Two lost symbols at pattern indices 0 and 1, both repaired from t-1 traces
/// of each plus one check per symbol whose interference is cancelled.
inline void run_two(RepairSession& s) {
  const auto& tw = s.tower();
  const std::size_t t = tw.t();
  s.prefetch(0);
  s.prefetch(1);
  const auto root = root_space(tw, s.point_of(0), s.point_of(1));
  const auto u = complete_basis(tw, root).elements;
  for (std::size_t l = 0; l + 1 < t; ++l) s.apply(check_name(0, l + 1), 1, 0, u[l]);
  for (std::size_t l = 0; l + 1 < t; ++l) s.apply(check_name(1, l + 1), 1, 1, u[l]);
  auto pt = s.prepare(check_name(0, t), 2, 0, u[t - 1], tw.one());
  auto qt = s.prepare(check_name(1, t), 2, 1, u[t - 1], tw.one());
  s.commit(std::move(pt));
  s.commit(std::move(qt));
  s.recover(0);
  s.recover(1);
}

/// First enumerated element of `target` outside `base`.
inline Fel extend_into(const FieldTower& tw, const Subspace& target, const Subspace& base) {
  for (std::size_t pos = 1; pos < tw.size(); ++pos) {
    const Fel x = tw.element_at(pos);
    if (target.contains(x) && !base.contains(x)) return x;
  }
  throw RankError("root space does not extend the triple intersection");
}

}  // namespace detail

inline RepairResult repair_single_gw(const CodeParams& params, const ErasedCodeword& ew) {
  detail::require_size(ew, 1, "gw");
  RepairSession s(params, ew, Mode::Distributed, "gw");
  detail::run_gw(s, 0, 1);
  return s.finish();
}

inline RepairResult repair_two_distributed_I(const CodeParams& params, const ErasedCodeword& ew) {
  detail::require_size(ew, 2, "dist1");
  const auto& tw = params.tower;
  const std::size_t t = tw.t();
  RepairSession s(params, ew, Mode::Distributed, "dist1");
  s.prefetch(0);
  const auto u = complete_basis(tw, root_space(tw, s.point_of(0), s.point_of(1))).elements;
  for (std::size_t l = 0; l + 1 < t; ++l) s.apply(detail::check_name(0, l + 1), 1, 0, u[l]);
  // (u_t / u_1) p_1: still excludes alpha-bar, evaluates to u_t at alpha*.
  s.apply(detail::check_name(0, t), 2, 0, u[0], tw.div(u[t - 1], u[0]));
  s.recover(0);
  detail::run_gw(s, 1, 3);
  return s.finish();
}

inline RepairResult repair_two_centralized(const CodeParams& params, const ErasedCodeword& ew) {
  detail::require_size(ew, 2, "central2");
  detail::require_divisible(params.tower, "central2");
  RepairSession s(params, ew, Mode::Central, "central2");
  detail::run_two(s);
  return s.finish();
}

inline RepairResult repair_two_distributed_II(const CodeParams& params, const ErasedCodeword& ew) {
  detail::require_size(ew, 2, "dist2");
  detail::require_divisible(params.tower, "dist2");
  RepairSession s(params, ew, Mode::Distributed, "dist2");
  detail::run_two(s);
  return s.finish();
}

/// s, the shared basis, the Round II extension elements (only when s = t-2),
/// the Round III elements (only when s = t-1) and the activation choice.
inline ThreeErasureContext three_erasure_context(const FieldTower& tw, Fel e0, Fel e1, Fel e2) {
  ThreeErasureContext ctx;
  const auto shared = triple_root_space(tw, e0, e1, e2);
  ctx.s = shared.dim();
  ctx.shared_basis = shared.basis();
  const auto ratios = triple_ratios(tw, e0, e1, e2);
  for (int r = 0; r < 3; ++r) {
    if (tw.trace(ratios[r]).is_zero()) {
      ctx.activation = r + 1;
      ctx.activation_ratio = ratios[r];
      break;
    }
  }
  if (ctx.s + 2 == tw.t()) {
    const auto k01 = root_space(tw, e0, e1);
    const auto k12 = root_space(tw, e1, e2);
    const auto k20 = root_space(tw, e2, e0);
    ctx.u_s1 = detail::extend_into(tw, k01, shared);
    ctx.u_s2 = detail::extend_into(tw, k20, shared);
    ctx.v_s1 = detail::extend_into(tw, k12, shared);
    ctx.v_s2 = detail::extend_into(tw, k01, shared);
    ctx.w_s1 = detail::extend_into(tw, k20, shared);
    ctx.w_s2 = detail::extend_into(tw, k12, shared);
    if (ctx.activation) {
      const std::string a = std::to_string(ctx.s + 1);
      const std::string b = std::to_string(ctx.s + 2);
      switch (*ctx.activation) {
        case 1:
          ctx.cycle_one = {"r" + a, "p" + a, "q" + a};
          ctx.cycle_two = {"q" + b, "p" + b, "r" + b};
          break;
        case 2:
          ctx.cycle_one = {"p" + a, "q" + a, "r" + a};
          ctx.cycle_two = {"r" + b, "q" + b, "p" + b};
          break;
        default:
          ctx.cycle_one = {"q" + a, "r" + a, "p" + a};
          ctx.cycle_two = {"p" + b, "r" + b, "q" + b};
          break;
      }
    }
  } else {
    const Fel last = complete_basis(tw, shared).elements.back();
    ctx.u_s3 = last;
    ctx.v_s3 = last;
    ctx.w_s3 = last;
  }
  return ctx;
}

namespace detail {

inline RepairResult run_three(const CodeParams& params, const ErasedCodeword& ew, Mode mode, const char* scheme) {
  require_size(ew, 3, scheme);
  const auto& tw = params.tower;
  require_divisible(tw, scheme);
  RepairSession s(params, ew, mode, scheme);
  const Fel e0 = s.point_of(0), e1 = s.point_of(1), e2 = s.point_of(2);
  if (!is_correctable_triple(tw, e0, e1, e2)) {
    throw NotCorrectable("no pairwise-difference ratio of the erased points has zero trace");
  }
  auto ctx = three_erasure_context(tw, e0, e1, e2);
  for (std::size_t i = 0; i < 3; ++i) s.prefetch(i);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t l = 0; l < ctx.s; ++l) s.apply(check_name(i, l + 1), 1, i, ctx.shared_basis[l]);
  }
  if (ctx.s + 2 == tw.t()) {
    const std::string a = std::to_string(ctx.s + 1);
    const std::string b = std::to_string(ctx.s + 2);
    const std::map<std::string, std::pair<std::size_t, Fel>> checks{
        {"p" + a, {0, *ctx.u_s1}}, {"p" + b, {0, *ctx.u_s2}}, {"q" + a, {1, *ctx.v_s1}},
        {"q" + b, {1, *ctx.v_s2}}, {"r" + a, {2, *ctx.w_s1}}, {"r" + b, {2, *ctx.w_s2}}};
    for (const auto* cycle : {&ctx.cycle_one, &ctx.cycle_two}) {
      for (const auto& name : *cycle) {
        const auto& [target, u] = checks.at(name);
        s.apply(name, 2, target, u);
      }
    }
  } else {
    s.note("triple root space has dimension t-1; round II adds nothing");
    const std::string c = std::to_string(ctx.s + 3);
    const std::array<Fel, 3> last{*ctx.u_s3, *ctx.v_s3, *ctx.w_s3};
    std::vector<RepairSession::Prepared> prep;
    for (std::size_t i = 0; i < 3; ++i) prep.push_back(s.prepare(check_name(i, ctx.s + 3), 3, i, last[i], tw.one()));
    for (auto& p : prep) s.commit(std::move(p));
  }
  for (std::size_t i = 0; i < 3; ++i) s.recover(i);
  auto res = s.finish();
  res.three = std::move(ctx);
  return res;
}

}  // namespace detail

inline RepairResult repair_three_centralized(const CodeParams& params, const ErasedCodeword& ew) {
  return detail::run_three(params, ew, Mode::Central, "central3");
}

inline RepairResult repair_three_distributed(const CodeParams& params, const ErasedCodeword& ew) {
  return detail::run_three(params, ew, Mode::Distributed, "dist3");
}

/// Classical repair: k full symbols. One erasure goes to its replacement,
/// more go to a center that rebuilds all of them.
inline RepairResult repair_naive(const CodeParams& params, const ErasedCodeword& ew) {
  const auto& pat = ew.pattern();
  RepairSession s(params, ew, pat.size() == 1 ? Mode::Distributed : Mode::Central, "naive");
  const Endpoint to = s.dest(0);
  std::vector<std::size_t> sources;
  for (std::size_t j = 0; j < params.n && sources.size() < params.k; ++j) {
    if (!ew.is_erased(j)) sources.push_back(j);
  }
  for (auto j : sources) s.download_symbol(j, to);
  for (std::size_t i = 0; i < pat.size(); ++i) {
    std::vector<std::size_t> sup{pat[i]};
    sup.insert(sup.end(), sources.begin(), sources.end());
    s.restore(i, naive_recover(params, sup, ew.view()));
  }
  return s.finish();
}

/// Three erasures failing the correctability test: naive repair of alpha'
/// at the center, then the two-erasure centralized scheme. Symbols the center
/// already holds cost nothing further.
inline RepairResult repair_three_fallback(const CodeParams& params, const ErasedCodeword& ew) {
  detail::require_size(ew, 3, "fallback");
  detail::require_divisible(params.tower, "fallback");
  const auto& pat = ew.pattern();
  RepairSession s(params, ew, Mode::Central, "central3");
  s.note("fallback: naive repair of the third symbol, then two-erasure centralized repair");
  const std::vector<std::size_t> excluded{pat[0], pat[1]};
  const auto sup = naive_support(params, pat[2], excluded);
  for (std::size_t l = 1; l < sup.size(); ++l) s.download_symbol(sup[l], Endpoint::center());
  s.restore(2, naive_recover(params, sup, ew.view()));
  detail::run_two(s);
  auto res = s.finish();
  res.fallback = true;
  return res;
}

inline const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"naive", "gw", "dist1", "central2", "dist2", "central3", "dist3", "auto"};
  return names;
}

/// Dispatches by scheme name. "auto" picks by erasure count and conditions and
/// falls back for non-correctable triples; named schemes throw instead.
inline RepairResult repair(const CodeParams& params, const ErasedCodeword& ew, const std::string& scheme) {
  const std::size_t e = ew.pattern().size();
  const bool div = params.tower.char_divides_t();
  if (scheme == "naive") return repair_naive(params, ew);
  if (scheme == "gw") return repair_single_gw(params, ew);
  if (scheme == "dist1") return repair_two_distributed_I(params, ew);
  if (scheme == "central2") return repair_two_centralized(params, ew);
  if (scheme == "dist2") return repair_two_distributed_II(params, ew);
  if (scheme == "central3") return repair_three_centralized(params, ew);
  if (scheme == "dist3") return repair_three_distributed(params, ew);
  if (scheme == "auto") {
    if (e == 1) return repair_single_gw(params, ew);
    if (e == 2) return div ? repair_two_centralized(params, ew) : repair_two_distributed_I(params, ew);
    if (!div) return repair_naive(params, ew);
    const auto& tw = params.tower;
    if (is_correctable_triple(tw, params.point(ew.pattern()[0]), params.point(ew.pattern()[1]),
                              params.point(ew.pattern()[2]))) {
      return repair_three_centralized(params, ew);
    }
    return repair_three_fallback(params, ew);
  }
  throw PatternError("unknown scheme '" + scheme + "'");
}

/// Closed-form bandwidth of a scheme's result, in sub-symbols.
inline std::size_t expected_bandwidth(const RepairResult& r, const CodeParams& params) {
  const std::size_t n = params.n, k = params.k, t = params.tower.t();
  const std::size_t e = r.pattern.size();
  if (r.fallback) return k * t + 2 * (n - 3 - k);
  if (r.scheme == "naive") return k * t;
  if (r.scheme == "gw") return n - 1;
  if (r.scheme == "dist1") return (n - 2 + k) + (n - 1);
  if (r.scheme == "central2") return 2 * (n - 2);
  if (r.scheme == "dist2") return 2 * (n - 1);
  if (r.scheme == "central3") return 3 * (n - 3);
  if (r.scheme == "dist3") return 3 * (n - 1);
  throw PatternError("no closed form for scheme '" + r.scheme + "' with " + std::to_string(e) + " erasures");
}

}  // namespace trace_repair
