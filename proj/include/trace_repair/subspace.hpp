// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "trace_repair/errors.hpp"
#include "trace_repair/field.hpp"

namespace trace_repair {

namespace detail {

using BVec = std::vector<Bel>;
using BMat = std::vector<BVec>;  // row-major

/// In-place reduced row echelon form over B. Pivots are scanned left to right
/// and normalised to 1. Returns the pivot column of each nonzero row; zero rows
/// are dropped from `rows`.
inline std::vector<std::size_t> rref(const FieldTower& tw, BMat& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const Fel inv = tw.inv(rows[r][c]);
    for (auto& v : rows[r]) v = tw.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Fel f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = tw.sub(rows[i][j], tw.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Null space of `m` (rows x ncols) as a list of column vectors, one per free column.
inline BMat null_space(const FieldTower& tw, BMat m, std::size_t ncols) {
  const auto pivots = rref(tw, m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  BMat out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    BVec v(ncols, tw.zero());
    v[free] = tw.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = tw.neg(m[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Solves sum_j x_j * cols_j = rhs, free variables set to zero.
inline std::optional<BVec> solve_columns(const FieldTower& tw, const BMat& cols, const BVec& rhs) {
  const std::size_t g = cols.size();
  const std::size_t dim = rhs.size();
  BMat aug(dim, BVec(g + 1, tw.zero()));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t j = 0; j < g; ++j) aug[r][j] = cols[j][r];
    aug[r][g] = rhs[r];
  }
  const auto pivots = rref(tw, aug, g + 1);
  BVec x(g, tw.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == g) return std::nullopt;
    x[pivots[r]] = aug[r][g];
  }
  return x;
}

}  // namespace detail

/// A B-linear subspace of F, held in canonical reduced form.
///
/// Rows are the reduced echelon form of the generators' power-basis
/// coordinates, so equal subspaces have identical `basis()` sequences.
class Subspace {
 public:
  Subspace(FieldTower tw, std::span<const Fel> generators) : tw_(std::move(tw)) {
    for (const Fel g : generators) rows_.push_back(tw_.b_coordinates(g));
    detail::rref(tw_, rows_, tw_.t());
  }

  static Subspace zero(const FieldTower& tw) { return Subspace(tw, std::span<const Fel>{}); }

  const FieldTower& tower() const { return tw_; }
  std::size_t dim() const { return rows_.size(); }

  std::vector<Fel> basis() const {
    std::vector<Fel> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(tw_.from_b_coordinates(r));
    return out;
  }

  bool contains(Fel x) const {
    auto v = tw_.b_coordinates(x);
    for (const auto& row : rows_) {
      std::size_t c = 0;
      while (row[c].is_zero()) ++c;
      if (v[c].is_zero()) continue;
      const Fel f = v[c];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = tw_.sub(v[j], tw_.mul(f, row[j]));
    }
    for (const auto& e : v) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  /// Every member, in lexicographic order of the coefficient tuple. Only for small spaces.
  std::vector<Fel> elements() const {
    const auto b = basis();
    std::vector<Fel> out{tw_.zero()};
    const std::size_t q = tw_.subfield_size();
    std::vector<Fel> subfield;
    for (const Fel a : tw_.enumerate()) {
      if (tw_.is_subfield_element(a)) subfield.push_back(a);
    }
    for (const Fel v : b) {
      std::vector<Fel> next;
      next.reserve(out.size() * q);
      for (const Fel base : out) {
        for (const Fel c : subfield) next.push_back(tw_.add(base, tw_.mul(c, v)));
      }
      out = std::move(next);
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.rows_ == b.rows_; }

 private:
  FieldTower tw_;
  detail::BMat rows_;
};

/// A sequence u_1..u_t of F together with, once computed, its trace-dual basis.
struct TraceBasis {
  std::vector<Fel> elements;
  std::optional<std::vector<Fel>> dual;
};

/// Rank over B of a list of elements.
inline std::size_t rank(const FieldTower& tw, std::span<const Fel> elems) {
  return Subspace(tw, elems).dim();
}

/// Coordinates of `a` with respect to a full-rank basis: sum c_i basis_i = a.
inline std::vector<Bel> b_coords(const FieldTower& tw, Fel a, std::span<const Fel> basis) {
  if (basis.size() != tw.t() || rank(tw, basis) != tw.t()) throw RankError("basis does not have rank t");
  detail::BMat cols;
  for (const Fel u : basis) cols.push_back(tw.b_coordinates(u));
  return *detail::solve_columns(tw, cols, tw.b_coordinates(a));
}

inline std::vector<Bel> b_coords(const FieldTower& tw, Fel a, const TraceBasis& basis) {
  return b_coords(tw, a, std::span<const Fel>(basis.elements));
}

/// Coefficients c with sum c_i gens_i = x, or nothing when x is outside the span.
/// Dependent generators are allowed; their coefficients are left at zero.
inline std::optional<std::vector<Bel>> express_in_span(const FieldTower& tw, Fel x, std::span<const Fel> gens) {
  detail::BMat cols;
  for (const Fel g : gens) cols.push_back(tw.b_coordinates(g));
  return detail::solve_columns(tw, cols, tw.b_coordinates(x));
}

/// Null space of the functionals z -> Tr(z * a_j).
inline Subspace trace_annihilator(const FieldTower& tw, std::span<const Fel> multipliers) {
  const auto& pb = tw.power_basis();
  detail::BMat m;
  for (const Fel a : multipliers) {
    detail::BVec row;
    for (const Fel b : pb) row.push_back(tw.trace(tw.mul(b, a)));
    m.push_back(std::move(row));
  }
  std::vector<Fel> gens;
  for (const auto& v : detail::null_space(tw, std::move(m), tw.t())) gens.push_back(tw.from_b_coordinates(v));
  return Subspace(tw, gens);
}

/// K = ker Tr, of dimension t - 1.
inline Subspace trace_kernel(const FieldTower& tw) {
  const Fel one = tw.one();
  return trace_annihilator(tw, std::span<const Fel>(&one, 1));
}

/// K_{a,b} = (1/(b - a)) K: the z with Tr(z a) = Tr(z b).
inline Subspace root_space(const FieldTower& tw, Fel a, Fel b) {
  if (a == b) throw DegenerateInput("root space needs two distinct points");
  const Fel scale = tw.inv(tw.sub(b, a));
  std::vector<Fel> gens;
  for (const Fel k : trace_kernel(tw).basis()) gens.push_back(tw.mul(scale, k));
  return Subspace(tw, gens);
}

/// K_{a,b,c}: the z with Tr(z a) = Tr(z b) = Tr(z c).
inline Subspace triple_root_space(const FieldTower& tw, Fel a, Fel b, Fel c) {
  if (a == b || b == c || a == c) throw DegenerateInput("triple root space needs three distinct points");
  const std::vector<Fel> m{tw.sub(b, a), tw.sub(c, b)};
  return trace_annihilator(tw, m);
}

/// Extends an independent list to a basis of F, appending the first enumerated
/// elements that raise the rank.
inline TraceBasis complete_basis(const FieldTower& tw, std::span<const Fel> start) {
  if (rank(tw, start) != start.size()) throw RankError("starting set is not independent over B");
  TraceBasis out;
  out.elements.assign(start.begin(), start.end());
  std::size_t r = start.size();
  for (std::size_t pos = 1; r < tw.t() && pos < tw.size(); ++pos) {
    const Fel x = tw.element_at(pos);
    out.elements.push_back(x);
    if (rank(tw, out.elements) == r + 1) {
      ++r;
    } else {
      out.elements.pop_back();
    }
  }
  return out;
}

inline TraceBasis complete_basis(const FieldTower& tw, const Subspace& s) {
  const auto b = s.basis();
  return complete_basis(tw, std::span<const Fel>(b));
}

/// Fills in the trace-dual: Tr(u_i d_j) = delta_ij.
inline TraceBasis dual_basis(const FieldTower& tw, TraceBasis basis) {
  const std::size_t t = tw.t();
  if (basis.elements.size() != t || rank(tw, basis.elements) != t) throw RankError("basis does not have rank t");
  const auto& pb = tw.power_basis();
  // d_j = sum_l X_lj xi^l with G X = I, G_il = Tr(u_i xi^l).
  std::vector<Fel> dual(t, tw.zero());
  for (std::size_t j = 0; j < t; ++j) {
    detail::BMat cols(t, detail::BVec(t, tw.zero()));
    for (std::size_t l = 0; l < t; ++l) {
      for (std::size_t i = 0; i < t; ++i) cols[l][i] = tw.trace(tw.mul(basis.elements[i], pb[l]));
    }
    detail::BVec e(t, tw.zero());
    e[j] = tw.one();
    const auto x = detail::solve_columns(tw, cols, e);
    if (!x) throw RankError("trace Gram matrix is singular");
    dual[j] = tw.from_b_coordinates(*x);
  }
  basis.dual = std::move(dual);
  return basis;
}

inline TraceBasis dual_basis(const FieldTower& tw, std::span<const Fel> elements) {
  return dual_basis(tw, TraceBasis{{elements.begin(), elements.end()}, std::nullopt});
}

}  // namespace trace_repair
