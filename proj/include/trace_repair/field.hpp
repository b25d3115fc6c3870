// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trace_repair/detail/conway_table.hpp"
#include "trace_repair/detail/gfp_poly.hpp"
#include "trace_repair/errors.hpp"

namespace trace_repair {

/// An element of F = GF(p^(m t)).
///
/// `value` packs the polynomial-basis coordinates as base-p digits: the
/// coefficient of x^j is digit j. Zero is 0 and one is 1.
struct Fel {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(const Fel&, const Fel&) = default;
  constexpr bool is_zero() const { return value == 0; }
};

/// A sub-symbol: an element of F fixed by x -> x^|B|. B lives inside F and
/// shares its arithmetic, so this is the same representation.
using Bel = Fel;

/// The pair (F, B) with B = GF(p^m) and F = GF(p^(m t)), F viewed as B^t.
///
/// Cheap to copy: all tables sit behind a shared immutable block.
class FieldTower {
 public:
  static constexpr std::uint64_t kDefaultMaxField = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kHardMaxField = std::uint64_t{1} << 26;

  FieldTower(std::uint32_t p, std::uint32_t m, std::uint32_t t,
             std::uint64_t max_field = kDefaultMaxField);

  std::uint32_t characteristic() const { return d_->p; }
  std::uint32_t m() const { return d_->m; }
  std::uint32_t t() const { return d_->t; }
  /// Degree of F over GF(p).
  std::uint32_t degree() const { return d_->degree; }
  /// |F|, which is also the code length n.
  std::uint32_t size() const { return d_->n; }
  /// |B|.
  std::uint32_t subfield_size() const { return d_->b_size; }
  /// Monic defining polynomial over GF(p), constant term first.
  std::span<const std::uint32_t> defining_poly() const { return d_->poly; }
  bool char_divides_t() const { return d_->t % d_->p == 0; }

  Fel zero() const { return Fel{0}; }
  Fel one() const { return Fel{1}; }
  /// The primitive element xi, a root of the defining polynomial.
  Fel generator() const { return Fel{d_->exp[1 % (d_->n - 1)]}; }
  /// The prime-field element c mod p.
  Fel scalar(std::uint64_t c) const { return Fel{static_cast<std::uint32_t>(c % d_->p)}; }

  Fel add(Fel a, Fel b) const {
    if (d_->p == 2) return Fel{a.value ^ b.value};
    std::uint32_t x = a.value, y = b.value, out = 0, place = 1;
    const std::uint32_t p = d_->p;
    while (x | y) {
      std::uint32_t s = x % p + y % p;
      if (s >= p) s -= p;
      out += s * place;
      x /= p;
      y /= p;
      place *= p;
    }
    return Fel{out};
  }

  Fel neg(Fel a) const {
    if (d_->p == 2) return a;
    std::uint32_t x = a.value, out = 0, place = 1;
    const std::uint32_t p = d_->p;
    while (x) {
      const std::uint32_t dgt = x % p;
      out += (dgt == 0 ? 0 : p - dgt) * place;
      x /= p;
      place *= p;
    }
    return Fel{out};
  }

  Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }

  Fel mul(Fel a, Fel b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    return Fel{d_->exp[d_->log[a.value] + d_->log[b.value]]};
  }

  Fel inv(Fel a) const {
    if (a.is_zero()) throw DivisionByZero();
    const std::uint32_t l = d_->log[a.value];
    return Fel{d_->exp[l == 0 ? 0 : (d_->n - 1) - l]};
  }

  Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }

  /// Square-and-multiply; negative exponents go through the inverse.
  Fel pow(Fel a, std::int64_t e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Fel r = one();
    auto u = static_cast<std::uint64_t>(e);
    while (u) {
      if (u & 1) r = mul(r, a);
      a = mul(a, a);
      u >>= 1;
    }
    return r;
  }

  /// x -> x^|B|, the generator of Gal(F/B).
  Fel frobenius(Fel a) const { return pow(a, d_->b_size); }

  /// Tr_{F/B}(a) = sum_{i<t} a^(|B|^i), evaluated through its GF(p)-linearity.
  Bel trace(Fel a) const {
    if (d_->p == 2) {
      std::uint32_t acc = 0;
      for (std::uint32_t j = 0, x = a.value; x; ++j, x >>= 1) {
        if (x & 1) acc ^= d_->basis_trace[j].value;
      }
      return Fel{acc};
    }
    Fel acc = zero();
    std::uint32_t x = a.value;
    for (std::uint32_t j = 0; x; ++j, x /= d_->p) {
      const std::uint32_t c = x % d_->p;
      if (c) acc = add(acc, mul(Fel{c}, d_->basis_trace[j]));
    }
    return acc;
  }

  bool is_subfield_element(Fel a) const { return frobenius(a) == a; }

  /// Discrete log base xi. Throws on zero.
  std::uint32_t log(Fel a) const {
    if (a.is_zero()) throw DivisionByZero();
    return d_->log[a.value];
  }

  /// xi^k for any k >= 0.
  Fel exp(std::uint64_t k) const { return Fel{d_->exp[k % (d_->n - 1)]}; }

  /// Canonical enumeration: 0, 1, xi, xi^2, ..., xi^(n-2).
  Fel element_at(std::size_t position) const {
    return position == 0 ? zero() : Fel{d_->exp[position - 1]};
  }
  std::size_t position_of(Fel a) const { return a.is_zero() ? 0 : std::size_t{d_->log[a.value]} + 1; }
  std::vector<Fel> enumerate() const {
    std::vector<Fel> out;
    out.reserve(size());
    for (std::size_t j = 0; j < size(); ++j) out.push_back(element_at(j));
    return out;
  }

  /// Polynomial-basis coordinates over GF(p) (length degree()).
  std::vector<std::uint32_t> digits(Fel a) const {
    std::vector<std::uint32_t> out(d_->degree, 0);
    std::uint32_t x = a.value;
    for (std::uint32_t j = 0; j < d_->degree; ++j, x /= d_->p) out[j] = x % d_->p;
    return out;
  }

  /// Coordinates over B in the power basis {1, xi, ..., xi^(t-1)}.
  std::vector<Bel> b_coordinates(Fel a) const;
  /// Inverse of b_coordinates.
  Fel from_b_coordinates(std::span<const Bel> coords) const;
  /// The power basis {1, xi, ..., xi^(t-1)} of F over B.
  std::span<const Fel> power_basis() const { return d_->power_basis; }

  /// "0", "1" or "x^k".
  std::string format(Fel a) const;
  /// Accepts "0", "1", "x", "x^k" and little-endian "[c0,c1,...]".
  Fel parse(std::string_view text) const;

  /// Human-readable tower name, e.g. "GF(16)/GF(2)".
  std::string name() const {
    return "GF(" + std::to_string(size()) + ")/GF(" + std::to_string(subfield_size()) + ")";
  }

  friend bool operator==(const FieldTower& a, const FieldTower& b) {
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->m == b.d_->m && a.d_->t == b.d_->t &&
                            a.d_->poly == b.d_->poly);
  }

 private:
  struct Data {
    std::uint32_t p = 0, m = 0, t = 0, degree = 0, n = 0, b_size = 0;
    std::vector<std::uint32_t> poly;
    std::vector<std::uint32_t> exp;  // length 2(n-1) so log sums need no reduction
    std::vector<std::uint32_t> log;
    std::vector<Fel> basis_trace;    // Tr(x^j) for the GF(p) polynomial basis
    std::vector<Fel> power_basis;    // xi^i, i < t
    std::vector<Fel> zeta_powers;    // GF(p)-basis of B: zeta^j, j < m
    std::vector<std::vector<std::uint32_t>> coord_inverse;  // GF(p) matrix, degree x degree
  };

  void build_tables();
  void build_coordinates();

  std::shared_ptr<Data> d_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::uint32_t> canonical_polynomial(std::uint32_t p, std::uint32_t degree) {
  if (degree == 1) {
    const auto g = least_primitive_root(p);
    return {static_cast<std::uint32_t>((p - g) % p), 1};
  }
  for (const auto& e : kConwayTable) {
    if (e.p == p && e.degree == degree) {
      return {e.coeffs.begin(), e.coeffs.begin() + degree + 1};
    }
  }
  // Outside the table: least primitive polynomial in packed-coefficient order.
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t code = 1; code < count; ++code) {
    Poly f(degree + 1, 0);
    f[degree] = 1;
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < degree; ++i, c /= p) f[i] = c % p;
    if (f[0] == 0) continue;
    if (is_irreducible(f, p) && is_primitive(f, p)) return {f.begin(), f.end()};
  }
  throw TowerError("no primitive polynomial found for p=" + std::to_string(p) +
                   " degree=" + std::to_string(degree));
}

}  // namespace detail

inline FieldTower::FieldTower(std::uint32_t p, std::uint32_t m, std::uint32_t t,
                              std::uint64_t max_field)
    : d_(std::make_shared<Data>()) {
  if (!detail::is_prime(p)) throw TowerError("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1 || t < 1) throw TowerError("m and t must be at least 1");
  const std::uint64_t cap = std::min(max_field, kHardMaxField);
  std::uint64_t n = 1;
  std::uint64_t b = 1;
  for (std::uint64_t i = 0; i < std::uint64_t{m} * t; ++i) {
    n *= p;
    if (i < m) b *= p;
    if (n > cap) {
      throw TowerError("field size " + std::to_string(p) + "^" + std::to_string(std::uint64_t{m} * t) +
                       " exceeds cap " + std::to_string(cap));
    }
  }
  d_->p = p;
  d_->m = m;
  d_->t = t;
  d_->degree = m * t;
  d_->n = static_cast<std::uint32_t>(n);
  d_->b_size = static_cast<std::uint32_t>(b);
  d_->poly = detail::canonical_polynomial(p, d_->degree);
  detail::Poly f(d_->poly.begin(), d_->poly.end());
  if (!detail::is_irreducible(f, p)) throw TowerError("defining polynomial is reducible");
  build_tables();
  build_coordinates();
}

inline void FieldTower::build_tables() {
  Data& d = *d_;
  const std::uint32_t order = d.n - 1;
  d.exp.assign(2 * std::size_t{order} + 1, 0);
  d.log.assign(d.n, 0);
  std::vector<bool> seen(d.n, false);
  std::vector<std::uint32_t> cur(d.degree, 0);
  cur[0] = 1;
  auto pack = [&] {
    std::uint32_t v = 0;
    for (std::uint32_t j = d.degree; j-- > 0;) v = v * d.p + cur[j];
    return v;
  };
  for (std::uint32_t i = 0; i < order; ++i) {
    const std::uint32_t v = pack();
    if (seen[v]) throw TowerError("defining polynomial is not primitive");
    seen[v] = true;
    d.exp[i] = v;
    d.log[v] = i;
    // multiply by x modulo the monic defining polynomial
    const std::uint64_t top = cur[d.degree - 1];
    for (std::uint32_t j = d.degree; j-- > 1;) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top) {
      for (std::uint32_t j = 0; j < d.degree; ++j) {
        const std::uint64_t sub = top * d.poly[j] % d.p;
        cur[j] = static_cast<std::uint32_t>((cur[j] + d.p - sub) % d.p);
      }
    }
  }
  if (pack() != 1) throw TowerError("defining polynomial is not primitive");
  for (std::uint32_t i = order; i < d.exp.size(); ++i) d.exp[i] = d.exp[i - order];

  // Tr(x^j) straight from the definition.
  d.basis_trace.resize(d.degree);
  std::uint32_t place = 1;
  for (std::uint32_t j = 0; j < d.degree; ++j, place *= d.p) {
    Fel a{place};
    Fel acc = zero();
    for (std::uint32_t i = 0; i < d.t; ++i) {
      acc = add(acc, a);
      a = pow(a, d.b_size);
    }
    d.basis_trace[j] = acc;
  }
}

inline void FieldTower::build_coordinates() {
  Data& d = *d_;
  const std::uint32_t deg = d.degree;
  const std::uint64_t p = d.p;
  const Fel xi = generator();
  d.power_basis.clear();
  for (std::uint32_t i = 0; i < d.t; ++i) d.power_basis.push_back(pow(xi, i));
  const Fel zeta = exp(d.b_size > 1 ? (d.n - 1) / (d.b_size - 1) : 0);
  d.zeta_powers.clear();
  for (std::uint32_t j = 0; j < d.m; ++j) d.zeta_powers.push_back(pow(zeta, j));

  // Columns: GF(p)-digits of xi^i * zeta^j, column index i*m + j.
  std::vector<std::vector<std::uint64_t>> a(deg, std::vector<std::uint64_t>(2 * deg, 0));
  for (std::uint32_t i = 0; i < d.t; ++i) {
    for (std::uint32_t j = 0; j < d.m; ++j) {
      const auto col = digits(mul(d.power_basis[i], d.zeta_powers[j]));
      for (std::uint32_t r = 0; r < deg; ++r) a[r][i * d.m + j] = col[r];
    }
  }
  for (std::uint32_t r = 0; r < deg; ++r) a[r][deg + r] = 1;
  for (std::uint32_t c = 0; c < deg; ++c) {
    std::uint32_t piv = c;
    while (piv < deg && a[piv][c] == 0) ++piv;
    if (piv == deg) throw TowerError("power basis is not a basis over the subfield");
    std::swap(a[piv], a[c]);
    const std::uint64_t inv = detail::inv_mod_prime(a[c][c], p);
    for (auto& v : a[c]) v = v * inv % p;
    for (std::uint32_t r = 0; r < deg; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c];
      for (std::uint32_t k = 0; k < 2 * deg; ++k) a[r][k] = (a[r][k] + (p - f) * a[c][k]) % p;
    }
  }
  d.coord_inverse.assign(deg, std::vector<std::uint32_t>(deg, 0));
  for (std::uint32_t r = 0; r < deg; ++r) {
    for (std::uint32_t k = 0; k < deg; ++k) d.coord_inverse[r][k] = static_cast<std::uint32_t>(a[r][deg + k]);
  }
}

inline std::vector<Bel> FieldTower::b_coordinates(Fel a) const {
  const Data& d = *d_;
  const auto dg = digits(a);
  std::vector<Bel> out(d.t, zero());
  for (std::uint32_t i = 0; i < d.t; ++i) {
    for (std::uint32_t j = 0; j < d.m; ++j) {
      const auto& row = d.coord_inverse[i * d.m + j];
      std::uint64_t e = 0;
      for (std::uint32_t k = 0; k < d.degree; ++k) e = (e + std::uint64_t{row[k]} * dg[k]) % d.p;
      if (e) out[i] = add(out[i], mul(scalar(e), d.zeta_powers[j]));
    }
  }
  return out;
}

inline Fel FieldTower::from_b_coordinates(std::span<const Bel> coords) const {
  if (coords.size() != d_->t) throw ShapeError("expected " + std::to_string(d_->t) + " coordinates");
  Fel acc = zero();
  for (std::uint32_t i = 0; i < d_->t; ++i) acc = add(acc, mul(coords[i], d_->power_basis[i]));
  return acc;
}

inline std::string FieldTower::format(Fel a) const {
  if (a.is_zero()) return "0";
  const auto l = log(a);
  if (l == 0) return "1";
  return "x^" + std::to_string(l);
}

inline Fel FieldTower::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  auto to_u64 = [](std::string_view s, std::string_view whole) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("bad element '" + std::string(whole) + "'");
    }
    return v;
  };
  const std::string_view s = trim(text);
  if (s == "0") return zero();
  if (s == "1") return one();
  if (s == "x") return generator();
  if (s.starts_with("x^")) return exp(to_u64(s.substr(2), s));
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    std::string_view body = s.substr(1, s.size() - 2);
    std::uint32_t value = 0, place = 1;
    std::uint32_t count = 0;
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto tok = trim(body.substr(0, comma));
      const auto c = to_u64(tok, s);
      if (c >= d_->p || count >= d_->degree) throw ParseError("bad coefficient vector '" + std::string(s) + "'");
      value += static_cast<std::uint32_t>(c) * place;
      place *= d_->p;
      ++count;
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return Fel{value};
  }
  throw ParseError("bad element '" + std::string(s) + "'");
}

// Free-function spellings of the core operations.

inline FieldTower tower_new(std::uint32_t p, std::uint32_t m, std::uint32_t t,
                            std::uint64_t max_field = FieldTower::kDefaultMaxField) {
  return FieldTower(p, m, t, max_field);
}

inline Bel trace(const FieldTower& tw, Fel a) { return tw.trace(a); }
inline bool is_subfield_element(const FieldTower& tw, Fel a) { return tw.is_subfield_element(a); }
inline std::vector<Fel> enumerate_field(const FieldTower& tw) { return tw.enumerate(); }
inline bool char_divides_t(const FieldTower& tw) { return tw.char_divides_t(); }

}  // namespace trace_repair
