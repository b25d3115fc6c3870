// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

// Small polynomial toolkit over a prime field GF(p), used only while setting up a
// tower: irreducibility (Rabin) and primitivity tests, least primitive roots.

namespace trace_repair::detail {

using Poly = std::vector<std::uint64_t>;  // little-endian coefficients in [0, p)

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  b %= mod;
  while (e) {
    if (e & 1) r = r * b % mod;
    b = b * b % mod;
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

inline std::uint64_t least_primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto r : factors) {
      if (powmod_u64(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 0;
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Arithmetic in GF(p)[x]/(f) for a monic f.
class PolyRing {
 public:
  PolyRing(std::uint64_t p, Poly modulus) : p_(p), f_(std::move(modulus)) {}

  std::size_t degree() const { return f_.size() - 1; }

  Poly reduce(Poly a) const {
    const std::size_t d = degree();
    for (std::size_t i = a.size(); i-- > d;) {
      const std::uint64_t c = a[i] % p_;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j) {
        a[i - d + j] = (a[i - d + j] + (p_ - c) * f_[j]) % p_;
      }
    }
    a.resize(d, 0);
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p_;
    }
    return reduce(std::move(out));
  }

  Poly pow(Poly base, std::uint64_t e) const {
    Poly r(degree(), 0);
    r[0] = 1;
    base = reduce(std::move(base));
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Poly x() const {
    Poly v{0, 1};
    return reduce(std::move(v));
  }

 private:
  std::uint64_t p_;
  Poly f_;
};

inline Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = inv_mod_prime(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p - c) * b[j] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test: f of degree d is irreducible iff x^(p^d) = x mod f and
/// gcd(x^(p^(d/r)) - x, f) = 1 for every prime r dividing d.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  PolyRing ring(p, f);
  auto frob_iter = [&](std::size_t k) {
    Poly v = ring.x();
    for (std::size_t i = 0; i < k; ++i) v = ring.pow(v, p);
    return v;
  };
  auto minus_x = [&](Poly v) {
    v[1] = (v[1] + p - 1) % p;
    return v;
  };
  if (frob_iter(d) != ring.x()) return false;
  for (auto r : prime_factors(d)) {
    Poly g = poly_gcd(minus_x(frob_iter(d / r)), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// x has multiplicative order p^d - 1 modulo f (f assumed irreducible).
inline bool is_primitive(const Poly& f, std::uint64_t p) {
  const std::size_t d = f.size() - 1;
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < d; ++i) order *= p;
  order -= 1;
  PolyRing ring(p, f);
  Poly one(d, 0);
  one[0] = 1;
  for (auto r : prime_factors(order)) {
    if (ring.pow(ring.x(), order / r) == one) return false;
  }
  return true;
}

}  // namespace trace_repair::detail
