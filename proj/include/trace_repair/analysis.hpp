// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "trace_repair/errors.hpp"
#include "trace_repair/field.hpp"
#include "trace_repair/repair.hpp"

namespace trace_repair {

struct TripleCensus {
  std::string tower;
  Fel alpha;
  Fel beta;
  std::size_t correctable = 0;
  std::size_t total = 0;
  bool char_divides_t = false;  // false: the count is set-theoretic only, no scheme runs on it
};

/// Counts the third points gamma that make {alpha, beta, gamma} correctable.
/// The gamma loop is split across `workers` threads (0 picks hardware concurrency).
inline TripleCensus count_correctable(const FieldTower& tw, Fel alpha, Fel beta, unsigned workers = 1) {
  if (alpha == beta) throw DegenerateInput("census needs two distinct fixed points");
  const std::size_t n = tw.size();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, n / 4096)));
  std::vector<std::size_t> partial(workers, 0);
  auto run = [&](unsigned w) {
    std::size_t c = 0;
    for (std::size_t pos = w; pos < n; pos += workers) {
      const Fel g = tw.element_at(pos);
      if (g == alpha || g == beta) continue;
      if (is_correctable_triple(tw, alpha, beta, g)) ++c;
    }
    partial[w] = c;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  TripleCensus out;
  out.tower = tw.name();
  out.alpha = alpha;
  out.beta = beta;
  out.correctable = std::accumulate(partial.begin(), partial.end(), std::size_t{0});
  out.total = n - 2;
  out.char_divides_t = tw.char_divides_t();
  return out;
}

inline void write_census_header(std::ostream& os) { os << "tower,fixed_pair,correctable,total\n"; }

inline void write_census_row(std::ostream& os, const FieldTower& tw, const TripleCensus& c) {
  os << c.tower << ',' << tw.format(c.alpha) << ';' << tw.format(c.beta) << ',' << c.correctable << ',' << c.total
     << '\n';
}

/// (n-1) log_|B|( (n-1)/(n-k) * |B|^t/(|B|^t - 1) ), in sub-symbols.
inline double repair_lower_bound(std::uint64_t n, std::uint64_t k, std::uint64_t b, std::uint64_t t) {
  if (b < 2 || t < 1) throw DegenerateInput("subfield size must be at least 2 and t at least 1");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < t; ++i) {
    if (q > (std::uint64_t{1} << 40) / b) throw DegenerateInput("|B|^t too large");
    q *= b;
  }
  if (k < 1 || k >= n || n > q) throw DegenerateInput("need 1 <= k < n <= |B|^t");
  // The ratio as an exact fraction first, so powers of |B| give exact results.
  std::uint64_t num = (n - 1) * q;
  std::uint64_t den = (n - k) * (q - 1);
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) {
    std::uint64_t v = 1;
    for (int e = 0; v <= num; ++e, v *= b) {
      if (v == num) return static_cast<double>(n - 1) * e;
    }
  }
  const double lb = std::log(static_cast<double>(b));
  return static_cast<double>(n - 1) * (std::log(static_cast<double>(num)) - std::log(static_cast<double>(den))) / lb;
}

/// Which schemes beat which baselines at k = n(1 - 1/|B|).
struct ThresholdReport {
  std::uint64_t b = 0, t = 0, n = 0, k = 0;
  // dist1 against naive followed by gw
  bool dist1_condition = false;  // t >= (2|B|-1)/(|B|-1)
  std::uint64_t dist1_total = 0;
  std::uint64_t naive_plus_gw = 0;
  bool dist1_beats = false;
  // central2 against naive centralized
  bool central2_condition = false;  // t >= 2|B|/(|B|-1)
  std::uint64_t central2_total = 0;
  std::uint64_t naive_central = 0;
  bool central2_beats = false;
};

inline ThresholdReport threshold_report(std::uint64_t b, std::uint64_t t) {
  if (b < 2 || t < 1) throw DegenerateInput("subfield size must be at least 2 and t at least 1");
  ThresholdReport r;
  r.b = b;
  r.t = t;
  r.n = 1;
  for (std::uint64_t i = 0; i < t; ++i) r.n *= b;
  r.k = r.n - r.n / b;
  r.dist1_condition = t * (b - 1) >= 2 * b - 1;
  r.dist1_total = (r.n - 2 + r.k) + (r.n - 1);
  r.naive_plus_gw = r.k * t + (r.n - 1);
  r.dist1_beats = r.dist1_total < r.naive_plus_gw;
  r.central2_condition = t * (b - 1) >= 2 * b;
  r.central2_total = 2 * (r.n - 2);
  r.naive_central = r.k * t;
  r.central2_beats = r.central2_total < r.naive_central;
  return r;
}

struct SchemeRow {
  std::string scheme;
  std::size_t erasures = 0;
  std::uint64_t bandwidth = 0;
  bool needs_divisibility = false;
  bool needs_correctable = false;
  bool available = true;
};

/// Bandwidth of every scheme on the given code, plus the conditions it needs.
inline std::vector<SchemeRow> scheme_table(const FieldTower& tw, std::uint64_t k) {
  const std::uint64_t n = tw.size(), t = tw.t();
  const bool div = tw.char_divides_t();
  std::vector<SchemeRow> rows{
      {"naive", 1, k * t, false, false, true},
      {"gw", 1, n - 1, false, false, true},
      {"dist1", 2, (n - 2 + k) + (n - 1), false, false, n - k >= 2},
      {"central2", 2, 2 * (n - 2), true, false, div && n - k >= 2},
      {"dist2", 2, 2 * (n - 1), true, false, div && n - k >= 2},
      {"central3", 3, 3 * (n - 3), true, true, div && n - k >= 3},
      {"dist3", 3, 3 * (n - 1), true, true, div && n - k >= 3},
  };
  return rows;
}

}  // namespace trace_repair
