// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "trace_repair/rs_code.hpp"
#include "trace_repair/sim.hpp"
#include "trace_repair/subspace.hpp"

using namespace trace_repair;

namespace {

Fel xp(const FieldTower& tw, int k) { return tw.pow(tw.generator(), k); }

std::vector<Fel> random_message(const CodeParams& params, SplitMix64& rng) {
  std::vector<Fel> msg;
  for (std::size_t i = 0; i < params.k; ++i) msg.push_back(params.tower.element_at(rng.next() % params.n));
  return msg;
}

}  // namespace

TEST(CodeParams, Defaults) {
  const CodeParams gf16{FieldTower(2, 1, 4)};
  EXPECT_EQ(gf16.n, 16u);
  EXPECT_EQ(gf16.k, 8u);
  const CodeParams gf729{FieldTower(3, 2, 3)};
  EXPECT_EQ(gf729.k, 729u - 81u);
  EXPECT_THROW(CodeParams(FieldTower(2, 1, 4), 16), DegenerateInput);
  EXPECT_THROW(CodeParams(FieldTower(2, 1, 4), 0), DegenerateInput);
}

TEST(Encode, FourNodeExample) {
  const FieldTower tw(2, 1, 2);
  const CodeParams params(tw, 2);
  for (int mask = 0; mask < 16; ++mask) {
    const int a1 = mask & 1, a2 = (mask >> 1) & 1, b1 = (mask >> 2) & 1, b2 = (mask >> 3) & 1;
    const Fel a = tw.from_b_coordinates(std::vector<Bel>{tw.scalar(a1), tw.scalar(a2)});
    const Fel b = tw.from_b_coordinates(std::vector<Bel>{tw.scalar(b1), tw.scalar(b2)});
    const auto cw = encode(params, std::vector<Fel>{a, tw.sub(b, a)});
    EXPECT_EQ(cw.symbols[0], a);
    EXPECT_EQ(cw.symbols[1], b);
    const Fel want = tw.from_b_coordinates(std::vector<Bel>{tw.scalar(a1 ^ a2 ^ b2), tw.scalar(a1 ^ b1 ^ b2)});
    EXPECT_EQ(cw.symbols[2], want);
  }
}

TEST(Encode, ZeroAndErrors) {
  const CodeParams params{FieldTower(2, 1, 4)};
  const auto cw = encode(params, std::vector<Fel>(8, params.tower.zero()));
  for (const Fel s : cw.symbols) EXPECT_TRUE(s.is_zero());
  EXPECT_THROW(encode(params, std::vector<Fel>(9, params.tower.one())), DegreeError);
  const auto shortmsg = encode(params, std::vector<Fel>{params.tower.one()});
  for (const Fel s : shortmsg.symbols) EXPECT_EQ(s, params.tower.one());
}

TEST(Encode, InterpolationOracle) {
  for (auto [p, m, t] : {std::tuple{2, 1, 4}, {2, 1, 6}, {2, 2, 3}, {3, 1, 4}, {2, 2, 4}}) {
    const FieldTower tw(p, m, t);
    const CodeParams params(tw);
    SplitMix64 rng(9);
    for (int trial = 0; trial < 3; ++trial) {
      const auto cw = encode(params, random_message(params, rng));
      // k random distinct positions determine everything else
      std::vector<std::size_t> pos;
      while (pos.size() < params.k) {
        const std::size_t q = rng.next() % params.n;
        if (std::find(pos.begin(), pos.end(), q) == pos.end()) pos.push_back(q);
      }
      std::vector<Fel> pts, vals;
      for (auto q : pos) {
        pts.push_back(params.point(q));
        vals.push_back(cw.symbols[q]);
      }
      const auto w = oracle::lagrange_weights(tw, pts);
      for (std::size_t j = 0; j < params.n; j += (params.n > 64 ? 7 : 1)) {
        ASSERT_EQ(oracle::lagrange(tw, pts, w, vals, params.point(j)), cw.symbols[j]) << tw.name();
      }
    }
  }
}

TEST(CheckVector, KnownRows) {
  const FieldTower tw(2, 1, 4);
  const CodeParams params(tw, 8);
  const auto p1 = check_vector(params, tw.one(), tw.zero());
  EXPECT_EQ(p1.values[params.position_of(xp(tw, 3))], xp(tw, 12));
  EXPECT_EQ(p1.values[params.position_of(xp(tw, 1))], tw.zero());
  EXPECT_EQ(p1.values[params.position_of(xp(tw, 14))], xp(tw, 1));
  EXPECT_EQ(check_vector(params, xp(tw, 3), tw.one()).values[0], tw.one());
  EXPECT_THROW(check_vector(params, tw.zero(), tw.one()), DegenerateInput);
}

TEST(CheckVector, ValueAtAlphaIsU) {
  for (auto [p, m, t] : {std::tuple{2, 1, 4}, {3, 2, 2}, {2, 2, 3}}) {
    const CodeParams params{FieldTower(p, m, t)};
    const auto& tw = params.tower;
    for (const Fel a : tw.enumerate()) {
      const Fel u = tw.add(a, tw.generator());
      if (u.is_zero()) continue;
      EXPECT_EQ(check_vector(params, u, a).values[params.position_of(a)], u);
    }
  }
}

TEST(CheckVector, WeightAndZerosGf16) {
  const FieldTower tw(2, 1, 4);
  const CodeParams params(tw, 8);
  const auto kernel = oracle::annihilated(tw, {tw.one()});
  for (const Fel u : tw.enumerate()) {
    if (u.is_zero()) continue;
    for (const Fel a : tw.enumerate()) {
      const auto chk = check_vector(params, u, a);
      std::set<Fel> zeros;
      std::size_t weight = 0;
      for (std::size_t j = 0; j < params.n; ++j) {
        if (chk.values[j].is_zero()) {
          zeros.insert(params.point(j));
        } else {
          ++weight;
        }
      }
      ASSERT_EQ(weight, params.k + 1);
      std::set<Fel> want;
      for (const Fel z : kernel) {
        if (!z.is_zero()) want.insert(tw.add(a, tw.div(z, u)));
      }
      ASSERT_EQ(zeros, want);
    }
  }
}

TEST(VerifyDual, RandomTriples) {
  for (auto [p, m, t] : {std::tuple{2, 1, 4}, {2, 1, 6}, {2, 2, 4}, {3, 1, 6}, {3, 2, 3}}) {
    const CodeParams params{FieldTower(p, m, t)};
    const auto& tw = params.tower;
    SplitMix64 rng(100 + t);
    for (int i = 0; i < 100; ++i) {
      const auto cw = encode(params, random_message(params, rng));
      const Fel u = tw.element_at(1 + rng.next() % (params.n - 1));
      const Fel a = tw.element_at(rng.next() % params.n);
      const auto chk = check_vector(params, u, a);
      ASSERT_TRUE(verify_dual(params, chk, cw)) << tw.name();
      // direct summation: p(x) = Tr(u(x-a))/(x-a), p(a) = u
      Fel acc = tw.zero();
      for (std::size_t j = 0; j < params.n; ++j) {
        const Fel d = tw.sub(params.point(j), a);
        const Fel pv = d.is_zero() ? u : oracle::poly_mul(tw, oracle::trace(tw, oracle::poly_mul(tw, u, d)), tw.inv(d));
        ASSERT_EQ(pv, chk.values[j]);
        acc = tw.add(acc, oracle::poly_mul(tw, pv, cw.symbols[j]));
      }
      ASSERT_TRUE(acc.is_zero());
    }
  }
}

TEST(VerifyDual, ZeroAndPerturbation) {
  const FieldTower tw(2, 1, 4);
  const CodeParams params(tw, 8);
  const auto chk = check_vector(params, xp(tw, 5), xp(tw, 2));
  EXPECT_TRUE(verify_dual(params, chk, Codeword{std::vector<Fel>(16, tw.zero()), {}}));
  SplitMix64 rng(4);
  for (int i = 0; i < 20; ++i) {
    auto cw = encode(params, random_message(params, rng));
    std::size_t j = rng.next() % 16;
    while (chk.values[j].is_zero()) j = (j + 1) % 16;
    cw.symbols[j] = tw.add(cw.symbols[j], tw.element_at(1 + rng.next() % 15));
    EXPECT_FALSE(verify_dual(params, chk, cw));
  }
  EXPECT_THROW(verify_dual(params, chk, Codeword{std::vector<Fel>(15, tw.zero()), {}}), ShapeError);
}

TEST(NaiveRepair, Gf16) {
  const FieldTower tw(2, 1, 4);
  const CodeParams params(tw, 8);
  SplitMix64 rng(77);
  for (int i = 0; i < 50; ++i) {
    const auto cw = encode(params, random_message(params, rng));
    for (std::size_t e = 0; e < params.n; ++e) {
      std::vector<std::optional<Fel>> view(cw.symbols.begin(), cw.symbols.end());
      view[e].reset();
      const auto r = naive_repair(params, view);
      ASSERT_EQ(r.value, cw.symbols[e]);
      ASSERT_EQ(r.bandwidth, 32u);
      ASSERT_EQ(r.sources.size(), params.k);
      ASSERT_EQ(std::count(r.sources.begin(), r.sources.end(), e), 0);
    }
  }
  std::vector<std::optional<Fel>> zeros(16, tw.zero());
  zeros[3].reset();
  EXPECT_EQ(naive_repair(params, zeros).value, tw.zero());
  std::vector<std::optional<Fel>> none(16, tw.one());
  EXPECT_THROW(naive_repair(params, none), PatternError);
  none[1].reset();
  none[2].reset();
  EXPECT_THROW(naive_repair(params, none), PatternError);
}

TEST(NaiveRepair, DualOnSupportIsACheck) {
  const FieldTower tw(3, 1, 3);
  const CodeParams params(tw);
  SplitMix64 rng(8);
  const auto cw = encode(params, random_message(params, rng));
  const std::vector<std::size_t> excluded{0, 1};
  const auto sup = naive_support(params, 5, excluded);
  ASSERT_EQ(sup.size(), params.k + 1);
  EXPECT_EQ(sup[0], 5u);
  std::vector<Fel> pts;
  for (auto j : sup) pts.push_back(params.point(j));
  const auto y = dual_on_support(tw, pts);
  Fel acc = tw.zero();
  for (std::size_t i = 0; i < sup.size(); ++i) acc = tw.add(acc, tw.mul(y[i], cw.symbols[sup[i]]));
  EXPECT_TRUE(acc.is_zero());
  for (auto j : sup) {
    EXPECT_NE(j, 0u);
    EXPECT_NE(j, 1u);
  }
}

TEST(Codeword, TextRoundTrip) {
  const FieldTower tw(2, 2, 2);
  const CodeParams params(tw);
  SplitMix64 rng(1);
  const auto cw = encode(params, random_message(params, rng));
  std::stringstream ss;
  write_codeword(ss, tw, cw);
  EXPECT_EQ(read_codeword(ss, tw).symbols, cw.symbols);
}
