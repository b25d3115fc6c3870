// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "oracles.hpp"
#include "trace_repair/sim.hpp"
#include "trace_repair/subspace.hpp"

using namespace trace_repair;

namespace {

Fel xp(const FieldTower& tw, int k) { return tw.pow(tw.generator(), k); }

std::set<Fel> as_set(const Subspace& s) {
  const auto e = s.elements();
  return {e.begin(), e.end()};
}

std::vector<std::tuple<int, int, int>> small_towers() {
  std::vector<std::tuple<int, int, int>> out;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    for (int m = 1; m <= 12; ++m) {
      for (int t = 1; t <= 12; ++t) {
        std::uint64_t n = 1;
        for (int i = 0; i < m * t && n <= 4096; ++i) n *= p;
        if (n <= 4096) out.emplace_back(p, m, t);
      }
    }
  }
  return out;
}

}  // namespace

TEST(Coordinates, Examples) {
  const FieldTower gf4(2, 1, 2);
  const std::vector<Fel> b4{gf4.one(), gf4.generator()};
  for (const Fel a : gf4.enumerate()) {
    const auto c = b_coords(gf4, a, b4);
    EXPECT_EQ(gf4.add(c[0], gf4.mul(c[1], gf4.generator())), a);
  }
  const FieldTower tw(2, 1, 4);
  const std::vector<Fel> pb{tw.one(), xp(tw, 1), xp(tw, 2), xp(tw, 3)};
  EXPECT_EQ(b_coords(tw, xp(tw, 4), pb), (std::vector<Bel>{tw.one(), tw.one(), tw.zero(), tw.zero()}));
  EXPECT_EQ(b_coords(tw, tw.zero(), pb), std::vector<Bel>(4, tw.zero()));
  const std::vector<Fel> dependent{tw.one(), xp(tw, 1), xp(tw, 4), tw.add(tw.one(), xp(tw, 1))};
  EXPECT_THROW(b_coords(tw, tw.one(), dependent), RankError);
  EXPECT_THROW(b_coords(tw, tw.one(), std::vector<Fel>{tw.one()}), RankError);
}

TEST(TraceKernel, Examples) {
  const FieldTower tw(2, 1, 4);
  EXPECT_EQ(as_set(trace_kernel(tw)), oracle::span(tw, {tw.one(), xp(tw, 1), xp(tw, 2)}));
  EXPECT_EQ(trace_kernel(tw).basis(), (std::vector<Fel>{tw.one(), xp(tw, 1), xp(tw, 2)}));
  const FieldTower gf2(2, 1, 1);
  EXPECT_EQ(trace_kernel(gf2).dim(), 0u);
  EXPECT_EQ(as_set(trace_kernel(gf2)), std::set<Fel>{gf2.zero()});
  const FieldTower gf4(2, 1, 2);
  EXPECT_EQ(as_set(trace_kernel(gf4)), (std::set<Fel>{gf4.zero(), gf4.one()}));
}

TEST(TraceKernel, DimensionExhaustive) {
  for (auto [p, m, t] : small_towers()) {
    const FieldTower tw(p, m, t);
    const auto k = trace_kernel(tw);
    EXPECT_EQ(k.dim(), tw.t() - 1) << tw.name();
    EXPECT_EQ(as_set(k), oracle::annihilated(tw, {tw.one()})) << tw.name();
    EXPECT_EQ(rank(tw, k.basis()), k.dim());
  }
}

TEST(RootSpace, Examples) {
  const FieldTower tw(2, 1, 4);
  EXPECT_EQ(root_space(tw, tw.zero(), tw.one()), Subspace(tw, std::vector<Fel>{tw.one(), xp(tw, 1), xp(tw, 2)}));
  const FieldTower gf4(2, 1, 2);
  EXPECT_EQ(as_set(root_space(gf4, gf4.zero(), gf4.generator())), (std::set<Fel>{gf4.zero(), xp(gf4, 2)}));
  EXPECT_THROW(root_space(tw, tw.one(), tw.one()), DegenerateInput);
}

TEST(RootSpace, ScaledKernelExhaustive) {
  for (auto [p, m, t] : small_towers()) {
    if (t < 2) continue;
    const FieldTower tw(p, m, t);
    SplitMix64 rng(p + m + t);
    for (int i = 0; i < 4; ++i) {
      const Fel a = tw.element_at(rng.next() % tw.size());
      Fel b = tw.element_at(rng.next() % tw.size());
      if (a == b) b = tw.add(b, tw.one());
      const auto rs = root_space(tw, a, b);
      EXPECT_EQ(rs, root_space(tw, b, a));
      EXPECT_EQ(as_set(rs), oracle::annihilated(tw, {tw.sub(b, a)})) << tw.name();
      std::set<Fel> scaled;
      for (const Fel z : trace_kernel(tw).elements()) scaled.insert(tw.div(z, tw.sub(b, a)));
      EXPECT_EQ(as_set(rs), scaled);
    }
  }
}

TEST(TripleRootSpace, Gf16AllTriples) {
  const FieldTower tw(2, 1, 4);
  const auto e = tw.enumerate();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      for (std::size_t l = j + 1; l < e.size(); ++l) {
        const auto s = triple_root_space(tw, e[i], e[j], e[l]);
        ASSERT_TRUE(s.dim() == 2 || s.dim() == 3);
        const auto brute = oracle::annihilated(tw, {tw.sub(e[j], e[i]), tw.sub(e[l], e[j]), tw.sub(e[i], e[l])});
        ASSERT_EQ(as_set(s), brute);
        // Coincident pairwise root spaces exactly when a difference ratio is in B.
        const Fel ratio = tw.div(tw.sub(e[j], e[i]), tw.sub(e[j], e[l]));
        if (tw.is_subfield_element(ratio)) { ASSERT_EQ(s.dim(), 3u); }
      }
    }
  }
  EXPECT_THROW(triple_root_space(tw, tw.one(), tw.one(), tw.zero()), DegenerateInput);
}

TEST(TripleRootSpace, IntersectionSmallTowers) {
  for (auto [p, m, t] : {std::tuple{2, 1, 6}, {2, 2, 3}, {3, 1, 3}, {3, 2, 2}, {2, 2, 4}}) {
    const FieldTower tw(p, m, t);
    SplitMix64 rng(31);
    for (int i = 0; i < 6; ++i) {
      const Fel a = tw.element_at(rng.next() % tw.size());
      const Fel b = tw.add(a, tw.element_at(1 + rng.next() % (tw.size() - 1)));
      Fel c = tw.element_at(rng.next() % tw.size());
      while (c == a || c == b) c = tw.add(c, tw.generator());
      const auto s = triple_root_space(tw, a, b, c);
      std::set<Fel> inter;
      const auto ab = as_set(root_space(tw, a, b)), bc = as_set(root_space(tw, b, c)),
                 ca = as_set(root_space(tw, c, a));
      for (const Fel z : ab) {
        if (bc.count(z) && ca.count(z)) inter.insert(z);
      }
      EXPECT_EQ(as_set(s), inter) << tw.name();
      EXPECT_TRUE(s.dim() + 2 == tw.t() || s.dim() + 1 == tw.t()) << tw.name();
    }
  }
}

TEST(CompleteBasis, Examples) {
  const FieldTower tw(2, 1, 4);
  const auto full = complete_basis(tw, std::vector<Fel>{tw.one(), xp(tw, 1), xp(tw, 2)});
  EXPECT_EQ(full.elements, (std::vector<Fel>{tw.one(), xp(tw, 1), xp(tw, 2), xp(tw, 3)}));
  const std::vector<Fel> pb{tw.one(), xp(tw, 1), xp(tw, 2), xp(tw, 3)};
  EXPECT_EQ(complete_basis(tw, pb).elements, pb);
  const FieldTower gf4(2, 1, 2);
  EXPECT_EQ(complete_basis(gf4, std::vector<Fel>{gf4.one()}).elements, (std::vector<Fel>{gf4.one(), gf4.generator()}));
  EXPECT_THROW(complete_basis(tw, std::vector<Fel>{tw.one(), tw.one()}), RankError);
}

TEST(CompleteBasis, Deterministic) {
  const FieldTower tw(3, 2, 3);
  const auto k = root_space(tw, tw.generator(), tw.one());
  const auto a = complete_basis(tw, k), b = complete_basis(tw, k);
  EXPECT_EQ(a.elements, b.elements);
  EXPECT_EQ(rank(tw, a.elements), tw.t());
  EXPECT_EQ(std::vector<Fel>(a.elements.begin(), a.elements.begin() + 2), k.basis());
}

TEST(DualBasis, Examples) {
  const FieldTower gf4(2, 1, 2);
  const auto d = dual_basis(gf4, std::vector<Fel>{gf4.one(), gf4.generator()});
  EXPECT_EQ(*d.dual, (std::vector<Fel>{xp(gf4, 2), gf4.one()}));
  const FieldTower tw(2, 1, 4);
  const std::vector<Fel> pb{tw.one(), xp(tw, 1), xp(tw, 2), xp(tw, 3)};
  const auto dd = *dual_basis(tw, pb).dual;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(oracle::trace(tw, oracle::poly_mul(tw, pb[i], dd[j])), i == j ? tw.one() : tw.zero());
    }
  }
  EXPECT_EQ(*dual_basis(tw, dd).dual, pb);
  EXPECT_THROW(dual_basis(tw, std::vector<Fel>{tw.one(), tw.one(), xp(tw, 2), xp(tw, 3)}), RankError);
}

TEST(DualBasis, Reconstruction) {
  for (auto [p, m, t] : {std::tuple{2, 1, 4}, {2, 2, 3}, {3, 2, 3}, {5, 1, 3}}) {
    const FieldTower tw(p, m, t);
    const auto basis = complete_basis(tw, root_space(tw, tw.zero(), tw.generator()));
    const auto dual = *dual_basis(tw, basis).dual;
    EXPECT_EQ(*dual_basis(tw, dual).dual, basis.elements);
    for (const Fel a : tw.enumerate()) {
      Fel acc = tw.zero();
      for (std::size_t i = 0; i < tw.t(); ++i) acc = tw.add(acc, tw.mul(tw.trace(tw.mul(basis.elements[i], a)), dual[i]));
      ASSERT_EQ(acc, a) << tw.name();
    }
  }
}

TEST(ExpressInSpan, Examples) {
  const FieldTower tw(2, 1, 4);
  const std::vector<Fel> gens{xp(tw, 3), xp(tw, 7), xp(tw, 11)};
  const auto first = express_in_span(tw, xp(tw, 3), gens);
  ASSERT_TRUE(first);
  EXPECT_EQ(*first, (std::vector<Bel>{tw.one(), tw.zero(), tw.zero()}));
  SplitMix64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const Fel g1 = tw.element_at(1 + rng.next() % 15);
    Fel g2 = tw.element_at(1 + rng.next() % 15);
    if (g2 == g1) g2 = tw.mul(g1, tw.generator());
    const std::vector<Fel> two{g1, g2};
    const auto members = oracle::span(tw, two);
    for (const Fel x : tw.enumerate()) {
      const auto lam = express_in_span(tw, x, two);
      ASSERT_EQ(lam.has_value(), members.count(x) == 1);
      if (lam) { ASSERT_EQ(tw.add(tw.mul((*lam)[0], g1), tw.mul((*lam)[1], g2)), x); }
    }
  }
}

TEST(Subspace, CanonicalBasis) {
  const FieldTower tw(2, 2, 3);
  const Fel a = tw.generator(), b = tw.pow(tw.generator(), 5);
  const Subspace s1(tw, std::vector<Fel>{a, b});
  const Subspace s2(tw, std::vector<Fel>{tw.add(a, b), b, tw.add(a, b)});
  EXPECT_EQ(s1.basis(), s2.basis());
  EXPECT_EQ(s1.dim(), 2u);
  EXPECT_EQ(as_set(s1), oracle::span(tw, {a, b}));
  EXPECT_EQ(s1.elements().size(), 16u);
  for (const Fel x : tw.enumerate()) EXPECT_EQ(s1.contains(x), as_set(s1).count(x) == 1);
}
