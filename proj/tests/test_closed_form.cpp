#include <bit>
#include <random>

#include "doctest.h"

#include "dynnim/closed_form.hpp"
#include "support/brute_force.hpp"

using namespace dynnim;

namespace {

const std::vector<BoundFn>& sample_bounds() {
  static const std::vector<BoundFn> bounds = {
      BoundFn::constant(1), BoundFn::constant(2),  BoundFn::constant(5),
      BoundFn::affine(1, 0), BoundFn::affine(2, 1), BoundFn::affine(3, -1),
      BoundFn::table({1, 2, 2, 3, 7}), BoundFn::table({2, 2, 2, 9})};
  return bounds;
}

}  // namespace

TEST_CASE("block bounds") {
  CHECK(block_bounds_g1(BoundFn::affine(1, 0), 1, 2) == BlockBounds{2, 6, 8});
  CHECK(block_bounds_g1(BoundFn::constant(2), 1, 3) == BlockBounds{3, 9, 9});
  for (const auto& f : sample_bounds()) {
    for (u64 k = 1; k < 6; ++k) CHECK(block_bounds_g1(f, k, 0) == BlockBounds{0, 0, 0});
  }
  CHECK_THROWS_AS(block_bounds_g1(BoundFn::constant(u64{1} << 61), 1, 3), RangeError);
  CHECK_THROWS_AS(block_bounds_g1(BoundFn::constant(1), 0, 1), ParseError);
}

TEST_CASE("classify_g1 examples") {
  for (const auto& f : sample_bounds()) {
    for (u64 k = 1; k < 10; ++k) {
      const auto c = classify_g1({0, k}, f);
      CHECK(c.verdict == Verdict::P);
      CHECK(c.block == u64{0});
    }
  }
  const auto two = BoundFn::constant(2);
  CHECK(classify_g1({6, 1}, two).verdict == Verdict::P);
  CHECK(classify_g1({6, 1}, two).block == u64{2});
  CHECK(classify_g1({7, 1}, two).verdict == Verdict::N);
  CHECK_FALSE(classify_g1({7, 1}, two).block);

  // Confirmed against the test-side game tree search.
  const auto identity = BoundFn::affine(1, 0);
  brute::TurnGame tree([](u64 k) { return k; });
  CHECK(classify_g1({4, 1}, identity).verdict == Verdict::N);
  CHECK_FALSE(tree.is_p(4, 1));
  CHECK(classify_g1({3, 2}, identity).verdict == Verdict::P);
  CHECK(tree.is_p(3, 2));
}

TEST_CASE("classify_g2 examples") {
  const auto seven = classify_g2({7, 0});
  CHECK(seven.verdict == Verdict::P);
  CHECK(seven.family == FamilyTag{Family::P1, 3, 0});
  CHECK(classify_g2({5, 3}).family == FamilyTag{Family::P2, 3, 2});
  CHECK(classify_g2({6, 1}).family == FamilyTag{Family::P2, 3, 1});
  CHECK(classify_g2({4, 7}).family == FamilyTag{Family::P3, 3, 1});
  CHECK(classify_g2({0, 15}).family == FamilyTag{Family::P3, 3, 5});

  // Terminals come from the n = 0 members.
  CHECK(classify_g2({0, 0}).family == FamilyTag{Family::P1, 0, 0});
  CHECK(classify_g2({0, 1}).family == FamilyTag{Family::P3, 0, 1});
  CHECK(classify_g2({1, 0}).family == FamilyTag{Family::P1, 1, 0});

  brute::WeightGame tree;
  for (auto [x, y, verdict] : std::vector<std::tuple<u64, u64, Verdict>>{
           {1, 1, Verdict::N}, {2, 2, Verdict::N}, {2, 1, Verdict::P}}) {
    CHECK(classify_g2({x, y}).verdict == verdict);
    CHECK(tree.is_p(x, y) == (verdict == Verdict::P));
  }
  for (u64 x = 0; 2 * x <= 6; ++x) {
    for (u64 y = 0; 2 * x + y <= 6; ++y) {
      CHECK((classify_g2({x, y}).verdict == Verdict::P) == tree.is_p(x, y));
    }
  }
}

TEST_CASE("classify_g2 matches literal family membership up to weight 4096") {
  const u64 limit = u64{1} << 12;
  const auto families = brute::p_set_by_families(limit);
  u64 p_count = 0;
  for (u64 x = 0; 2 * x <= limit; ++x) {
    for (u64 y = 0; 2 * x + y <= limit; ++y) {
      const auto c = classify_g2({x, y});
      const bool member = families.count({x, y}) > 0;
      if ((c.verdict == Verdict::P) != member) {
        FAIL("mismatch at (" << x << "," << y << ")");
      }
      if (c.verdict == Verdict::P) {
        ++p_count;
        REQUIRE(family_member(*c.family) == WeightedPosition{x, y});
        const u64 w = 2 * x + y;
        if (w >= 1) {
          REQUIRE((std::has_single_bit(w + 1) || std::has_single_bit(w + 2) ||
                   std::has_single_bit(w + 3)));
        }
      }
    }
  }
  CHECK(p_count == families.size());
}

TEST_CASE("enumerate_p_g2 examples and pointwise agreement") {
  using V = std::vector<WeightedPosition>;
  CHECK(enumerate_p_g2(0) == V{{0, 0}});
  CHECK(enumerate_p_g2(3) == V{{0, 0}, {0, 1}, {1, 0}, {0, 3}});
  CHECK(enumerate_p_g2(7) == V{{0, 0}, {0, 1}, {1, 0}, {0, 3}, {2, 1}, {3, 0}, {0, 7}, {1, 5}});

  const auto listed = enumerate_p_g2(300);
  V scanned;
  for (u64 w = 0; w <= 300; ++w) {
    for (u64 x = 0; 2 * x <= w; ++x) {
      if (classify_g2({x, w - 2 * x}).verdict == Verdict::P) scanned.push_back({x, w - 2 * x});
    }
  }
  CHECK(listed == scanned);
}

TEST_CASE("enumerate_p_g1 examples") {
  using V = std::vector<BlockBounds>;
  CHECK(enumerate_p_g1(BoundFn::affine(1, 0), 1, 15) ==
        V{{0, 0, 0}, {1, 2, 3}, {2, 6, 8}, {3, 12, 15}});
  CHECK(enumerate_p_g1(BoundFn::constant(1), 1, 6) ==
        V{{0, 0, 0}, {1, 2, 2}, {2, 4, 4}, {3, 6, 6}});
  for (const auto& f : sample_bounds()) CHECK(enumerate_p_g1(f, 3, 0) == V{{0, 0, 0}});
  // Clipped at max_x.
  CHECK(enumerate_p_g1(BoundFn::affine(1, 0), 1, 13).back() == BlockBounds{3, 12, 13});

  // Confirm the f(k) = k blocks against the game tree.
  brute::TurnGame tree([](u64 k) { return k; });
  for (u64 x = 0; x <= 15; ++x) {
    const bool in_block = x == 0 || (x >= 2 && x <= 3) || (x >= 6 && x <= 8) || x >= 12;
    CHECK(tree.is_p(x, 1) == in_block);
  }
}

TEST_CASE("blocks are separated: hi(n) < lo(n+1)") {
  for (const auto& f : sample_bounds()) {
    for (u64 k = 1; k <= 30; ++k) {
      BlockBounds prev = block_bounds_g1(f, k, 0);
      for (u64 n = 1; n <= 50; ++n) {
        const BlockBounds next = block_bounds_g1(f, k, n);
        REQUIRE(prev.lo <= prev.hi);
        REQUIRE(prev.hi < next.lo);
        prev = next;
      }
    }
  }
}

TEST_CASE("shift coherence of block bounds") {
  // Bounds of block n-1 at turn k+1 equal the re-indexed sums starting at t = 2.
  for (const auto& f : sample_bounds()) {
    for (u64 k = 1; k <= 20; ++k) {
      for (u64 n = 1; n <= 25; ++n) {
        u64 lo = 0;
        u64 hi = 0;
        for (u64 t = 2; t <= n; ++t) {
          lo += f(k + 2 * t - 3) + 1;
          hi += f(k + 2 * t - 2) + 1;
        }
        const auto direct = block_bounds_g1(f, k + 1, n - 1);
        REQUIRE(direct.lo == lo);
        REQUIRE(direct.hi == hi);
      }
    }
  }
}

TEST_CASE("classify_g1 agrees with the game tree on random bounds") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<u64> values(1 + rng() % 6);
    u64 v = 1;
    for (auto& e : values) e = v += rng() % 3;
    const auto f = BoundFn::table(values);
    brute::TurnGame tree([&f](u64 k) { return f(k); });
    for (u64 x = 0; x <= 60; ++x) {
      for (u64 k = 1; k <= 12; ++k) {
        REQUIRE((classify_g1({x, k}, f).verdict == Verdict::P) == tree.is_p(x, k));
      }
    }
  }
}
