#include <random>

#include "doctest.h"

#include "dynnim/bound_fn.hpp"

using namespace dynnim;

TEST_CASE("bound functions evaluate per their kind") {
  CHECK(BoundFn::constant(3)(7) == 3);
  CHECK(BoundFn::affine(1, 0)(5) == 5);
  CHECK(BoundFn::affine(2, 1)(4) == 9);
  CHECK(BoundFn::affine(3, -2)(1) == 1);

  const auto table = BoundFn::table({1, 2, 2, 3, 7});
  CHECK(table(1) == 1);
  CHECK(table(4) == 3);
  CHECK(table(5) == 7);
  CHECK(table(9) == 7);  // repeats the last entry
}

TEST_CASE("turn index zero is rejected") {
  CHECK_THROWS_AS(BoundFn::constant(1)(0), ParseError);
  CHECK_THROWS_AS(eval_bound(BoundFn::table({1}), 0), ParseError);
}

TEST_CASE("parse accepts the text grammar") {
  CHECK(BoundFn::parse("const:3") == BoundFn::constant(3));
  CHECK(BoundFn::parse("affine:1,0") == BoundFn::affine(1, 0));
  CHECK(BoundFn::parse("affine:2,-1") == BoundFn::affine(2, -1));
  CHECK(BoundFn::parse("table:1,2,2,3,7") == BoundFn::table({1, 2, 2, 3, 7}));
}

TEST_CASE("parse rejects zero, decreasing and malformed specs") {
  for (const char* bad : {"const:0", "const:-1", "const:", "const:1,2", "table:3,2",
                          "table:0,1", "table:", "table:1,,2", "affine:-1,5", "affine:0,0",
                          "affine:1", "affine:1,x", "linear:1", "3", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(BoundFn::parse(bad), ParseError);
  }
}

TEST_CASE("evaluation past 2^62 is rejected") {
  const auto f = BoundFn::affine(u64{1} << 40, 0);
  CHECK(f(1000) == (u64{1} << 40) * 1000);
  CHECK_THROWS_AS(f(u64{1} << 30), RangeError);
  CHECK_THROWS_AS(BoundFn::constant(kValueLimit), RangeError);
}

TEST_CASE("random valid specs are positive, non-decreasing and round-trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    BoundFn f = BoundFn::constant(1);
    switch (rng() % 3) {
      case 0:
        f = BoundFn::constant(1 + rng() % 50);
        break;
      case 1: {
        const auto a = static_cast<std::int64_t>(rng() % 5);
        const auto b = static_cast<std::int64_t>(rng() % 20) - a + 1;
        f = BoundFn::affine(a, b);
        break;
      }
      default: {
        std::vector<u64> values(1 + rng() % 8);
        u64 v = 1 + rng() % 3;
        for (auto& e : values) e = v += rng() % 4;
        f = BoundFn::table(values);
      }
    }
    CAPTURE(f.to_string());
    CHECK(BoundFn::parse(f.to_string()) == f);
    for (u64 k = 1; k <= 60; ++k) {
      REQUIRE(f(k) >= 1);
      REQUIRE(f(k + 1) >= f(k));
    }
  }
}
