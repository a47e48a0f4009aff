#include <random>

#include "doctest.h"
#include "fatflow/weight_vector.hpp"
#include "test_helpers.hpp"

using namespace fatflow;
using fatflow::testing::random_weight_vector;

namespace {
WeightVector wv(std::initializer_list<long> nums, long den = 1) {
  WeightVector x;
  for (long v : nums) x.push_back(rat(v, den));
  return x;
}
}  // namespace

TEST_CASE("height and area") {
  CHECK(height(wv({1, 2, 1})) == 2 + 2);
  CHECK(area(wv({1, 2, 1})) == 6);
  WeightVector w = uniform_vector(5, rat(3));
  CHECK(height(w) == 3);
  CHECK(area(w) == rat(9, 5));  // h^2/n
  CHECK(height(wv({7})) == 7);
  CHECK(area(wv({7})) == 49);
}

TEST_CASE("uniform vector") {
  CHECK(uniform_vector(3, rat(1)) == wv({1, 1, 1}, 3));
  CHECK(uniform_vector(1, rat(2)) == wv({2}));
  CHECK(uniform_vector(2, rat(1)) == wv({1, 1}, 2));
}

TEST_CASE("partition and unpartition") {
  CHECK(partition_points(wv({1, 2, 1})) == Partition{0, 1, 3, 4});
  CHECK(partition_points(wv({0, 0, 1})) == Partition{0, 0, 0, 1});
  CHECK(unpartition({rat(0), rat(1, 2), rat(1)}) == wv({1, 1}, 2));
  CHECK_THROWS_AS(unpartition({rat(1), rat(2)}), std::invalid_argument);
  CHECK_THROWS_AS(unpartition({rat(0), rat(2), rat(1)}), std::invalid_argument);

  std::mt19937 rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 1 + iter % 9;
    WeightVector x = random_weight_vector(rng, n, rat(1 + iter % 3));
    CHECK(unpartition(partition_points(x)) == x);
  }
}

TEST_CASE("leaners") {
  auto l = leaners(wv({1, 2, 1}));
  REQUIRE(l.size() == 2);
  CHECK(l[0] == Leaner{1, Lean::right});
  CHECK(l[1] == Leaner{2, Lean::left});
  CHECK(leaners(uniform_vector(6, rat(5))).empty());
  auto l2 = leaners(wv({1, 0, 0}));
  REQUIRE(l2.size() == 1);
  CHECK(l2[0] == Leaner{1, Lean::left});
}

TEST_CASE("segments") {
  auto segs = segments(wv({1, 1, 0}, 2));
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].dim == 2);
  CHECK(segs[0].value == rat(1, 2));
  CHECK(segs[0].left_end == EndKind::interval_end);
  CHECK(segs[0].right_end == EndKind::leans_toward);
  CHECK(segs[1].dim == 1);
  CHECK(segs[1].value == 0);
  CHECK(segs[1].left_end == EndKind::leans_away);

  auto whole = segments(uniform_vector(4, rat(3)));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].dim == 4);

  CHECK(segments(wv({1, 2, 1})).size() == 3);

  std::mt19937 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 1 + iter % 8;
    WeightVector x = random_weight_vector(rng, n, rat(2));
    int dims = 0;
    Rat hsum = 0;
    for (const Segment& s : segments(x)) {
      dims += s.dim;
      hsum += s.height;
    }
    CHECK(dims == n);
    CHECK(hsum == height(x));
  }
}

TEST_CASE("compatibility") {
  CHECK(is_compatible(wv({1, 0}), wv({1, 1}, 2)));
  CHECK(!is_compatible(wv({1, 0, 0}), wv({0, 0, 1})));
  WeightVector x = wv({1, 2, 1});
  CHECK(is_compatible(x, x));

  // the two interleavings are equivalent: compatibility is symmetric
  std::mt19937 rng(33);
  for (int iter = 0; iter < 500; ++iter) {
    int n = 2 + iter % 7;
    WeightVector a = random_weight_vector(rng, n, rat(1));
    WeightVector b = random_weight_vector(rng, n, rat(1));
    CHECK(is_compatible(a, b) == is_compatible(b, a));
  }
}

TEST_CASE("area vs distance from the uniform vector") {
  // A(x1) <= A(x2) iff |x1 - w_h| <= |x2 - w_h|, exactly
  std::mt19937 rng(8);
  for (int iter = 0; iter < 500; ++iter) {
    int n = 1 + iter % 9;
    Rat h = rat(1 + iter % 4);
    WeightVector x1 = random_weight_vector(rng, n, h);
    WeightVector x2 = random_weight_vector(rng, n, h);
    WeightVector w = uniform_vector(n, h);
    auto dist2 = [&](const WeightVector& x) {
      Rat d = 0;
      for (int i = 0; i < n; ++i) d += (x[i] - w[i]) * (x[i] - w[i]);
      return d;
    };
    CHECK((area(x1) <= area(x2)) == (dist2(x1) <= dist2(x2)));
    // w_h is the unique minimizer: A(x) > h^2/n whenever x != w_h
    if (x1 != w) CHECK(area(x1) > h * h / n);
  }
}

TEST_CASE("area decreases along segments toward smaller area") {
  // d/dt A((y-x)t + x) at t=0 equals 2 x.(y-x) < 0 for distinct x,y with
  // A(x) >= A(y)
  std::mt19937 rng(9);
  for (int checked = 0; checked < 200; ++checked) {
    int n = 1 + checked % 6;
    WeightVector x = random_weight_vector(rng, n, rat(2));
    WeightVector y = random_weight_vector(rng, n, rat(2 + checked % 2));
    if (x == y) continue;
    if (area(x) < area(y)) std::swap(x, y);
    Rat dot = 0;
    for (int i = 0; i < n; ++i) dot += x[i] * (y[i] - x[i]);
    CHECK(2 * dot < 0);
    ++checked;
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate_weight_vector({}), std::invalid_argument);
  CHECK_THROWS_AS(validate_weight_vector({rat(0), rat(0)}), std::invalid_argument);
  CHECK_THROWS_AS(validate_weight_vector({rat(-1), rat(2)}), std::invalid_argument);
  CHECK_NOTHROW(validate_weight_vector({rat(0), rat(1)}));
}
