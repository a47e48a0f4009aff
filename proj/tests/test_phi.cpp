#include <random>

#include "doctest.h"
#include "fatflow/phi.hpp"
#include "test_helpers.hpp"

using namespace fatflow;
using fatflow::testing::random_weight_vector;

namespace {

WeightVector wv(std::initializer_list<long> nums, long den = 1) {
  WeightVector x;
  for (long v : nums) x.push_back(rat(v, den));
  return x;
}

// Independent oracle for phi: enumerate which interior partition points sit
// on the lower bound, the upper bound, or float freely (free runs are
// straight lines between their pinned neighbors), and take the feasible
// candidate of least area. The minimizer's active pattern is among these.
std::optional<WeightVector> phi_enumeration_oracle(const WeightVector& x) {
  const int n = static_cast<int>(x.size());
  Partition p = partition_points(x);
  const Rat h = p[n];
  std::vector<Rat> lo(n + 1), hi(n + 1);
  lo[0] = hi[0] = 0;
  lo[n] = hi[n] = h;
  for (int k = 1; k < n; ++k) {
    lo[k] = p[k - 1];
    hi[k] = p[k + 1];
  }

  std::optional<Rat> best;
  WeightVector best_y;
  long patterns = 1;
  for (int k = 1; k < n; ++k) patterns *= 3;
  for (long code = 0; code < patterns; ++code) {
    std::vector<int> kind(n + 1, 2);  // 0 lower, 1 upper, 2 free
    long c = code;
    for (int k = 1; k < n; ++k) {
      kind[k] = static_cast<int>(c % 3);
      c /= 3;
    }
    kind[0] = kind[n] = 0;

    std::vector<Rat> q(n + 1);
    q[0] = 0;
    q[n] = h;
    for (int k = 1; k < n; ++k)
      if (kind[k] != 2) q[k] = kind[k] == 0 ? lo[k] : hi[k];
    int prev = 0;
    bool ok = true;
    for (int k = 1; k <= n && ok; ++k) {
      if (kind[k] == 2) continue;
      for (int f = prev + 1; f < k; ++f)
        q[f] = q[prev] + (q[k] - q[prev]) * (f - prev) / (k - prev);
      prev = k;
    }
    for (int k = 1; k <= n && ok; ++k) {
      if (q[k] < q[k - 1]) ok = false;       // must stay a weak partition
      if (k < n && (q[k] < lo[k] || q[k] > hi[k])) ok = false;
    }
    if (!ok) continue;
    Rat a = 0;
    for (int k = 1; k <= n; ++k) a += (q[k] - q[k - 1]) * (q[k] - q[k - 1]);
    if (!best || a < *best) {
      best = a;
      best_y = unpartition(q);
    }
  }
  if (!best) return std::nullopt;
  return best_y;
}

}  // namespace

TEST_CASE("phi on small examples") {
  CHECK(phi(wv({1, 0})).y == wv({1, 1}, 2));
  CHECK(phi(wv({1, 0, 0})).y == wv({1, 1, 0}, 2));
  CHECK(phi(wv({2, 0})).y == wv({1, 1}));
  WeightVector w = uniform_vector(5, rat(3));
  CHECK(phi(w).y == w);
}

TEST_CASE("phi matches the enumeration oracle") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 400; ++iter) {
    int n = 1 + iter % 6;
    WeightVector x = random_weight_vector(rng, n, rat(1 + iter % 3));
    auto oracle = phi_enumeration_oracle(x);
    REQUIRE(oracle.has_value());
    CHECK(phi(x).y == *oracle);
  }
}

TEST_CASE("minimal compatibility checker") {
  CHECK(is_minimal_compatible(wv({1, 0, 0}), wv({1, 1, 0}, 2)));
  CHECK(!is_minimal_compatible(wv({1, 0}), wv({1, 0})));
  WeightVector w = uniform_vector(4, rat(1));
  CHECK(is_minimal_compatible(w, w));
}

TEST_CASE("checker characterizes phi exactly at small n") {
  // exhaustive grid of weight vectors y with denominator 4 partitions
  std::mt19937 rng(29);
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 12; ++rep) {
      // x itself on the grid so blocked coincidences are exercised
      std::vector<Rat> comp(n);
      int tries = 0;
      Rat h;
      do {
        h = 0;
        for (auto& v : comp) {
          v = rat(std::uniform_int_distribution<int>(0, 4)(rng), 4);
          h += v;
        }
      } while (h == 0 && ++tries < 100);
      if (h == 0) continue;
      WeightVector x(comp);
      WeightVector expected = phi(x).y;

      // enumerate all weak partitions q with q_k in {0, h/8, ..., h}
      const int D = 8;
      std::vector<int> idx(n - 1, 0);
      bool done = false;
      int matches = 0;
      while (!done) {
        Partition q(n + 1);
        q[0] = 0;
        q[n] = h;
        bool mono = true;
        for (int k = 1; k < n; ++k) {
          q[k] = h * idx[k - 1] / D;
          if (q[k] < q[k - 1]) mono = false;
        }
        if (mono && q[n] >= q[n - 1]) {
          WeightVector y = unpartition(q);
          if (is_minimal_compatible(x, y)) {
            CHECK(y == expected);
            ++matches;
          }
        }
        int pos = 0;
        while (pos < n - 1 && ++idx[pos] > D) idx[pos++] = 0;
        if (pos == n - 1) done = true;
      }
      // phi(x) itself appears whenever its partition lies on the grid
      (void)matches;
    }
  }
}

TEST_CASE("phi core properties") {
  std::mt19937 rng(41);
  for (int iter = 0; iter < 600; ++iter) {
    int n = 1 + iter % 8;
    Rat h = rat(1 + iter % 3);
    WeightVector x = random_weight_vector(rng, n, h);
    PhiResult r = phi(x);

    CHECK(height(r.y) == h);  // height preservation, exact

    // homogeneity
    Rat scale = rat(1 + iter % 5, 1 + (iter / 2) % 4);
    WeightVector sx(x);
    for (auto& v : sx) v *= scale;
    WeightVector sy = phi(sx).y;
    for (int i = 0; i < n; ++i) CHECK(sy[i] == scale * r.y[i]);

    // strict area decrease off the fixed point
    WeightVector w = uniform_vector(n, h);
    if (x == w) CHECK(r.y == w);
    else CHECK(area(r.y) < area(x));

    // certificate, and leaner inheritance: a blocked leaner q_k of the image
    // coincides with a partition point of x that is itself a leaner of the
    // same direction
    CHECK(is_minimal_compatible(x, r.y));
    auto lx = leaners(x);
    CHECK(r.blocked_leaners.size() == leaners(r.y).size());
    for (const BlockedLeaner& l : r.blocked_leaners) {
      bool found = false;
      for (const Leaner& m : lx)
        if (m.index == l.blocking_index && m.dir == l.dir) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("mu examples") {
  CHECK(mu(wv({1, 0, 0})).mu == 2);
  CHECK(mu(wv({1, 0, 0})).per_index == std::vector<int>{1, 2});
  CHECK(mu(uniform_vector(7, rat(2))).mu == 0);
  for (int n = 2; n <= 9; ++n) {
    WeightVector x(n, Rat(0));
    x[n - 1] = rat(3);
    CHECK(mu(x).mu == n - 1);
  }
  CHECK(mu(wv({0, 0, 1})).mu == 2);
}

TEST_CASE("mu equals the minimal iteration count") {
  std::mt19937 rng(77);
  for (int iter = 0; iter < 300; ++iter) {
    int n = 1 + iter % 8;
    Rat h = rat(1 + iter % 2);
    WeightVector x = random_weight_vector(rng, n, h);
    WeightVector w = uniform_vector(n, h);
    int m = mu(x).mu;
    CHECK(iterate_phi(x, m) == w);
    if (m > 0) CHECK(iterate_phi(x, m - 1) != w);
    // the section-7 claims
    CHECK(iterate_phi(x, n - 1) == w);
    CHECK(iterate_phi(x, 3 * n) == w);
  }
}

TEST_CASE("iterate_phi basics") {
  WeightVector x = wv({1, 0, 0});
  CHECK(iterate_phi(x, 0) == x);
  CHECK(iterate_phi(x, 1) == wv({1, 1, 0}, 2));
  CHECK(iterate_phi(x, 2) == uniform_vector(3, rat(1)));
}

TEST_CASE("minimal preimage") {
  CHECK(minimal_preimage(wv({1, 1, 0}, 2)) == WeightVector(wv({1, 0, 0})));
  WeightVector w = uniform_vector(4, rat(2));
  CHECK(minimal_preimage(w) == w);
  CHECK(!minimal_preimage(wv({1, 0})).has_value());

  // cross-check: no x on a coarse rational grid maps to (1,0)
  for (int a = 0; a <= 6; ++a) {
    Rat p1 = rat(a, 6);
    WeightVector x{p1, 1 - p1};
    if (height(x) != 1) continue;
    CHECK(phi(x).y != wv({1, 0}));
  }
}

TEST_CASE("minimal preimage is area minimal") {
  std::mt19937 rng(55);
  for (int iter = 0; iter < 400; ++iter) {
    int n = 1 + iter % 8;
    WeightVector x = random_weight_vector(rng, n, rat(1));
    WeightVector y = phi(x).y;
    auto pre = minimal_preimage(y);
    REQUIRE(pre.has_value());
    CHECK(phi(*pre).y == y);
    CHECK(area(*pre) <= area(x));
    if (*pre != x) CHECK(area(*pre) < area(x));
  }
}

TEST_CASE("extend rectangle") {
  RectWeights r = extend_rectangle(wv({1, 0, 0}), 3);
  CHECK(r.column(0) == wv({1, 0, 0}));
  CHECK(r.column(1) == wv({1, 1, 0}, 2));
  CHECK(r.column(2) == uniform_vector(3, rat(1)));
  CHECK(is_sum_of_monotone_cuts(r));

  WeightVector w = uniform_vector(4, rat(1));
  RectWeights ru = extend_rectangle(w, 5);
  for (int j = 0; j < 5; ++j) CHECK(ru.column(j) == w);

  RectWeights r2 = extend_rectangle(wv({1, 0}), 2);
  Rat total = 0;
  for (const Rat& v : r2.w) total += v * v;
  CHECK(total == rat(3, 2));
}
