#pragma once

#include <vector>

#include "fatflow/rational.hpp"

namespace fatflow {

// Nonnegative rational components, not all zero. Component i corresponds to
// the tile in row i of a bar column (top row first).
using WeightVector = std::vector<Rat>;

// Weak partition 0 = p_0 <= p_1 <= ... <= p_n = H(x) of prefix sums.
using Partition = std::vector<Rat>;

void validate_weight_vector(const WeightVector& x);

Rat height(const WeightVector& x);  // sum of components
Rat area(const WeightVector& x);    // sum of squared components

// w_h = (h/n, ..., h/n), the unique area minimizer in W_h.
WeightVector uniform_vector(int n, const Rat& h);

Partition partition_points(const WeightVector& x);
WeightVector unpartition(const Partition& p);  // inverse bijection

enum class Lean { left, right };

struct Leaner {
  int index = 0;  // k in 1..n-1
  Lean dir = Lean::left;
  friend bool operator==(const Leaner&, const Leaner&) = default;
};

// p_k is a left leaner when x_k > x_{k+1}, a right leaner when x_k < x_{k+1}.
std::vector<Leaner> leaners(const WeightVector& x);

enum class EndKind { interval_end, leans_away, leans_toward };

// Maximal run of equal components between leaners and/or interval ends.
struct Segment {
  int lo = 0, hi = 0;  // partition indices; components lo+1..hi
  Rat value;
  int dim = 0;  // hi - lo
  Rat height;
  EndKind left_end = EndKind::interval_end;
  EndKind right_end = EndKind::interval_end;
};

std::vector<Segment> segments(const WeightVector& x);

// Equal heights and interleaving partitions: q_{k-1} <= p_k <= q_{k+1}.
bool is_compatible(const WeightVector& x, const WeightVector& y);

}  // namespace fatflow
