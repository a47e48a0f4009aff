#pragma once

#include <optional>
#include <vector>

#include "fatflow/monotone_cuts.hpp"
#include "fatflow/weight_vector.hpp"

namespace fatflow {

struct BlockedLeaner {
  int index = 0;           // leaner q_k of the image
  Lean dir = Lean::left;
  int blocking_index = 0;  // the partition point of x pinning it
};

struct PhiResult {
  WeightVector y;
  std::vector<BlockedLeaner> blocked_leaners;
};

// The skinny cut function: the minimal-area weight vector compatible with x.
// Computed as the taut string through the corridor p_{k-1} <= q_k <= p_{k+1}
// anchored at (0,0) and (n,H(x)); certified against the blocking
// characterization after every evaluation.
PhiResult phi(const WeightVector& x);

// True iff y is compatible with x and every leaner of y is blocked by x;
// such a y equals phi(x).
bool is_minimal_compatible(const WeightVector& x, const WeightVector& y);

struct MuValue {
  int mu = 0;
  std::vector<int> per_index;  // mu_1..mu_{n-1}
};

// Least m with phi^m(x) = w_h, computed from partition point counts.
MuValue mu(const WeightVector& x);

// The unique area-minimal x with phi(x) = y; nullopt when y is not in the
// image of phi.
std::optional<WeightVector> minimal_preimage(const WeightVector& y);

WeightVector iterate_phi(WeightVector x, int m);

// Minimal-area sum-of-monotone-cuts extension of x across m columns:
// column j equals phi^j(x). Row 0 of the result is component 0.
RectWeights extend_rectangle(const WeightVector& x, int m);

}  // namespace fatflow
