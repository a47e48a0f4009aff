#pragma once

#include <stdexcept>
#include <vector>

#include "fatflow/rational.hpp"

namespace fatflow {

// Weights on an n-row by m-column rectangle of tiles, row-major, row 0 first.
struct RectWeights {
  int rows = 0, cols = 0;
  std::vector<Rat> w;

  RectWeights() = default;
  RectWeights(int r, int c) : rows(r), cols(c), w(r * c) {}
  Rat& at(int i, int j) { return w[i * cols + j]; }
  const Rat& at(int i, int j) const { return w[i * cols + j]; }
  std::vector<Rat> column(int j) const {
    std::vector<Rat> out(rows);
    for (int i = 0; i < rows; ++i) out[i] = at(i, j);
    return out;
  }
};

// A strictly monotonic skinny cut: one tile per column, row shift at most
// one between adjacent columns.
struct MonotoneCut {
  Rat coeff;
  std::vector<int> rows;  // rows[j] = row of the cut tile in column j
};

bool is_strictly_monotone_cut(const std::vector<int>& rows, int n);

// Column sums all equal plus the staircase inequalities
// sum_{i<=k} w(i,j) <= sum_{i<=k+1} w(i,j+1) and symmetrically.
bool is_sum_of_monotone_cuts(const RectWeights& r);

// Greedy peeling: repeatedly remove c * (topmost nonzero tile per column),
// c the minimum of those weights. Exact; the weighted cuts re-sum to r.
std::vector<MonotoneCut> decompose_monotone_cuts(RectWeights r);

RectWeights sum_of_cuts(int rows, int cols, const std::vector<MonotoneCut>& cuts);

class not_decomposable : public std::runtime_error {
 public:
  explicit not_decomposable(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fatflow
