#include "fatflow/monotone_cuts.hpp"

#include <cstdlib>

namespace fatflow {

bool is_strictly_monotone_cut(const std::vector<int>& rows, int n) {
  if (rows.empty()) return false;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j] < 0 || rows[j] >= n) return false;
    if (j > 0 && std::abs(rows[j] - rows[j - 1]) > 1) return false;
  }
  return true;
}

bool is_sum_of_monotone_cuts(const RectWeights& r) {
  if (r.rows < 1 || r.cols < 1) return false;
  bool positive = false;
  for (const Rat& v : r.w) {
    if (v < 0) return false;
    if (v > 0) positive = true;
  }
  if (!positive) return false;

  // prefix[k][j] = sum of rows 0..k-1 in column j
  auto prefix = [&](int k, int j) {
    Rat s = 0;
    for (int i = 0; i < k; ++i) s += r.at(i, j);
    return s;
  };
  Rat total = prefix(r.rows, 0);
  for (int j = 1; j < r.cols; ++j)
    if (prefix(r.rows, j) != total) return false;
  for (int j = 0; j + 1 < r.cols; ++j)
    for (int k = 1; k < r.rows; ++k) {
      if (prefix(k, j) > prefix(k + 1, j + 1)) return false;
      if (prefix(k, j + 1) > prefix(k + 1, j)) return false;
    }
  return true;
}

std::vector<MonotoneCut> decompose_monotone_cuts(RectWeights r) {
  if (!is_sum_of_monotone_cuts(r))
    throw not_decomposable("matrix is not a sum of strictly monotonic cuts");

  std::vector<MonotoneCut> cuts;
  auto all_zero = [&]() {
    for (const Rat& v : r.w)
      if (v != 0) return false;
    return true;
  };
  while (!all_zero()) {
    MonotoneCut cut;
    cut.rows.resize(r.cols, -1);
    for (int j = 0; j < r.cols; ++j) {
      for (int i = 0; i < r.rows; ++i)
        if (r.at(i, j) != 0) {
          cut.rows[j] = i;
          break;
        }
      if (cut.rows[j] < 0)
        throw not_decomposable("zero column while peeling");  // unreachable
    }
    if (!is_strictly_monotone_cut(cut.rows, r.rows))
      throw not_decomposable("peeled cut is not strictly monotonic");
    cut.coeff = r.at(cut.rows[0], 0);
    for (int j = 1; j < r.cols; ++j)
      if (r.at(cut.rows[j], j) < cut.coeff) cut.coeff = r.at(cut.rows[j], j);
    for (int j = 0; j < r.cols; ++j) r.at(cut.rows[j], j) -= cut.coeff;
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

RectWeights sum_of_cuts(int rows, int cols, const std::vector<MonotoneCut>& cuts) {
  RectWeights r(rows, cols);
  for (const MonotoneCut& c : cuts)
    for (int j = 0; j < cols; ++j) r.at(c.rows[j], j) += c.coeff;
  return r;
}

}  // namespace fatflow
