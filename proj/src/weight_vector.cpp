#include "fatflow/weight_vector.hpp"

#include <stdexcept>

namespace fatflow {

void validate_weight_vector(const WeightVector& x) {
  if (x.empty()) throw std::invalid_argument("empty weight vector");
  bool positive = false;
  for (const Rat& v : x) {
    if (v < 0) throw std::invalid_argument("negative component");
    if (v > 0) positive = true;
  }
  if (!positive) throw std::invalid_argument("zero weight vector");
}

Rat height(const WeightVector& x) {
  Rat h = 0;
  for (const Rat& v : x) h += v;
  return h;
}

Rat area(const WeightVector& x) {
  Rat a = 0;
  for (const Rat& v : x) a += v * v;
  return a;
}

WeightVector uniform_vector(int n, const Rat& h) {
  if (n < 1 || h <= 0) throw std::invalid_argument("uniform_vector(n<1 or h<=0)");
  return WeightVector(n, h / n);
}

Partition partition_points(const WeightVector& x) {
  Partition p(x.size() + 1);
  p[0] = 0;
  for (std::size_t i = 0; i < x.size(); ++i) p[i + 1] = p[i] + x[i];
  return p;
}

WeightVector unpartition(const Partition& p) {
  if (p.size() < 2 || p.front() != 0)
    throw std::invalid_argument("not a partition: must start at 0");
  WeightVector x(p.size() - 1);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i + 1] < p[i])
      throw std::invalid_argument("not a partition: decreasing points");
    x[i] = p[i + 1] - p[i];
  }
  return x;
}

std::vector<Leaner> leaners(const WeightVector& x) {
  std::vector<Leaner> out;
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (x[k - 1] > x[k]) out.push_back({static_cast<int>(k), Lean::left});
    else if (x[k - 1] < x[k]) out.push_back({static_cast<int>(k), Lean::right});
  }
  return out;
}

std::vector<Segment> segments(const WeightVector& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Segment> out;
  int lo = 0;
  for (int hi = 1; hi <= n; ++hi) {
    if (hi < n && x[hi] == x[hi - 1]) continue;
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.dim = hi - lo;
    s.value = x[lo];
    s.height = s.value * s.dim;
    if (lo == 0) s.left_end = EndKind::interval_end;
    else  // p_lo is a leaner: left leaner leans away, right leaner toward
      s.left_end = x[lo - 1] > x[lo] ? EndKind::leans_away : EndKind::leans_toward;
    if (hi == n) s.right_end = EndKind::interval_end;
    else
      s.right_end = x[hi - 1] < x[hi] ? EndKind::leans_away : EndKind::leans_toward;
    out.push_back(s);
    lo = hi;
  }
  return out;
}

bool is_compatible(const WeightVector& x, const WeightVector& y) {
  if (x.size() != y.size()) return false;
  Partition p = partition_points(x), q = partition_points(y);
  const std::size_t n = x.size();
  if (p[n] != q[n]) return false;
  for (std::size_t k = 1; k < n; ++k)
    if (!(q[k - 1] <= p[k] && p[k] <= q[k + 1])) return false;
  return true;
}

}  // namespace fatflow
