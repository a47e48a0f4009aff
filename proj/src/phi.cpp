#include "fatflow/phi.hpp"

#include <stdexcept>

namespace fatflow {

namespace {

// Taut string through vertical gates lo[k] <= q_k <= hi[k], k = 0..n, with
// lo[0] = hi[0] and lo[n] = hi[n]. Walks gates keeping the window of chord
// slopes from the last knot; a knot is laid down where the window empties.
// The result minimizes every convex function of the increments, in
// particular the area of the increment vector.
std::vector<Rat> taut_string(const std::vector<Rat>& lo,
                             const std::vector<Rat>& hi) {
  const int n = static_cast<int>(lo.size()) - 1;
  std::vector<std::pair<int, Rat>> knots{{0, lo[0]}};
  int base_i = 0;
  Rat base_v = lo[0];
  while (base_i < n) {
    Rat smax, smin;
    int kmax = 0, kmin = 0;
    bool have = false;
    for (int k = base_i + 1; k <= n; ++k) {
      Rat sup = (hi[k] - base_v) / (k - base_i);
      Rat slo = (lo[k] - base_v) / (k - base_i);
      if (have && slo > smax) {  // forced bend down onto the upper bound
        knots.push_back({kmax, hi[kmax]});
        base_i = kmax;
        base_v = hi[kmax];
        break;
      }
      if (have && sup < smin) {  // forced bend up onto the lower bound
        knots.push_back({kmin, lo[kmin]});
        base_i = kmin;
        base_v = lo[kmin];
        break;
      }
      if (!have || sup < smax) {
        smax = sup;
        kmax = k;
      }
      if (!have || slo > smin) {
        smin = slo;
        kmin = k;
      }
      have = true;
      if (k == n) {  // the endpoint fits the window: straight segment
        knots.push_back({n, lo[n]});
        base_i = n;
      }
    }
  }

  std::vector<Rat> q(n + 1);
  q[0] = lo[0];
  for (std::size_t s = 1; s < knots.size(); ++s) {
    auto [i1, v1] = knots[s - 1];
    auto [i2, v2] = knots[s];
    for (int k = i1 + 1; k <= i2; ++k)
      q[k] = v1 + (v2 - v1) * (k - i1) / (i2 - i1);
  }
  return q;
}

}  // namespace

bool is_minimal_compatible(const WeightVector& x, const WeightVector& y) {
  if (x.size() != y.size()) return false;
  if (!is_compatible(x, y)) return false;
  Partition p = partition_points(x), q = partition_points(y);
  for (const Leaner& l : leaners(y)) {
    if (l.dir == Lean::left && q[l.index] != p[l.index - 1]) return false;
    if (l.dir == Lean::right && q[l.index] != p[l.index + 1]) return false;
  }
  return true;
}

PhiResult phi(const WeightVector& x) {
  validate_weight_vector(x);
  const int n = static_cast<int>(x.size());
  Partition p = partition_points(x);

  std::vector<Rat> lo(n + 1), hi(n + 1);
  lo[0] = hi[0] = 0;
  lo[n] = hi[n] = p[n];
  for (int k = 1; k < n; ++k) {
    lo[k] = p[k - 1];
    hi[k] = p[k + 1];
  }

  std::vector<Rat> q = taut_string(lo, hi);
  PhiResult r;
  r.y = unpartition(q);
  if (!is_minimal_compatible(x, r.y))
    throw std::logic_error("phi certificate failed");  // algorithm bug
  for (const Leaner& l : leaners(r.y))
    r.blocked_leaners.push_back(
        {l.index, l.dir, l.dir == Lean::left ? l.index - 1 : l.index + 1});
  return r;
}

MuValue mu(const WeightVector& x) {
  validate_weight_vector(x);
  const int n = static_cast<int>(x.size());
  Partition p = partition_points(x);
  const Rat h = p[n];
  MuValue m;
  for (int i = 1; i < n; ++i) {
    Rat target = h * i / n;
    int count = 0;
    if (p[i] < target) {
      for (int k = i; k <= n - 1; ++k)
        if (p[k] >= p[i] && p[k] < target) ++count;
    } else if (p[i] > target) {
      for (int k = 1; k <= i; ++k)
        if (p[k] > target && p[k] <= p[i]) ++count;
    }
    m.per_index.push_back(count);
    if (count > m.mu) m.mu = count;
  }
  return m;
}

std::optional<WeightVector> minimal_preimage(const WeightVector& y) {
  validate_weight_vector(y);
  WeightVector x;
  for (const Segment& t : segments(y)) {
    int away = (t.left_end == EndKind::leans_away) +
               (t.right_end == EndKind::leans_away);
    int toward = (t.left_end == EndKind::leans_toward) +
                 (t.right_end == EndKind::leans_toward);
    int dim = t.dim + away - toward;
    if (dim < 1) return std::nullopt;
    Rat value = t.height / dim;
    for (int i = 0; i < dim; ++i) x.push_back(value);
  }
  if (phi(x).y != y) return std::nullopt;
  return x;
}

WeightVector iterate_phi(WeightVector x, int m) {
  for (int i = 0; i < m; ++i) x = phi(x).y;
  return x;
}

RectWeights extend_rectangle(const WeightVector& x, int m) {
  validate_weight_vector(x);
  if (m < 1) throw std::invalid_argument("extend_rectangle: m < 1");
  RectWeights r(static_cast<int>(x.size()), m);
  WeightVector col = x;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < r.rows; ++i) r.at(i, j) = col[i];
    if (j + 1 < m) col = phi(col).y;
  }
  if (!is_sum_of_monotone_cuts(r))
    throw std::logic_error("extension fails the cut predicate");  // bug guard
  return r;
}

}  // namespace fatflow
