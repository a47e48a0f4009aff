#include "fatflow/dumbbell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "fatflow/dijkstra.hpp"

namespace fatflow {

namespace {

// Default corners: extreme lattice vertices of the complex, so that the left
// arc runs up the westmost side (and contains the left ball's westmost
// edges when the ball is the westmost part).
std::array<LatticePoint, 4> extreme_corners(const std::vector<TileId>& tiles) {
  int xmin = tiles[0].col, xmax = tiles[0].col + 1;
  for (TileId t : tiles) {
    xmin = std::min(xmin, t.col);
    xmax = std::max(xmax, t.col + 1);
  }
  int ymin_w = std::numeric_limits<int>::max(), ymax_w = std::numeric_limits<int>::min();
  int ymin_e = ymin_w, ymax_e = ymax_w;
  for (TileId t : tiles) {
    if (t.col == xmin) {
      ymin_w = std::min(ymin_w, t.row);
      ymax_w = std::max(ymax_w, t.row + 1);
    }
    if (t.col + 1 == xmax) {
      ymin_e = std::min(ymin_e, t.row);
      ymax_e = std::max(ymax_e, t.row + 1);
    }
  }
  return {LatticePoint{xmin, ymax_w}, {xmax, ymax_e}, {xmax, ymin_e}, {xmin, ymin_w}};
}

}  // namespace

std::vector<int> Dumbbell::ball_tiles() const {
  std::vector<int> out(left_ball_);
  out.insert(out.end(), right_ball_.begin(), right_ball_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Dumbbell::bar_column(int j) const {
  std::vector<int> out;
  for (int r = bar_.height - 1; r >= 0; --r)
    out.push_back(complex_.index_of({bar_.origin.x + j, bar_.origin.y + r}));
  return out;
}

std::vector<int> Dumbbell::middle_tiles(int threshold) const {
  if (threshold < 0) threshold = 3 * bar_.height;
  std::vector<int> balls = ball_tiles();
  if (balls.empty()) return bar_tiles_;
  std::vector<int> hops = complex_.skinny_hops_from(balls);
  std::vector<int> out;
  for (int t : bar_tiles_)
    if (hops[t] >= threshold) out.push_back(t);
  return out;
}

Dumbbell Dumbbell::subdivide_binary() const {
  DumbbellSpec s;
  s.bar.origin = {2 * bar_.origin.x, 2 * bar_.origin.y};
  s.bar.width = 2 * bar_.width;
  s.bar.height = 2 * bar_.height;
  auto children = [](const std::vector<TileId>& ts) {
    std::vector<TileId> out;
    for (TileId t : ts)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.push_back({2 * t.col + i, 2 * t.row + j});
    return out;
  };
  s.left_ball = children(spec_.left_ball);
  s.right_ball = children(spec_.right_ball);
  std::array<LatticePoint, 4> corners = complex_.corners();
  for (auto& c : corners) {
    c.x *= 2;
    c.y *= 2;
  }
  s.corners = corners;
  return build(s);
}

Dumbbell Dumbbell::build(const DumbbellSpec& spec) {
  const BarSpec& bar = spec.bar;
  if (bar.width < 1 || bar.height < 1)
    throw dumbbell_error(DumbbellError::bad_input, "empty bar");
  if (bar.width < 6 * bar.height)
    throw dumbbell_error(DumbbellError::bar_too_short,
                         "bar width " + std::to_string(bar.width) +
                             " < 6 x height " + std::to_string(bar.height));

  const int x0 = bar.origin.x, y0 = bar.origin.y;
  const int x1 = x0 + bar.width, y1 = y0 + bar.height;

  std::vector<TileId> tiles;
  for (int c = x0; c < x1; ++c)
    for (int r = y0; r < y1; ++r) tiles.push_back({c, r});

  // Balls sit strictly beyond the bar ends; this keeps any contact with the
  // bar on its left/right sides (never on the top or bottom rows).
  auto check_ball = [&](const std::vector<TileId>& ball, bool left) {
    std::set<TileId> seen;
    std::vector<int> contact_rows;
    bool corner_lo = false, corner_hi = false;
    int contact_col = left ? x0 - 1 : x1;
    for (TileId t : ball) {
      if (!seen.insert(t).second)
        throw dumbbell_error(DumbbellError::bad_input, "duplicate ball tile");
      if (left ? t.col >= x0 : t.col < x1)
        throw dumbbell_error(DumbbellError::bad_input,
                             "ball tile overlaps or passes the bar");
      if (t.col == contact_col) {
        if (t.row >= y0 && t.row < y1) contact_rows.push_back(t.row);
        if (t.row == y0 - 1) corner_lo = true;
        if (t.row == y1) corner_hi = true;
      }
    }
    if (ball.empty()) return;
    if (contact_rows.empty())
      throw dumbbell_error(DumbbellError::attachment_not_connected,
                           "ball does not meet the bar side");
    std::sort(contact_rows.begin(), contact_rows.end());
    for (std::size_t i = 1; i < contact_rows.size(); ++i)
      if (contact_rows[i] != contact_rows[i - 1] + 1)
        throw dumbbell_error(DumbbellError::attachment_not_connected,
                             "ball meets the bar side in a disconnected set");
    // A diagonal contact at a bar corner is part of the attachment; it must
    // extend the contact run, not float apart from it.
    if (corner_lo && contact_rows.front() != y0)
      throw dumbbell_error(DumbbellError::attachment_not_connected,
                           "corner contact detached from the attachment");
    if (corner_hi && contact_rows.back() != y1 - 1)
      throw dumbbell_error(DumbbellError::attachment_not_connected,
                           "corner contact detached from the attachment");
  };
  check_ball(spec.left_ball, true);
  check_ball(spec.right_ball, false);

  tiles.insert(tiles.end(), spec.left_ball.begin(), spec.left_ball.end());
  tiles.insert(tiles.end(), spec.right_ball.begin(), spec.right_ball.end());

  std::array<LatticePoint, 4> corners =
      spec.corners ? *spec.corners : extreme_corners(tiles);

  Dumbbell d;
  try {
    d.complex_ = GridComplex::build(tiles, corners);
  } catch (const complex_error& e) {
    if (e.code() == ComplexError::not_connected ||
        e.code() == ComplexError::has_holes)
      throw dumbbell_error(DumbbellError::not_a_disk, e.what());
    throw;
  }
  d.bar_ = bar;
  d.spec_ = spec;
  d.spec_.corners = corners;
  for (int c = x0; c < x1; ++c)
    for (int r = y0; r < y1; ++r)
      d.bar_tiles_.push_back(d.complex_.index_of({c, r}));
  d.left_ball_ = d.complex_.indices_of(spec.left_ball);
  d.right_ball_ = d.complex_.indices_of(spec.right_ball);
  std::sort(d.left_ball_.begin(), d.left_ball_.end());
  std::sort(d.right_ball_.begin(), d.right_ball_.end());
  return d;
}

UniformityReport check_virtually_bar_uniform(const Dumbbell& d,
                                             const std::vector<double>& rho,
                                             double tol, int threshold) {
  UniformityReport r;
  r.qualifying_tiles = d.middle_tiles(threshold);
  r.height =
      shortest_fat_path(d.complex(), rho, Side::top, Side::bottom).length;
  r.target = r.height / d.bar_height();
  for (int t : r.qualifying_tiles) {
    double dev = std::abs(rho[t] - r.target);
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > tol * r.height) r.violating_tiles.push_back(t);
  }
  r.pass = r.violating_tiles.empty();
  return r;
}

}  // namespace fatflow
