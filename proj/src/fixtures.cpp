#include "fatflow/fixtures.hpp"

#include <algorithm>
#include <set>

namespace fatflow::fixtures {

namespace {

// Quick disk test used while growing random shapes.
bool is_disk(const std::vector<TileId>& tiles) {
  try {
    GridComplex::boundary_circuit(tiles);
    return true;
  } catch (const complex_error&) {
    return false;
  }
}

}  // namespace

GridComplex rectangle_quad(int rows, int cols) {
  std::vector<TileId> tiles;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) tiles.push_back({c, r});
  return GridComplex::build(tiles,
                            {{{0, rows}, {cols, rows}, {cols, 0}, {0, 0}}});
}

GridComplex ell_quadrilateral() {
  std::vector<TileId> tiles{{-1, 0}, {-1, 1}, {0, 0}};
  return GridComplex::build(tiles, {{{-1, 2}, {0, 2}, {1, 0}, {-1, 0}}});
}

Dumbbell classic_dumbbell() {
  DumbbellSpec s;
  s.bar = {{0, 0}, 8, 1};
  // Trumpet-shaped blobs: the contact column matches the bar height and the
  // blob widens symmetrically one row per column. With no ball tile
  // touching a bar corner, the optimal weights stay constant across the
  // whole bar, and binary subdivision preserves that.
  for (int c = -1; c >= -3; --c)
    for (int r = 1 + c; r <= -1 - c; ++r) s.left_ball.push_back({c, r});
  for (const TileId& t : s.left_ball) s.right_ball.push_back({7 - t.col, t.row});
  return Dumbbell::build(s);
}

Dumbbell tray_dumbbell() {
  DumbbellSpec s;
  s.bar = {{0, 0}, 8, 1};
  s.left_ball = {{-1, 0}, {-1, 1}};
  s.right_ball = {{8, 0}, {8, 1}};
  s.corners = {{{0, 2}, {8, 2}, {9, 2}, {-1, 2}}};
  return Dumbbell::build(s);
}

Dumbbell bare_bar(int height, int width) {
  DumbbellSpec s;
  s.bar = {{0, 0}, width, height};
  return Dumbbell::build(s);
}

GridComplex random_polyomino_quad(std::mt19937& rng, int max_tiles) {
  std::uniform_int_distribution<int> size_dist(1, max_tiles);
  int target = size_dist(rng);

  std::vector<TileId> tiles{{0, 0}};
  std::set<TileId> present{{0, 0}};
  int attempts = 0;
  while (static_cast<int>(tiles.size()) < target && attempts < 20 * target) {
    ++attempts;
    std::uniform_int_distribution<std::size_t> pick(0, tiles.size() - 1);
    TileId base = tiles[pick(rng)];
    const TileId nbrs[4] = {{base.col + 1, base.row}, {base.col - 1, base.row},
                            {base.col, base.row + 1}, {base.col, base.row - 1}};
    TileId cand = nbrs[std::uniform_int_distribution<int>(0, 3)(rng)];
    if (present.count(cand)) continue;
    tiles.push_back(cand);
    if (!is_disk(tiles)) {
      tiles.pop_back();
      continue;
    }
    present.insert(cand);
  }

  std::vector<LatticePoint> circuit = GridComplex::boundary_circuit(tiles);
  const int L = static_cast<int>(circuit.size());
  // Four distinct circuit positions, each arc at least one edge long.
  std::array<int, 4> pos;
  if (L == 4) {
    pos = {0, 1, 2, 3};
  } else {
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < 4)
      chosen.insert(std::uniform_int_distribution<int>(0, L - 1)(rng));
    std::copy(chosen.begin(), chosen.end(), pos.begin());
    // Random rotation so every side gets to be "top".
    std::rotate(pos.begin(),
                pos.begin() + std::uniform_int_distribution<int>(0, 3)(rng),
                pos.end());
  }
  std::array<LatticePoint, 4> corners{circuit[pos[0]], circuit[pos[1]],
                                      circuit[pos[2]], circuit[pos[3]]};
  return GridComplex::build(tiles, corners);
}

Dumbbell random_dumbbell(std::mt19937& rng, int bar_height, int bar_width,
                         int max_ball) {
  DumbbellSpec s;
  s.bar = {{0, 0}, bar_width, bar_height};

  auto grow_ball = [&](bool left) {
    std::vector<TileId> ball;
    if (std::uniform_int_distribution<int>(0, 5)(rng) == 0 || max_ball <= 0)
      return ball;  // occasionally empty
    int contact_col = left ? -1 : bar_width;
    int r1 = std::uniform_int_distribution<int>(0, bar_height - 1)(rng);
    int r2 = std::uniform_int_distribution<int>(r1, bar_height - 1)(rng);
    for (int r = r1; r <= r2; ++r) ball.push_back({contact_col, r});

    std::uniform_int_distribution<int> size_dist(
        static_cast<int>(ball.size()), max_ball);
    int target = size_dist(rng);
    std::set<TileId> present(ball.begin(), ball.end());
    auto all_tiles = [&]() {
      std::vector<TileId> tiles;
      for (int c = 0; c < bar_width; ++c)
        for (int r = 0; r < bar_height; ++r) tiles.push_back({c, r});
      tiles.insert(tiles.end(), ball.begin(), ball.end());
      return tiles;
    };
    int run_lo = r1, run_hi = r2;
    int attempts = 0;
    while (static_cast<int>(ball.size()) < target && attempts < 20 * target) {
      ++attempts;
      std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
      TileId base = ball[pick(rng)];
      const TileId nbrs[4] = {{base.col + 1, base.row},
                              {base.col - 1, base.row},
                              {base.col, base.row + 1},
                              {base.col, base.row - 1}};
      TileId cand = nbrs[std::uniform_int_distribution<int>(0, 3)(rng)];
      if (present.count(cand)) continue;
      if (left ? cand.col >= 0 : cand.col < bar_width) continue;
      // Tiles in the contact column must keep the attachment a single run
      // (diagonal contacts at bar corners only as extensions of the run).
      if (cand.col == contact_col) {
        if (cand.row >= 0 && cand.row < bar_height) {
          if (cand.row != run_lo - 1 && cand.row != run_hi + 1) continue;
        } else if (cand.row == -1) {
          if (run_lo != 0) continue;
        } else if (cand.row == bar_height) {
          if (run_hi != bar_height - 1) continue;
        }
      }
      ball.push_back(cand);
      if (!is_disk(all_tiles())) {
        ball.pop_back();
        continue;
      }
      present.insert(cand);
      if (cand.col == contact_col && cand.row >= 0 && cand.row < bar_height) {
        run_lo = std::min(run_lo, cand.row);
        run_hi = std::max(run_hi, cand.row);
      }
    }
    return ball;
  };

  s.left_ball = grow_ball(true);
  s.right_ball = grow_ball(false);
  return Dumbbell::build(s);
}

}  // namespace fatflow::fixtures
