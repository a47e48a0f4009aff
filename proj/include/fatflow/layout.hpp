#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatflow/grid.hpp"
#include "fatflow/modulus.hpp"

namespace fatflow {

struct LayoutSquare {
  TileId tile;
  double x = 0, y = 0, side = 0;  // y measured down from the top edge
};

struct SquaredLayout {
  double rect_width = 0, rect_height = 0;
  std::vector<LayoutSquare> squares;    // positive-weight tiles only
  std::vector<LayoutSquare> collapsed;  // zero-weight tiles, kept as points

  // exact coordinates, aligned with squares, when built from an exact solve
  bool exact = false;
  Rat rect_width_q, rect_height_q;
  std::vector<Rat> xq, yq, sideq;
};

// Coordinate rule: the vertical position is the fat shortest-path distance
// from the top arc (inclusive) minus the tile's weight; the horizontal
// position is the same with skinny chains from the left arc.
SquaredLayout layout_squares(const GridComplex& c, const ModulusResult& r);

class layout_error : public std::runtime_error {
 public:
  explicit layout_error(const std::string& msg) : std::runtime_error(msg) {}
};

// layout_squares + validate_layout; throws layout_error when validation
// fails (the result was not optimal, or the coordinate rule broke down).
SquaredLayout layout_squares_checked(const GridComplex& c,
                                     const ModulusResult& r, double tol = 1e-7);

struct LayoutReport {
  double area_residual = 0;   // |sum of side^2 - rect area|
  double max_overlap = 0;     // largest pairwise interior overlap area
  double bounds_residual = 0; // how far any square pokes out of the rect
  int uncovered_samples = 0;  // sample-grid points in no square
  bool pass = false;
};

LayoutReport validate_layout(const SquaredLayout& l, double tol,
                             int sample_grid = 512);

// Exact counterpart; residuals are exact rationals cast to double, so a
// perfect layout reports exact zeros.
LayoutReport validate_layout_exact(const SquaredLayout& l, int sample_grid = 512);

void emit_svg(const SquaredLayout& l, const std::string& path,
              bool labels = false);

// Outline drawing of a tiling with its four corners marked.
void emit_tiling_svg(const GridComplex& c, const std::string& path);

}  // namespace fatflow
