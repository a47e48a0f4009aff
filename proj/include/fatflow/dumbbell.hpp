#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fatflow/grid.hpp"

namespace fatflow {

enum class DumbbellError {
  bad_input,
  bar_too_short,
  attachment_not_connected,
  not_a_disk,
};

class dumbbell_error : public std::runtime_error {
 public:
  dumbbell_error(DumbbellError code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  DumbbellError code() const { return code_; }

 private:
  DumbbellError code_;
};

struct BarSpec {
  LatticePoint origin;  // lower-left corner of the bar rectangle
  int width = 0;        // columns of tiles
  int height = 0;       // rows of tiles (the bar height n)
};

struct DumbbellSpec {
  BarSpec bar;
  std::vector<TileId> left_ball;
  std::vector<TileId> right_ball;
  std::optional<std::array<LatticePoint, 4>> corners;
};

// Left ball + bar + right ball, a quadrilateral subcomplex of the square
// tiling. The bar is at least six times as wide as high; balls may be empty.
class Dumbbell {
 public:
  static Dumbbell build(const DumbbellSpec& spec);

  const GridComplex& complex() const { return complex_; }
  const BarSpec& bar() const { return bar_; }
  int bar_height() const { return bar_.height; }
  int bar_width() const { return bar_.width; }

  const std::vector<int>& bar_tiles() const { return bar_tiles_; }
  const std::vector<int>& left_ball() const { return left_ball_; }
  const std::vector<int>& right_ball() const { return right_ball_; }
  std::vector<int> ball_tiles() const;

  // Column j (0-based from the left), ordered top row first.
  std::vector<int> bar_column(int j) const;

  const DumbbellSpec& spec() const { return spec_; }

  // Bar tiles whose skinny path distance to the balls is >= threshold
  // (default 3n). All bar tiles when both balls are empty.
  std::vector<int> middle_tiles(int threshold = -1) const;

  Dumbbell subdivide_binary() const;

 private:
  Dumbbell() = default;

  GridComplex complex_;
  BarSpec bar_;
  std::vector<int> bar_tiles_, left_ball_, right_ball_;
  DumbbellSpec spec_;  // retained for subdivision
};

struct UniformityReport {
  std::vector<int> qualifying_tiles;
  std::vector<int> violating_tiles;
  double height = 0;        // H_rho
  double target = 0;        // H_rho / n
  double max_deviation = 0; // max |rho(t) - H/n| over qualifying tiles
  bool pass = true;         // max_deviation <= tol * H_rho
};

// Weights on middle-bar tiles must equal H_rho/n.
UniformityReport check_virtually_bar_uniform(const Dumbbell& d,
                                             const std::vector<double>& rho,
                                             double tol, int threshold = -1);

}  // namespace fatflow
