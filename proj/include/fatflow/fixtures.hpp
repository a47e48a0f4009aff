#pragma once

#include <random>
#include <vector>

#include "fatflow/dumbbell.hpp"
#include "fatflow/grid.hpp"

namespace fatflow::fixtures {

// n rows x m columns of unit tiles with the natural corners.
GridComplex rectangle_quad(int rows, int cols);

// The three-tile L (two-tile ball plus one bar tile, right ball empty).
GridComplex ell_quadrilateral();

// Bar 8x1 with symmetric trumpet-shaped 9-tile balls on both ends;
// left/right edges are the outer ball sides. Its optimal weights are
// constant across the entire bar at every subdivision level.
Dumbbell classic_dumbbell();

// Bar 8x1 with two-tile balls whose *top* sides serve as the left and right
// edges.
Dumbbell tray_dumbbell();

// A bar with empty balls (a plain rectangle viewed as a dumbbell).
Dumbbell bare_bar(int height, int width);

// Random edge-connected disk polyomino with corners picked on the boundary
// circuit. Tile count <= max_tiles.
GridComplex random_polyomino_quad(std::mt19937& rng, int max_tiles);

// Random dumbbell: bar height x width plus random blob balls of at most
// max_ball tiles each (possibly empty).
Dumbbell random_dumbbell(std::mt19937& rng, int bar_height, int bar_width,
                         int max_ball);

}  // namespace fatflow::fixtures
