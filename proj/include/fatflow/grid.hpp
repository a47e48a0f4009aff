#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatflow {

// A tile is the closed unit square with lower-left lattice corner (col, row).
struct TileId {
  int col = 0;
  int row = 0;
  friend auto operator<=>(const TileId&, const TileId&) = default;
};

struct LatticePoint {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

enum class Side { top = 0, right = 1, bottom = 2, left = 3 };

inline const char* side_name(Side s) {
  switch (s) {
    case Side::top: return "top";
    case Side::right: return "right";
    case Side::bottom: return "bottom";
    case Side::left: return "left";
  }
  return "?";
}

std::optional<Side> side_from_name(const std::string& name);

enum class ComplexError {
  bad_input,
  not_connected,
  has_holes,
  corners_not_on_boundary,
  corners_not_clockwise,
  degenerate_side,
  unknown_tile,
};

class complex_error : public std::runtime_error {
 public:
  complex_error(ComplexError code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ComplexError code() const { return code_; }

 private:
  ComplexError code_;
};

// One directed lattice edge of the boundary circuit.
struct BoundaryEdge {
  LatticePoint from, to;
  int tile = -1;  // index of the unique tile owning the edge
};

// The boundary circuit split at the four corners. Arc edges run clockwise:
// top a->b, right b->c, bottom c->d, left d->a.
struct BoundaryArcs {
  std::array<std::vector<BoundaryEdge>, 4> edges;
  std::array<std::vector<int>, 4> edge_tiles;   // tiles owning an arc edge
  std::array<std::vector<int>, 4> touch_tiles;  // tiles containing an arc point
};

// An edge-connected, hole-free (disk) union of lattice unit squares with four
// marked boundary corners. Immutable after construction; queries are
// read-only and safe to run concurrently.
class GridComplex {
 public:
  GridComplex() = default;  // empty; obtain real instances via build()

  static GridComplex build(std::vector<TileId> tiles,
                           std::array<LatticePoint, 4> corners);

  std::size_t size() const { return tiles_.size(); }
  const std::vector<TileId>& tiles() const { return tiles_; }
  const std::array<LatticePoint, 4>& corners() const { return corners_; }
  const BoundaryArcs& arcs() const { return arcs_; }

  TileId tile(int index) const { return tiles_[index]; }
  int index_of(TileId t) const;  // -1 when absent
  bool contains(TileId t) const { return index_of(t) >= 0; }

  // Tiles sharing a unit edge with t.
  const std::vector<int>& fat_neighbors(int index) const { return fat_[index]; }
  std::vector<TileId> fat_neighbors(TileId t) const;

  // Tiles sharing at least a point (edge or vertex) with t.
  const std::vector<int>& skinny_neighbors(int index) const { return skinny_[index]; }
  std::vector<TileId> skinny_neighbors(TileId t) const;

  const std::vector<int>& side_tiles(Side s) const {
    return arcs_.edge_tiles[static_cast<int>(s)];
  }
  const std::vector<int>& side_touch_tiles(Side s) const {
    return arcs_.touch_tiles[static_cast<int>(s)];
  }

  // Hop distance between tile sets in the vertex-adjacency graph: one less
  // than the minimum length of a connecting chain of tiles. nullopt when
  // either set is empty (distance to nothing is infinite).
  std::optional<int> skinny_distance(const std::vector<int>& a,
                                     const std::vector<int>& b) const;
  std::optional<int> skinny_distance_tiles(const std::vector<TileId>& a,
                                           const std::vector<TileId>& b) const;

  // Hop distances from a tile set in the vertex-adjacency graph, -1 where
  // unreachable (cannot happen on a connected complex with nonempty seed).
  std::vector<int> skinny_hops_from(const std::vector<int>& seed) const;

  // Each square splits into its four half-size children; corners double.
  GridComplex subdivide_binary() const;

  std::vector<int> indices_of(const std::vector<TileId>& ts) const;

  // Clockwise boundary circuit of a disk-shaped tile set (validates
  // connectivity and the disk condition, not corners).
  static std::vector<LatticePoint> boundary_circuit(std::vector<TileId> tiles);

 private:
  std::vector<TileId> tiles_;  // sorted by (col,row)
  std::array<LatticePoint, 4> corners_{};
  std::vector<std::vector<int>> fat_;
  std::vector<std::vector<int>> skinny_;
  BoundaryArcs arcs_;
};

}  // namespace fatflow
