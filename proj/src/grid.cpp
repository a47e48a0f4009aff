#include "fatflow/grid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace fatflow {

namespace {

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const {
    return std::hash<long long>()((static_cast<long long>(p.x) << 32) ^
                                  static_cast<unsigned>(p.y));
  }
};

// Undirected lattice edge keyed by lower endpoint and orientation.
struct EdgeKey {
  int x, y;
  bool horizontal;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

std::array<EdgeKey, 4> tile_edges(TileId t) {
  return {EdgeKey{t.col, t.row, true},      // bottom
          EdgeKey{t.col, t.row + 1, true},  // top
          EdgeKey{t.col, t.row, false},     // left
          EdgeKey{t.col + 1, t.row, false}};  // right
}

std::string pt_str(LatticePoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

int sorted_index_of(const std::vector<TileId>& tiles, TileId t) {
  auto it = std::lower_bound(tiles.begin(), tiles.end(), t);
  if (it == tiles.end() || *it != t) return -1;
  return static_cast<int>(it - tiles.begin());
}

// Checks edge-connectivity and the Euler disk condition, then walks the
// boundary clockwise. `tiles` must be sorted and deduplicated.
std::vector<BoundaryEdge> validate_and_trace(const std::vector<TileId>& tiles) {
  const int n = static_cast<int>(tiles.size());

  {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      TileId t = tiles[u];
      const TileId nbrs[4] = {{t.col + 1, t.row}, {t.col - 1, t.row},
                              {t.col, t.row + 1}, {t.col, t.row - 1}};
      for (TileId nb : nbrs) {
        int v = sorted_index_of(tiles, nb);
        if (v >= 0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          queue.push_back(v);
        }
      }
    }
    if (count != n)
      throw complex_error(ComplexError::not_connected,
                          "tiles are not edge-connected");
  }

  // Disk check: V - E + F = 1. Together with edge-connectivity this also
  // excludes pinch points (a pinch encloses a bounded complementary cell).
  std::map<EdgeKey, std::vector<int>> edge_owners;
  {
    std::set<LatticePoint> verts;
    for (int i = 0; i < n; ++i) {
      TileId t = tiles[i];
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) verts.insert({t.col + a, t.row + b});
      for (const EdgeKey& e : tile_edges(t)) edge_owners[e].push_back(i);
    }
    long long chi = static_cast<long long>(verts.size()) -
                    static_cast<long long>(edge_owners.size()) + n;
    if (chi != 1)
      throw complex_error(ComplexError::has_holes,
                          "V-E+F = " + std::to_string(chi) + ", expected 1");
  }

  // Boundary edges are owned by exactly one tile. Directed so the owning
  // tile lies on the right; following the directions walks the circuit
  // clockwise (y up).
  std::unordered_map<LatticePoint, BoundaryEdge, PointHash> outgoing;
  std::size_t boundary_count = 0;
  for (const auto& [e, owners] : edge_owners) {
    if (owners.size() != 1) continue;
    ++boundary_count;
    TileId t = tiles[owners[0]];
    BoundaryEdge b;
    b.tile = owners[0];
    if (e.horizontal) {
      if (e.y == t.row + 1) {  // tile below: head east
        b.from = {e.x, e.y};
        b.to = {e.x + 1, e.y};
      } else {  // tile above: head west
        b.from = {e.x + 1, e.y};
        b.to = {e.x, e.y};
      }
    } else {
      if (e.x == t.col) {  // tile east: head north
        b.from = {e.x, e.y};
        b.to = {e.x, e.y + 1};
      } else {  // tile west: head south
        b.from = {e.x, e.y + 1};
        b.to = {e.x, e.y};
      }
    }
    if (!outgoing.emplace(b.from, b).second)
      throw complex_error(ComplexError::has_holes,
                          "boundary is not a simple circuit");
  }

  std::vector<BoundaryEdge> circuit;
  LatticePoint start = outgoing.begin()->first;
  for (const auto& [p, e] : outgoing)
    if (p < start) start = p;
  LatticePoint cur = start;
  do {
    auto it = outgoing.find(cur);
    if (it == outgoing.end())
      throw complex_error(ComplexError::has_holes, "open boundary walk");
    circuit.push_back(it->second);
    cur = it->second.to;
  } while (cur != start && circuit.size() <= boundary_count);
  if (circuit.size() != boundary_count)
    throw complex_error(ComplexError::has_holes,
                        "boundary has several components");
  return circuit;
}

}  // namespace

std::optional<Side> side_from_name(const std::string& name) {
  if (name == "top") return Side::top;
  if (name == "right") return Side::right;
  if (name == "bottom") return Side::bottom;
  if (name == "left") return Side::left;
  return std::nullopt;
}

int GridComplex::index_of(TileId t) const {
  auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t);
  if (it == tiles_.end() || *it != t) return -1;
  return static_cast<int>(it - tiles_.begin());
}

std::vector<TileId> GridComplex::fat_neighbors(TileId t) const {
  int i = index_of(t);
  if (i < 0) throw complex_error(ComplexError::unknown_tile, "unknown tile");
  std::vector<TileId> out;
  for (int j : fat_[i]) out.push_back(tiles_[j]);
  return out;
}

std::vector<TileId> GridComplex::skinny_neighbors(TileId t) const {
  int i = index_of(t);
  if (i < 0) throw complex_error(ComplexError::unknown_tile, "unknown tile");
  std::vector<TileId> out;
  for (int j : skinny_[i]) out.push_back(tiles_[j]);
  return out;
}

std::vector<int> GridComplex::indices_of(const std::vector<TileId>& ts) const {
  std::vector<int> out;
  out.reserve(ts.size());
  for (TileId t : ts) {
    int i = index_of(t);
    if (i < 0) throw complex_error(ComplexError::unknown_tile, "unknown tile");
    out.push_back(i);
  }
  return out;
}

std::vector<int> GridComplex::skinny_hops_from(const std::vector<int>& seed) const {
  std::vector<int> dist(tiles_.size(), -1);
  std::deque<int> queue;
  for (int s : seed) {
    if (dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : skinny_[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::optional<int> GridComplex::skinny_distance(const std::vector<int>& a,
                                                const std::vector<int>& b) const {
  if (a.empty() || b.empty()) return std::nullopt;
  std::vector<int> dist = skinny_hops_from(a);
  int best = -1;
  for (int t : b)
    if (dist[t] >= 0 && (best < 0 || dist[t] < best)) best = dist[t];
  if (best < 0) return std::nullopt;  // unreachable; impossible when connected
  return best;
}

std::optional<int> GridComplex::skinny_distance_tiles(
    const std::vector<TileId>& a, const std::vector<TileId>& b) const {
  return skinny_distance(indices_of(a), indices_of(b));
}

GridComplex GridComplex::subdivide_binary() const {
  std::vector<TileId> children;
  children.reserve(4 * tiles_.size());
  for (TileId t : tiles_)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        children.push_back({2 * t.col + i, 2 * t.row + j});
  std::array<LatticePoint, 4> corners = corners_;
  for (auto& c : corners) {
    c.x *= 2;
    c.y *= 2;
  }
  return build(std::move(children), corners);
}

std::vector<LatticePoint> GridComplex::boundary_circuit(
    std::vector<TileId> tiles) {
  if (tiles.empty())
    throw complex_error(ComplexError::bad_input, "no tiles");
  std::sort(tiles.begin(), tiles.end());
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
  std::vector<LatticePoint> verts;
  for (const BoundaryEdge& e : validate_and_trace(tiles))
    verts.push_back(e.from);
  return verts;
}

GridComplex GridComplex::build(std::vector<TileId> tiles,
                               std::array<LatticePoint, 4> corners) {
  if (tiles.empty())
    throw complex_error(ComplexError::bad_input, "no tiles");
  std::sort(tiles.begin(), tiles.end());
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());

  GridComplex c;
  c.tiles_ = std::move(tiles);
  c.corners_ = corners;
  const int n = static_cast<int>(c.tiles_.size());

  c.fat_.assign(n, {});
  c.skinny_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    TileId t = c.tiles_[i];
    for (int dc = -1; dc <= 1; ++dc) {
      for (int dr = -1; dr <= 1; ++dr) {
        if (dc == 0 && dr == 0) continue;
        int j = c.index_of({t.col + dc, t.row + dr});
        if (j < 0) continue;
        c.skinny_[i].push_back(j);
        if (dc == 0 || dr == 0) c.fat_[i].push_back(j);
      }
    }
  }

  std::vector<BoundaryEdge> circuit = validate_and_trace(c.tiles_);

  // Corner positions along the circuit (position of the vertex = index of
  // the edge leaving it).
  std::array<std::size_t, 4> pos{};
  for (int k = 0; k < 4; ++k) {
    bool found = false;
    for (std::size_t i = 0; i < circuit.size(); ++i)
      if (circuit[i].from == corners[k]) {
        pos[k] = i;
        found = true;
        break;
      }
    if (!found)
      throw complex_error(ComplexError::corners_not_on_boundary,
                          "corner " + pt_str(corners[k]) + " not on boundary");
  }
  for (int k = 0; k < 4; ++k)
    for (int l = k + 1; l < 4; ++l)
      if (corners[k] == corners[l])
        throw complex_error(ComplexError::degenerate_side,
                            "coincident corners " + pt_str(corners[k]));
  // Rotate so that a comes first; b, c, d must follow in order.
  std::array<std::size_t, 4> rel{};
  for (int k = 0; k < 4; ++k)
    rel[k] = (pos[k] + circuit.size() - pos[0]) % circuit.size();
  if (!(rel[0] < rel[1] && rel[1] < rel[2] && rel[2] < rel[3]))
    throw complex_error(ComplexError::corners_not_clockwise,
                        "corners are not in clockwise order");

  // Split into arcs: top a->b, right b->c, bottom c->d, left d->a.
  auto& arcs = c.arcs_;
  for (int s = 0; s < 4; ++s) {
    std::size_t from = pos[s];
    std::size_t to = pos[(s + 1) % 4];
    std::set<int> tile_set;
    std::set<LatticePoint> point_set;
    for (std::size_t i = from; i != to; i = (i + 1) % circuit.size()) {
      arcs.edges[s].push_back(circuit[i]);
      tile_set.insert(circuit[i].tile);
      point_set.insert(circuit[i].from);
      point_set.insert(circuit[i].to);
    }
    if (arcs.edges[s].empty())
      throw complex_error(ComplexError::degenerate_side,
                          std::string("zero-length ") +
                              side_name(static_cast<Side>(s)) + " side");
    arcs.edge_tiles[s].assign(tile_set.begin(), tile_set.end());
    std::set<int> touching(tile_set);
    for (const LatticePoint& p : point_set) {
      for (int dc = -1; dc <= 0; ++dc)
        for (int dr = -1; dr <= 0; ++dr) {
          int j = c.index_of({p.x + dc, p.y + dr});
          if (j >= 0) touching.insert(j);
        }
    }
    arcs.touch_tiles[s].assign(touching.begin(), touching.end());
  }

  return c;
}

}  // namespace fatflow
