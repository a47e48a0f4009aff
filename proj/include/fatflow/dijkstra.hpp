#pragma once

#include <queue>
#include <utility>
#include <vector>

#include "fatflow/grid.hpp"

namespace fatflow {

enum class Adjacency { fat, skinny };

template <class W>
struct NodeDistances {
  std::vector<W> dist;      // inclusive of both endpoints' weights
  std::vector<int> parent;  // -1 at sources
  std::vector<char> reached;
};

// Node-weighted shortest paths from a set of source tiles: the distance of a
// chain t_1..t_k is w(t_1)+...+w(t_k). Ties break toward the smaller tile
// index so runs are deterministic.
template <class W>
NodeDistances<W> node_dijkstra(const GridComplex& c, const std::vector<W>& w,
                               const std::vector<int>& sources,
                               Adjacency adj) {
  const int n = static_cast<int>(c.size());
  NodeDistances<W> out;
  out.dist.assign(n, W(0));
  out.parent.assign(n, -1);
  out.reached.assign(n, 0);
  std::vector<char> done(n, 0);

  using Item = std::pair<W, int>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);

  for (int s : sources) {
    if (out.reached[s] && !(w[s] < out.dist[s])) continue;
    out.dist[s] = w[s];
    out.parent[s] = -1;
    out.reached[s] = 1;
    heap.push({out.dist[s], s});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d != out.dist[u]) continue;
    done[u] = 1;
    const auto& nbrs =
        adj == Adjacency::fat ? c.fat_neighbors(u) : c.skinny_neighbors(u);
    for (int v : nbrs) {
      if (done[v]) continue;
      W nd = d + w[v];
      if (!out.reached[v] || nd < out.dist[v]) {
        out.dist[v] = nd;
        out.parent[v] = u;
        out.reached[v] = 1;
        heap.push({nd, v});
      }
    }
  }
  return out;
}

template <class W>
struct ShortestPath {
  W length{};
  std::vector<int> tiles;  // source..target
};

// Best path into a target set; deterministic tie-break by tile index.
template <class W>
ShortestPath<W> extract_path(const NodeDistances<W>& d,
                             const std::vector<int>& targets) {
  int best = -1;
  for (int t : targets) {
    if (!d.reached[t]) continue;
    if (best < 0 || d.dist[t] < d.dist[best] ||
        (d.dist[t] == d.dist[best] && t < best))
      best = t;
  }
  ShortestPath<W> p;
  if (best < 0) return p;
  p.length = d.dist[best];
  for (int v = best; v >= 0; v = d.parent[v]) p.tiles.push_back(v);
  std::reverse(p.tiles.begin(), p.tiles.end());
  return p;
}

template <class W>
ShortestPath<W> shortest_fat_path(const GridComplex& c, const std::vector<W>& w,
                                  Side from, Side to) {
  auto d = node_dijkstra(c, w, c.side_tiles(from), Adjacency::fat);
  return extract_path(d, c.side_tiles(to));
}

}  // namespace fatflow
