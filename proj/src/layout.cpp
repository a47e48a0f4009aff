#include "fatflow/layout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fatflow/dijkstra.hpp"
#include "fatflow/weight_vector.hpp"

namespace fatflow {

SquaredLayout layout_squares(const GridComplex& c, const ModulusResult& r) {
  SquaredLayout l;
  if (r.rho_exact) {
    const std::vector<Rat>& rho = *r.rho_exact;
    auto dtop = node_dijkstra(c, rho, c.side_tiles(Side::top), Adjacency::fat);
    auto dleft =
        node_dijkstra(c, rho, c.side_touch_tiles(Side::left), Adjacency::skinny);
    l.exact = true;
    l.rect_height_q = *r.height_exact;
    l.rect_width_q = *r.area_exact / *r.height_exact;
    l.rect_height = rat_d(l.rect_height_q);
    l.rect_width = rat_d(l.rect_width_q);
    for (std::size_t t = 0; t < c.size(); ++t) {
      Rat y = dtop.dist[t] - rho[t];
      Rat x = dleft.dist[t] - rho[t];
      if (rho[t] == 0) {
        l.collapsed.push_back({c.tile(t), rat_d(x), rat_d(y), 0.0});
        continue;
      }
      l.squares.push_back({c.tile(t), rat_d(x), rat_d(y), rat_d(rho[t])});
      l.xq.push_back(x);
      l.yq.push_back(y);
      l.sideq.push_back(rho[t]);
    }
    return l;
  }

  auto dtop = node_dijkstra(c, r.rho, c.side_tiles(Side::top), Adjacency::fat);
  auto dleft =
      node_dijkstra(c, r.rho, c.side_touch_tiles(Side::left), Adjacency::skinny);
  l.rect_height = r.height;
  l.rect_width = r.area / r.height;
  const double eps = 1e-12 * std::max(1.0, r.height);
  for (std::size_t t = 0; t < c.size(); ++t) {
    LayoutSquare s{c.tile(t), dleft.dist[t] - r.rho[t],
                   dtop.dist[t] - r.rho[t], r.rho[t]};
    if (r.rho[t] <= eps) {
      s.side = 0;
      l.collapsed.push_back(s);
    } else {
      l.squares.push_back(s);
    }
  }
  return l;
}

SquaredLayout layout_squares_checked(const GridComplex& c,
                                     const ModulusResult& r, double tol) {
  SquaredLayout l = layout_squares(c, r);
  LayoutReport rep =
      l.exact ? validate_layout_exact(l) : validate_layout(l, tol);
  if (!rep.pass)
    throw layout_error("layout validation failed: area residual " +
                       std::to_string(rep.area_residual) + ", overlap " +
                       std::to_string(rep.max_overlap) + ", uncovered " +
                       std::to_string(rep.uncovered_samples));
  return l;
}

LayoutReport validate_layout(const SquaredLayout& l, double tol, int sample_grid) {
  LayoutReport rep;
  const double W = l.rect_width, H = l.rect_height;

  double total = 0;
  for (const auto& s : l.squares) {
    total += s.side * s.side;
    rep.bounds_residual = std::max(
        {rep.bounds_residual, -s.x, -s.y, s.x + s.side - W, s.y + s.side - H});
  }
  rep.area_residual = std::abs(total - W * H);

  for (std::size_t a = 0; a < l.squares.size(); ++a)
    for (std::size_t b = a + 1; b < l.squares.size(); ++b) {
      const auto& s = l.squares[a];
      const auto& t = l.squares[b];
      double ox = std::min(s.x + s.side, t.x + t.side) - std::max(s.x, t.x);
      double oy = std::min(s.y + s.side, t.y + t.side) - std::max(s.y, t.y);
      if (ox > 0 && oy > 0) rep.max_overlap = std::max(rep.max_overlap, ox * oy);
    }

  // column buckets for the sample grid
  std::vector<std::vector<int>> buckets(sample_grid);
  for (std::size_t a = 0; a < l.squares.size(); ++a) {
    const auto& s = l.squares[a];
    int lo = std::max(0, static_cast<int>(std::floor(s.x / W * sample_grid)) - 1);
    int hi = std::min(sample_grid - 1,
                      static_cast<int>(std::ceil((s.x + s.side) / W * sample_grid)));
    for (int i = lo; i <= hi; ++i) buckets[i].push_back(static_cast<int>(a));
  }
  const double pad = tol;
  rep.uncovered_samples = 0;
  for (int i = 0; i < sample_grid; ++i) {
    for (int j = 0; j < sample_grid; ++j) {
      double px = (i + 0.5) * W / sample_grid;
      double py = (j + 0.5) * H / sample_grid;
      bool hit = false;
      for (int a : buckets[i]) {
        const auto& s = l.squares[a];
        if (px >= s.x - pad && px <= s.x + s.side + pad && py >= s.y - pad &&
            py <= s.y + s.side + pad) {
          hit = true;
          break;
        }
      }
      if (!hit) ++rep.uncovered_samples;
    }
  }

  rep.pass = rep.area_residual <= tol && rep.max_overlap <= tol &&
             rep.bounds_residual <= tol && rep.uncovered_samples == 0;
  return rep;
}

LayoutReport validate_layout_exact(const SquaredLayout& l, int sample_grid) {
  LayoutReport rep;
  const Rat W = l.rect_width_q, H = l.rect_height_q;

  auto raise = [](Rat& acc, const Rat& v) {
    if (v > acc) acc = v;
  };
  Rat total = 0;
  Rat bounds = 0;
  for (std::size_t a = 0; a < l.sideq.size(); ++a) {
    total += l.sideq[a] * l.sideq[a];
    raise(bounds, Rat(-l.xq[a]));
    raise(bounds, Rat(-l.yq[a]));
    raise(bounds, Rat(l.xq[a] + l.sideq[a] - W));
    raise(bounds, Rat(l.yq[a] + l.sideq[a] - H));
  }
  rep.area_residual = rat_d(Rat(abs(total - W * H)));
  rep.bounds_residual = rat_d(bounds);

  Rat worst = 0;
  for (std::size_t a = 0; a < l.sideq.size(); ++a)
    for (std::size_t b = a + 1; b < l.sideq.size(); ++b) {
      Rat ox = Rat(std::min(Rat(l.xq[a] + l.sideq[a]), Rat(l.xq[b] + l.sideq[b])) -
                   std::max(l.xq[a], l.xq[b]));
      Rat oy = Rat(std::min(Rat(l.yq[a] + l.sideq[a]), Rat(l.yq[b] + l.sideq[b])) -
                   std::max(l.yq[a], l.yq[b]));
      if (ox > 0 && oy > 0) raise(worst, Rat(ox * oy));
    }
  rep.max_overlap = rat_d(worst);

  std::vector<std::vector<int>> buckets(sample_grid);
  for (std::size_t a = 0; a < l.sideq.size(); ++a) {
    double x0 = rat_d(l.xq[a]) / rat_d(W);
    double x1 = rat_d(l.xq[a] + l.sideq[a]) / rat_d(W);
    int lo = std::max(0, static_cast<int>(std::floor(x0 * sample_grid)) - 1);
    int hi = std::min(sample_grid - 1,
                      static_cast<int>(std::ceil(x1 * sample_grid)));
    for (int i = lo; i <= hi; ++i) buckets[i].push_back(static_cast<int>(a));
  }
  int uncovered = 0;
  for (int i = 0; i < sample_grid; ++i) {
    for (int j = 0; j < sample_grid; ++j) {
      Rat px = W * (2 * i + 1) / (2 * sample_grid);
      Rat py = H * (2 * j + 1) / (2 * sample_grid);
      bool hit = false;
      for (int a : buckets[i]) {
        if (px >= l.xq[a] && px <= l.xq[a] + l.sideq[a] && py >= l.yq[a] &&
            py <= l.yq[a] + l.sideq[a]) {
          hit = true;
          break;
        }
      }
      if (!hit) ++uncovered;
    }
  }
  rep.uncovered_samples = uncovered;
  rep.pass = total == W * H && worst == 0 && bounds <= 0 && uncovered == 0;
  return rep;
}

namespace {

void svg_header(std::ofstream& out, double w, double h, double scale) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale
      << "\" height=\"" << h * scale << "\" viewBox=\"0 0 " << w * scale << " "
      << h * scale << "\">\n";
}

}  // namespace

void emit_svg(const SquaredLayout& l, const std::string& path, bool labels) {
  std::ofstream out(path);
  if (!out) throw layout_error("cannot write " + path);
  out.precision(10);
  out << std::fixed;
  double scale = 640.0 / std::max({l.rect_width, l.rect_height, 1e-12});
  svg_header(out, l.rect_width, l.rect_height, scale);
  out << "<rect x=\"0\" y=\"0\" width=\"" << l.rect_width * scale
      << "\" height=\"" << l.rect_height * scale
      << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  for (const auto& s : l.squares) {
    out << "<rect x=\"" << s.x * scale << "\" y=\"" << s.y * scale
        << "\" width=\"" << s.side * scale << "\" height=\"" << s.side * scale
        << "\" fill=\"#e8eef7\" stroke=\"#1f3552\" stroke-width=\"1\"/>\n";
    if (labels)
      out << "<text x=\"" << (s.x + s.side / 2) * scale << "\" y=\""
          << (s.y + s.side / 2) * scale
          << "\" font-size=\"10\" text-anchor=\"middle\">" << s.tile.col << ","
          << s.tile.row << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_tiling_svg(const GridComplex& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw layout_error("cannot write " + path);
  out.precision(10);
  out << std::fixed;
  int xmin = c.tiles()[0].col, xmax = xmin + 1;
  int ymin = c.tiles()[0].row, ymax = ymin + 1;
  for (TileId t : c.tiles()) {
    xmin = std::min(xmin, t.col);
    xmax = std::max(xmax, t.col + 1);
    ymin = std::min(ymin, t.row);
    ymax = std::max(ymax, t.row + 1);
  }
  double w = xmax - xmin, h = ymax - ymin;
  double scale = 640.0 / std::max(w, h);
  svg_header(out, w, h, scale);
  // y flips: lattice y up, svg y down
  for (TileId t : c.tiles())
    out << "<rect x=\"" << (t.col - xmin) * scale << "\" y=\""
        << (ymax - t.row - 1) * scale << "\" width=\"" << scale
        << "\" height=\"" << scale
        << "\" fill=\"#f4f4f4\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  const char* names[4] = {"a", "b", "c", "d"};
  for (int k = 0; k < 4; ++k) {
    auto p = c.corners()[k];
    out << "<circle cx=\"" << (p.x - xmin) * scale << "\" cy=\""
        << (ymax - p.y) * scale
        << "\" r=\"4\" fill=\"#c0392b\"/>\n"
        << "<text x=\"" << (p.x - xmin) * scale + 6 << "\" y=\""
        << (ymax - p.y) * scale - 6 << "\" font-size=\"14\">" << names[k]
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace fatflow
