#include "fatflow/json_io.hpp"

#include <fstream>

namespace fatflow {

namespace {

json tile_json(TileId t) { return json::array({t.col, t.row}); }

TileId tile_from(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("tile must be [col,row]");
  return {j[0].get<int>(), j[1].get<int>()};
}

std::vector<TileId> tiles_from(const json& j) {
  std::vector<TileId> out;
  for (const auto& t : j) out.push_back(tile_from(t));
  return out;
}

}  // namespace

json complex_to_json(const GridComplex& c) {
  json tiles = json::array();
  for (TileId t : c.tiles()) tiles.push_back(tile_json(t));
  json corners = json::array();
  for (const auto& p : c.corners()) corners.push_back(json::array({p.x, p.y}));
  return json{{"tiles", tiles}, {"corners", corners}};
}

GridComplex complex_from_json(const json& j) {
  if (!j.contains("tiles") || !j.contains("corners"))
    throw std::invalid_argument("complex JSON needs tiles and corners");
  if (j["corners"].size() != 4)
    throw std::invalid_argument("exactly four corners required");
  std::array<LatticePoint, 4> corners;
  for (int k = 0; k < 4; ++k)
    corners[k] = {j["corners"][k][0].get<int>(), j["corners"][k][1].get<int>()};
  return GridComplex::build(tiles_from(j["tiles"]), corners);
}

json dumbbell_to_json(const Dumbbell& d) {
  const DumbbellSpec& s = d.spec();
  json left = json::array(), right = json::array();
  for (TileId t : s.left_ball) left.push_back(tile_json(t));
  for (TileId t : s.right_ball) right.push_back(tile_json(t));
  json out{{"bar",
            {{"origin", {s.bar.origin.x, s.bar.origin.y}},
             {"width", s.bar.width},
             {"height", s.bar.height}}},
           {"left_ball", left},
           {"right_ball", right}};
  json corners = json::array();
  for (const auto& p : d.complex().corners())
    corners.push_back(json::array({p.x, p.y}));
  out["corners"] = corners;
  return out;
}

DumbbellSpec dumbbell_spec_from_json(const json& j) {
  if (!j.contains("bar")) throw std::invalid_argument("not a dumbbell JSON");
  DumbbellSpec s;
  const json& bar = j["bar"];
  s.bar.origin = {bar.at("origin")[0].get<int>(), bar.at("origin")[1].get<int>()};
  s.bar.width = bar.at("width").get<int>();
  s.bar.height = bar.at("height").get<int>();
  if (j.contains("left_ball")) s.left_ball = tiles_from(j["left_ball"]);
  if (j.contains("right_ball")) s.right_ball = tiles_from(j["right_ball"]);
  if (j.contains("corners")) {
    std::array<LatticePoint, 4> corners;
    for (int k = 0; k < 4; ++k)
      corners[k] = {j["corners"][k][0].get<int>(),
                    j["corners"][k][1].get<int>()};
    s.corners = corners;
  }
  return s;
}

json result_to_json(const GridComplex& c, const ModulusResult& r) {
  json weights = json::array();
  for (std::size_t t = 0; t < c.size(); ++t) {
    json w{{"tile", tile_json(c.tile(t))}, {"w", r.rho[t]}};
    if (r.rho_exact) w["w_exact"] = rat_str((*r.rho_exact)[t]);
    weights.push_back(std::move(w));
  }
  json out{{"height", r.height},
           {"area", r.area},
           {"modulus", r.modulus},
           {"weights", weights}};
  if (r.height_exact) {
    out["height_exact"] = rat_str(*r.height_exact);
    out["area_exact"] = rat_str(*r.area_exact);
    out["modulus_exact"] = rat_str(*r.modulus_exact);
  }
  out["diagnostics"] = {{"iterations", r.iterations},
                        {"converged", r.converged},
                        {"feasibility_residual", r.feasibility_residual},
                        {"kkt_residual", r.kkt_residual},
                        {"active_paths", r.active_paths.size()}};
  return out;
}

std::vector<double> weights_from_json(const GridComplex& c, const json& j) {
  const json& arr = j.contains("weights") ? j["weights"] : j;
  std::vector<double> rho(c.size(), 0.0);
  std::vector<char> seen(c.size(), 0);
  for (const auto& e : arr) {
    TileId t = tile_from(e.at("tile"));
    int i = c.index_of(t);
    if (i < 0) throw std::invalid_argument("weight for a tile not in the complex");
    rho[i] = e.contains("w_exact") ? rat_d(parse_rat(e["w_exact"].get<std::string>()))
                                   : e.at("w").get<double>();
    seen[i] = 1;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!seen[i]) throw std::invalid_argument("weight function is not total");
  bool positive = false;
  for (double v : rho) {
    if (v < 0) throw std::invalid_argument("negative weight");
    if (v > 0) positive = true;
  }
  if (!positive) throw std::invalid_argument("zero weight function");
  return rho;
}

json layout_to_json(const SquaredLayout& l) {
  json squares = json::array();
  auto push = [&](const LayoutSquare& s, std::size_t exact_idx, bool exact) {
    json e{{"tile", tile_json(s.tile)}, {"x", s.x}, {"y", s.y}, {"s", s.side}};
    if (exact) {
      e["x_exact"] = rat_str(l.xq[exact_idx]);
      e["y_exact"] = rat_str(l.yq[exact_idx]);
      e["s_exact"] = rat_str(l.sideq[exact_idx]);
    }
    squares.push_back(std::move(e));
  };
  for (std::size_t i = 0; i < l.squares.size(); ++i)
    push(l.squares[i], i, l.exact);
  for (const auto& s : l.collapsed) push(s, 0, false);
  return json{{"rect", {l.rect_width, l.rect_height}}, {"squares", squares}};
}

SquaredLayout layout_from_json(const json& j) {
  SquaredLayout l;
  l.rect_width = j.at("rect")[0].get<double>();
  l.rect_height = j.at("rect")[1].get<double>();
  for (const auto& e : j.at("squares")) {
    LayoutSquare s{tile_from(e.at("tile")), e.at("x").get<double>(),
                   e.at("y").get<double>(), e.at("s").get<double>()};
    if (s.side > 0) l.squares.push_back(s);
    else l.collapsed.push_back(s);
  }
  return l;
}

json weight_vector_to_json(const WeightVector& x) {
  json out = json::array();
  for (const Rat& v : x) out.push_back(rat_str(v));
  return out;
}

WeightVector weight_vector_from_json(const json& j) {
  WeightVector x;
  for (const auto& e : j) {
    if (e.is_string()) x.push_back(parse_rat(e.get<std::string>()));
    else if (e.is_number_integer()) x.push_back(Rat(e.get<long>()));
    else throw std::invalid_argument("weight vectors hold \"p/q\" strings");
  }
  validate_weight_vector(x);
  return x;
}

json matrix_to_json(const RectWeights& r) {
  json cols = json::array();
  for (int j = 0; j < r.cols; ++j) {
    json col = json::array();
    for (int i = 0; i < r.rows; ++i) col.push_back(rat_str(r.at(i, j)));
    cols.push_back(std::move(col));
  }
  return cols;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace fatflow
