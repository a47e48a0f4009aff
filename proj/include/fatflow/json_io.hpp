#pragma once

#include <string>

#include "json.hpp"

#include "fatflow/dumbbell.hpp"
#include "fatflow/grid.hpp"
#include "fatflow/layout.hpp"
#include "fatflow/modulus.hpp"
#include "fatflow/monotone_cuts.hpp"
#include "fatflow/weight_vector.hpp"

namespace fatflow {

using nlohmann::json;

// {"tiles": [[col,row],...], "corners": [[x,y] x 4]}
json complex_to_json(const GridComplex& c);
GridComplex complex_from_json(const json& j);

// {"bar": {"origin":[x,y], "width":w, "height":n},
//  "left_ball": [[col,row],...], "right_ball": [...], "corners": optional}
json dumbbell_to_json(const Dumbbell& d);
DumbbellSpec dumbbell_spec_from_json(const json& j);
inline bool json_is_dumbbell(const json& j) { return j.contains("bar"); }

// {"height":..., "area":..., "modulus":...,
//  "weights": [{"tile":[c,r], "w":number, "w_exact":"p/q" optional}], ...}
json result_to_json(const GridComplex& c, const ModulusResult& r);
std::vector<double> weights_from_json(const GridComplex& c, const json& j);

// {"rect":[w,h], "squares":[{"tile":[c,r], "x":..., "y":..., "s":...}]}
json layout_to_json(const SquaredLayout& l);
SquaredLayout layout_from_json(const json& j);

// weight vectors as arrays of "p/q" strings; matrices as arrays of columns
json weight_vector_to_json(const WeightVector& x);
WeightVector weight_vector_from_json(const json& j);
json matrix_to_json(const RectWeights& r);

json load_json_file(const std::string& path);
void save_json_file(const json& j, const std::string& path);

}  // namespace fatflow
