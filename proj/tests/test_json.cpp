#include <random>

#include "doctest.h"
#include "fatflow/fixtures.hpp"
#include "fatflow/json_io.hpp"

using namespace fatflow;

TEST_CASE("complex round trip") {
  std::mt19937 rng(64);
  for (int iter = 0; iter < 20; ++iter) {
    GridComplex c = fixtures::random_polyomino_quad(rng, 12);
    GridComplex back = complex_from_json(complex_to_json(c));
    CHECK(back.tiles() == c.tiles());
    CHECK(back.corners() == c.corners());
  }
}

TEST_CASE("dumbbell round trip") {
  Dumbbell d = fixtures::tray_dumbbell();
  Dumbbell back = Dumbbell::build(dumbbell_spec_from_json(dumbbell_to_json(d)));
  CHECK(back.complex().tiles() == d.complex().tiles());
  CHECK(back.complex().corners() == d.complex().corners());
  CHECK(back.bar_width() == d.bar_width());
  CHECK(back.left_ball() == d.left_ball());
}

TEST_CASE("layout json round-trips losslessly") {
  GridComplex c = fixtures::ell_quadrilateral();
  auto r = brute_force_optimal(c);
  SquaredLayout l = layout_squares(c, r);
  SquaredLayout back = layout_from_json(layout_to_json(l));
  CHECK(back.rect_width == l.rect_width);
  CHECK(back.rect_height == l.rect_height);
  REQUIRE(back.squares.size() == l.squares.size());
  for (std::size_t i = 0; i < l.squares.size(); ++i) {
    CHECK(back.squares[i].tile == l.squares[i].tile);
    CHECK(back.squares[i].x == l.squares[i].x);
    CHECK(back.squares[i].y == l.squares[i].y);
    CHECK(back.squares[i].side == l.squares[i].side);
  }
  REQUIRE(back.collapsed.size() == l.collapsed.size());
  CHECK(back.collapsed[0].tile == l.collapsed[0].tile);
}

TEST_CASE("weight vectors serialize as rational strings") {
  WeightVector x{rat(1, 3), rat(0), rat(5)};
  json j = weight_vector_to_json(x);
  CHECK(j == json::array({"1/3", "0", "5"}));
  CHECK(weight_vector_from_json(j) == x);
  CHECK_THROWS_AS(weight_vector_from_json(json::array({"1/0"})),
                  std::invalid_argument);
  CHECK_THROWS_AS(weight_vector_from_json(json::array({"0", "0"})),
                  std::invalid_argument);
}

TEST_CASE("weight files are validated") {
  GridComplex c = fixtures::rectangle_quad(1, 2);
  json good = json::array({json{{"tile", {0, 0}}, {"w", 1.0}},
                           json{{"tile", {1, 0}}, {"w", 0.5}}});
  auto rho = weights_from_json(c, good);
  CHECK(rho[0] == 1.0);
  // missing tile
  json partial = json::array({json{{"tile", {0, 0}}, {"w", 1.0}}});
  CHECK_THROWS_AS(weights_from_json(c, partial), std::invalid_argument);
  // negative weight
  json negative = json::array({json{{"tile", {0, 0}}, {"w", -1.0}},
                               json{{"tile", {1, 0}}, {"w", 0.5}}});
  CHECK_THROWS_AS(weights_from_json(c, negative), std::invalid_argument);
  // exact strings win over the float field
  json exact = json::array(
      {json{{"tile", {0, 0}}, {"w", 0.0}, {"w_exact", "2/3"}},
       json{{"tile", {1, 0}}, {"w", 0.5}}});
  CHECK(weights_from_json(c, exact)[0] == doctest::Approx(2.0 / 3));
}

TEST_CASE("result json carries exact fields when available") {
  GridComplex c = fixtures::rectangle_quad(2, 2);
  auto r = brute_force_optimal(c);
  json j = result_to_json(c, r);
  CHECK(j["modulus_exact"] == "1");
  CHECK(j["weights"].size() == 4);
  CHECK(j["weights"][0]["w_exact"] == "1/2");
  CHECK(j["diagnostics"]["converged"].get<bool>());
}
