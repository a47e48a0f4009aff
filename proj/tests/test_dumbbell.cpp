#include <random>
#include <set>

#include "doctest.h"
#include "fatflow/dumbbell.hpp"
#include "fatflow/fixtures.hpp"

using namespace fatflow;

namespace {

DumbbellError build_error(const DumbbellSpec& s) {
  try {
    Dumbbell::build(s);
  } catch (const dumbbell_error& e) {
    return e.code();
  }
  FAIL("expected build to fail");
  return DumbbellError::bad_input;
}

}  // namespace

TEST_CASE("classic dumbbell builds") {
  Dumbbell d = fixtures::classic_dumbbell();
  CHECK(d.bar_height() == 1);
  CHECK(d.bar_width() == 8);
  CHECK(d.complex().size() == 8 + 9 + 9);
  // left edge is the left side of the left ball
  for (const auto& e : d.complex().arcs().edges[static_cast<int>(Side::left)])
    CHECK(e.from.x == -3);
}

TEST_CASE("bar too short") {
  DumbbellSpec s;
  s.bar = {{0, 0}, 5, 1};
  CHECK(build_error(s) == DumbbellError::bar_too_short);
}

TEST_CASE("empty balls make a plain rectangle") {
  Dumbbell d = fixtures::bare_bar(1, 6);
  CHECK(d.complex().size() == 6);
  CHECK(d.ball_tiles().empty());
  // with both balls empty, every bar tile is middle
  CHECK(d.middle_tiles().size() == 6);
}

TEST_CASE("attachment must be connected") {
  DumbbellSpec s;
  s.bar = {{0, 0}, 12, 2};
  s.left_ball = {{-1, 0}};
  SUBCASE("gap in the contact run") {
    s.left_ball.push_back({-1, 2});  // row 1 missing -> contact has a gap
    s.bar.height = 3;
    s.bar.width = 18;
    CHECK(build_error(s) == DumbbellError::attachment_not_connected);
  }
  SUBCASE("ball misses the bar side") {
    s.left_ball = {{-2, 0}, {-2, 1}};
    CHECK(build_error(s) == DumbbellError::attachment_not_connected);
  }
  SUBCASE("ball tile beyond the bar") {
    s.left_ball = {{-1, 0}, {0, -1}};
    CHECK(build_error(s) == DumbbellError::bad_input);
  }
}

TEST_CASE("middle tiles of the classic bar") {
  Dumbbell d = fixtures::classic_dumbbell();
  // hop distances to the balls along the 8-bar are min(j+1, 8-j); threshold 3
  auto mids = d.middle_tiles();
  std::vector<int> expect;
  for (int j = 2; j <= 5; ++j)
    expect.push_back(d.complex().index_of({j, 0}));
  std::sort(expect.begin(), expect.end());
  std::sort(mids.begin(), mids.end());
  CHECK(mids == expect);
}

TEST_CASE("subdivision doubles the bar") {
  Dumbbell d = fixtures::classic_dumbbell();
  Dumbbell s = d.subdivide_binary();
  CHECK(s.bar_height() == 2 * d.bar_height());
  CHECK(s.bar_width() == 2 * d.bar_width());
  CHECK(s.complex().size() == 4 * d.complex().size());

  // children of middle tiles far enough out stay middle in the subdivision
  int n = d.bar_height();
  auto far = d.middle_tiles(6 * n);  // distance >= 6n upstairs means >= 3(2n)
  auto mids = s.middle_tiles();
  std::set<int> mid_set(mids.begin(), mids.end());
  for (int t : far) {
    TileId id = d.complex().tile(t);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        int child = s.complex().index_of({2 * id.col + i, 2 * id.row + j});
        CHECK(mid_set.count(child) == 1);
      }
  }
}

TEST_CASE("uniformity report") {
  Dumbbell d = fixtures::classic_dumbbell();
  std::vector<double> rho(d.complex().size(), 1.0);
  // H = 1 via a single-tile bar crossing; target H/n = 1
  auto rep = check_virtually_bar_uniform(d, rho, 1e-12);
  CHECK(rep.pass);
  CHECK(rep.max_deviation == doctest::Approx(0.0));

  // perturb one middle tile by H/(2n)
  auto mids = d.middle_tiles();
  REQUIRE(!mids.empty());
  rho[mids[0]] += 0.5;
  auto rep2 = check_virtually_bar_uniform(d, rho, 1e-12);
  CHECK(!rep2.pass);
  CHECK(rep2.max_deviation == doctest::Approx(0.5));
}

TEST_CASE("random dumbbells build and subdivide") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 10; ++iter) {
    int n = 1 + iter % 3;
    int w = 6 * n + (iter % 5);
    Dumbbell d = fixtures::random_dumbbell(rng, n, w, 12);
    CHECK(d.bar_width() >= 6 * d.bar_height());
    Dumbbell s = d.subdivide_binary();
    CHECK(s.complex().size() == 4 * d.complex().size());
  }
}

TEST_CASE("tray dumbbell uses top-side edges") {
  Dumbbell d = fixtures::tray_dumbbell();
  const auto& left = d.complex().arcs().edges[static_cast<int>(Side::left)];
  REQUIRE(left.size() == 1);
  CHECK(left[0].from == LatticePoint{-1, 2});
  CHECK(left[0].to == LatticePoint{0, 2});
  const auto& right = d.complex().arcs().edges[static_cast<int>(Side::right)];
  REQUIRE(right.size() == 1);
  CHECK(right[0].from == LatticePoint{8, 2});
}
