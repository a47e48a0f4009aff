#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fatflow/grid.hpp"
#include "fatflow/rational.hpp"

namespace fatflow {

enum class Normalization { height_one, integer };

struct SolveOptions {
  double tol_feas = 1e-10;  // stop when the shortest path is >= 1 - tol_feas
  double tol_kkt = 1e-10;   // master-problem complementarity tolerance
  int max_iter = 20000;     // constraint generation rounds
  Normalization normalize = Normalization::height_one;
  bool exact = false;       // exact-rational post-solve refinement
};

struct ModulusResult {
  std::vector<double> rho;  // normalized weights, indexed like complex tiles
  double height = 0;        // H_rho
  double area = 0;          // sum of squared weights
  double modulus = 0;       // H^2 / A

  // Present when the exact refinement succeeded (or the solve was exact).
  std::optional<std::vector<Rat>> rho_exact;
  std::optional<Rat> height_exact, area_exact, modulus_exact;

  std::vector<std::vector<int>> active_paths;  // rho-length <= H(1 + tol)
  int iterations = 0;
  double feasibility_residual = 0;  // max(0, 1 - min path length), pre-scale
  double kkt_residual = 0;          // max |lambda * (len - 1)| over the pool
  bool converged = true;
};

enum class SolverError { max_iterations, too_many_paths };

class solver_error : public std::runtime_error {
 public:
  solver_error(SolverError code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  SolverError code() const { return code_; }

 private:
  SolverError code_;
};

// H_rho: minimum rho-length of a fat path joining top and bottom.
double height(const GridComplex& c, const std::vector<double>& rho);
Rat height(const GridComplex& c, const std::vector<Rat>& rho);

double area(const std::vector<double>& rho);
// (exact vectors use area() from weight_vector.hpp)

// Maximize H^2/A by minimizing the area subject to unit-length fat paths,
// with constraints generated lazily by the shortest-path separation oracle.
// Never throws on non-convergence: inspect .converged / residuals.
ModulusResult solve_optimal(const GridComplex& c, const SolveOptions& opts = {});

// Same quadratic program with every simple fat path enumerated up front and
// solved exactly. Independent of the cutting-plane machinery.
ModulusResult brute_force_optimal(const GridComplex& c,
                                  std::size_t path_cap = 200000,
                                  Normalization normalize = Normalization::height_one);

// All simple fat chains from a top-arc tile to a bottom-arc tile. With
// prune_dominated (the default) chains through a second top tile or past a
// bottom tile are dropped; their constraints are implied.
std::vector<std::vector<int>> enumerate_fat_paths(const GridComplex& c,
                                                  std::size_t cap,
                                                  bool prune_dominated = true);

struct Certificate {
  bool support_ok = true;             // positive weights lie on minimal paths
  std::optional<bool> flow_ok;        // exact flow decomposition (small only)
  std::optional<double> gap;          // |modulus - brute-force modulus|
};

Certificate certify(const GridComplex& c, const ModulusResult& r,
                    std::size_t path_cap = 20000);

}  // namespace fatflow
