#pragma once

#include <stdexcept>
#include <vector>

#include "fatflow/rational.hpp"

namespace fatflow {

struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  Rat& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
};

using QVec = std::vector<Rat>;

// Gaussian elimination with free variables set to zero. Returns false when
// the system is inconsistent.
bool solve_linear_exact(QMat A, QVec b, QVec& x);

// minimize 1/2 x^T Q x + c^T x  subject to  E x = e  and  G x >= g,
// Q positive definite, starting from a feasible point. Primal active set;
// exact arithmetic, so the returned point is the exact optimum.
struct ExactQP {
  QMat Q;
  QVec c;
  QMat E;  // may be empty
  QVec e;
  QMat G;  // may be empty
  QVec g;
};

struct ExactQPResult {
  QVec x;
  QVec eq_multipliers;
  QVec ineq_multipliers;  // >= 0, complementary with G x - g
  int iterations = 0;
};

ExactQPResult solve_exact_qp(const ExactQP& p, QVec start, int max_iter = 0);

// minimize ||A^T t - b||^2 over t >= 0 (Lawson-Hanson). A holds one
// generator per row. residual2 == 0 iff b is a nonnegative combination.
struct ExactNNLSResult {
  QVec t;
  Rat residual2;
  bool converged = true;
};

ExactNNLSResult solve_exact_nnls(const QMat& A, const QVec& b, int max_iter = 0);

}  // namespace fatflow
