#include "fatflow/qp.hpp"

#include <algorithm>

namespace fatflow {

bool solve_linear_exact(QMat A, QVec b, QVec& x) {
  const int m = A.rows, n = A.cols;
  std::vector<int> col_of_row(m, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int r = rank; r < m; ++r)
      if (A.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(rank, j));
    std::swap(b[piv], b[rank]);
    Rat inv = A.at(rank, col);
    for (int r = 0; r < m; ++r) {
      if (r == rank || A.at(r, col) == 0) continue;
      Rat f = A.at(r, col) / inv;
      for (int j = col; j < n; ++j) A.at(r, j) -= f * A.at(rank, j);
      b[r] -= f * b[rank];
    }
    col_of_row[rank] = col;
    ++rank;
  }
  for (int r = rank; r < m; ++r)
    if (b[r] != 0) return false;
  // Gauss-Jordan cleared every pivot column, and free variables are zero,
  // so each pivot solves directly.
  x.assign(n, Rat(0));
  for (int r = 0; r < rank; ++r) x[col_of_row[r]] = b[r] / A.at(r, col_of_row[r]);
  return true;
}

namespace {

Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec row_of(const QMat& m, int i) {
  QVec r(m.cols);
  for (int j = 0; j < m.cols; ++j) r[j] = m.at(i, j);
  return r;
}

}  // namespace

ExactQPResult solve_exact_qp(const ExactQP& p, QVec start, int max_iter) {
  const int n = static_cast<int>(start.size());
  const int ne = p.E.rows, ng = p.G.rows;
  if (max_iter <= 0) max_iter = 100 * (n + ne + ng) + 200;

  QVec x = std::move(start);
  std::vector<int> working;  // active inequality indices, in order
  std::vector<char> in_working(ng, 0);

  ExactQPResult res;
  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    // KKT system for the equality-constrained subproblem:
    //   [Q  A^T][p     ]   [-(Qx + c)]
    //   [A  0  ][lambda] = [0        ]
    const int na = ne + static_cast<int>(working.size());
    const int dim = n + na;
    QMat K(dim, dim);
    QVec rhs(dim, Rat(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) K.at(i, j) = p.Q.at(i, j);
      Rat qc = p.c.empty() ? Rat(0) : p.c[i];
      for (int j = 0; j < n; ++j) qc += p.Q.at(i, j) * x[j];
      rhs[i] = -qc;
    }
    for (int r = 0; r < ne; ++r)
      for (int j = 0; j < n; ++j) {
        K.at(n + r, j) = p.E.at(r, j);
        K.at(j, n + r) = p.E.at(r, j);
      }
    for (std::size_t w = 0; w < working.size(); ++w)
      for (int j = 0; j < n; ++j) {
        K.at(n + ne + static_cast<int>(w), j) = p.G.at(working[w], j);
        K.at(j, n + ne + static_cast<int>(w)) = p.G.at(working[w], j);
      }

    QVec sol;
    if (!solve_linear_exact(K, rhs, sol))
      throw std::logic_error("singular KKT system");
    QVec step(sol.begin(), sol.begin() + n);

    bool zero_step = true;
    for (const Rat& v : step)
      if (v != 0) {
        zero_step = false;
        break;
      }

    if (zero_step) {
      // multipliers: lambda_i for working inequalities (sign flip: KKT above
      // solves Qx + c + E^T mu + G_W^T nu = 0, constraint form G x >= g
      // wants Qx + c - G_W^T lambda = 0, so lambda = -nu)
      // Bland: drop the smallest constraint index among negative multipliers.
      int drop = -1;
      for (std::size_t w = 0; w < working.size(); ++w) {
        Rat lambda = -sol[n + ne + static_cast<int>(w)];
        if (lambda < 0 && (drop < 0 || working[w] < working[drop])) drop = static_cast<int>(w);
      }
      if (drop < 0) {
        res.x = x;
        res.eq_multipliers.assign(ne, Rat(0));
        for (int r = 0; r < ne; ++r) res.eq_multipliers[r] = -sol[n + r];
        res.ineq_multipliers.assign(ng, Rat(0));
        for (std::size_t w = 0; w < working.size(); ++w)
          res.ineq_multipliers[working[w]] = -sol[n + ne + static_cast<int>(w)];
        return res;
      }
      in_working[working[drop]] = 0;
      working.erase(working.begin() + drop);
      continue;
    }

    // Step length: nearest blocking constraint among inactive inequalities.
    Rat alpha = 1;
    int blocking = -1;
    for (int i = 0; i < ng; ++i) {
      if (in_working[i]) continue;
      QVec gi = row_of(p.G, i);
      Rat gp = dot(gi, step);
      if (gp >= 0) continue;
      Rat ai = (p.g[i] - dot(gi, x)) / gp;
      if (ai < alpha || (ai == alpha && blocking >= 0 && i < blocking)) {
        alpha = ai;
        blocking = i;
      }
    }
    if (alpha > 0)
      for (int i = 0; i < n; ++i) x[i] += alpha * step[i];
    if (blocking >= 0) {
      working.push_back(blocking);
      in_working[blocking] = 1;
    }
  }
  throw std::logic_error("active-set QP did not terminate");
}

ExactNNLSResult solve_exact_nnls(const QMat& A, const QVec& b, int max_iter) {
  const int m = A.rows, n = A.cols;
  if (max_iter <= 0) max_iter = 30 * (m + 1) + 100;

  QVec t(m, Rat(0));
  std::vector<char> passive(m, 0);
  auto residual = [&]() {
    QVec r = b;
    for (int i = 0; i < m; ++i) {
      if (t[i] == 0) continue;
      for (int j = 0; j < n; ++j) r[j] -= t[i] * A.at(i, j);
    }
    return r;
  };

  ExactNNLSResult out;
  out.converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    QVec r = residual();
    // gradient of 1/2||A^T t - b||^2 is -A r
    int enter = -1;
    Rat best = 0;
    for (int i = 0; i < m; ++i) {
      if (passive[i]) continue;
      Rat wi = dot(row_of(A, i), r);
      if (wi > best) {
        best = wi;
        enter = i;
      }
    }
    if (enter < 0) {
      out.converged = true;
      break;
    }
    passive[enter] = 1;

    // Inner loop: least squares on the passive set, clipped back to >= 0.
    for (int inner = 0; inner < max_iter; ++inner) {
      std::vector<int> pidx;
      for (int i = 0; i < m; ++i)
        if (passive[i]) pidx.push_back(i);
      const int k = static_cast<int>(pidx.size());
      QMat N(k, k);
      QVec rhsv(k);
      for (int a2 = 0; a2 < k; ++a2) {
        QVec ra = row_of(A, pidx[a2]);
        rhsv[a2] = dot(ra, b);
        for (int b2 = 0; b2 < k; ++b2)
          N.at(a2, b2) = dot(ra, row_of(A, pidx[b2]));
      }
      QVec z;
      if (!solve_linear_exact(N, rhsv, z))
        throw std::logic_error("inconsistent normal equations");

      bool all_pos = true;
      for (int a2 = 0; a2 < k; ++a2)
        if (z[a2] <= 0) all_pos = false;
      if (all_pos) {
        for (int i = 0; i < m; ++i) t[i] = 0;
        for (int a2 = 0; a2 < k; ++a2) t[pidx[a2]] = z[a2];
        break;
      }
      // step from t toward z until the first coordinate hits zero
      Rat alpha = 1;
      for (int a2 = 0; a2 < k; ++a2) {
        if (z[a2] > 0) continue;
        Rat ti = t[pidx[a2]];
        if (ti == z[a2]) continue;
        Rat ai = ti / (ti - z[a2]);
        if (ai < alpha) alpha = ai;
      }
      for (int a2 = 0; a2 < k; ++a2) {
        int i = pidx[a2];
        t[i] = t[i] + alpha * (z[a2] - t[i]);
        if (t[i] <= 0) {
          t[i] = 0;
          passive[i] = 0;
        }
      }
    }
  }
  QVec r = residual();
  out.t = t;
  out.residual2 = dot(r, r);
  return out;
}

}  // namespace fatflow
