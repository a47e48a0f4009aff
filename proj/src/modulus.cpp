#include "fatflow/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "fatflow/dijkstra.hpp"
#include "fatflow/qp.hpp"
#include "fatflow/weight_vector.hpp"

namespace fatflow {

double height(const GridComplex& c, const std::vector<double>& rho) {
  return shortest_fat_path(c, rho, Side::top, Side::bottom).length;
}

Rat height(const GridComplex& c, const std::vector<Rat>& rho) {
  return shortest_fat_path(c, rho, Side::top, Side::bottom).length;
}

double area(const std::vector<double>& rho) {
  double a = 0;
  for (double v : rho) a += v * v;
  return a;
}

namespace {

// Restricted master problem of the cutting plane: minimize 1/2||rho||^2
// subject to unit length along every pooled path. Solved through the dual
// (one multiplier per path, nonnegative) by a warm-started active-set NNLS.
// Only the passive-set Gram matrix is kept, with a bordered Cholesky
// factor; pool-wide gradients are path lengths under the current weights.
class Master {
 public:
  explicit Master(int tiles) : tiles_(tiles) {}

  int add_path(std::vector<int> path) {
    std::vector<int> sorted(path);
    std::sort(sorted.begin(), sorted.end());
    const int id = static_cast<int>(paths_.size());
    paths_.push_back(std::move(path));
    path_set_.insert(sorted);
    sorted_.push_back(std::move(sorted));
    lambda_.push_back(0.0);
    in_passive_.push_back(0);
    return id;
  }

  bool known(const std::vector<int>& sorted_path) const {
    return path_set_.count(sorted_path) > 0;
  }

  // Full NNLS pass over the pool.
  void solve(double tol) {
    for (int guard = 0; guard < 500; ++guard) {
      inner_loop();
      // optimality over the pool: every pooled path at least unit length
      std::vector<double> rho = weights();
      int enter = -1;
      double worst = -tol;
      for (int i = 0; i < static_cast<int>(paths_.size()); ++i) {
        if (in_passive_[i]) continue;
        double g = -1.0;
        for (int t : sorted_[i]) g += rho[t];
        if (g < worst) {
          worst = g;
          enter = i;
        }
      }
      if (enter < 0) return;
      push_passive(enter);
    }
  }

  std::vector<double> weights() const {
    std::vector<double> rho(tiles_, 0.0);
    for (int p : passive_)
      for (int t : sorted_[p]) rho[t] += lambda_[p];
    return rho;
  }

  const std::vector<std::vector<int>>& paths() const { return paths_; }
  const std::vector<std::vector<int>>& sorted_paths() const { return sorted_; }
  const std::vector<double>& lambda() const { return lambda_; }
  const std::vector<int>& passive() const { return passive_; }

 private:
  double overlap(int i, int j) const {
    const auto& a = sorted_[i];
    const auto& b = sorted_[j];
    std::size_t x = 0, y = 0;
    int n = 0;
    while (x < a.size() && y < b.size()) {
      if (a[x] < b[y]) ++x;
      else if (a[x] > b[y]) ++y;
      else {
        ++n;
        ++x;
        ++y;
      }
    }
    return static_cast<double>(n);
  }

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * cap_ + j;
  }

  void grow(int cap) {
    std::vector<double> biggerL(static_cast<std::size_t>(cap) * cap, 0.0);
    std::vector<double> biggerG(static_cast<std::size_t>(cap) * cap, 0.0);
    const int w = static_cast<int>(passive_.size()) - 1;
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < w; ++j) {
        biggerL[static_cast<std::size_t>(i) * cap + j] = L_[idx(i, j)];
        biggerG[static_cast<std::size_t>(i) * cap + j] = G_[idx(i, j)];
      }
    L_ = std::move(biggerL);
    G_ = std::move(biggerG);
    cap_ = cap;
  }

  void push_passive(int path) {
    passive_.push_back(path);
    in_passive_[path] = 1;
    const int w = static_cast<int>(passive_.size());
    if (w > cap_) grow(2 * w + 8);
    for (int j = 0; j < w; ++j) {
      double ov = overlap(path, passive_[j]);
      G_[idx(w - 1, j)] = ov;
      G_[idx(j, w - 1)] = ov;
    }
    if (!border()) {
      ridge_ = std::max(ridge_ * 10, 1e-12);
      refactor();
    }
  }

  void drop_passive(const std::vector<char>& dropmask) {
    std::vector<int> kept;
    const int w = static_cast<int>(passive_.size());
    std::vector<int> old_pos;
    int first_removed = w;
    for (int k = 0; k < w; ++k) {
      if (dropmask[k]) {
        in_passive_[passive_[k]] = 0;
        lambda_[passive_[k]] = 0.0;
        first_removed = std::min(first_removed, k);
      } else {
        kept.push_back(passive_[k]);
        old_pos.push_back(k);
      }
    }
    const int nw = static_cast<int>(kept.size());
    for (int i = 0; i < nw; ++i)
      for (int j = 0; j < nw; ++j)
        G_[idx(i, j)] = G_[idx(old_pos[i], old_pos[j])];
    passive_ = std::move(kept);
    // rows before the first removal keep their factor
    refactor_from(first_removed);
  }

  // Solve L L^T z = 1 over the passive set.
  std::vector<double> solve_normal() const {
    const int w = static_cast<int>(passive_.size());
    std::vector<double> z(w, 1.0);
    for (int i = 0; i < w; ++i) {
      double s = z[i];
      const double* Li = &L_[idx(i, 0)];
      for (int j = 0; j < i; ++j) s -= Li[j] * z[j];
      z[i] = s / Li[i];
    }
    for (int i = w - 1; i >= 0; --i) {
      double s = z[i];
      for (int j = i + 1; j < w; ++j) s -= L_[idx(j, i)] * z[j];
      z[i] = s / L_[idx(i, i)];
    }
    return z;
  }

  bool border() {
    const int w = static_cast<int>(passive_.size());
    for (int j = 0; j + 1 < w; ++j) {
      double s = G_[idx(w - 1, j)];
      for (int k = 0; k < j; ++k) s -= L_[idx(w - 1, k)] * L_[idx(j, k)];
      L_[idx(w - 1, j)] = s / L_[idx(j, j)];
    }
    double d = G_[idx(w - 1, w - 1)] + ridge_;
    for (int k = 0; k + 1 < w; ++k) d -= L_[idx(w - 1, k)] * L_[idx(w - 1, k)];
    if (d <= 1e-12) return false;
    L_[idx(w - 1, w - 1)] = std::sqrt(d);
    return true;
  }

  void refactor() { refactor_from(0); }

  void refactor_from(int start) {
    const int w = static_cast<int>(passive_.size());
    for (int i = start; i < w; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = G_[idx(i, j)];
        if (i == j) s += ridge_;
        for (int k = 0; k < j; ++k) s -= L_[idx(i, k)] * L_[idx(j, k)];
        if (i == j) {
          if (s <= 1e-12) {
            ridge_ = std::max(ridge_ * 10, 1e-10);
            refactor_from(0);
            return;
          }
          L_[idx(i, i)] = std::sqrt(s);
        } else {
          L_[idx(i, j)] = s / L_[idx(j, j)];
        }
      }
    }
  }

  void inner_loop() {
    for (int guard = 0; guard < 2000 && !passive_.empty(); ++guard) {
      std::vector<double> z = solve_normal();
      const int w = static_cast<int>(z.size());
      bool ok = true;
      for (double v : z)
        if (!(v > 0)) ok = false;
      if (ok) {
        for (int k = 0; k < w; ++k) lambda_[passive_[k]] = z[k];
        return;
      }
      // step toward z until the first multiplier hits zero, drop it
      double alpha = 1.0;
      for (int k = 0; k < w; ++k) {
        if (z[k] > 0) continue;
        double t = lambda_[passive_[k]];
        double a = t <= 0 ? 0.0 : t / (t - z[k]);
        alpha = std::min(alpha, a);
      }
      std::vector<char> drop(w, 0);
      bool any = false;
      for (int k = 0; k < w; ++k) {
        double nv = lambda_[passive_[k]] + alpha * (z[k] - lambda_[passive_[k]]);
        lambda_[passive_[k]] = nv;
        if (z[k] <= 0 && nv <= 1e-15) {
          drop[k] = 1;
          any = true;
        }
      }
      if (!any) {  // numerical stall: drop the most negative direction
        int worst = 0;
        for (int k = 1; k < w; ++k)
          if (z[k] < z[worst]) worst = k;
        drop[worst] = 1;
      }
      drop_passive(drop);
    }
  }

  int tiles_;
  std::vector<std::vector<int>> paths_;   // in chain order
  std::vector<std::vector<int>> sorted_;  // same paths, tile-sorted
  std::set<std::vector<int>> path_set_;
  std::vector<double> lambda_;
  std::vector<int> passive_;
  std::vector<char> in_passive_;
  std::vector<double> L_, G_;  // passive-set Cholesky factor and Gram
  int cap_ = 0;
  double ridge_ = 0.0;
};

std::vector<std::vector<int>> minimal_length_paths(
    const std::vector<std::vector<int>>& pool, const std::vector<double>& rho,
    double limit) {
  std::vector<std::vector<int>> out;
  for (const auto& p : pool) {
    double len = 0;
    for (int t : p) len += rho[t];
    if (len <= limit) out.push_back(p);
  }
  return out;
}

// Exact post-solve refinement: fix the support found by the float solve,
// solve the dual equality system in rationals, and certify global optimality
// with the exact separation oracle. Returns nullopt when the structure
// cannot be pinned down in a few rounds.
struct ExactRefinement {
  std::vector<Rat> rho;
  Rat height;
};

std::optional<ExactRefinement> refine_exact(const GridComplex& c,
                                            const Master& master,
                                            int size_limit = 120) {
  std::vector<std::vector<int>> support;  // tile-sorted paths
  for (int i : master.passive())
    if (master.lambda()[i] > 1e-11) support.push_back(master.sorted_paths()[i]);
  if (support.empty() || static_cast<int>(support.size()) > size_limit)
    return std::nullopt;

  for (int round = 0; round < 60; ++round) {
    // dual equality solve with nonnegativity repairs
    std::vector<std::vector<int>> P = support;
    QVec lambda;
    for (int guard = 0; guard < 200; ++guard) {
      const int k = static_cast<int>(P.size());
      QMat G(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          int ov = 0;
          std::size_t a = 0, b = 0;
          while (a < P[i].size() && b < P[j].size()) {
            if (P[i][a] < P[j][b]) ++a;
            else if (P[i][a] > P[j][b]) ++b;
            else {
              ++ov;
              ++a;
              ++b;
            }
          }
          G.at(i, j) = ov;
        }
      QVec ones(k, Rat(1));
      if (!solve_linear_exact(G, ones, lambda)) return std::nullopt;
      int drop = -1;
      for (int i = 0; i < k; ++i)
        if (lambda[i] < 0 && (drop < 0 || lambda[i] < lambda[drop])) drop = i;
      if (drop < 0) break;
      P.erase(P.begin() + drop);
      lambda.clear();
    }
    if (lambda.empty()) return std::nullopt;

    std::vector<Rat> rho(c.size(), Rat(0));
    for (std::size_t i = 0; i < P.size(); ++i)
      for (int t : P[i]) rho[t] += lambda[i];

    auto sp = shortest_fat_path(c, rho, Side::top, Side::bottom);
    if (sp.length >= 1) {
      // lambda >= 0, supports have exact unit length, and no fat path is
      // shorter than 1: exact global optimum
      return ExactRefinement{std::move(rho), sp.length};
    }
    std::vector<int> missing = sp.tiles;
    std::sort(missing.begin(), missing.end());
    if (std::find(support.begin(), support.end(), missing) != support.end())
      return std::nullopt;
    support.push_back(std::move(missing));
  }
  return std::nullopt;
}

void attach_exact(ModulusResult& r, std::vector<Rat> rho, Normalization norm) {
  // exact solutions of the unit-length program have height exactly 1
  Rat h = 1;
  if (norm == Normalization::integer) {
    mpz_class scale = common_denominator(rho);
    for (Rat& v : rho) v *= Rat(scale);
    h = Rat(scale);
  }
  Rat a = area(rho);
  r.rho_exact = rho;
  r.height_exact = h;
  r.area_exact = a;
  r.modulus_exact = h * h / a;
  r.rho.assign(rho.size(), 0.0);
  for (std::size_t i = 0; i < rho.size(); ++i) r.rho[i] = rat_d(rho[i]);
  r.height = rat_d(h);
  r.area = rat_d(a);
  r.modulus = rat_d(*r.modulus_exact);
}

}  // namespace

ModulusResult solve_optimal(const GridComplex& c, const SolveOptions& opts) {
  const int n = static_cast<int>(c.size());
  Master master(n);

  // seed: shortest hop path under unit weights
  {
    std::vector<double> ones(n, 1.0);
    auto p = shortest_fat_path(c, ones, Side::top, Side::bottom);
    master.add_path(p.tiles);
    master.solve(opts.tol_kkt);
  }

  ModulusResult res;
  double min_len = 0;
  const std::size_t batch = 48;
  for (res.iterations = 1; res.iterations <= opts.max_iter; ++res.iterations) {
    std::vector<double> rho = master.weights();
    auto dij = node_dijkstra(c, rho, c.side_tiles(Side::top), Adjacency::fat);

    // one candidate per bottom target: the parent-tree path into it
    std::vector<std::pair<double, int>> targets;
    for (int t : c.side_tiles(Side::bottom))
      if (dij.reached[t]) targets.push_back({dij.dist[t], t});
    std::sort(targets.begin(), targets.end());
    min_len = targets.empty() ? 0.0 : targets.front().first;
    if (min_len >= 1.0 - opts.tol_feas) break;

    std::size_t added = 0;
    for (const auto& [len, t] : targets) {
      if (len >= 1.0 - opts.tol_feas || added >= batch) break;
      std::vector<int> chain;
      for (int v = t; v >= 0; v = dij.parent[v]) chain.push_back(v);
      std::reverse(chain.begin(), chain.end());
      std::vector<int> sorted(chain);
      std::sort(sorted.begin(), sorted.end());
      if (master.known(sorted)) continue;
      master.add_path(chain);
      ++added;
    }
    if (added == 0) break;  // cannot be improved further in floats
    master.solve(opts.tol_kkt);
  }

  std::vector<double> rho = master.weights();
  res.feasibility_residual = std::max(0.0, 1.0 - min_len);
  res.converged = min_len >= 1.0 - std::max(opts.tol_feas, 1e-8);
  if (res.iterations > opts.max_iter) {
    res.iterations = opts.max_iter;
    res.converged = false;
  }
  for (std::size_t i = 0; i < master.paths().size(); ++i) {
    double len = 0;
    for (int t : master.paths()[i]) len += rho[t];
    res.kkt_residual =
        std::max(res.kkt_residual, master.lambda()[i] * std::abs(len - 1.0));
  }

  bool want_exact = opts.exact || opts.normalize == Normalization::integer;
  if (want_exact && res.converged) {
    if (auto exact = refine_exact(c, master)) {
      attach_exact(res, exact->rho, opts.normalize);
      res.feasibility_residual = 0;  // certified exactly
      res.kkt_residual = 0;
      res.active_paths = minimal_length_paths(master.paths(), res.rho,
                                              res.height * (1 + 1e-9));
      return res;
    }
  }

  // float normalization: height-one
  double h = std::max(min_len, 1e-300);
  for (double& v : rho) v /= h;
  res.rho = std::move(rho);
  res.height = height(c, res.rho);
  res.area = area(res.rho);
  res.modulus = res.height * res.height / res.area;
  res.active_paths = minimal_length_paths(master.paths(), res.rho,
                                          res.height * (1 + 1e-9));
  return res;
}

std::vector<std::vector<int>> enumerate_fat_paths(const GridComplex& c,
                                                  std::size_t cap,
                                                  bool prune_dominated) {
  std::vector<char> is_top(c.size(), 0), is_bottom(c.size(), 0);
  for (int t : c.side_tiles(Side::top)) is_top[t] = 1;
  for (int t : c.side_tiles(Side::bottom)) is_bottom[t] = 1;

  std::vector<std::vector<int>> paths;
  std::vector<int> stack;
  std::vector<char> used(c.size(), 0);
  std::size_t steps = 0;
  const std::size_t step_cap = 200 * (cap + 10);

  // DFS from each top tile. Pruned mode drops chains that pass through a
  // second top-arc tile or continue past a bottom-arc tile; their
  // constraints are implied by shorter chains.
  std::function<void(int)> dfs = [&](int u) {
    if (++steps > step_cap)
      throw solver_error(SolverError::too_many_paths, "path search too large");
    stack.push_back(u);
    used[u] = 1;
    bool stop = prune_dominated && is_bottom[u];
    if (is_bottom[u]) {
      if (paths.size() >= cap)
        throw solver_error(SolverError::too_many_paths,
                           "more than " + std::to_string(cap) + " fat paths");
      paths.push_back(stack);
    }
    if (!stop) {
      for (int v : c.fat_neighbors(u)) {
        if (used[v]) continue;
        if (prune_dominated && is_top[v]) continue;
        dfs(v);
      }
    }
    used[u] = 0;
    stack.pop_back();
  };
  for (int s : c.side_tiles(Side::top)) dfs(s);
  return paths;
}

ModulusResult brute_force_optimal(const GridComplex& c, std::size_t path_cap,
                                  Normalization normalize) {
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<int>> paths = enumerate_fat_paths(c, path_cap);

  ExactQP qp;
  qp.Q = QMat(n, n);
  for (int i = 0; i < n; ++i) qp.Q.at(i, i) = 2;
  qp.c.assign(n, Rat(0));
  qp.G = QMat(static_cast<int>(paths.size()), n);
  qp.g.assign(paths.size(), Rat(1));
  for (std::size_t p = 0; p < paths.size(); ++p)
    for (int t : paths[p]) qp.G.at(static_cast<int>(p), t) = 1;

  auto sol = solve_exact_qp(qp, QVec(n, Rat(1)));
  for (const Rat& v : sol.x)
    if (v < 0) throw std::logic_error("negative optimal weight");
  if (height(c, sol.x) != 1)
    throw std::logic_error("exact optimum does not have unit height");

  ModulusResult res;
  res.iterations = sol.iterations;
  res.converged = true;
  res.feasibility_residual = 0;
  res.kkt_residual = 0;
  attach_exact(res, sol.x, normalize);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    Rat len = 0;
    for (int t : paths[p]) len += (*res.rho_exact)[t];
    if (len == *res.height_exact) res.active_paths.push_back(paths[p]);
  }
  return res;
}

Certificate certify(const GridComplex& c, const ModulusResult& r,
                    std::size_t path_cap) {
  Certificate cert;
  const double H = r.height;
  const double tol = 1e-9 * std::max(1.0, H);

  auto dtop = node_dijkstra(c, r.rho, c.side_tiles(Side::top), Adjacency::fat);
  auto dbot = node_dijkstra(c, r.rho, c.side_tiles(Side::bottom), Adjacency::fat);
  for (std::size_t t = 0; t < c.size(); ++t) {
    if (r.rho[t] <= 1e-12 * std::max(1.0, H)) continue;
    double through = dtop.dist[t] + dbot.dist[t] - r.rho[t];
    if (through > H + tol) {
      cert.support_ok = false;
      break;
    }
  }

  // exact flow decomposition on small instances (unpruned chains: a flow
  // may legitimately revisit an arc through zero-weight tiles)
  if (r.rho_exact && c.size() <= 12) {
    try {
      auto paths = enumerate_fat_paths(c, path_cap, false);
      std::vector<std::vector<int>> minimal;
      for (const auto& p : paths) {
        Rat len = 0;
        for (int t : p) len += (*r.rho_exact)[t];
        if (len == *r.height_exact) minimal.push_back(p);
      }
      QMat A(static_cast<int>(minimal.size()), static_cast<int>(c.size()));
      for (std::size_t p = 0; p < minimal.size(); ++p)
        for (int t : minimal[p]) A.at(static_cast<int>(p), t) = 1;
      auto nnls = solve_exact_nnls(A, *r.rho_exact, 0);
      cert.flow_ok = nnls.converged && nnls.residual2 == 0;
    } catch (const solver_error&) {
      cert.flow_ok = std::nullopt;
    }
  }

  // gap against the independent exhaustive solve
  try {
    ModulusResult oracle = brute_force_optimal(c, path_cap);
    cert.gap = std::abs(r.modulus - oracle.modulus);
  } catch (const solver_error&) {
    cert.gap = std::nullopt;
  }
  return cert;
}

}  // namespace fatflow
