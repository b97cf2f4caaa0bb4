#include "dgsp/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dgsp/errors.hpp"

namespace dgsp {

namespace {

struct Problem {
  std::size_t m, n;
  std::vector<double> supply, demand;
  std::vector<double> cost;  // m*n row-major
  double at(std::size_t i, std::size_t j) const { return cost[i * n + j]; }
};

struct Solution {
  std::vector<double> flow;  // m*n row-major
  double cost = 0.0;
};

// Basis maintained as a spanning tree on the bipartite node set
// (rows 0..m-1, cols m..m+n-1); every basic cell is one tree edge.
class TransportSimplex {
 public:
  explicit TransportSimplex(const Problem& p) : p_(p) {}

  bool solve(Solution& out, std::size_t max_pivots) {
    init_northwest();
    for (std::size_t pivot = 0; pivot < max_pivots; ++pivot) {
      compute_potentials();
      std::size_t ei = 0, ej = 0;
      if (!find_entering(ei, ej)) {
        out.flow = flow_;
        out.cost = 0.0;
        for (std::size_t i = 0; i < p_.m; ++i)
          for (std::size_t j = 0; j < p_.n; ++j) out.cost += flow_[i * p_.n + j] * p_.at(i, j);
        return true;
      }
      pivot_on(ei, ej);
    }
    return false;  // pivot budget exhausted, caller perturbs and retries
  }

 private:
  void init_northwest() {
    flow_.assign(p_.m * p_.n, 0.0);
    basic_.assign(p_.m * p_.n, false);
    row_adj_.assign(p_.m, {});
    col_adj_.assign(p_.n, {});
    std::vector<double> supply = p_.supply, demand = p_.demand;
    std::size_t i = 0, j = 0;
    while (true) {
      const double s = supply[i], d = demand[j];
      const double t = std::min(s, d);
      set_basic(i, j, t);
      supply[i] -= t;
      demand[j] -= t;
      if (i + 1 == p_.m && j + 1 == p_.n) break;
      if (j + 1 == p_.n)
        ++i;
      else if (i + 1 == p_.m)
        ++j;
      else if (s <= d)
        ++i;  // row exhausted first
      else
        ++j;
    }
  }

  void set_basic(std::size_t i, std::size_t j, double value) {
    flow_[i * p_.n + j] = value;
    basic_[i * p_.n + j] = true;
    row_adj_[i].push_back(j);
    col_adj_[j].push_back(i);
  }

  void drop_basic(std::size_t i, std::size_t j) {
    basic_[i * p_.n + j] = false;
    std::erase(row_adj_[i], j);
    std::erase(col_adj_[j], i);
  }

  // u_i + v_j = c_ij on basic cells, rooted at u_0 = 0. The basis is a
  // spanning tree, so one breadth-first pass settles every potential.
  void compute_potentials() {
    u_.assign(p_.m, 0.0);
    v_.assign(p_.n, 0.0);
    std::vector<char> row_done(p_.m, 0), col_done(p_.n, 0);
    std::vector<std::size_t> queue{0};  // row node 0
    row_done[0] = 1;
    std::vector<char> is_row{1};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      if (is_row[head]) {
        for (std::size_t j : row_adj_[node])
          if (!col_done[j]) {
            v_[j] = p_.at(node, j) - u_[node];
            col_done[j] = 1;
            queue.push_back(j);
            is_row.push_back(0);
          }
      } else {
        for (std::size_t i : col_adj_[node])
          if (!row_done[i]) {
            u_[i] = p_.at(i, node) - v_[node];
            row_done[i] = 1;
            queue.push_back(i);
            is_row.push_back(1);
          }
      }
    }
  }

  bool find_entering(std::size_t& ei, std::size_t& ej) const {
    double scale = 1.0;
    for (double c : p_.cost) scale = std::max(scale, std::fabs(c));
    const double tol = 1e-12 * scale;
    double best = -tol;
    bool found = false;
    for (std::size_t i = 0; i < p_.m; ++i)
      for (std::size_t j = 0; j < p_.n; ++j) {
        if (basic_[i * p_.n + j]) continue;
        const double reduced = p_.at(i, j) - u_[i] - v_[j];
        if (reduced < best) {
          best = reduced;
          ei = i;
          ej = j;
          found = true;
        }
      }
    return found;
  }

  // The unique tree path from the entering column node back to the entering
  // row node closes the pivot cycle. Cells along the path alternate signs,
  // starting negative.
  void pivot_on(std::size_t ei, std::size_t ej) {
    const std::size_t row_base = 0, col_base = p_.m;
    std::vector<std::size_t> parent(p_.m + p_.n, SIZE_MAX);
    std::vector<char> seen(p_.m + p_.n, 0);
    std::vector<std::size_t> queue{col_base + ej};
    seen[col_base + ej] = 1;
    while (!queue.empty()) {
      const std::size_t node = queue.back();
      queue.pop_back();
      if (node == row_base + ei) break;
      if (node >= col_base) {
        const std::size_t j = node - col_base;
        for (std::size_t i : col_adj_[j])
          if (!seen[row_base + i]) {
            seen[row_base + i] = 1;
            parent[row_base + i] = node;
            queue.push_back(row_base + i);
          }
      } else {
        const std::size_t i = node;
        for (std::size_t j : row_adj_[i])
          if (!seen[col_base + j]) {
            seen[col_base + j] = 1;
            parent[col_base + j] = node;
            queue.push_back(col_base + j);
          }
      }
    }

    // Walk back from the entering row to the entering column, collecting the
    // cycle cells with alternating signs (entering cell itself is +).
    std::vector<std::pair<std::size_t, std::size_t>> minus_cells, plus_cells;
    std::size_t node = row_base + ei;
    bool minus = true;  // first tree edge leaving the entering row is -
    while (parent[node] != SIZE_MAX) {
      const std::size_t up = parent[node];
      std::size_t i, j;
      if (node >= col_base) {
        j = node - col_base;
        i = up;
      } else {
        i = node;
        j = up - col_base;
      }
      (minus ? minus_cells : plus_cells).push_back({i, j});
      minus = !minus;
      node = up;
    }

    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave_i = 0, leave_j = 0;
    for (const auto& [i, j] : minus_cells) {
      const double f = flow_[i * p_.n + j];
      if (f < theta) {
        theta = f;
        leave_i = i;
        leave_j = j;
      }
    }

    for (const auto& [i, j] : minus_cells) flow_[i * p_.n + j] -= theta;
    for (const auto& [i, j] : plus_cells) flow_[i * p_.n + j] += theta;
    drop_basic(leave_i, leave_j);
    set_basic(ei, ej, flow_[ei * p_.n + ej] + theta);
  }

  const Problem& p_;
  std::vector<double> flow_;
  std::vector<char> basic_;
  std::vector<std::vector<std::size_t>> row_adj_;
  std::vector<std::vector<std::size_t>> col_adj_;
  std::vector<double> u_, v_;
};

Solution solve_transport(Problem p) {
  const std::size_t budget = 64 + 16 * (p.m + p.n) * (p.m + p.n);
  Solution out;
  {
    TransportSimplex simplex(p);
    if (simplex.solve(out, budget)) return out;
  }
  // Cycling: break ties by perturbing the marginals slightly and re-solving.
  constexpr double eps = 1e-12;
  double extra = 0.0;
  for (std::size_t i = 0; i < p.m; ++i) {
    p.supply[i] += eps * static_cast<double>(i + 1);
    extra += eps * static_cast<double>(i + 1);
  }
  for (std::size_t j = 0; j < p.n; ++j) p.demand[j] += extra / static_cast<double>(p.n);
  TransportSimplex simplex(p);
  if (!simplex.solve(out, 64 * budget))
    throw Error("transport solver failed to converge after perturbation");
  return out;
}

void check_vector_measures(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const std::size_t dim = mu.atom(0).vec().dim();
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu.atom(i).vec().dim() != dim)
      throw DimensionError("transport needs uniform atom dimensions");
  for (std::size_t j = 0; j < nu.size(); ++j)
    if (nu.atom(j).vec().dim() != dim)
      throw DimensionError("transport needs equal atom dimensions on both sides");
}

std::vector<std::size_t> positive_support(const DiscreteMeasure& mu) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu.weight(i) > 0.0) idx.push_back(i);
  return idx;
}

}  // namespace

Coupling optimal_coupling(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  check_vector_measures(mu, nu);
  const auto rows = positive_support(mu);
  const auto cols = positive_support(nu);

  Problem p;
  p.m = rows.size();
  p.n = cols.size();
  p.supply.reserve(p.m);
  p.demand.reserve(p.n);
  for (std::size_t i : rows) p.supply.push_back(mu.weight(i));
  for (std::size_t j : cols) p.demand.push_back(nu.weight(j));
  p.cost.resize(p.m * p.n);
  for (std::size_t a = 0; a < p.m; ++a) {
    const Vector& x = mu.atom(rows[a]).vec();
    for (std::size_t b = 0; b < p.n; ++b)
      p.cost[a * p.n + b] = squared_norm(x - nu.atom(cols[b]).vec());
  }

  const Solution sol = solve_transport(std::move(p));

  Matrix plan(mu.size(), nu.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      plan(rows[a], cols[b]) = sol.flow[a * cols.size() + b];
  return Coupling{mu, nu, std::move(plan), sol.cost};
}

double w2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return std::sqrt(std::max(optimal_coupling(mu, nu).cost, 0.0));
}

double w2_dirac(const DiscreteMeasure& mu, const Vector& p) {
  double cost = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Vector& x = mu.atom(i).vec();
    if (x.dim() != p.dim()) throw DimensionError("dirac target dimension mismatch");
    cost += mu.weight(i) * squared_norm(x - p);
  }
  return std::sqrt(std::max(cost, 0.0));
}

}  // namespace dgsp
