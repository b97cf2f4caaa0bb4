#include "dgsp/graph.hpp"

#include <cmath>
#include <tuple>

#include "dgsp/errors.hpp"

namespace dgsp {

Graph Graph::from_adjacency(Matrix adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw DimensionError("adjacency matrix must be square");
  const std::size_t n = adjacency.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) throw DomainError("graph has a self-loop");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(adjacency(i, j) - adjacency(j, i)) > 1e-12)
        throw DomainError("adjacency matrix is not symmetric");
      if (adjacency(i, j) < 0.0 || adjacency(j, i) < 0.0)
        throw DomainError("edge weights must be nonnegative");
      const double w = 0.5 * (adjacency(i, j) + adjacency(j, i));
      adjacency(i, j) = w;
      adjacency(j, i) = w;
    }
  }
  return Graph(std::move(adjacency));
}

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  Matrix a(n, n);
  for (const auto& [i, j, w] : edges) {
    if (i >= n || j >= n) throw DimensionError("edge endpoint out of range");
    if (i == j) throw DomainError("graph has a self-loop");
    if (w < 0.0) throw DomainError("edge weights must be nonnegative");
    a(i, j) = w;
    a(j, i) = w;
  }
  return Graph(std::move(a));
}

bool operator==(const Graph& a, const Graph& b) { return a.adjacency() == b.adjacency(); }

Matrix laplacian(const Graph& g) {
  const std::size_t n = g.size();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      degree += g.adjacency()(i, j);
      l(i, j) = -g.adjacency()(i, j);
    }
    l(i, i) = degree;
  }
  return l;
}

}  // namespace dgsp
