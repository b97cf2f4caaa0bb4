#pragma once

// Simple weighted undirected graphs. The adjacency matrix is kept exactly
// symmetric with a zero diagonal; the combinatorial Laplacian L = D - A is
// the shift operator everything else in the graph pipeline derives from.

#include <cstddef>
#include <vector>

#include "dgsp/linalg.hpp"

namespace dgsp {

class Graph {
 public:
  /// Validates symmetry (within 1e-12, then symmetrized exactly),
  /// nonnegative weights, and an all-zero diagonal.
  static Graph from_adjacency(Matrix adjacency);

  /// Builds from an edge list {i, j, w}; missing edges default to weight 0.
  static Graph from_edges(std::size_t n,
                          const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges);

  std::size_t size() const { return adjacency_.rows(); }
  const Matrix& adjacency() const { return adjacency_; }

 private:
  explicit Graph(Matrix adjacency) : adjacency_(std::move(adjacency)) {}
  Matrix adjacency_;
};

bool operator==(const Graph& a, const Graph& b);

/// Combinatorial Laplacian L = D - A with D = diag(row sums).
Matrix laplacian(const Graph& g);

}  // namespace dgsp
