#pragma once

// Graph-domain instantiations of the morphism algebra: ensembles of weighted
// graphs, the spectral change of basis and its pseudo-inverse, convolution
// kernels over diagonal matrices, sampling over 0/1 projections, bandlimited
// membership and least-squares recovery from partial observations.

#include <vector>

#include "dgsp/correspondence.hpp"
#include "dgsp/expectation.hpp"
#include "dgsp/graph.hpp"

namespace dgsp {

/// Finite probability distribution over graphs on a common vertex set.
class GraphEnsemble {
 public:
  GraphEnsemble(std::vector<Graph> graphs, std::vector<double> probs);

  std::size_t size() const { return graphs_.size(); }
  std::size_t vertex_count() const { return graphs_.front().size(); }
  const Graph& graph(std::size_t i) const { return graphs_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }

 private:
  std::vector<Graph> graphs_;
  std::vector<double> probs_;
};

struct SamplingMask {
  /// Sorted distinct vertex indices that are observed.
  std::vector<std::size_t> kept;
};

SamplingMask make_mask(std::size_t n, std::vector<std::size_t> kept);

/// 0/1 diagonal projection onto the kept coordinates (n x n).
Matrix projection_matrix(const SamplingMask& mask, std::size_t n);

/// |kept| x n matrix selecting the observed rows.
Matrix restriction_matrix(const SamplingMask& mask, std::size_t n);

/// Spectral change of basis: places each graph's transposed Laplacian
/// eigenvector matrix in a constant kernel with the ensemble's probability.
/// The forward transform maps a signal to its spectral coefficients; each
/// atom is orthogonal by construction. One decomposition is computed per
/// graph, so the filter and its pseudo-inverse share the same basis.
LinearFilter change_of_basis(const GraphEnsemble& ens);

/// Transposes every kernel atom; composing with the original recovers the
/// identity action for orthogonal atoms.
LinearFilter pseudo_inverse_morphism(const LinearFilter& lf);

/// Convolution kernel: constant kernel over diagonal matrices. Either one
/// shared multiplier vector, or one per ensemble member.
LinearFilter convolution_kernel(std::size_t n, const Vector& multipliers);
LinearFilter convolution_kernel(const GraphEnsemble& ens,
                                const std::vector<Vector>& per_graph_multipliers);

/// Convolution filter: inverse transform after kernel after transform.
LinearFilter convolution_filter(const LinearFilter& kernel, const LinearFilter& basis);

/// Sampling morphism: constant kernel over 0/1 diagonal projections.
LinearFilter sampling_morphism(std::size_t n, const SamplingMask& mask);
LinearFilter sampling_morphism(std::size_t n, const std::vector<SamplingMask>& masks,
                               const std::vector<double>& probs);

/// Distance between a measure and its image under the morphism.
double bandlimit_distance(const DiscreteMeasure& mu, const Correspondence& c);
bool is_bandlimited(const DiscreteMeasure& mu, const Correspondence& c, double epsilon);
bool is_bandlimited(const DiscreteMeasure& mu, const LinearFilter& lf, double epsilon);

struct RecoveryResult {
  Vector signal;                  // full-length reconstruction
  std::size_t observation_rank;   // rank of restriction * surrogate matrix
  std::size_t filter_rank;        // rank of the surrogate matrix
  bool injective_on_range;        // observation rank == filter rank
};

/// Least-squares recovery of a signal in the range of the filter's surrogate
/// matrix from its values on the mask. Exact when the observation operator
/// is injective on that range; otherwise the result is flagged, not hidden.
RecoveryResult recover(const Vector& observed, const LinearFilter& lf,
                       const SamplingMask& mask, double tol = 1e-10);

/// Per-atom defects for the three kernel support conditions.
double orthogonality_defect(const Matrix& q);   // |Q^T Q - I|_max
double diagonality_defect(const Matrix& d);     // largest off-diagonal magnitude
double idempotency_defect(const Matrix& p);     // |P P - P|_max

/// Worst defect over all inspectable kernel atoms of a filter.
double audit_filter_atoms(const LinearFilter& lf, double (*defect)(const Matrix&));

}  // namespace dgsp
