#include "dgsp/gsp.hpp"

#include <algorithm>
#include <cmath>

#include "dgsp/errors.hpp"

namespace dgsp {

GraphEnsemble::GraphEnsemble(std::vector<Graph> graphs, std::vector<double> probs)
    : graphs_(std::move(graphs)), probs_(std::move(probs)) {
  if (graphs_.empty()) throw DomainError("ensemble needs at least one graph");
  if (graphs_.size() != probs_.size())
    throw DimensionError("ensemble has mismatched graph and probability counts");
  for (const Graph& g : graphs_)
    if (g.size() != graphs_.front().size())
      throw DimensionError("ensemble graphs must share a vertex count");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw DomainError("ensemble probabilities must be nonnegative");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-6)
    throw DomainError("ensemble probabilities sum to " + std::to_string(total));
  if (total != 1.0)
    for (double& p : probs_) p /= total;
}

SamplingMask make_mask(std::size_t n, std::vector<std::size_t> kept) {
  if (kept.empty()) throw DomainError("sampling mask must keep at least one vertex");
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.back() >= n) throw DimensionError("sampling mask index out of range");
  return SamplingMask{std::move(kept)};
}

Matrix projection_matrix(const SamplingMask& mask, std::size_t n) {
  Matrix p(n, n);
  for (std::size_t i : mask.kept) p(i, i) = 1.0;
  return p;
}

Matrix restriction_matrix(const SamplingMask& mask, std::size_t n) {
  Matrix r(mask.kept.size(), n);
  for (std::size_t k = 0; k < mask.kept.size(); ++k) r(k, mask.kept[k]) = 1.0;
  return r;
}

LinearFilter change_of_basis(const GraphEnsemble& ens) {
  const std::size_t n = ens.vertex_count();
  std::vector<Atom> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const SymEigen eig = sym_eigen(laplacian(ens.graph(i)));
    const Matrix basis_t = eig.eigenvectors.transpose();
    const double defect = orthogonality_defect(basis_t);
    if (defect > 1e-8)
      throw DomainError("eigendecomposition produced a non-orthogonal basis");
    atoms.emplace_back(basis_t);
    weights.push_back(ens.prob(i));
  }
  return make_linear_filter(
      Matrix::identity(n), n,
      FiberKernel::constant(n, DiscreteMeasure(std::move(atoms), std::move(weights))));
}

LinearFilter pseudo_inverse_morphism(const LinearFilter& lf) {
  FiberKernel kernel = [&]() {
    auto transpose_atoms = [](const DiscreteMeasure& fiber) {
      return pushforward(fiber, [](const Atom& a) { return Atom(a.mat().transpose()); });
    };
    switch (lf.kernel.kind()) {
      case FiberKernel::Kind::constant:
        return FiberKernel::constant(lf.kernel.base_dim(),
                                     transpose_atoms(lf.kernel.constant_measure()));
      case FiberKernel::Kind::table: {
        FiberKernel::TableEntries entries;
        for (const auto& [key, fiber] : lf.kernel.entries())
          entries.emplace_back(key, transpose_atoms(fiber));
        return FiberKernel::table(lf.kernel.base_dim(), std::move(entries));
      }
      case FiberKernel::Kind::functional: {
        FiberKernel inner = lf.kernel;
        return FiberKernel::functional(lf.kernel.base_dim(),
                                       [inner, transpose_atoms](const Vector& r) {
                                         return transpose_atoms(inner.at(r));
                                       });
      }
    }
    throw Error("unreachable");
  }();
  // Transposing swaps the payload shape, so the output dimension becomes the
  // inner dimension and vice versa; square in every use here.
  return make_linear_filter(lf.pre_map, lf.inner_dim(), std::move(kernel));
}

LinearFilter convolution_kernel(std::size_t n, const Vector& multipliers) {
  if (multipliers.dim() != n)
    throw DimensionError("multiplier dimension differs from vertex count");
  return make_linear_filter(
      Matrix::identity(n), n,
      FiberKernel::constant(n, DiscreteMeasure::dirac(Atom(Matrix::diagonal(multipliers)))));
}

LinearFilter convolution_kernel(const GraphEnsemble& ens,
                                const std::vector<Vector>& per_graph_multipliers) {
  const std::size_t n = ens.vertex_count();
  if (per_graph_multipliers.size() != ens.size())
    throw DimensionError("need one multiplier vector per ensemble member");
  std::vector<Atom> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (per_graph_multipliers[i].dim() != n)
      throw DimensionError("multiplier dimension differs from vertex count");
    atoms.emplace_back(Matrix::diagonal(per_graph_multipliers[i]));
    weights.push_back(ens.prob(i));
  }
  return make_linear_filter(
      Matrix::identity(n), n,
      FiberKernel::constant(n, DiscreteMeasure(std::move(atoms), std::move(weights))));
}

LinearFilter convolution_filter(const LinearFilter& kernel, const LinearFilter& basis) {
  return compose_linear(pseudo_inverse_morphism(basis), compose_linear(kernel, basis));
}

LinearFilter sampling_morphism(std::size_t n, const SamplingMask& mask) {
  return sampling_morphism(n, std::vector<SamplingMask>{mask}, {1.0});
}

LinearFilter sampling_morphism(std::size_t n, const std::vector<SamplingMask>& masks,
                               const std::vector<double>& probs) {
  if (masks.empty() || masks.size() != probs.size())
    throw DimensionError("need one probability per sampling mask");
  std::vector<Atom> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const Matrix p = projection_matrix(masks[i], n);
    if (idempotency_defect(p) > 1e-10) throw DomainError("sampling atom is not idempotent");
    atoms.emplace_back(p);
    weights.push_back(probs[i]);
  }
  return make_linear_filter(
      Matrix::identity(n), n,
      FiberKernel::constant(n, DiscreteMeasure(std::move(atoms), std::move(weights))));
}

double bandlimit_distance(const DiscreteMeasure& mu, const Correspondence& c) {
  return w2(mu, apply(c, mu));
}

bool is_bandlimited(const DiscreteMeasure& mu, const Correspondence& c, double epsilon) {
  return bandlimit_distance(mu, c) <= epsilon;
}

bool is_bandlimited(const DiscreteMeasure& mu, const LinearFilter& lf, double epsilon) {
  return is_bandlimited(mu, to_correspondence(lf), epsilon);
}

RecoveryResult recover(const Vector& observed, const LinearFilter& lf,
                       const SamplingMask& mask, double tol) {
  const Matrix surrogate = e_matrix(lf);
  const std::size_t n = surrogate.cols();
  if (surrogate.rows() != n)
    throw DimensionError("recovery needs a square surrogate matrix");
  if (observed.dim() != mask.kept.size())
    throw DimensionError("observation length differs from mask size");

  const Matrix restricted = restriction_matrix(mask, n) * surrogate;
  const std::size_t obs_rank = numeric_rank(restricted, tol);
  const std::size_t range_rank = numeric_rank(surrogate, tol);

  const Vector coefficients = pseudo_inverse(restricted, tol) * observed;
  return RecoveryResult{surrogate * coefficients, obs_rank, range_rank,
                        obs_rank == range_rank};
}

double orthogonality_defect(const Matrix& q) {
  return max_abs_diff(q.transpose() * q, Matrix::identity(q.cols()));
}

double diagonality_defect(const Matrix& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j) worst = std::max(worst, std::fabs(d(i, j)));
  return worst;
}

double idempotency_defect(const Matrix& p) { return max_abs_diff(p * p, p); }

double audit_filter_atoms(const LinearFilter& lf, double (*defect)(const Matrix&)) {
  double worst = 0.0;
  auto scan = [&](const DiscreteMeasure& fiber) {
    for (std::size_t i = 0; i < fiber.size(); ++i)
      worst = std::max(worst, defect(fiber.atom(i).mat()));
  };
  switch (lf.kernel.kind()) {
    case FiberKernel::Kind::constant:
      scan(lf.kernel.constant_measure());
      break;
    case FiberKernel::Kind::table:
      for (const auto& [key, fiber] : lf.kernel.entries()) scan(fiber);
      break;
    case FiberKernel::Kind::functional:
      throw DomainError("cannot audit a functional kernel without a base sample");
  }
  return worst;
}

}  // namespace dgsp
