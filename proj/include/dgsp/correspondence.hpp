#pragma once

// Morphisms between signal spaces: a correspondence is a fiber kernel over
// the domain together with a readout that sends each materialized total
// point to an output vector. Acting on a measure means pulling back along
// the kernel and pushing forward through the readout. Composition enumerates
// the fiber product lazily; addition pairs fibers and sums readouts. Linear
// filters are the matrix-valued normal form and are closed under both.

#include <functional>
#include <optional>

#include "dgsp/fiber_kernel.hpp"

namespace dgsp {

using Readout = std::function<Vector(const Vector& base, const Atom& fiber)>;

struct Correspondence {
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  FiberKernel kernel;  // over R^domain_dim
  Readout readout;     // total on materialized atoms; partiality is an error
};

/// Identity morphism: singleton fibers, readout returns the base point.
Correspondence identity_correspondence(std::size_t n);

/// Zero morphism (identity kernel, zero readout) — the unit of addition.
Correspondence zero_correspondence(std::size_t domain_dim, std::size_t codomain_dim);

/// Action on measures: pushforward of the pullback. Mass is preserved.
DiscreteMeasure apply(const Correspondence& c, const DiscreteMeasure& mu);

/// Composition: fibers of the result over r are pairs (a, b) where a is
/// drawn over r and b over the intermediate point readout1(r, a); weights
/// multiply. Acts as apply(c2) after apply(c1).
Correspondence compose(const Correspondence& c2, const Correspondence& c1);

/// Addition: fiber product kernel, readouts summed pointwise.
Correspondence add(const Correspondence& c1, const Correspondence& c2);

/// Matrix-valued normal form: a pre-map T followed by a random linear map
/// drawn from a kernel over the intermediate space. The induced readout is
/// (r, M) -> M (T r).
struct LinearFilter {
  Matrix pre_map;       // T, inner_dim x domain_dim
  std::size_t output_dim = 0;
  FiberKernel kernel;   // over R^inner_dim, matrix atoms output_dim x inner_dim

  std::size_t domain_dim() const { return pre_map.cols(); }
  std::size_t inner_dim() const { return pre_map.rows(); }
};

/// Builds a linear filter, validating fiber payload shapes where the kernel
/// is inspectable (constant or table).
LinearFilter make_linear_filter(Matrix pre_map, std::size_t output_dim, FiberKernel kernel);

Correspondence to_correspondence(const LinearFilter& lf);

DiscreteMeasure apply(const LinearFilter& lf, const DiscreteMeasure& mu);

/// Composition in normal form: pre-map of the first filter is kept and the
/// kernel draws (M1, M2) with combined payload M2 T2 M1. The action equals
/// the generic composition of the induced correspondences.
LinearFilter compose_linear(const LinearFilter& lf2, const LinearFilter& lf1);

/// Addition in normal form: pre-maps stack vertically, payloads concatenate
/// horizontally so that [M1 | M2] (T1 r ; T2 r) = M1 T1 r + M2 T2 r.
LinearFilter add_linear(const LinearFilter& lf1, const LinearFilter& lf2);

/// Deterministic linear map T as a filter: identity pre-map, Dirac kernel.
LinearFilter embed_linear_map(const Matrix& t);

/// Zero filter with the given shape.
LinearFilter zero_linear_filter(std::size_t domain_dim, std::size_t codomain_dim);

/// True when the kernel provably returns the same fiber measure everywhere:
/// constant kernels trivially, table kernels by comparing all values.
/// Functional kernels are undecidable here — nullopt, flagged distinctly.
std::optional<bool> is_constant_kernel(const FiberKernel& k, double tol = 1e-12);
std::optional<bool> is_constant_kernel(const LinearFilter& lf, double tol = 1e-12);
std::optional<bool> is_constant_kernel(const Correspondence& c, double tol = 1e-12);

}  // namespace dgsp
