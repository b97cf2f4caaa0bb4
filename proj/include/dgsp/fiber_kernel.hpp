#pragma once

// Fiberwise probability measures represented intensionally: a kernel maps a
// base point to the discrete measure on its fiber. The total space is never
// materialized on its own — only under a concrete input measure (pullback),
// which keeps composition lazy and finite. Equivalences are verified against
// supplied witnesses; the library never searches for witnesses.

#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "dgsp/measure.hpp"
#include "dgsp/report.hpp"

namespace dgsp {

/// A point of the total space: a base point together with a fiber atom.
struct TotalPoint {
  Vector base;
  Atom fiber;
};

/// Encode a total point as a pair atom (base vector, fiber payload).
Atom to_atom(const TotalPoint& p);
TotalPoint total_point_from_atom(const Atom& a);

class FiberKernel {
 public:
  enum class Kind { constant, table, functional };

  using TableEntries = std::vector<std::pair<Vector, DiscreteMeasure>>;
  using Fn = std::function<DiscreteMeasure(const Vector&)>;

  /// Same fiber measure over every base point.
  static FiberKernel constant(std::size_t base_dim, DiscreteMeasure fiber);
  /// Finite map from base points to fiber measures; keys must be distinct
  /// within 1e-12. Evaluation at a missing base point is an error, the base
  /// space is not silently extended.
  static FiberKernel table(std::size_t base_dim, TableEntries entries);
  /// Arbitrary pure mapping; must be side-effect-free and safe to call
  /// concurrently. Library-only (not serializable).
  static FiberKernel functional(std::size_t base_dim, Fn fn);

  Kind kind() const;
  std::size_t base_dim() const { return base_dim_; }

  /// Fiber measure over the given base point.
  DiscreteMeasure at(const Vector& base) const;

  const DiscreteMeasure& constant_measure() const;
  const TableEntries& entries() const;

 private:
  FiberKernel(std::size_t base_dim,
              std::variant<DiscreteMeasure, TableEntries, Fn> payload)
      : base_dim_(base_dim), payload_(std::move(payload)) {}
  std::size_t base_dim_;
  std::variant<DiscreteMeasure, TableEntries, Fn> payload_;
};

/// Lift a base measure to the total space: the weight of (x, a) is
/// mu({x}) * mu_x({a}). Atoms of mu must be vectors in the kernel's base.
DiscreteMeasure pullback(const FiberKernel& k, const DiscreteMeasure& mu);

/// Generic form of pullback for fpms whose base points are arbitrary atoms:
/// the fiber over each atom is produced by `fiber`. Result atoms are pairs
/// (base atom, fiber atom).
DiscreteMeasure pullback_over(const DiscreteMeasure& mu,
                              const std::function<DiscreteMeasure(const Atom&)>& fiber);

using TotalMap = std::function<TotalPoint(const TotalPoint&)>;

/// Checks that g induces a self-equivalence of the kernel over each base
/// point in the sample: (a) g preserves the base, (b) g pushes the fiber
/// measure to itself, (c) g is weight-preserving atom by atom. On finite
/// fibers the atom sigma-algebra is the whole power set, so (c) checked on
/// atoms is exhaustive.
Report verify_self_equivalence(const FiberKernel& k, const std::vector<Vector>& sample,
                               const TotalMap& g, double tol = 1e-9);

/// Checks a fiberwise equivalence witnessed by g (k1 -> k2) and h (k2 -> k1):
/// h o g must be a self-equivalence of k1 and g o h one of k2.
Report verify_fiberwise_equivalence(const FiberKernel& k1, const FiberKernel& k2,
                                    const std::vector<Vector>& sample, const TotalMap& g,
                                    const TotalMap& h, double tol = 1e-9);

/// Kernel over the same base whose fiber at x is the product measure
/// k1(x) x k2(x); fibers are pair atoms. Marginals recover the factors.
FiberKernel fiber_product(const FiberKernel& k1, const FiberKernel& k2);

}  // namespace dgsp
