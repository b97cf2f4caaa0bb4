#pragma once

// Conditional-expectation surrogate of a correspondence: the fiber-averaged
// readout r -> E[f'(r, a)]. Pushing a measure through the surrogate is the
// best deterministic approximation of the correspondence's action in the
// sup-Wasserstein sense, and the harnesses here check that bound and the
// surrogate's algebra (additivity, composition, functoriality on constant
// kernels) numerically.

#include <functional>
#include <variant>

#include "dgsp/correspondence.hpp"
#include "dgsp/report.hpp"
#include "dgsp/rng.hpp"
#include "dgsp/transport.hpp"

namespace dgsp {

/// A candidate deterministic approximation of a correspondence.
class SurrogateMap {
 public:
  enum class Kind { closed_form_linear, table, functional };

  using Table = std::vector<std::pair<Vector, Vector>>;
  using Fn = std::function<Vector(const Vector&)>;

  static SurrogateMap table(Table entries);
  static SurrogateMap functional(Fn fn);

  Kind kind() const { return static_cast<Kind>(payload_.index()); }
  Vector operator()(const Vector& r) const;
  const Matrix& matrix() const;

 private:
  friend SurrogateMap exact_surrogate(const LinearFilter& lf);
  explicit SurrogateMap(std::variant<Matrix, Table, Fn> payload)
      : payload_(std::move(payload)) {}
  std::variant<Matrix, Table, Fn> payload_;
};

/// Fiber-averaged readout at a single base point.
Vector e_of(const Correspondence& c, const Vector& r);
Vector e_of(const LinearFilter& lf, const Vector& r);

/// Closed form E[M] * T for a constant-kernel linear filter.
/// Non-constant (or undecidable functional) kernels are a domain error.
Matrix e_matrix(const LinearFilter& lf);

/// The closed-form surrogate of a constant-kernel linear filter; the only
/// way to obtain a closed_form_linear surrogate.
SurrogateMap exact_surrogate(const LinearFilter& lf);

/// Pushforward of a measure through the surrogate map of c.
DiscreteMeasure e_pushforward(const Correspondence& c, const DiscreteMeasure& mu);

/// For random measures supported on the sample and every candidate map g,
/// checks W(e-pushforward, action) <= max over sample points of
/// W(g at the point, action on the Dirac) + slack. The candidate family is
/// whatever the caller supplies; the report notes its size.
Report verify_best_approx(const Correspondence& c, const std::vector<Vector>& sample,
                          const std::vector<SurrogateMap>& candidates, int trials, Rng& rng,
                          double slack = 1e-8);

/// Checks the surrogate algebra at probe points: the surrogate of a sum is
/// the sum of surrogates, and the surrogate of a composition is the
/// expectation of the outer surrogate over the inner action.
Report check_e_algebra(const Correspondence& c, const Correspondence& c_prime,
                       const std::vector<Vector>& probes, double tol = 1e-9);

}  // namespace dgsp
