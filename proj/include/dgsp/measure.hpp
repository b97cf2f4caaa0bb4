#pragma once

// Finite discrete probability measures over a payload space. Atoms carry one
// of: vector, matrix, graph, pair of atoms, or an integer tag. A measure is
// the computable stand-in for a distribution with finite support: weights are
// nonnegative, sum to one, and equal payloads (within the merge tolerance)
// are combined during construction so support never accumulates duplicates.

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "dgsp/graph.hpp"
#include "dgsp/linalg.hpp"

namespace dgsp {

class Atom {
 public:
  enum class Kind { vector, matrix, graph, pair, tag };

  explicit Atom(Vector v) : payload_(std::move(v)) {}
  explicit Atom(Matrix m) : payload_(std::move(m)) {}
  explicit Atom(Graph g) : payload_(std::move(g)) {}
  explicit Atom(std::int64_t tag) : payload_(tag) {}
  Atom(Atom first, Atom second);

  Kind kind() const { return static_cast<Kind>(payload_.index()); }

  const Vector& vec() const;
  const Matrix& mat() const;
  const Graph& graph() const;
  const Atom& first() const;
  const Atom& second() const;
  std::int64_t tag() const;

 private:
  struct PairBox;
  std::variant<Vector, Matrix, Graph, std::shared_ptr<const PairBox>, std::int64_t> payload_;
};

struct Atom::PairBox {
  PairBox(Atom f, Atom s) : first(std::move(f)), second(std::move(s)) {}
  Atom first, second;
};

inline Atom::Atom(Atom first, Atom second)
    : payload_(std::make_shared<const PairBox>(std::move(first), std::move(second))) {}

/// Total order over atoms: kind, then shape, then entries lexicographically.
int compare(const Atom& a, const Atom& b);

/// Componentwise distance between payloads of the same kind and shape;
/// +infinity when kinds or shapes differ. Tags and graphs of different
/// vertex counts never match.
double payload_distance(const Atom& a, const Atom& b);

bool atoms_close(const Atom& a, const Atom& b, double tol);

class DiscreteMeasure {
 public:
  /// Validates weights (nonnegative, total within 1e-6 of one — beyond that
  /// the weights are treated as a user error, not float drift), canonically
  /// merges near-equal atoms, and renormalizes the total to one.
  DiscreteMeasure(std::vector<Atom> atoms, std::vector<double> weights);

  static DiscreteMeasure dirac(Atom a);

  std::size_t size() const { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> weights_;
};

/// Image measure under a pure mapping; colliding images merge with summed
/// weight. A throwing mapping is reported with the offending atom index.
DiscreteMeasure pushforward(const DiscreteMeasure& mu,
                            const std::function<Atom(const Atom&)>& g);

/// Independent product: atoms are pairs, weights multiply.
DiscreteMeasure product(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// First moment of a measure over vector atoms of uniform dimension.
Vector mean(const DiscreteMeasure& mu);

/// Expected squared norm of a measure over vector atoms.
double second_moment(const DiscreteMeasure& mu);

/// Largest discrepancy between two measures seen as weighted atom sets:
/// atoms are matched greedily by payload distance (within payload_tol),
/// matched pairs contribute max(payload distance, weight difference),
/// unmatched atoms contribute their weight. Zero-weight leftovers are free.
double measure_max_diff(const DiscreteMeasure& a, const DiscreteMeasure& b,
                        double payload_tol = 1e-9);

bool measures_close(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol = 1e-9);

}  // namespace dgsp
