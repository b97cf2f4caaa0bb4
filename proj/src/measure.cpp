#include "dgsp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dgsp/errors.hpp"

namespace dgsp {

const Vector& Atom::vec() const {
  if (kind() != Kind::vector) throw DomainError("atom payload is not a vector");
  return std::get<Vector>(payload_);
}

const Matrix& Atom::mat() const {
  if (kind() != Kind::matrix) throw DomainError("atom payload is not a matrix");
  return std::get<Matrix>(payload_);
}

const Graph& Atom::graph() const {
  if (kind() != Kind::graph) throw DomainError("atom payload is not a graph");
  return std::get<Graph>(payload_);
}

const Atom& Atom::first() const {
  if (kind() != Kind::pair) throw DomainError("atom payload is not a pair");
  return std::get<std::shared_ptr<const PairBox>>(payload_)->first;
}

const Atom& Atom::second() const {
  if (kind() != Kind::pair) throw DomainError("atom payload is not a pair");
  return std::get<std::shared_ptr<const PairBox>>(payload_)->second;
}

std::int64_t Atom::tag() const {
  if (kind() != Kind::tag) throw DomainError("atom payload is not a tag");
  return std::get<std::int64_t>(payload_);
}

namespace {

int compare_doubles(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

}  // namespace

int compare(const Atom& a, const Atom& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Atom::Kind::vector:
      return compare_doubles(a.vec().entries(), b.vec().entries());
    case Atom::Kind::matrix: {
      if (a.mat().rows() != b.mat().rows()) return a.mat().rows() < b.mat().rows() ? -1 : 1;
      if (a.mat().cols() != b.mat().cols()) return a.mat().cols() < b.mat().cols() ? -1 : 1;
      return compare_doubles(a.mat().data(), b.mat().data());
    }
    case Atom::Kind::graph: {
      if (a.graph().size() != b.graph().size())
        return a.graph().size() < b.graph().size() ? -1 : 1;
      return compare_doubles(a.graph().adjacency().data(), b.graph().adjacency().data());
    }
    case Atom::Kind::pair: {
      int c = compare(a.first(), b.first());
      if (c != 0) return c;
      return compare(a.second(), b.second());
    }
    case Atom::Kind::tag:
      return a.tag() < b.tag() ? -1 : (a.tag() > b.tag() ? 1 : 0);
  }
  return 0;
}

namespace {

double max_abs_entry_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

double payload_distance(const Atom& a, const Atom& b) {
  constexpr double kFar = std::numeric_limits<double>::infinity();
  if (a.kind() != b.kind()) return kFar;
  switch (a.kind()) {
    case Atom::Kind::vector:
      if (a.vec().dim() != b.vec().dim()) return kFar;
      return max_abs_entry_diff(a.vec().entries(), b.vec().entries());
    case Atom::Kind::matrix:
      if (a.mat().rows() != b.mat().rows() || a.mat().cols() != b.mat().cols()) return kFar;
      return max_abs_entry_diff(a.mat().data(), b.mat().data());
    case Atom::Kind::graph:
      if (a.graph().size() != b.graph().size()) return kFar;
      return max_abs_entry_diff(a.graph().adjacency().data(), b.graph().adjacency().data());
    case Atom::Kind::pair:
      return std::max(payload_distance(a.first(), b.first()),
                      payload_distance(a.second(), b.second()));
    case Atom::Kind::tag:
      return a.tag() == b.tag() ? 0.0 : kFar;
  }
  return kFar;
}

bool atoms_close(const Atom& a, const Atom& b, double tol) {
  return payload_distance(a, b) <= tol;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size())
    throw DimensionError("measure has mismatched atom and weight counts");
  if (atoms.empty()) throw DomainError("measure needs at least one atom");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("measure weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-6)
    throw DomainError("measure weights sum to " + std::to_string(total) +
                      ", beyond drift tolerance");

  // Canonical merge: sort, then fold runs of near-equal payloads. Sorting
  // first makes the result independent of input order.
  std::vector<std::size_t> idx(atoms.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return compare(atoms[i], atoms[j]) < 0;
  });

  const double tol = atom_merge_tolerance();
  for (std::size_t k : idx) {
    if (!atoms_.empty() && atoms_close(atoms_.back(), atoms[k], tol)) {
      weights_.back() += weights[k];
    } else {
      atoms_.push_back(std::move(atoms[k]));
      weights_.push_back(weights[k]);
    }
  }

  // Only correct genuine drift: re-dividing an already-unit total would
  // perturb weights by an ulp and break exact identity laws downstream.
  if (std::fabs(total - 1.0) > 1e-12) {
    for (double& w : weights_) w /= total;
  }
}

DiscreteMeasure DiscreteMeasure::dirac(Atom a) {
  std::vector<Atom> atoms;
  atoms.push_back(std::move(a));
  return DiscreteMeasure(std::move(atoms), {1.0});
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu,
                            const std::function<Atom(const Atom&)>& g) {
  std::vector<Atom> images;
  images.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    try {
      images.push_back(g(mu.atom(i)));
    } catch (const std::exception& e) {
      throw MappingError(i, e.what());
    }
  }
  return DiscreteMeasure(std::move(images), mu.weights());
}

DiscreteMeasure product(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const std::size_t count = mu.size() * nu.size();
  if (count > support_cap())
    throw SupportCapError("product support " + std::to_string(count) +
                          " exceeds cap " + std::to_string(support_cap()));
  std::vector<Atom> atoms;
  std::vector<double> weights;
  atoms.reserve(count);
  weights.reserve(count);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      atoms.emplace_back(mu.atom(i), nu.atom(j));
      weights.push_back(mu.weight(i) * nu.weight(j));
    }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

Vector mean(const DiscreteMeasure& mu) {
  const std::size_t dim = mu.atom(0).vec().dim();
  Vector acc(dim);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Vector& x = mu.atom(i).vec();
    if (x.dim() != dim) throw DomainError("mean needs atoms of uniform dimension");
    for (std::size_t d = 0; d < dim; ++d) acc[d] += mu.weight(i) * x[d];
  }
  return acc;
}

double second_moment(const DiscreteMeasure& mu) {
  const std::size_t dim = mu.atom(0).vec().dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Vector& x = mu.atom(i).vec();
    if (x.dim() != dim) throw DomainError("second moment needs atoms of uniform dimension");
    acc += mu.weight(i) * squared_norm(x);
  }
  return acc;
}

double measure_max_diff(const DiscreteMeasure& a, const DiscreteMeasure& b,
                        double payload_tol) {
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = b.size();
    double best_dist = payload_tol;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = payload_distance(a.atom(i), b.atom(j));
      if (d <= best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == b.size()) {
      worst = std::max(worst, a.weight(i));  // unmatched: counts as lost mass
    } else {
      used[best] = true;
      worst = std::max(worst, std::max(best_dist, std::fabs(a.weight(i) - b.weight(best))));
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j)
    if (!used[j]) worst = std::max(worst, b.weight(j));
  return worst;
}

bool measures_close(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
  return measure_max_diff(a, b, tol) <= tol;
}

}  // namespace dgsp
