#include "dgsp/expectation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "dgsp/errors.hpp"

namespace dgsp {

SurrogateMap SurrogateMap::table(Table entries) {
  if (entries.empty()) throw DomainError("surrogate table needs at least one entry");
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[i].first.dim() == entries[j].first.dim() &&
          max_abs_diff(entries[i].first, entries[j].first) <= 1e-12)
        throw DomainError("surrogate table keys must be distinct");
  return SurrogateMap(std::move(entries));
}

SurrogateMap SurrogateMap::functional(Fn fn) { return SurrogateMap(std::move(fn)); }

Vector SurrogateMap::operator()(const Vector& r) const {
  switch (kind()) {
    case Kind::closed_form_linear:
      return std::get<Matrix>(payload_) * r;
    case Kind::table: {
      for (const auto& [key, value] : std::get<Table>(payload_))
        if (key.dim() == r.dim() && max_abs_diff(key, r) <= 1e-12) return value;
      throw KernelDomainError("surrogate table has no entry for the given point");
    }
    case Kind::functional:
      return std::get<Fn>(payload_)(r);
  }
  throw Error("unreachable");
}

const Matrix& SurrogateMap::matrix() const {
  if (kind() != Kind::closed_form_linear)
    throw DomainError("surrogate has no closed-form matrix");
  return std::get<Matrix>(payload_);
}

Vector e_of(const Correspondence& c, const Vector& r) {
  if (r.dim() != c.domain_dim) throw DimensionError("probe dimension differs from domain");
  const DiscreteMeasure fiber = c.kernel.at(r);
  Vector acc(c.codomain_dim);
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    const Vector value = c.readout(r, fiber.atom(i));
    if (value.dim() != c.codomain_dim)
      throw DimensionError("readout produced a vector of the wrong dimension");
    for (std::size_t d = 0; d < acc.dim(); ++d) acc[d] += fiber.weight(i) * value[d];
  }
  return acc;
}

Vector e_of(const LinearFilter& lf, const Vector& r) {
  return e_of(to_correspondence(lf), r);
}

Matrix e_matrix(const LinearFilter& lf) {
  const auto constant = is_constant_kernel(lf.kernel);
  if (!constant.has_value())
    throw DomainError("cannot decide constancy of a functional kernel");
  if (!*constant) throw DomainError("filter kernel is not constant");
  const DiscreteMeasure& fiber = lf.kernel.kind() == FiberKernel::Kind::constant
                                     ? lf.kernel.constant_measure()
                                     : lf.kernel.entries().front().second;
  Matrix expected(lf.output_dim, lf.inner_dim());
  for (std::size_t i = 0; i < fiber.size(); ++i)
    expected = expected + fiber.weight(i) * fiber.atom(i).mat();
  return expected * lf.pre_map;
}

SurrogateMap exact_surrogate(const LinearFilter& lf) { return SurrogateMap(e_matrix(lf)); }

DiscreteMeasure e_pushforward(const Correspondence& c, const DiscreteMeasure& mu) {
  return pushforward(mu, [&](const Atom& a) { return Atom(e_of(c, a.vec())); });
}

Report verify_best_approx(const Correspondence& c, const std::vector<Vector>& sample,
                          const std::vector<SurrogateMap>& candidates, int trials, Rng& rng,
                          double slack) {
  if (sample.empty()) throw DomainError("best-approximation check needs a nonempty sample");
  Report report;
  report.name = "best-approximation bound";

  double worst_slack = -std::numeric_limits<double>::infinity();

  // Per-candidate right-hand side: worst Dirac deviation over the sample.
  std::vector<double> rhs(candidates.size(), 0.0);
  for (std::size_t g = 0; g < candidates.size(); ++g)
    for (const Vector& r : sample) {
      const DiscreteMeasure action = apply(c, DiscreteMeasure::dirac(Atom(r)));
      rhs[g] = std::max(rhs[g], w2_dirac(action, candidates[g](r)));
    }

  for (int t = 0; t < trials; ++t) {
    Rng trial = rng.split(static_cast<std::uint64_t>(t));
    std::vector<Atom> atoms;
    std::vector<double> weights;
    double total = 0.0;
    for (const Vector& r : sample) {
      const double w = trial.uniform01();
      atoms.push_back(Atom(r));
      weights.push_back(w);
      total += w;
    }
    if (total <= 0.0) {
      weights.assign(weights.size(), 1.0 / static_cast<double>(weights.size()));
      total = 1.0;
    }
    for (double& w : weights) w /= total;
    const DiscreteMeasure mu(std::move(atoms), std::move(weights));

    const double lhs = w2(e_pushforward(c, mu), apply(c, mu));
    for (std::size_t g = 0; g < candidates.size(); ++g) {
      report.record(lhs <= rhs[g] + slack, lhs - rhs[g],
                    "trial " + std::to_string(t) + ", candidate " + std::to_string(g) +
                        ": bound violated");
      worst_slack = std::max(worst_slack, lhs - rhs[g]);
    }
  }
  {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "candidate family: %zu supplied maps (not exhaustive); max slack %.3e",
                  candidates.size(), worst_slack);
    report.notes = buf;
  }
  return report;
}

Report check_e_algebra(const Correspondence& c, const Correspondence& c_prime,
                       const std::vector<Vector>& probes, double tol) {
  Report report;
  report.name = "surrogate algebra";

  const bool addable =
      c.domain_dim == c_prime.domain_dim && c.codomain_dim == c_prime.codomain_dim;
  const bool composable = c_prime.codomain_dim == c.domain_dim;

  for (std::size_t p = 0; p < probes.size(); ++p) {
    const Vector& r = probes[p];
    if (addable) {
      const Vector lhs = e_of(add(c, c_prime), r);
      const Vector rhs = e_of(c, r) + e_of(c_prime, r);
      const double diff = max_abs_diff(lhs, rhs);
      report.record(diff <= tol, diff, "probe " + std::to_string(p) + ": additivity");
    }
    if (composable) {
      const Vector lhs = e_of(compose(c, c_prime), r);
      const DiscreteMeasure mid = apply(c_prime, DiscreteMeasure::dirac(Atom(r)));
      Vector rhs(c.codomain_dim);
      for (std::size_t i = 0; i < mid.size(); ++i) {
        const Vector value = e_of(c, mid.atom(i).vec());
        for (std::size_t d = 0; d < rhs.dim(); ++d) rhs[d] += mid.weight(i) * value[d];
      }
      const double diff = max_abs_diff(lhs, rhs);
      report.record(diff <= tol, diff, "probe " + std::to_string(p) + ": composition");
    }
  }
  if (!addable && !composable)
    throw DimensionError("morphisms are neither addable nor composable");
  return report;
}

}  // namespace dgsp
