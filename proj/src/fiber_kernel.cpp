#include "dgsp/fiber_kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dgsp/errors.hpp"

namespace dgsp {

namespace {

std::string format_point(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

Atom to_atom(const TotalPoint& p) { return Atom(Atom(p.base), p.fiber); }

TotalPoint total_point_from_atom(const Atom& a) {
  return TotalPoint{a.first().vec(), a.second()};
}

FiberKernel FiberKernel::constant(std::size_t base_dim, DiscreteMeasure fiber) {
  return FiberKernel(base_dim, std::move(fiber));
}

FiberKernel FiberKernel::table(std::size_t base_dim, TableEntries entries) {
  if (entries.empty()) throw DomainError("table kernel needs at least one entry");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first.dim() != base_dim)
      throw DimensionError("table key dimension differs from base dimension");
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (max_abs_diff(entries[i].first, entries[j].first) <= 1e-12)
        throw DomainError("table kernel keys must be distinct");
  }
  return FiberKernel(base_dim, std::move(entries));
}

FiberKernel FiberKernel::functional(std::size_t base_dim, Fn fn) {
  return FiberKernel(base_dim, std::move(fn));
}

FiberKernel::Kind FiberKernel::kind() const {
  return static_cast<Kind>(payload_.index());
}

DiscreteMeasure FiberKernel::at(const Vector& base) const {
  if (base.dim() != base_dim_)
    throw DimensionError("base point dimension differs from kernel base dimension");
  switch (kind()) {
    case Kind::constant:
      return std::get<DiscreteMeasure>(payload_);
    case Kind::table: {
      for (const auto& [key, fiber] : std::get<TableEntries>(payload_))
        if (max_abs_diff(key, base) <= 1e-12) return fiber;
      throw KernelDomainError("base point " + format_point(base) + " not in kernel table");
    }
    case Kind::functional:
      return std::get<Fn>(payload_)(base);
  }
  throw Error("unreachable");
}

const DiscreteMeasure& FiberKernel::constant_measure() const {
  if (kind() != Kind::constant) throw DomainError("kernel is not constant");
  return std::get<DiscreteMeasure>(payload_);
}

const FiberKernel::TableEntries& FiberKernel::entries() const {
  if (kind() != Kind::table) throw DomainError("kernel is not table-backed");
  return std::get<TableEntries>(payload_);
}

DiscreteMeasure pullback_over(const DiscreteMeasure& mu,
                              const std::function<DiscreteMeasure(const Atom&)>& fiber) {
  std::vector<Atom> atoms;
  std::vector<double> weights;
  std::size_t count = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const DiscreteMeasure fx = fiber(mu.atom(i));
    count += fx.size();
    if (count > support_cap())
      throw SupportCapError("pullback support exceeds cap " + std::to_string(support_cap()));
    for (std::size_t j = 0; j < fx.size(); ++j) {
      atoms.emplace_back(mu.atom(i), fx.atom(j));
      weights.push_back(mu.weight(i) * fx.weight(j));
    }
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

DiscreteMeasure pullback(const FiberKernel& k, const DiscreteMeasure& mu) {
  return pullback_over(mu, [&](const Atom& a) { return k.at(a.vec()); });
}

Report verify_self_equivalence(const FiberKernel& k, const std::vector<Vector>& sample,
                               const TotalMap& g, double tol) {
  Report report;
  report.name = "self-equivalence";
  for (const Vector& x : sample) {
    const DiscreteMeasure fiber = k.at(x);
    const std::string at = "base " + format_point(x);

    // (a) base preserved
    double base_drift = 0.0;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      const TotalPoint image = g(TotalPoint{x, fiber.atom(i)});
      base_drift = std::max(base_drift, image.base.dim() == x.dim()
                                            ? max_abs_diff(image.base, x)
                                            : std::numeric_limits<double>::infinity());
    }
    report.record(base_drift <= 1e-12, base_drift, at + ": base not preserved");

    // (b) pushforward of the fiber measure equals the fiber measure
    const DiscreteMeasure pushed =
        pushforward(fiber, [&](const Atom& a) { return g(TotalPoint{x, a}).fiber; });
    const double push_diff = measure_max_diff(pushed, fiber, tol);
    report.record(push_diff <= tol, push_diff, at + ": fiber measure not preserved");

    // (c) weight preservation on the support: atoms outside it are null
    // sets, and their images may land anywhere.
    double weight_diff = 0.0;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      if (fiber.weight(i) <= 0.0) continue;
      const Atom image = g(TotalPoint{x, fiber.atom(i)}).fiber;
      double image_weight = 0.0;
      for (std::size_t j = 0; j < fiber.size(); ++j)
        if (atoms_close(fiber.atom(j), image, atom_merge_tolerance()))
          image_weight += fiber.weight(j);
      weight_diff = std::max(weight_diff, std::fabs(image_weight - fiber.weight(i)));
    }
    report.record(weight_diff <= tol, weight_diff, at + ": atom weights not preserved");
  }
  return report;
}

Report verify_fiberwise_equivalence(const FiberKernel& k1, const FiberKernel& k2,
                                    const std::vector<Vector>& sample, const TotalMap& g,
                                    const TotalMap& h, double tol) {
  Report report;
  report.name = "fiberwise-equivalence";
  const Report hg = verify_self_equivalence(
      k1, sample, [&](const TotalPoint& p) { return h(g(p)); }, tol);
  const Report gh = verify_self_equivalence(
      k2, sample, [&](const TotalPoint& p) { return g(h(p)); }, tol);
  for (const Report* side : {&hg, &gh}) {
    report.checks += side->checks;
    report.max_violation = std::max(report.max_violation, side->max_violation);
    if (!side->pass) report.pass = false;
    for (const auto& v : side->violations)
      report.violations.push_back(
          {(side == &hg ? "h after g on first kernel: " : "g after h on second kernel: ") +
               v.context,
           v.magnitude});
  }

  // The witnesses must also carry each kernel's fibers onto the other's:
  // without this, bijective witnesses would equate kernels with different
  // weights even though they encode different statistics.
  for (const Vector& x : sample) {
    const DiscreteMeasure f1 = k1.at(x);
    const DiscreteMeasure f2 = k2.at(x);
    const double fwd = measure_max_diff(
        pushforward(f1, [&](const Atom& a) { return g(TotalPoint{x, a}).fiber; }), f2, tol);
    report.record(fwd <= tol, fwd, "base " + format_point(x) +
                                       ": g does not carry the first fiber to the second");
    const double bwd = measure_max_diff(
        pushforward(f2, [&](const Atom& a) { return h(TotalPoint{x, a}).fiber; }), f1, tol);
    report.record(bwd <= tol, bwd, "base " + format_point(x) +
                                       ": h does not carry the second fiber to the first");
  }
  return report;
}

FiberKernel fiber_product(const FiberKernel& k1, const FiberKernel& k2) {
  if (k1.base_dim() != k2.base_dim())
    throw DimensionError("fiber product needs matching base dimensions");
  const std::size_t dim = k1.base_dim();
  if (k1.kind() == FiberKernel::Kind::constant && k2.kind() == FiberKernel::Kind::constant)
    return FiberKernel::constant(dim, product(k1.constant_measure(), k2.constant_measure()));
  if (k1.kind() == FiberKernel::Kind::table && k2.kind() != FiberKernel::Kind::functional) {
    // Keys present on only one side drop out: the product's domain is the
    // common base sample, and evaluation outside it stays an error.
    FiberKernel::TableEntries entries;
    for (const auto& [key, fiber] : k1.entries()) {
      if (k2.kind() == FiberKernel::Kind::table) {
        for (const auto& [key2, fiber2] : k2.entries())
          if (max_abs_diff(key, key2) <= 1e-12) {
            entries.emplace_back(key, product(fiber, fiber2));
            break;
          }
      } else {
        entries.emplace_back(key, product(fiber, k2.constant_measure()));
      }
    }
    if (entries.empty()) throw DomainError("fiber product of tables has empty common domain");
    return FiberKernel::table(dim, std::move(entries));
  }
  if (k1.kind() == FiberKernel::Kind::constant && k2.kind() == FiberKernel::Kind::table) {
    FiberKernel::TableEntries entries;
    for (const auto& [key, fiber] : k2.entries())
      entries.emplace_back(key, product(k1.constant_measure(), fiber));
    return FiberKernel::table(dim, std::move(entries));
  }
  return FiberKernel::functional(
      dim, [k1, k2](const Vector& x) { return product(k1.at(x), k2.at(x)); });
}

}  // namespace dgsp
