#include "dgsp/correspondence.hpp"

#include <cmath>

#include "dgsp/errors.hpp"

namespace dgsp {

Correspondence identity_correspondence(std::size_t n) {
  return Correspondence{
      n, n, FiberKernel::constant(n, DiscreteMeasure::dirac(Atom(std::int64_t{0}))),
      [](const Vector& r, const Atom&) { return r; }};
}

Correspondence zero_correspondence(std::size_t domain_dim, std::size_t codomain_dim) {
  return Correspondence{
      domain_dim, codomain_dim,
      FiberKernel::constant(domain_dim, DiscreteMeasure::dirac(Atom(std::int64_t{0}))),
      [codomain_dim](const Vector&, const Atom&) { return Vector(codomain_dim); }};
}

DiscreteMeasure apply(const Correspondence& c, const DiscreteMeasure& mu) {
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu.atom(i).vec().dim() != c.domain_dim)
      throw DimensionError("measure atom dimension differs from morphism domain");
  const DiscreteMeasure total = pullback(c.kernel, mu);
  return pushforward(total, [&](const Atom& y) {
    Vector out = c.readout(y.first().vec(), y.second());
    if (out.dim() != c.codomain_dim)
      throw DimensionError("readout produced a vector of the wrong dimension");
    return Atom(std::move(out));
  });
}

Correspondence compose(const Correspondence& c2, const Correspondence& c1) {
  if (c1.codomain_dim != c2.domain_dim)
    throw DimensionError("composition needs matching intermediate dimensions");

  FiberKernel kernel = [&]() {
    // Constant kernels compose to a constant kernel: the second fiber does
    // not depend on the intermediate point.
    if (c1.kernel.kind() == FiberKernel::Kind::constant &&
        c2.kernel.kind() == FiberKernel::Kind::constant)
      return FiberKernel::constant(
          c1.domain_dim, product(c1.kernel.constant_measure(), c2.kernel.constant_measure()));
    Correspondence first = c1;
    FiberKernel second = c2.kernel;
    return FiberKernel::functional(c1.domain_dim, [first, second](const Vector& r) {
      const DiscreteMeasure m1 = first.kernel.at(r);
      std::vector<Atom> atoms;
      std::vector<double> weights;
      std::size_t count = 0;
      for (std::size_t i = 0; i < m1.size(); ++i) {
        const Vector mid = first.readout(r, m1.atom(i));
        const DiscreteMeasure m2 = second.at(mid);
        count += m2.size();
        if (count > support_cap())
          throw SupportCapError("composite fiber support exceeds cap " +
                                std::to_string(support_cap()));
        for (std::size_t j = 0; j < m2.size(); ++j) {
          atoms.emplace_back(m1.atom(i), m2.atom(j));
          weights.push_back(m1.weight(i) * m2.weight(j));
        }
      }
      return DiscreteMeasure(std::move(atoms), std::move(weights));
    });
  }();

  Readout readout = [r1 = c1.readout, r2 = c2.readout](const Vector& r, const Atom& pair) {
    return r2(r1(r, pair.first()), pair.second());
  };
  return Correspondence{c1.domain_dim, c2.codomain_dim, std::move(kernel), std::move(readout)};
}

Correspondence add(const Correspondence& c1, const Correspondence& c2) {
  if (c1.domain_dim != c2.domain_dim || c1.codomain_dim != c2.codomain_dim)
    throw DimensionError("addition needs equal domain and codomain dimensions");
  Readout readout = [r1 = c1.readout, r2 = c2.readout](const Vector& r, const Atom& pair) {
    return r1(r, pair.first()) + r2(r, pair.second());
  };
  return Correspondence{c1.domain_dim, c1.codomain_dim, fiber_product(c1.kernel, c2.kernel),
                        std::move(readout)};
}

namespace {

void check_payloads(const DiscreteMeasure& fiber, std::size_t output_dim,
                    std::size_t inner_dim) {
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    const Matrix& m = fiber.atom(i).mat();
    if (m.rows() != output_dim || m.cols() != inner_dim)
      throw DimensionError("kernel payload shape differs from filter shape");
  }
}

}  // namespace

LinearFilter make_linear_filter(Matrix pre_map, std::size_t output_dim, FiberKernel kernel) {
  if (kernel.base_dim() != pre_map.rows())
    throw DimensionError("kernel base dimension differs from pre-map rows");
  if (kernel.kind() == FiberKernel::Kind::constant) {
    check_payloads(kernel.constant_measure(), output_dim, pre_map.rows());
  } else if (kernel.kind() == FiberKernel::Kind::table) {
    for (const auto& [key, fiber] : kernel.entries())
      check_payloads(fiber, output_dim, pre_map.rows());
  }
  return LinearFilter{std::move(pre_map), output_dim, std::move(kernel)};
}

Correspondence to_correspondence(const LinearFilter& lf) {
  FiberKernel kernel = [&]() {
    if (lf.kernel.kind() == FiberKernel::Kind::constant)
      return FiberKernel::constant(lf.domain_dim(), lf.kernel.constant_measure());
    return FiberKernel::functional(
        lf.domain_dim(),
        [t = lf.pre_map, k = lf.kernel](const Vector& r) { return k.at(t * r); });
  }();
  Readout readout = [t = lf.pre_map](const Vector& r, const Atom& m) {
    return m.mat() * (t * r);
  };
  return Correspondence{lf.domain_dim(), lf.output_dim, std::move(kernel), std::move(readout)};
}

DiscreteMeasure apply(const LinearFilter& lf, const DiscreteMeasure& mu) {
  return apply(to_correspondence(lf), mu);
}

LinearFilter compose_linear(const LinearFilter& lf2, const LinearFilter& lf1) {
  if (lf2.domain_dim() != lf1.output_dim)
    throw DimensionError("filter composition needs matching intermediate dimensions");
  const Matrix t2 = lf2.pre_map;
  const FiberKernel k1 = lf1.kernel;
  const FiberKernel k2 = lf2.kernel;

  auto combine = [t2](const DiscreteMeasure& m1, const Vector& s,
                      const FiberKernel& second) {
    std::vector<Atom> atoms;
    std::vector<double> weights;
    std::size_t count = 0;
    for (std::size_t i = 0; i < m1.size(); ++i) {
      const Matrix& first_map = m1.atom(i).mat();
      const DiscreteMeasure m2 = second.at(t2 * (first_map * s));
      count += m2.size();
      if (count > support_cap())
        throw SupportCapError("composite filter kernel exceeds support cap");
      for (std::size_t j = 0; j < m2.size(); ++j) {
        atoms.emplace_back(m2.atom(j).mat() * t2 * first_map);
        weights.push_back(m1.weight(i) * m2.weight(j));
      }
    }
    return DiscreteMeasure(std::move(atoms), std::move(weights));
  };

  FiberKernel kernel = [&]() {
    if (k1.kind() == FiberKernel::Kind::constant && k2.kind() == FiberKernel::Kind::constant) {
      // The intermediate point is irrelevant for a constant second kernel.
      return FiberKernel::constant(k1.base_dim(),
                                   combine(k1.constant_measure(), Vector(k1.base_dim()), k2));
    }
    return FiberKernel::functional(
        k1.base_dim(), [k1, k2, combine](const Vector& s) { return combine(k1.at(s), s, k2); });
  }();

  return make_linear_filter(lf1.pre_map, lf2.output_dim, std::move(kernel));
}

LinearFilter add_linear(const LinearFilter& lf1, const LinearFilter& lf2) {
  if (lf1.domain_dim() != lf2.domain_dim() || lf1.output_dim != lf2.output_dim)
    throw DimensionError("filter addition needs equal domain and codomain dimensions");
  const std::size_t m1 = lf1.inner_dim();
  const std::size_t m2 = lf2.inner_dim();

  auto block_sum = [](const DiscreteMeasure& f1, const DiscreteMeasure& f2) {
    std::vector<Atom> atoms;
    std::vector<double> weights;
    for (std::size_t i = 0; i < f1.size(); ++i)
      for (std::size_t j = 0; j < f2.size(); ++j) {
        atoms.emplace_back(hstack(f1.atom(i).mat(), f2.atom(j).mat()));
        weights.push_back(f1.weight(i) * f2.weight(j));
      }
    return DiscreteMeasure(std::move(atoms), std::move(weights));
  };

  FiberKernel kernel = [&]() {
    if (lf1.kernel.kind() == FiberKernel::Kind::constant &&
        lf2.kernel.kind() == FiberKernel::Kind::constant)
      return FiberKernel::constant(
          m1 + m2, block_sum(lf1.kernel.constant_measure(), lf2.kernel.constant_measure()));
    FiberKernel k1 = lf1.kernel;
    FiberKernel k2 = lf2.kernel;
    return FiberKernel::functional(m1 + m2, [k1, k2, m1, m2, block_sum](const Vector& s) {
      Vector s1(m1), s2(m2);
      for (std::size_t i = 0; i < m1; ++i) s1[i] = s[i];
      for (std::size_t i = 0; i < m2; ++i) s2[i] = s[m1 + i];
      return block_sum(k1.at(s1), k2.at(s2));
    });
  }();

  return make_linear_filter(vstack(lf1.pre_map, lf2.pre_map), lf1.output_dim,
                            std::move(kernel));
}

LinearFilter embed_linear_map(const Matrix& t) {
  return make_linear_filter(
      Matrix::identity(t.cols()), t.rows(),
      FiberKernel::constant(t.cols(), DiscreteMeasure::dirac(Atom(t))));
}

LinearFilter zero_linear_filter(std::size_t domain_dim, std::size_t codomain_dim) {
  return embed_linear_map(Matrix(codomain_dim, domain_dim));
}

std::optional<bool> is_constant_kernel(const FiberKernel& k, double tol) {
  switch (k.kind()) {
    case FiberKernel::Kind::constant:
      return true;
    case FiberKernel::Kind::table: {
      const auto& entries = k.entries();
      for (std::size_t i = 1; i < entries.size(); ++i)
        if (measure_max_diff(entries[i].second, entries[0].second, tol) > tol) return false;
      return true;
    }
    case FiberKernel::Kind::functional:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<bool> is_constant_kernel(const LinearFilter& lf, double tol) {
  return is_constant_kernel(lf.kernel, tol);
}

std::optional<bool> is_constant_kernel(const Correspondence& c, double tol) {
  return is_constant_kernel(c.kernel, tol);
}

}  // namespace dgsp
