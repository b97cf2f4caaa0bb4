#include <doctest.h>

#include <cmath>

#include "dgsp/errors.hpp"
#include "dgsp/fiber_kernel.hpp"
#include "dgsp/rng.hpp"
#include "dgsp/verify.hpp"

using namespace dgsp;

namespace {

DiscreteMeasure tag_fiber(std::vector<std::int64_t> tags, std::vector<double> weights) {
  std::vector<Atom> atoms;
  for (auto t : tags) atoms.emplace_back(t);
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

}  // namespace

TEST_CASE("pullback of a dirac along a constant kernel is a product") {
  const DiscreteMeasure nu = tag_fiber({0, 1}, {0.25, 0.75});
  const FiberKernel k = FiberKernel::constant(1, nu);
  const DiscreteMeasure lifted = pullback(k, DiscreteMeasure::dirac(Atom(Vector{2.0})));
  CHECK(lifted.size() == 2);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    CHECK(lifted.atom(i).first().vec()[0] == 2.0);
    CHECK(lifted.weight(i) == nu.weight(i));
  }
}

TEST_CASE("pullback along a table kernel enumerates fiber atoms") {
  const Vector r1{0.0}, r2{1.0};
  FiberKernel::TableEntries entries;
  entries.emplace_back(r1, tag_fiber({7}, {1.0}));
  entries.emplace_back(r2, tag_fiber({8, 9}, {0.5, 0.5}));
  const FiberKernel k = FiberKernel::table(1, std::move(entries));

  const DiscreteMeasure mu({Atom(r1), Atom(r2)}, {0.5, 0.5});
  const DiscreteMeasure lifted = pullback(k, mu);
  REQUIRE(lifted.size() == 3);

  double w_r1 = 0.0, w_r2 = 0.0;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    if (lifted.atom(i).first().vec()[0] == 0.0) {
      w_r1 += lifted.weight(i);
      CHECK(lifted.weight(i) == 0.5);
    } else {
      w_r2 += lifted.weight(i);
      CHECK(lifted.weight(i) == 0.25);
    }
  }
  CHECK(w_r1 == 0.5);
  CHECK(w_r2 == 0.5);
}

TEST_CASE("a kernel of dirac fibers relabels the base measure") {
  Rng rng(17);
  const FiberKernel k = FiberKernel::functional(
      1, [](const Vector&) { return DiscreteMeasure::dirac(Atom(std::int64_t{0})); });
  const DiscreteMeasure mu = verify::random_vector_measure(rng, 1, 5);
  const DiscreteMeasure lifted = pullback(k, mu);
  const DiscreteMeasure back = pushforward(lifted, [](const Atom& a) { return a.first(); });
  CHECK(measure_max_diff(back, mu) == 0.0);
}

TEST_CASE("table misses are reported with the base point") {
  const FiberKernel k = FiberKernel::table(1, {{Vector{0.0}, tag_fiber({1}, {1.0})}});
  try {
    pullback(k, DiscreteMeasure::dirac(Atom(Vector{5.0})));
    FAIL("expected KernelDomainError");
  } catch (const KernelDomainError& e) {
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
}

TEST_CASE("base projection of a pullback returns the measure exactly") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const DiscreteMeasure mu = verify::random_vector_measure(rng, 2, 4);
    FiberKernel::TableEntries entries;
    for (std::size_t i = 0; i < mu.size(); ++i)
      entries.emplace_back(mu.atom(i).vec(), verify::random_vector_measure(rng, 1, 3));
    const FiberKernel k = FiberKernel::table(2, std::move(entries));
    const DiscreteMeasure back =
        pushforward(pullback(k, mu), [](const Atom& a) { return a.first(); });
    CHECK(measure_max_diff(back, mu) <= 1e-15);
  }
}

TEST_CASE("self-equivalence accepts the identity and weight-preserving swaps") {
  const FiberKernel k = FiberKernel::constant(1, tag_fiber({0, 1}, {0.5, 0.5}));
  const std::vector<Vector> sample{Vector{0.0}, Vector{2.0}};

  const Report id = verify_self_equivalence(
      k, sample, [](const TotalPoint& p) { return p; });
  CHECK(id.pass);

  const auto swap_tags = [](const TotalPoint& p) {
    return TotalPoint{p.base, Atom(std::int64_t{1 - p.fiber.tag()})};
  };
  const Report swapped = verify_self_equivalence(k, sample, swap_tags);
  CHECK(swapped.pass);
}

TEST_CASE("self-equivalence rejects a swap of unequal weights") {
  const FiberKernel k = FiberKernel::constant(1, tag_fiber({0, 1}, {0.7, 0.3}));
  const Report r = verify_self_equivalence(
      k, {Vector{0.0}}, [](const TotalPoint& p) {
        return TotalPoint{p.base, Atom(std::int64_t{1 - p.fiber.tag()})};
      });
  CHECK(!r.pass);
  bool blames_fiber_measure = false;
  for (const auto& v : r.violations)
    if (v.context.find("fiber measure") != std::string::npos) blames_fiber_measure = true;
  CHECK(blames_fiber_measure);
}

TEST_CASE("self-equivalence rejects base-moving maps") {
  const FiberKernel k = FiberKernel::constant(1, tag_fiber({0}, {1.0}));
  const Report r = verify_self_equivalence(
      k, {Vector{1.0}}, [](const TotalPoint& p) {
        return TotalPoint{Vector{p.base[0] + 1.0}, p.fiber};
      });
  CHECK(!r.pass);
}

TEST_CASE("fiberwise equivalence via a zero-weight padding atom") {
  // The second kernel carries an extra atom of weight zero; inclusion and
  // projection witness that both kernels carry the same information.
  const FiberKernel k1 = FiberKernel::constant(1, tag_fiber({0, 1}, {0.5, 0.5}));
  const FiberKernel k2 = FiberKernel::constant(1, tag_fiber({0, 1, 2}, {0.5, 0.5, 0.0}));

  const TotalMap inclusion = [](const TotalPoint& p) { return p; };
  const TotalMap projection = [](const TotalPoint& p) {
    return TotalPoint{p.base, Atom(std::int64_t{p.fiber.tag() == 2 ? 0 : p.fiber.tag()})};
  };
  const Report r =
      verify_fiberwise_equivalence(k1, k2, {Vector{0.0}}, inclusion, projection);
  CHECK(r.pass);

  const Report same = verify_fiberwise_equivalence(k1, k1, {Vector{0.0}}, inclusion, inclusion);
  CHECK(same.pass);
}

TEST_CASE("fiberwise equivalence fails across different weights") {
  const FiberKernel k1 = FiberKernel::constant(1, tag_fiber({0, 1}, {0.5, 0.5}));
  const FiberKernel k2 = FiberKernel::constant(1, tag_fiber({0, 1}, {0.6, 0.4}));
  const TotalMap id = [](const TotalPoint& p) { return p; };
  CHECK(!verify_fiberwise_equivalence(k1, k2, {Vector{0.0}}, id, id).pass);
}

TEST_CASE("fiber product of constants is the constant product") {
  const FiberKernel k1 = FiberKernel::constant(1, tag_fiber({0, 1}, {0.5, 0.5}));
  const FiberKernel k2 = FiberKernel::constant(1, tag_fiber({5, 6}, {0.25, 0.75}));
  const FiberKernel prod = fiber_product(k1, k2);
  REQUIRE(prod.kind() == FiberKernel::Kind::constant);

  const DiscreteMeasure fiber = prod.at(Vector{0.0});
  CHECK(fiber.size() == 4);

  // Marginal projections recover the factors.
  const DiscreteMeasure left = pushforward(fiber, [](const Atom& a) { return a.first(); });
  const DiscreteMeasure right = pushforward(fiber, [](const Atom& a) { return a.second(); });
  CHECK(measure_max_diff(left, k1.constant_measure()) <= 1e-15);
  CHECK(measure_max_diff(right, k2.constant_measure()) <= 1e-15);
}

TEST_CASE("fiber product against a dirac fiber relabels") {
  const FiberKernel point = FiberKernel::constant(1, tag_fiber({3}, {1.0}));
  const FiberKernel k = FiberKernel::constant(1, tag_fiber({0, 1}, {0.5, 0.5}));
  const DiscreteMeasure fiber = fiber_product(point, k).at(Vector{0.0});
  CHECK(fiber.size() == 2);
  const DiscreteMeasure right = pushforward(fiber, [](const Atom& a) { return a.second(); });
  CHECK(measure_max_diff(right, k.constant_measure()) == 0.0);
}

TEST_CASE("fiber product rejects mismatched bases") {
  const FiberKernel a = FiberKernel::constant(1, tag_fiber({0}, {1.0}));
  const FiberKernel b = FiberKernel::constant(2, tag_fiber({0}, {1.0}));
  CHECK_THROWS_AS(fiber_product(a, b), DimensionError);
}

TEST_CASE("each projection fiber is in bijection with the other factor's support") {
  Rng rng(31);
  const Vector x{0.5};
  FiberKernel::TableEntries e1, e2;
  e1.emplace_back(x, verify::random_vector_measure(rng, 1, 3));
  e2.emplace_back(x, verify::random_vector_measure(rng, 1, 4));
  const FiberKernel k1 = FiberKernel::table(1, std::move(e1));
  const FiberKernel k2 = FiberKernel::table(1, std::move(e2));
  const DiscreteMeasure joint = fiber_product(k1, k2).at(x);

  const DiscreteMeasure f1 = k1.at(x), f2 = k2.at(x);
  CHECK(joint.size() == f1.size() * f2.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    std::size_t matches = 0;
    for (std::size_t j = 0; j < joint.size(); ++j)
      if (atoms_close(joint.atom(j).first(), f1.atom(i), 0.0)) {
        // The second component must be an atom of the other factor.
        bool present = false;
        for (std::size_t l = 0; l < f2.size(); ++l)
          if (atoms_close(joint.atom(j).second(), f2.atom(l), 0.0)) present = true;
        CHECK(present);
        ++matches;
      }
    CHECK(matches == f2.size());
  }
}

TEST_CASE("table kernels validate keys") {
  CHECK_THROWS_AS(FiberKernel::table(1, {{Vector{0.0}, tag_fiber({0}, {1.0})},
                                         {Vector{0.0}, tag_fiber({1}, {1.0})}}),
                  DomainError);
  CHECK_THROWS_AS(FiberKernel::table(2, {{Vector{0.0}, tag_fiber({0}, {1.0})}}),
                  DimensionError);
}
