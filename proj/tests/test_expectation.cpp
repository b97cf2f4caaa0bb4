#include <doctest.h>

#include <cmath>

#include "dgsp/errors.hpp"
#include "dgsp/expectation.hpp"
#include "dgsp/rng.hpp"
#include "dgsp/verify.hpp"

using namespace dgsp;

namespace {

LinearFilter coin_flip_filter() {
  return make_linear_filter(
      Matrix::identity(1), 1,
      FiberKernel::constant(1, DiscreteMeasure({Atom(Matrix{{2.0}}), Atom(Matrix{{0.0}})},
                                               {0.5, 0.5})));
}

DiscreteMeasure scalar_measure(std::vector<double> points, std::vector<double> weights) {
  std::vector<Atom> atoms;
  for (double p : points) atoms.emplace_back(Vector{p});
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

}  // namespace

TEST_CASE("fiber-averaged readout") {
  // 0.5 * (2*3) + 0.5 * (0*3) = 3: the coin flip averages to the identity.
  CHECK(e_of(coin_flip_filter(), Vector{3.0})[0] == doctest::Approx(3.0).epsilon(1e-15));

  Rng rng(67);
  const Matrix m = verify::random_matrix(rng, 2, 3);
  const Vector r = verify::random_vector(rng, 3);
  CHECK(max_abs_diff(e_of(embed_linear_map(m), r), m * r) <= 1e-15);

  CHECK(norm(e_of(zero_correspondence(2, 3), Vector{1.0, 1.0})) == 0.0);
}

TEST_CASE("surrogate matrix of constant-kernel filters") {
  Rng rng(71);
  const Matrix t = verify::random_matrix(rng, 2, 2);
  CHECK(max_abs_diff(e_matrix(embed_linear_map(t)), t) == 0.0);

  const Matrix m = verify::random_matrix(rng, 2, 2);
  const LinearFilter symmetric = make_linear_filter(
      Matrix::identity(2), 2,
      FiberKernel::constant(2, DiscreteMeasure({Atom(m), Atom(-1.0 * m)}, {0.5, 0.5})));
  CHECK(max_abs(e_matrix(symmetric)) <= 1e-15);

  CHECK(e_matrix(coin_flip_filter())(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("the surrogate matrix reproduces the fiber average everywhere") {
  Rng rng(68);
  const LinearFilter lf = verify::random_constant_filter(rng, 3, 2, 3);
  const Matrix e = e_matrix(lf);
  for (int t = 0; t < 100; ++t) {
    const Vector r = verify::random_vector(rng, 3, -5.0, 5.0);
    CHECK(max_abs_diff(e_of(lf, r), e * r) <= 1e-10);
  }
}

TEST_CASE("surrogate matrix requires a decidably constant kernel") {
  FiberKernel::TableEntries differ{
      {Vector{0.0}, DiscreteMeasure::dirac(Atom(Matrix{{1.0}}))},
      {Vector{1.0}, DiscreteMeasure::dirac(Atom(Matrix{{2.0}}))}};
  const LinearFilter table_filter =
      make_linear_filter(Matrix::identity(1), 1, FiberKernel::table(1, std::move(differ)));
  CHECK_THROWS_AS(e_matrix(table_filter), DomainError);

  const LinearFilter functional_filter = make_linear_filter(
      Matrix::identity(1), 1, FiberKernel::functional(1, [](const Vector&) {
        return DiscreteMeasure::dirac(Atom(Matrix{{1.0}}));
      }));
  CHECK_THROWS_AS(e_matrix(functional_filter), DomainError);

  // A table whose fibers all agree is accepted.
  FiberKernel::TableEntries same{
      {Vector{0.0}, DiscreteMeasure::dirac(Atom(Matrix{{1.5}}))},
      {Vector{1.0}, DiscreteMeasure::dirac(Atom(Matrix{{1.5}}))}};
  const LinearFilter ok =
      make_linear_filter(Matrix::identity(1), 1, FiberKernel::table(1, std::move(same)));
  CHECK(e_matrix(ok)(0, 0) == doctest::Approx(1.5));
}

TEST_CASE("surrogate pushforward") {
  const Correspondence c = to_correspondence(coin_flip_filter());
  const DiscreteMeasure d = DiscreteMeasure::dirac(Atom(Vector{2.0}));
  const DiscreteMeasure pushed = e_pushforward(c, d);
  REQUIRE(pushed.size() == 1);
  CHECK(pushed.atom(0).vec()[0] == doctest::Approx(2.0));

  // Deterministic filters: surrogate pushforward equals the action.
  Rng rng(73);
  const Correspondence det = to_correspondence(embed_linear_map(verify::random_matrix(rng, 2, 2)));
  const DiscreteMeasure mu = verify::random_vector_measure(rng, 2, 4);
  CHECK(measure_max_diff(e_pushforward(det, mu), apply(det, mu)) <= 1e-15);

  // The coin flip averages to the identity, so measures pass through.
  const DiscreteMeasure u = scalar_measure({1.0, 3.0}, {0.5, 0.5});
  CHECK(measure_max_diff(e_pushforward(c, u), u) <= 1e-15);
}

TEST_CASE("best-approximation bound on the worked example") {
  const Correspondence c = to_correspondence(coin_flip_filter());
  const std::vector<Vector> sample{Vector{1.0}, Vector{2.0}, Vector{3.0}};

  // For g(r) = 2r the worst Dirac deviation is at r = 3:
  // 0.5*(6-6)^2 + 0.5*(0-6)^2 = 18.
  const SurrogateMap doubling = SurrogateMap::functional(
      [](const Vector& r) { return 2.0 * r; });
  double rhs = 0.0;
  for (const Vector& r : sample)
    rhs = std::max(rhs, w2_dirac(apply(c, DiscreteMeasure::dirac(Atom(r))), doubling(r)));
  CHECK(rhs == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));

  Rng rng(79);
  const Report report = verify_best_approx(c, sample, {doubling}, 50, rng);
  CHECK(report.pass);
}

TEST_CASE("the surrogate is never beaten by a candidate on the sampled family") {
  Rng rng(83);
  for (int t = 0; t < 10; ++t) {
    const Correspondence c = to_correspondence(verify::random_constant_filter(rng, 2, 2, 3));
    std::vector<Vector> sample;
    for (int i = 0; i < 4; ++i) sample.push_back(verify::random_vector(rng, 2, -2.0, 2.0));

    std::vector<SurrogateMap> candidates;
    candidates.push_back(
        SurrogateMap::functional([c](const Vector& r) { return e_of(c, r); }));
    SurrogateMap::Table table;
    for (const Vector& x : sample) table.emplace_back(x, verify::random_vector(rng, 2));
    candidates.push_back(SurrogateMap::table(std::move(table)));

    Rng trial_rng = rng.split(1000 + static_cast<std::uint64_t>(t));
    CHECK(verify_best_approx(c, sample, candidates, 20, trial_rng).pass);
  }
}

TEST_CASE("surrogate algebra identities on deterministic filters") {
  Rng rng(89);
  const Matrix a = verify::random_matrix(rng, 2, 2), b = verify::random_matrix(rng, 2, 2);
  const Correspondence ca = to_correspondence(embed_linear_map(a));
  const Correspondence cb = to_correspondence(embed_linear_map(b));

  std::vector<Vector> probes;
  for (int i = 0; i < 20; ++i) probes.push_back(verify::random_vector(rng, 2));

  CHECK(check_e_algebra(ca, cb, probes).pass);
  for (const Vector& r : probes)
    CHECK(max_abs_diff(e_of(compose(ca, cb), r), a * (b * r)) <= 1e-12);

  // Adding the zero morphism leaves the surrogate unchanged.
  const Correspondence zero = zero_correspondence(2, 2);
  for (const Vector& r : probes)
    CHECK(max_abs_diff(e_of(add(ca, zero), r), e_of(ca, r)) <= 1e-15);
}

TEST_CASE("surrogate matrices compose functorially") {
  Rng rng(97);
  for (int t = 0; t < 50; ++t) {
    const LinearFilter lf1 = verify::random_constant_filter(rng, 2, 3, 2, true);
    const LinearFilter lf2 = verify::random_constant_filter(rng, 3, 2, 2, true);
    CHECK(max_abs_diff(e_matrix(compose_linear(lf2, lf1)), e_matrix(lf2) * e_matrix(lf1)) <=
          1e-9);
  }
}

TEST_CASE("fiber averages obey the Jensen bound") {
  Rng rng(101);
  for (int t = 0; t < 50; ++t) {
    const LinearFilter lf = verify::random_constant_filter(rng, 2, 2, 3);
    const Correspondence c = to_correspondence(lf);
    const Vector r = verify::random_vector(rng, 2, -2.0, 2.0);
    const DiscreteMeasure fiber = c.kernel.at(r);
    double expected_sq = 0.0;
    for (std::size_t i = 0; i < fiber.size(); ++i)
      expected_sq += fiber.weight(i) * squared_norm(c.readout(r, fiber.atom(i)));
    CHECK(squared_norm(e_of(c, r)) <= expected_sq + 1e-12);
  }
}

TEST_CASE("surrogate tables reject lookups off the sample") {
  const SurrogateMap g = SurrogateMap::table({{Vector{0.0}, Vector{1.0}}});
  CHECK(g(Vector{0.0})[0] == 1.0);
  CHECK_THROWS_AS(g(Vector{2.0}), KernelDomainError);
}
