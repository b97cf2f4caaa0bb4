#include "dgsp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "dgsp/errors.hpp"
#include "dgsp/expectation.hpp"
#include "dgsp/transport.hpp"

namespace dgsp::verify {

Vector random_vector(Rng& rng, std::size_t dim, double lo, double hi) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

DiscreteMeasure random_vector_measure(Rng& rng, std::size_t dim, std::size_t max_support) {
  const std::size_t support = static_cast<std::size_t>(
      rng.uniform_int(1, static_cast<std::int64_t>(max_support)));
  std::vector<Atom> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < support; ++i) {
    atoms.emplace_back(random_vector(rng, dim, -2.0, 2.0));
    const double w = rng.uniform(0.1, 1.0);
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

LinearFilter random_constant_filter(Rng& rng, std::size_t domain_dim, std::size_t output_dim,
                                    std::size_t atom_count, bool identity_pre_map) {
  const std::size_t inner = identity_pre_map
                                ? domain_dim
                                : static_cast<std::size_t>(rng.uniform_int(1, 4));
  Matrix pre_map =
      identity_pre_map ? Matrix::identity(domain_dim) : random_matrix(rng, inner, domain_dim);
  std::vector<Atom> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < atom_count; ++i) {
    atoms.emplace_back(random_matrix(rng, output_dim, inner));
    const double w = rng.uniform(0.1, 1.0);
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return make_linear_filter(
      std::move(pre_map), output_dim,
      FiberKernel::constant(inner, DiscreteMeasure(std::move(atoms), std::move(weights))));
}

Graph random_graph(Rng& rng, std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform01() < 0.6) {
        const double w = rng.uniform(0.2, 2.0);
        a(i, j) = w;
        a(j, i) = w;
      }
  return Graph::from_adjacency(std::move(a));
}

namespace {

using TrialFn = std::function<Report(int, Rng&)>;

Report run_trials(const std::string& name, std::uint64_t seed, int trials, bool parallel,
                  const TrialFn& trial_fn) {
  const Rng root(seed);
  std::vector<Report> parts(static_cast<std::size_t>(std::max(trials, 0)));

  auto run_range = [&](int lo, int hi, std::exception_ptr& error) {
    try {
      for (int t = lo; t < hi; ++t) {
        Rng rng = root.split(static_cast<std::uint64_t>(t));
        parts[static_cast<std::size_t>(t)] = trial_fn(t, rng);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  if (parallel && trials > 1) {
    const int workers = static_cast<int>(
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(trials)));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int lo = trials * w / workers;
      const int hi = trials * (w + 1) / workers;
      pool.emplace_back(run_range, lo, hi, std::ref(errors[static_cast<std::size_t>(w)]));
    }
    for (auto& thread : pool) thread.join();
    for (const auto& error : errors)
      if (error) std::rethrow_exception(error);
  } else {
    std::exception_ptr error;
    run_range(0, trials, error);
    if (error) std::rethrow_exception(error);
  }

  Report merged;
  merged.name = name;
  for (int t = 0; t < trials; ++t) {
    const Report& part = parts[static_cast<std::size_t>(t)];
    merged.checks += part.checks;
    merged.max_violation = std::max(merged.max_violation, part.max_violation);
    if (!part.pass) merged.pass = false;
    for (const auto& v : part.violations)
      merged.violations.push_back({"trial " + std::to_string(t) + ": " + v.context,
                                   v.magnitude});
  }
  return merged;
}

std::size_t random_dim(Rng& rng, std::size_t lo = 1, std::size_t hi = 4) {
  return static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

}  // namespace

Report category_laws(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("category-laws", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t d1 = random_dim(rng), d2 = random_dim(rng), d3 = random_dim(rng),
                      d4 = random_dim(rng);
    const Correspondence c1 = to_correspondence(random_constant_filter(rng, d1, d2, 2));
    const Correspondence c2 = to_correspondence(random_constant_filter(rng, d2, d3, 2));
    const Correspondence c3 = to_correspondence(random_constant_filter(rng, d3, d4, 2));
    const DiscreteMeasure mu = random_vector_measure(rng, d1, 3);

    const DiscreteMeasure direct = apply(c1, mu);
    const double left_unit =
        measure_max_diff(apply(compose(c1, identity_correspondence(d1)), mu), direct);
    r.record(left_unit == 0.0, left_unit, "right identity law not exact");
    const double right_unit =
        measure_max_diff(apply(compose(identity_correspondence(d2), c1), mu), direct);
    r.record(right_unit == 0.0, right_unit, "left identity law not exact");

    const double assoc =
        measure_max_diff(apply(compose(compose(c3, c2), c1), mu),
                         apply(compose(c3, compose(c2, c1)), mu));
    r.record(assoc <= 1e-9, assoc, "associativity beyond tolerance");

    const double contract =
        measure_max_diff(apply(compose(c2, c1), mu), apply(c2, apply(c1, mu)));
    r.record(contract <= 1e-9, contract, "composition does not act as apply-after-apply");
    return r;
  });
}

Report monoid_laws(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("monoid-laws", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t din = random_dim(rng), dout = random_dim(rng);
    const Correspondence c1 = to_correspondence(random_constant_filter(rng, din, dout, 2));
    const Correspondence c2 = to_correspondence(random_constant_filter(rng, din, dout, 2));
    const Correspondence c3 = to_correspondence(random_constant_filter(rng, din, dout, 2));
    const DiscreteMeasure mu = random_vector_measure(rng, din, 2);

    const double commutes = measure_max_diff(apply(add(c1, c2), mu), apply(add(c2, c1), mu));
    r.record(commutes <= 1e-9, commutes, "addition not commutative in action");

    const double assoc = measure_max_diff(apply(add(add(c1, c2), c3), mu),
                                          apply(add(c1, add(c2, c3)), mu));
    r.record(assoc <= 1e-9, assoc, "addition not associative in action");

    const double zero_law = measure_max_diff(
        apply(add(c1, zero_correspondence(din, dout)), mu), apply(c1, mu));
    r.record(zero_law <= 1e-9, zero_law, "zero element law broken");
    return r;
  });
}

Report distributional_commutativity(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("lemma-2.3", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t base_dim = random_dim(rng, 1, 3);
    const std::size_t points = random_dim(rng, 1, 3);

    std::vector<Vector> sample;
    for (std::size_t i = 0; i < points; ++i)
      sample.push_back(random_vector(rng, base_dim, -3.0, 3.0));

    auto random_table = [&](std::size_t fiber_dim) {
      FiberKernel::TableEntries entries;
      for (const Vector& x : sample)
        entries.emplace_back(x, random_vector_measure(rng, fiber_dim, 3));
      return FiberKernel::table(base_dim, std::move(entries));
    };
    const FiberKernel k1 = random_table(random_dim(rng, 1, 3));
    const FiberKernel k2 = random_table(random_dim(rng, 1, 3));

    // A measure on the second total space: arbitrary weights over pairs
    // (base point, fiber atom of k2).
    std::vector<Atom> atoms;
    std::vector<double> weights;
    double total = 0.0;
    for (const Vector& x : sample) {
      const DiscreteMeasure fiber = k2.at(x);
      for (std::size_t j = 0; j < fiber.size(); ++j) {
        atoms.emplace_back(Atom(x), fiber.atom(j));
        const double w = rng.uniform(0.05, 1.0);
        weights.push_back(w);
        total += w;
      }
    }
    for (double& w : weights) w /= total;
    const DiscreteMeasure mu(std::move(atoms), std::move(weights));

    // Pull back after projecting to the base...
    const DiscreteMeasure projected =
        pushforward(mu, [](const Atom& y) { return y.first(); });
    const DiscreteMeasure lhs = pullback(k1, projected);

    // ...versus lifting along the fiber-product leg and projecting after.
    const DiscreteMeasure lifted =
        pullback_over(mu, [&](const Atom& y) { return k1.at(y.first().vec()); });
    const DiscreteMeasure rhs = pushforward(
        lifted, [](const Atom& z) { return Atom(z.first().first(), z.second()); });

    const double diff = measure_max_diff(lhs, rhs);
    r.record(diff <= 1e-9, diff, "pullback-pushforward square does not commute");
    return r;
  });
}

namespace {

double brute_force_uniform_w2(const std::vector<Vector>& xs, const std::vector<Vector>& ys) {
  std::vector<std::size_t> perm(ys.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) cost += squared_norm(xs[i] - ys[perm[i]]);
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best / static_cast<double>(xs.size()));
}

}  // namespace

Report ot_oracle(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("ot-oracle", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t dim = random_dim(rng, 1, 3);

    // Exactness against full permutation enumeration on uniform supports.
    const std::size_t k = random_dim(rng, 1, 6);
    std::vector<Vector> xs, ys;
    std::vector<Atom> xa, ya;
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(random_vector(rng, dim, -3.0, 3.0));
      ys.push_back(random_vector(rng, dim, -3.0, 3.0));
      xa.emplace_back(xs.back());
      ya.emplace_back(ys.back());
    }
    const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
    const DiscreteMeasure mu(xa, uniform), nu(ya, uniform);
    const double solver = w2(mu, nu);
    const double oracle = brute_force_uniform_w2(xs, ys);
    r.record(std::fabs(solver - oracle) <= 1e-9, std::fabs(solver - oracle),
             "solver disagrees with permutation oracle");

    // Coupling marginals and squared-distance consistency.
    const Coupling coupling = optimal_coupling(mu, nu);
    double marginal_defect = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < nu.size(); ++j) row += coupling.plan(i, j);
      marginal_defect = std::max(marginal_defect, std::fabs(row - mu.weight(i)));
    }
    for (std::size_t j = 0; j < nu.size(); ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i) col += coupling.plan(i, j);
      marginal_defect = std::max(marginal_defect, std::fabs(col - nu.weight(j)));
    }
    r.record(marginal_defect <= 1e-9, marginal_defect, "coupling marginals drift");
    const double cost_defect = std::fabs(coupling.cost - solver * solver);
    r.record(cost_defect <= 1e-9, cost_defect, "coupling cost differs from squared distance");

    // Triangle inequality on random (non-uniform) triples.
    const DiscreteMeasure a = random_vector_measure(rng, dim, 5);
    const DiscreteMeasure b = random_vector_measure(rng, dim, 5);
    const DiscreteMeasure c = random_vector_measure(rng, dim, 5);
    const double slack = w2(a, b) + w2(b, c) - w2(a, c);
    r.record(slack >= -1e-9, std::max(0.0, -slack), "triangle inequality violated");
    return r;
  });
}

Report best_approx_bound(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("thm-5.1", seed, trials, parallel, [](int trial, Rng& rng) {
    const std::size_t din = random_dim(rng, 1, 3), dout = random_dim(rng, 1, 3);
    const std::size_t sample_size = random_dim(rng, 1, 5);
    std::vector<Vector> sample;
    for (std::size_t i = 0; i < sample_size; ++i)
      sample.push_back(random_vector(rng, din, -2.0, 2.0));

    // Alternate between constant-kernel linear filters and table-kernel
    // correspondences whose fibers are arbitrary output distributions.
    Correspondence c = [&]() {
      if (trial % 2 == 0)
        return to_correspondence(
            random_constant_filter(rng, din, dout, 1 + static_cast<std::size_t>(
                                                          rng.uniform_int(1, 2))));
      FiberKernel::TableEntries entries;
      for (const Vector& x : sample)
        entries.emplace_back(x, random_vector_measure(rng, dout, 3));
      return Correspondence{din, dout, FiberKernel::table(din, std::move(entries)),
                            [](const Vector&, const Atom& a) { return a.vec(); }};
    }();

    std::vector<SurrogateMap> candidates;
    candidates.push_back(SurrogateMap::functional(
        [c](const Vector& r) { return e_of(c, r); }));  // the surrogate itself
    for (int g = 1; g < 20; ++g) {
      if (g % 3 == 0) {
        SurrogateMap::Table table;
        for (const Vector& x : sample) table.emplace_back(x, random_vector(rng, dout, -3.0, 3.0));
        candidates.push_back(SurrogateMap::table(std::move(table)));
      } else {
        const Matrix m = random_matrix(rng, dout, din);
        candidates.push_back(
            SurrogateMap::functional([m](const Vector& r) { return m * r; }));
      }
    }

    Rng measures_rng = rng.split(0x5eed);
    return verify_best_approx(c, sample, candidates, 20, measures_rng, 1e-8);
  });
}

Report surrogate_algebra(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("lemma-5.2", seed, trials, parallel, [](int, Rng& rng) {
    const std::size_t d1 = random_dim(rng, 1, 3), d2 = random_dim(rng, 1, 3),
                      d3 = random_dim(rng, 1, 3);

    std::vector<Vector> probes;
    for (int p = 0; p < 20; ++p) probes.push_back(random_vector(rng, d1, -2.0, 2.0));

    // Additivity on a parallel pair.
    const Correspondence a1 = to_correspondence(random_constant_filter(rng, d1, d2, 2));
    const Correspondence a2 = to_correspondence(random_constant_filter(rng, d1, d2, 2));
    Report r = check_e_algebra(a1, a2, probes, 1e-9);

    // Composition on a composable pair (outer after inner).
    const Correspondence inner = to_correspondence(random_constant_filter(rng, d1, d2, 2));
    const Correspondence outer = to_correspondence(random_constant_filter(rng, d2, d3, 2));
    const Report comp = check_e_algebra(outer, inner, probes, 1e-9);

    r.checks += comp.checks;
    r.max_violation = std::max(r.max_violation, comp.max_violation);
    if (!comp.pass) r.pass = false;
    for (const auto& v : comp.violations) r.violations.push_back(v);
    return r;
  });
}

Report surrogate_functoriality(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("cor-5.3", seed, trials, parallel, [](int trial, Rng& rng) {
    Report r;
    const std::size_t d1 = random_dim(rng, 1, 3), d2 = random_dim(rng, 1, 3),
                      d3 = random_dim(rng, 1, 3);

    // Constant kernels with identity pre-maps on even trials, general
    // pre-maps on odd ones; the surrogate matrix is functorial in both.
    const bool identity_pre = trial % 2 == 0;
    const LinearFilter lf1 = random_constant_filter(rng, d1, d2, 2, identity_pre);
    const LinearFilter lf2 = random_constant_filter(rng, d2, d3, 2, identity_pre);

    const Matrix composed = e_matrix(compose_linear(lf2, lf1));
    const Matrix factored = e_matrix(lf2) * e_matrix(lf1);
    const double diff = max_abs_diff(composed, factored);
    r.record(diff <= 1e-9, diff, "surrogate matrix is not functorial");

    // Embedding a deterministic map and reading the surrogate back is exact.
    const Matrix t = random_matrix(rng, d2, d1);
    const double round_trip = max_abs_diff(e_matrix(embed_linear_map(t)), t);
    r.record(round_trip == 0.0, round_trip, "embedding round trip not exact");
    return r;
  });
}

Report gsp_regression(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("gsp-regression", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t n = random_dim(rng, 2, 8);
    const Graph g = random_graph(rng, n);
    const GraphEnsemble ens({g}, {1.0});

    const LinearFilter basis = change_of_basis(ens);
    const LinearFilter inverse = pseudo_inverse_morphism(basis);
    const Vector h = random_vector(rng, n, -2.0, 2.0);
    const LinearFilter filter = convolution_filter(convolution_kernel(n, h), basis);
    const Vector signal = random_vector(rng, n, -2.0, 2.0);

    // Classical spectral filtering computed directly from the decomposition.
    const SymEigen eig = sym_eigen(laplacian(g));
    const Vector expected =
        eig.eigenvectors * (Matrix::diagonal(h) * (eig.eigenvectors.transpose() * signal));

    const DiscreteMeasure out = apply(filter, DiscreteMeasure::dirac(Atom(signal)));
    const double filter_diff =
        out.size() == 1 ? max_abs_diff(out.atom(0).vec(), expected)
                        : std::numeric_limits<double>::infinity();
    r.record(filter_diff <= 1e-8, filter_diff, "convolution differs from classical filter");

    const DiscreteMeasure round =
        apply(compose_linear(inverse, basis), DiscreteMeasure::dirac(Atom(signal)));
    const double round_diff =
        round.size() == 1 ? max_abs_diff(round.atom(0).vec(), signal)
                          : std::numeric_limits<double>::infinity();
    r.record(round_diff <= 1e-8, round_diff, "transform round trip drifted");

    const double ortho = audit_filter_atoms(basis, orthogonality_defect);
    r.record(ortho <= 1e-8, ortho, "basis atom not orthogonal");
    const double diag = audit_filter_atoms(convolution_kernel(n, h), diagonality_defect);
    r.record(diag == 0.0, diag, "convolution atom not diagonal");
    return r;
  });
}

Report sampling_recovery(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("sampling-recovery", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t n = rng.uniform_int(0, 1) == 0 ? 3 : 4;  // short path graphs
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
    const Graph path = Graph::from_edges(n, edges);
    const SymEigen eig = sym_eigen(laplacian(path));

    // Spectral projection onto a random band.
    const std::size_t band = random_dim(rng, 1, n - 1);
    Matrix projector(n, n);
    for (std::size_t b = 0; b < band; ++b) {
      const Vector u = eig.eigenvectors.col(b);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) projector(i, j) += u[i] * u[j];
    }
    const LinearFilter filter = embed_linear_map(projector);
    r.record(idempotency_defect(projector) <= 1e-10, idempotency_defect(projector),
             "projector atom not idempotent");

    const Vector signal = projector * random_vector(rng, n, -2.0, 2.0);
    r.record(is_bandlimited(DiscreteMeasure::dirac(Atom(signal)), filter, 1e-8), 0.0,
             "bandlimited signal not recognized");

    // Draw masks until the observation operator sees the whole band.
    SamplingMask mask = make_mask(n, {0});
    bool injective = false;
    for (int attempt = 0; attempt < 50 && !injective; ++attempt) {
      const std::size_t keep = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(band), static_cast<std::int64_t>(n)));
      std::vector<std::size_t> kept;
      for (std::size_t i = 0; i < n; ++i) kept.push_back(i);
      for (std::size_t i = n; i > 1; --i)
        std::swap(kept[i - 1], kept[static_cast<std::size_t>(
                                   rng.uniform_int(0, static_cast<std::int64_t>(i - 1)))]);
      kept.resize(keep);
      mask = make_mask(n, std::move(kept));
      injective =
          numeric_rank(restriction_matrix(mask, n) * projector) == numeric_rank(projector);
    }
    if (!injective) mask = make_mask(n, [n] {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      return all;
    }());

    const Vector observed = restriction_matrix(mask, n) * signal;
    const RecoveryResult rec = recover(observed, filter, mask);
    r.record(rec.injective_on_range, 0.0, "mask not injective on the filter range");
    const double err = max_abs_diff(rec.signal, signal);
    r.record(err <= 1e-8, err, "recovered signal drifted");
    return r;
  });
}

Report support_audit(std::uint64_t seed, int trials, bool parallel) {
  return run_trials("support-audit", seed, trials, parallel, [](int, Rng& rng) {
    Report r;
    const std::size_t n = random_dim(rng, 2, 6);
    const std::size_t members = random_dim(rng, 1, 3);

    std::vector<Graph> graphs;
    std::vector<double> probs(members, 1.0 / static_cast<double>(members));
    std::vector<Vector> multipliers;
    for (std::size_t i = 0; i < members; ++i) {
      graphs.push_back(random_graph(rng, n));
      multipliers.push_back(random_vector(rng, n, -2.0, 2.0));
    }
    const GraphEnsemble ens(std::move(graphs), std::move(probs));

    const LinearFilter basis = change_of_basis(ens);
    const double ortho = audit_filter_atoms(basis, orthogonality_defect);
    r.record(ortho <= 1e-8, ortho, "change-of-basis atom not orthogonal");
    const double ortho_inv =
        audit_filter_atoms(pseudo_inverse_morphism(basis), orthogonality_defect);
    r.record(ortho_inv <= 1e-8, ortho_inv, "inverse-basis atom not orthogonal");

    const double diag =
        audit_filter_atoms(convolution_kernel(ens, multipliers), diagonality_defect);
    r.record(diag == 0.0, diag, "convolution atom not diagonal");

    std::vector<SamplingMask> masks;
    std::vector<double> mask_probs;
    for (std::size_t i = 0; i < members; ++i) {
      std::vector<std::size_t> kept;
      for (std::size_t v = 0; v < n; ++v)
        if (rng.uniform01() < 0.5) kept.push_back(v);
      if (kept.empty()) kept.push_back(static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(n - 1))));
      masks.push_back(make_mask(n, std::move(kept)));
      mask_probs.push_back(1.0 / static_cast<double>(members));
    }
    const double idem = audit_filter_atoms(sampling_morphism(n, masks, mask_probs),
                                           idempotency_defect);
    r.record(idem <= 1e-10, idem, "sampling atom not idempotent");
    return r;
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "category-laws", "monoid-laws", "lemma-2.3", "thm-5.1",
      "lemma-5.2",     "cor-5.3",     "gsp-regression", "ot-oracle"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

int default_trials(const std::string& name) {
  if (name == "lemma-2.3" || name == "ot-oracle") return 100;
  return 50;
}

Report run_suite(const std::string& name, std::uint64_t seed, int trials, bool parallel) {
  const int count = trials > 0 ? trials : default_trials(name);
  if (name == "category-laws") return category_laws(seed, count, parallel);
  if (name == "monoid-laws") return monoid_laws(seed, count, parallel);
  if (name == "lemma-2.3") return distributional_commutativity(seed, count, parallel);
  if (name == "thm-5.1") return best_approx_bound(seed, count, parallel);
  if (name == "lemma-5.2") return surrogate_algebra(seed, count, parallel);
  if (name == "cor-5.3") return surrogate_functoriality(seed, count, parallel);
  if (name == "gsp-regression") return gsp_regression(seed, count, parallel);
  if (name == "ot-oracle") return ot_oracle(seed, count, parallel);
  throw DomainError("unknown verification suite \"" + name + "\"");
}

}  // namespace dgsp::verify
