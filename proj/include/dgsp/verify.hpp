#pragma once

// Replayable verification suites over randomized instances: the algebraic
// laws of the morphism category, the transport oracle, the surrogate bound
// and algebra, and the graph-filter regressions. Each trial draws its own
// child generator, so reports are byte-identical for a fixed seed whether or
// not trials run in parallel. Tolerances are pinned here, in code.

#include <cstdint>
#include <string>
#include <vector>

#include "dgsp/correspondence.hpp"
#include "dgsp/gsp.hpp"
#include "dgsp/report.hpp"
#include "dgsp/rng.hpp"

namespace dgsp::verify {

// Random instance generators shared by the suites and the tests.
Vector random_vector(Rng& rng, std::size_t dim, double lo = -1.0, double hi = 1.0);
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);
DiscreteMeasure random_vector_measure(Rng& rng, std::size_t dim, std::size_t max_support);
LinearFilter random_constant_filter(Rng& rng, std::size_t domain_dim, std::size_t output_dim,
                                    std::size_t atom_count, bool identity_pre_map = false);
Graph random_graph(Rng& rng, std::size_t n);

/// Names accepted by the batch front-end, in canonical order.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);
int default_trials(const std::string& name);

/// Runs a named suite. trials <= 0 selects the suite default.
Report run_suite(const std::string& name, std::uint64_t seed, int trials, bool parallel);

Report category_laws(std::uint64_t seed, int trials, bool parallel = false);
Report monoid_laws(std::uint64_t seed, int trials, bool parallel = false);
Report distributional_commutativity(std::uint64_t seed, int trials, bool parallel = false);
Report ot_oracle(std::uint64_t seed, int trials, bool parallel = false);
Report best_approx_bound(std::uint64_t seed, int trials, bool parallel = false);
Report surrogate_algebra(std::uint64_t seed, int trials, bool parallel = false);
Report surrogate_functoriality(std::uint64_t seed, int trials, bool parallel = false);
Report gsp_regression(std::uint64_t seed, int trials, bool parallel = false);

/// Bandlimited-signal recovery on short path graphs; acceptance-only, not a
/// batch suite name.
Report sampling_recovery(std::uint64_t seed, int trials, bool parallel = false);

/// Audits the three kernel support conditions over freshly generated
/// spectral, convolution, and sampling filters.
Report support_audit(std::uint64_t seed, int trials, bool parallel = false);

}  // namespace dgsp::verify
