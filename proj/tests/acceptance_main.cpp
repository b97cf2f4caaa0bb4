// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion runs a randomized harness at pinned tolerances and a pinned
// trial count, with a wall-clock budget.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "dgsp/report.hpp"
#include "dgsp/verify.hpp"

namespace {

struct Criterion {
  std::string label;
  dgsp::Report (*run)(std::uint64_t seed);
  double budget_seconds;
};

bool execute(std::size_t index, std::size_t total, const Criterion& criterion,
             std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  dgsp::Report report;
  bool threw = false;
  std::string what;
  try {
    report = criterion.run(seed);
  } catch (const std::exception& e) {
    threw = true;
    what = e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool in_budget = elapsed < criterion.budget_seconds;
  const bool pass = !threw && report.pass && in_budget;
  std::printf("[%zu/%zu] %-58s %s  max_violation=%.3e  %.2fs/%.0fs\n", index, total,
              criterion.label.c_str(), pass ? "PASS" : "FAIL", report.max_violation, elapsed,
              criterion.budget_seconds);
  if (threw) std::printf("        error: %s\n", what.c_str());
  if (!in_budget && !threw) std::printf("        over time budget\n");
  for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i)
    std::printf("        %s (%.3e)\n", report.violations[i].context.c_str(),
                report.violations[i].magnitude);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20260811u;

  using dgsp::Report;
  const std::vector<Criterion> criteria{
      {"category laws: identities exact, associativity 1e-9 (50)",
       [](std::uint64_t s) { return dgsp::verify::category_laws(s, 50); }, 5.0},
      {"monoid laws: commutative, associative, zero (50)",
       [](std::uint64_t s) { return dgsp::verify::monoid_laws(s, 50); }, 5.0},
      {"pullback-pushforward commutation on fiber products (100)",
       [](std::uint64_t s) { return dgsp::verify::distributional_commutativity(s, 100); },
       5.0},
      {"transport: permutation oracle + triangle inequality (100)",
       [](std::uint64_t s) { return dgsp::verify::ot_oracle(s, 100); }, 30.0},
      {"surrogate bound: 50 filters x 20 candidates x 20 measures",
       [](std::uint64_t s) { return dgsp::verify::best_approx_bound(s, 50); }, 60.0},
      {"surrogate algebra + functoriality, 1e-9 (50+50)",
       [](std::uint64_t s) {
         Report merged = dgsp::verify::surrogate_algebra(s, 50);
         const Report functorial = dgsp::verify::surrogate_functoriality(s, 50);
         merged.checks += functorial.checks;
         if (functorial.max_violation > merged.max_violation)
           merged.max_violation = functorial.max_violation;
         if (!functorial.pass) merged.pass = false;
         for (const auto& v : functorial.violations) merged.violations.push_back(v);
         return merged;
       },
       10.0},
      {"spectral filter regression + inverse round trip, 1e-8 (50)",
       [](std::uint64_t s) { return dgsp::verify::gsp_regression(s, 50); }, 5.0},
      {"bandlimited sampling and recovery on short paths, 1e-8 (50)",
       [](std::uint64_t s) { return dgsp::verify::sampling_recovery(s, 50); }, 5.0},
      {"kernel support audits: orthogonal/diagonal/idempotent (50)",
       [](std::uint64_t s) { return dgsp::verify::support_audit(s, 50); }, 5.0},
  };

  std::size_t failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
    if (!execute(i + 1, criteria.size(), criteria[i], seed)) ++failures;

  if (failures == 0)
    std::printf("all %zu acceptance criteria passed (seed %llu)\n", criteria.size(),
                static_cast<unsigned long long>(seed));
  else
    std::printf("%zu of %zu acceptance criteria FAILED (seed %llu)\n", failures,
                criteria.size(), static_cast<unsigned long long>(seed));
  return failures == 0 ? 0 : 1;
}
