#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dgsp/errors.hpp"
#include "dgsp/json_io.hpp"
#include "dgsp/rng.hpp"
#include "dgsp/verify.hpp"

using namespace dgsp;
namespace fs = std::filesystem;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "dgsp_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_of(const std::string& name) { return (scratch_dir() / name).string(); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DGSP_CLI_PATH) + " " + args + " >" +
                          path_of("stdout.txt") + " 2>" + path_of("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("canonical serialization round-trips byte for byte") {
  Rng rng(137);
  for (int t = 0; t < 20; ++t) {
    const DiscreteMeasure mu = verify::random_vector_measure(rng, 3, 5);
    const std::string once = canonical_dump(measure_to_json(mu));
    const DiscreteMeasure reloaded = measure_from_json(nlohmann::json::parse(once));
    CHECK(canonical_dump(measure_to_json(reloaded)) == once);
    CHECK(measure_max_diff(reloaded, mu) == 0.0);
  }

  const LinearFilter lf = verify::random_constant_filter(rng, 2, 3, 2);
  const std::string once = canonical_dump(filter_to_json(lf));
  const LinearFilter reloaded = filter_from_json(nlohmann::json::parse(once));
  CHECK(canonical_dump(filter_to_json(reloaded)) == once);

  const GraphEnsemble ens({verify::random_graph(rng, 4), verify::random_graph(rng, 4)},
                          {0.25, 0.75});
  const std::string ens_once = canonical_dump(ensemble_to_json(ens));
  CHECK(canonical_dump(ensemble_to_json(ensemble_from_json(nlohmann::json::parse(ens_once)))) ==
        ens_once);

  // Table-backed kernels serialize too; functional ones are library-only.
  FiberKernel::TableEntries entries;
  entries.emplace_back(Vector{0.0, 0.0},
                       DiscreteMeasure::dirac(Atom(verify::random_matrix(rng, 2, 2))));
  entries.emplace_back(Vector{1.0, 0.5},
                       DiscreteMeasure::dirac(Atom(verify::random_matrix(rng, 2, 2))));
  const LinearFilter table_filter = make_linear_filter(
      Matrix::identity(2), 2, FiberKernel::table(2, std::move(entries)));
  const std::string tf_once = canonical_dump(filter_to_json(table_filter));
  const LinearFilter tf_back = filter_from_json(nlohmann::json::parse(tf_once));
  CHECK(tf_back.kernel.kind() == FiberKernel::Kind::table);
  CHECK(canonical_dump(filter_to_json(tf_back)) == tf_once);

  const LinearFilter functional_filter = make_linear_filter(
      Matrix::identity(1), 1, FiberKernel::functional(1, [](const Vector&) {
        return DiscreteMeasure::dirac(Atom(Matrix{{1.0}}));
      }));
  CHECK_THROWS_AS(filter_to_json(functional_filter), DomainError);
}

TEST_CASE("apply through the binary matches the library") {
  Rng rng(139);
  const DiscreteMeasure mu = verify::random_vector_measure(rng, 2, 3);
  const LinearFilter lf = verify::random_constant_filter(rng, 2, 2, 2);
  write_file(path_of("mu.json"), measure_to_json(mu));
  write_file(path_of("f.json"), filter_to_json(lf));

  REQUIRE(run_cli("apply --measure " + path_of("mu.json") + " --filter " + path_of("f.json") +
                  " --output " + path_of("out.json")) == 0);
  const DiscreteMeasure out = load_measure(path_of("out.json"));
  CHECK(measure_max_diff(out, apply(lf, mu)) <= 1e-12);
}

TEST_CASE("verify reports are byte-identical for a fixed seed") {
  REQUIRE(run_cli("verify --suite ot-oracle --seed 3 --trials 5 --output " +
                  path_of("r1.json")) == 0);
  REQUIRE(run_cli("verify --suite ot-oracle --seed 3 --trials 5 --output " +
                  path_of("r2.json")) == 0);
  REQUIRE(run_cli("verify --suite ot-oracle --seed 3 --trials 5 --parallel --output " +
                  path_of("r3.json")) == 0);
  const std::string r1 = slurp(path_of("r1.json"));
  CHECK(r1 == slurp(path_of("r2.json")));
  CHECK(r1 == slurp(path_of("r3.json")));
  CHECK(r1.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("unknown suites exit with the parse code") {
  CHECK(run_cli("verify --suite not-a-suite") == 2);
  CHECK(run_cli("verify") == 2);
}

TEST_CASE("suites can be named positionally") {
  REQUIRE(run_cli("verify category-laws --trials 3 --seed 7 --output " + path_of("rp.json")) ==
          0);
  REQUIRE(run_cli("verify --suite category-laws --trials 3 --seed 7 --output " +
                  path_of("rf.json")) == 0);
  CHECK(slurp(path_of("rp.json")) == slurp(path_of("rf.json")));
}

TEST_CASE("the support cap env var is honored by fresh processes") {
  Rng rng(157);
  write_file(path_of("em.json"), measure_to_json(verify::random_vector_measure(rng, 1, 3)));
  write_file(path_of("ef.json"),
             filter_to_json(verify::random_constant_filter(rng, 1, 1, 3)));
  const std::string cmd = "DGSP_SUPPORT_CAP=2 " + std::string(DGSP_CLI_PATH) +
                          " apply --measure " + path_of("em.json") + " --filter " +
                          path_of("ef.json") + " --output " + path_of("eo.json") +
                          " >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 4);
}

TEST_CASE("pipelines validate dimensions before running") {
  Rng rng(141);
  write_file(path_of("mu1.json"), measure_to_json(verify::random_vector_measure(rng, 1, 2)));
  write_file(path_of("f3.json"),
             filter_to_json(verify::random_constant_filter(rng, 3, 3, 2)));
  nlohmann::json pipeline;
  pipeline["schema"] = kSchema;
  pipeline["steps"] = nlohmann::json::array(
      {{{"op", "load"}, {"path", path_of("mu1.json")}},
       {{"op", "apply"}, {"filter", path_of("f3.json")}}});
  write_file(path_of("bad_pipe.json"), pipeline);

  CHECK(run_cli("run --pipeline " + path_of("bad_pipe.json")) == 3);
  CHECK(slurp(path_of("stderr.txt")).find("step 1") != std::string::npos);
}

TEST_CASE("pipelines report support, mass, and the distance of reference checks") {
  Rng rng(143);
  const DiscreteMeasure mu = verify::random_vector_measure(rng, 2, 3);
  const LinearFilter lf = verify::random_constant_filter(rng, 2, 2, 2);
  write_file(path_of("pm.json"), measure_to_json(mu));
  write_file(path_of("pf.json"), filter_to_json(lf));
  write_file(path_of("expected.json"), measure_to_json(apply(lf, mu)));

  nlohmann::json pipeline;
  pipeline["schema"] = kSchema;
  pipeline["seed"] = 7;
  pipeline["steps"] = nlohmann::json::array(
      {{{"op", "load"}, {"path", path_of("pm.json")}},
       {{"op", "apply"}, {"filter", path_of("pf.json")}},
       {{"op", "wasserstein"}, {"path", path_of("expected.json")}},
       {{"op", "dump"}, {"path", path_of("dumped.json")}}});
  write_file(path_of("pipe.json"), pipeline);

  REQUIRE(run_cli("run --pipeline " + path_of("pipe.json") + " --no-timings --output " +
                  path_of("report1.json")) == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(path_of("report1.json")));
  REQUIRE(report["steps"].size() == 4);
  CHECK(report["steps"][2]["distance"].get<double>() <= 1e-9);
  for (const auto& step : report["steps"]) {
    CHECK(std::fabs(step["mass"].get<double>() - 1.0) <= 1e-9);
    CHECK(step["support"].get<std::size_t>() >= 1);
  }

  // The dumped measure equals a canonical re-dump of itself.
  const std::string dumped = slurp(path_of("dumped.json"));
  const DiscreteMeasure reloaded = load_measure(path_of("dumped.json"));
  CHECK(canonical_dump(measure_to_json(reloaded)) + "\n" == dumped);

  // Identical invocation, identical bytes.
  REQUIRE(run_cli("run --pipeline " + path_of("pipe.json") + " --no-timings --output " +
                  path_of("report2.json")) == 0);
  CHECK(slurp(path_of("report1.json")) == slurp(path_of("report2.json")));
}

TEST_CASE("parse failures carry the step index and the parse exit code") {
  std::ofstream(path_of("broken.json")) << "{ not json";
  nlohmann::json pipeline;
  pipeline["schema"] = kSchema;
  pipeline["steps"] =
      nlohmann::json::array({{{"op", "load"}, {"path", path_of("broken.json")}}});
  write_file(path_of("broken_pipe.json"), pipeline);
  CHECK(run_cli("run --pipeline " + path_of("broken_pipe.json")) == 2);
  CHECK(slurp(path_of("stderr.txt")).find("step 0") != std::string::npos);
}

TEST_CASE("the support cap exits with its own code and step index") {
  Rng rng(149);
  write_file(path_of("cm.json"), measure_to_json(verify::random_vector_measure(rng, 1, 3)));
  write_file(path_of("cf.json"),
             filter_to_json(verify::random_constant_filter(rng, 1, 1, 3)));
  nlohmann::json pipeline;
  pipeline["schema"] = kSchema;
  pipeline["steps"] = nlohmann::json::array(
      {{{"op", "load"}, {"path", path_of("cm.json")}},
       {{"op", "apply"}, {"filter", path_of("cf.json")}}});
  write_file(path_of("cap_pipe.json"), pipeline);

  CHECK(run_cli("--support-cap 2 run --pipeline " + path_of("cap_pipe.json")) == 4);
  CHECK(slurp(path_of("stderr.txt")).find("step 1") != std::string::npos);
}

TEST_CASE("gsp subcommands produce working filter files") {
  write_file(path_of("p3.json"),
             graph_to_json(Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}})));

  REQUIRE(run_cli("gsp fourier --graph " + path_of("p3.json") + " --output " +
                  path_of("basis.json")) == 0);
  REQUIRE(run_cli("gsp convolve --graph " + path_of("p3.json") +
                  " --multipliers 1,1,1 --output " + path_of("allpass.json")) == 0);

  // The all-pass filter acts as the identity.
  const DiscreteMeasure d = DiscreteMeasure::dirac(Atom(Vector{0.5, -1.0, 2.0}));
  write_file(path_of("sig.json"), measure_to_json(d));
  REQUIRE(run_cli("apply --measure " + path_of("sig.json") + " --filter " +
                  path_of("allpass.json") + " --output " + path_of("same.json")) == 0);
  CHECK(measure_max_diff(load_measure(path_of("same.json")), d) <= 1e-8);

  REQUIRE(run_cli("gsp sample --n 3 --keep 0,2 --output " + path_of("mask.json")) == 0);
  const LinearFilter sampler = load_filter(path_of("mask.json"));
  CHECK(audit_filter_atoms(sampler, idempotency_defect) == 0.0);

  // Recover a constant signal from one observed vertex.
  const SymEigen eig = sym_eigen(laplacian(load_graph(path_of("p3.json"))));
  Matrix projector(3, 3);
  const Vector u0 = eig.eigenvectors.col(0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) projector(i, j) = u0[i] * u0[j];
  write_file(path_of("band.json"), filter_to_json(embed_linear_map(projector)));
  write_file(path_of("obs.json"), vector_to_json(Vector{1.0}));
  REQUIRE(run_cli("gsp recover --filter " + path_of("band.json") + " --observed " +
                  path_of("obs.json") + " --keep 0 --output " + path_of("rec.json")) == 0);
  const nlohmann::json rec = nlohmann::json::parse(slurp(path_of("rec.json")));
  CHECK(rec["injective_on_range"].get<bool>());
  for (double x : rec["signal"].get<std::vector<double>>())
    CHECK(x == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("compose and add through the binary stay serializable and correct") {
  Rng rng(151);
  const LinearFilter lf1 = verify::random_constant_filter(rng, 2, 2, 2);
  const LinearFilter lf2 = verify::random_constant_filter(rng, 2, 2, 2);
  write_file(path_of("g1.json"), filter_to_json(lf1));
  write_file(path_of("g2.json"), filter_to_json(lf2));

  REQUIRE(run_cli("compose --filter " + path_of("g1.json") + " --filter " + path_of("g2.json") +
                  " --output " + path_of("chain.json")) == 0);
  const LinearFilter chain = load_filter(path_of("chain.json"));
  const DiscreteMeasure probe = DiscreteMeasure::dirac(Atom(verify::random_vector(rng, 2)));
  CHECK(measure_max_diff(apply(chain, probe),
                         apply(compose_linear(lf2, lf1), probe)) <= 1e-9);

  REQUIRE(run_cli("add --filter " + path_of("g1.json") + " --filter " + path_of("g2.json") +
                  " --output " + path_of("sum.json")) == 0);
  CHECK(measure_max_diff(apply(load_filter(path_of("sum.json")), probe),
                         apply(add_linear(lf1, lf2), probe)) <= 1e-9);
}

TEST_CASE("wasserstein subcommand emits the distance") {
  write_file(path_of("wa.json"), measure_to_json(DiscreteMeasure(
                                     {Atom(Vector{0.0}), Atom(Vector{2.0})}, {0.5, 0.5})));
  write_file(path_of("wb.json"), measure_to_json(DiscreteMeasure::dirac(Atom(Vector{1.0}))));
  REQUIRE(run_cli("wasserstein --measure " + path_of("wa.json") + " --measure-b " +
                  path_of("wb.json") + " --output " + path_of("w.json")) == 0);
  const nlohmann::json w = nlohmann::json::parse(slurp(path_of("w.json")));
  CHECK(w["distance"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}
