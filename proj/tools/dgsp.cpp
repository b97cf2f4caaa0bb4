// Batch front-end: load measures, filters, graphs and ensembles from JSON,
// run morphism pipelines, compute transport distances, build graph filters,
// and drive the verification suites. All outputs use the canonical JSON
// encoding so identical inputs produce identical bytes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgsp/errors.hpp"
#include "dgsp/expectation.hpp"
#include "dgsp/gsp.hpp"
#include "dgsp/json_io.hpp"
#include "dgsp/transport.hpp"
#include "dgsp/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitSupportCap = 4;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const dgsp::ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const dgsp::DimensionError*>(&e)) return kExitDimension;
  if (dynamic_cast<const dgsp::SupportCapError*>(&e)) return kExitSupportCap;
  return kExitError;
}

void emit(const json& j, const std::string& output_path) {
  if (output_path.empty())
    std::cout << dgsp::canonical_dump(j) << "\n";
  else
    dgsp::write_file(output_path, j);
}

dgsp::Vector parse_multipliers(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw dgsp::ParseError("cannot parse multiplier entry \"" + item + "\"");
    }
  }
  if (values.empty()) throw dgsp::ParseError("empty multiplier list");
  return dgsp::Vector(std::move(values));
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw dgsp::ParseError("cannot parse index \"" + item + "\"");
    }
  }
  if (values.empty()) throw dgsp::ParseError("empty index list");
  return values;
}

double measure_mass(const dgsp::DiscreteMeasure& mu) {
  double mass = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) mass += mu.weight(i);
  return mass;
}

// ---------------------------------------------------------------------------
// Pipeline runner

struct PipelineStep {
  std::string op;
  json body;
};

struct StepFailure {
  int exit_code;
  std::size_t step;
  std::string message;
};

int run_pipeline(const std::string& pipeline_path, std::string output_override,
                 bool with_timings, std::optional<std::uint64_t> seed_override) {
  json spec;
  try {
    spec = dgsp::parse_file(pipeline_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  std::vector<PipelineStep> steps;
  std::uint64_t seed = 0;
  std::string output_path = output_override;
  try {
    if (!spec.is_object() || !spec.contains("steps") || !spec["steps"].is_array())
      throw dgsp::ParseError("pipeline needs a steps array");
    if (spec.contains("seed")) seed = spec["seed"].get<std::uint64_t>();
    if (seed_override) seed = *seed_override;
    if (output_path.empty() && spec.contains("output"))
      output_path = spec["output"].get<std::string>();
    for (const auto& step : spec["steps"]) {
      if (!step.is_object() || !step.contains("op"))
        throw dgsp::ParseError("each step needs an op name");
      steps.push_back({step["op"].get<std::string>(), step});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  auto path_arg = [](const PipelineStep& s, const char* key) {
    if (!s.body.contains(key) || !s.body[key].is_string())
      throw dgsp::ParseError(std::string("step needs a \"") + key + "\" path");
    return s.body[key].get<std::string>();
  };

  // Validation pass: every referenced file must parse and the dimensions
  // must chain before anything executes.
  try {
    std::optional<std::size_t> dim;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const PipelineStep& step = steps[i];
      try {
        if (step.op == "load") {
          dim = dgsp::load_measure(path_arg(step, "path")).atom(0).vec().dim();
        } else if (step.op == "apply" || step.op == "expectation") {
          const dgsp::LinearFilter lf = dgsp::load_filter(path_arg(step, "filter"));
          if (!dim) throw dgsp::DimensionError("no measure loaded before " + step.op);
          if (lf.domain_dim() != *dim)
            throw dgsp::DimensionError("filter domain " + std::to_string(lf.domain_dim()) +
                                       " does not match measure dimension " +
                                       std::to_string(*dim));
          dim = lf.output_dim;
        } else if (step.op == "wasserstein") {
          const auto ref = dgsp::load_measure(path_arg(step, "path"));
          if (!dim) throw dgsp::DimensionError("no measure loaded before wasserstein");
          if (ref.atom(0).vec().dim() != *dim)
            throw dgsp::DimensionError("reference measure dimension mismatch");
        } else if (step.op == "dump") {
          path_arg(step, "path");
          if (!dim) throw dgsp::DimensionError("no measure loaded before dump");
        } else {
          throw dgsp::ParseError("unknown pipeline op \"" + step.op + "\"");
        }
      } catch (const std::exception& e) {
        throw StepFailure{exit_code_for(e), i, e.what()};
      }
    }
  } catch (const StepFailure& f) {
    std::cerr << "error at step " << f.step << ": " << f.message << "\n";
    return f.exit_code;
  }

  json report;
  report["schema"] = dgsp::kSchema;
  report["seed"] = seed;
  json step_reports = json::array();

  std::optional<dgsp::DiscreteMeasure> current;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const PipelineStep& step = steps[i];
    const auto start = std::chrono::steady_clock::now();
    json entry;
    entry["index"] = i;
    entry["op"] = step.op;
    try {
      if (step.op == "load") {
        current = dgsp::load_measure(path_arg(step, "path"));
      } else if (step.op == "apply") {
        current = dgsp::apply(dgsp::load_filter(path_arg(step, "filter")), *current);
      } else if (step.op == "expectation") {
        current = dgsp::e_pushforward(
            dgsp::to_correspondence(dgsp::load_filter(path_arg(step, "filter"))), *current);
      } else if (step.op == "wasserstein") {
        entry["distance"] = dgsp::w2(*current, dgsp::load_measure(path_arg(step, "path")));
      } else if (step.op == "dump") {
        dgsp::write_file(path_arg(step, "path"), dgsp::measure_to_json(*current));
      }
    } catch (const std::exception& e) {
      std::cerr << "error at step " << i << ": " << e.what() << "\n";
      return exit_code_for(e);
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    entry["support"] = current ? current->size() : 0;
    entry["mass"] = current ? measure_mass(*current) : 0.0;
    entry["elapsed_ms"] =
        with_timings
            ? std::chrono::duration<double, std::milli>(elapsed).count()
            : 0.0;
    step_reports.push_back(std::move(entry));
  }
  report["steps"] = std::move(step_reports);
  emit(report, output_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributional graph signal processing toolkit"};
  app.require_subcommand(1);

  std::string output;
  std::size_t cap = 0;
  double merge_tol = -1.0;
  app.add_option("--support-cap", cap, "cap on materialized support sizes");
  app.add_option("--tol", merge_tol, "absolute tolerance for merging equal atoms");

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "apply a filter to a measure");
  std::string apply_measure, apply_filter;
  apply_cmd->add_option("--measure", apply_measure, "input measure file")->required();
  apply_cmd->add_option("--filter", apply_filter, "filter file")->required();
  apply_cmd->add_option("--output", output, "output measure file");

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "compose filters (listed in application order)");
  std::vector<std::string> compose_filters;
  compose_cmd->add_option("--filter", compose_filters, "filter files")->required();
  compose_cmd->add_option("--output", output, "output filter file");

  // add
  auto* add_cmd = app.add_subcommand("add", "add filters");
  std::vector<std::string> add_filters;
  add_cmd->add_option("--filter", add_filters, "filter files")->required();
  add_cmd->add_option("--output", output, "output filter file");

  // wasserstein
  auto* w_cmd = app.add_subcommand("wasserstein", "2-Wasserstein distance between measures");
  std::string w_a, w_b, w_coupling;
  w_cmd->add_option("--measure", w_a, "first measure")->required();
  w_cmd->add_option("--measure-b", w_b, "second measure")->required();
  w_cmd->add_option("--coupling", w_coupling, "write the optimal plan here");
  w_cmd->add_option("--output", output, "report file (defaults to stdout)");

  // expectation
  auto* e_cmd = app.add_subcommand("expectation", "surrogate matrix or pushforward");
  std::string e_filter, e_measure;
  e_cmd->add_option("--filter", e_filter, "filter file")->required();
  e_cmd->add_option("--measure", e_measure, "measure to push through the surrogate");
  e_cmd->add_option("--output", output, "output file (defaults to stdout)");

  // gsp
  auto* gsp_cmd = app.add_subcommand("gsp", "graph-domain constructions");
  gsp_cmd->require_subcommand(1);

  auto* fourier_cmd = gsp_cmd->add_subcommand("fourier", "spectral change of basis");
  std::string g_graph, g_ensemble;
  bool g_inverse = false;
  fourier_cmd->add_option("--graph", g_graph, "graph file");
  fourier_cmd->add_option("--ensemble", g_ensemble, "ensemble file");
  fourier_cmd->add_flag("--inverse", g_inverse, "emit the pseudo-inverse transform");
  fourier_cmd->add_option("--output", output, "output filter file");

  auto* conv_cmd = gsp_cmd->add_subcommand("convolve", "convolution filter from multipliers");
  std::string c_graph, c_ensemble;
  std::vector<std::string> c_multipliers;
  conv_cmd->add_option("--graph", c_graph, "graph file");
  conv_cmd->add_option("--ensemble", c_ensemble, "ensemble file");
  conv_cmd->add_option("--multipliers", c_multipliers,
                       "comma-separated spectral multipliers (repeat per member)")
      ->required();
  conv_cmd->add_option("--output", output, "output filter file");

  auto* sample_cmd = gsp_cmd->add_subcommand("sample", "sampling morphism from a mask");
  std::size_t s_n = 0;
  std::string s_keep;
  sample_cmd->add_option("--n", s_n, "signal dimension")->required();
  sample_cmd->add_option("--keep", s_keep, "comma-separated kept vertex indices")->required();
  sample_cmd->add_option("--output", output, "output filter file");

  auto* recover_cmd = gsp_cmd->add_subcommand("recover", "recover a signal from observations");
  std::string r_filter, r_observed, r_keep, r_signal_out;
  recover_cmd->add_option("--filter", r_filter, "bandlimiting filter file")->required();
  recover_cmd->add_option("--observed", r_observed, "observed values file")->required();
  recover_cmd->add_option("--keep", r_keep, "comma-separated observed vertex indices")
      ->required();
  recover_cmd->add_option("--signal-output", r_signal_out, "write recovered signal here");
  recover_cmd->add_option("--output", output, "report file (defaults to stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite, suite_flag;
  std::uint64_t seed = 1;
  int trials = 0;
  bool parallel = false;
  verify_cmd->add_option("suite-name", suite, "suite name");
  verify_cmd->add_option("--suite", suite_flag, "suite name (alternative to positional)");
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--trials", trials, "trial count (0 = suite default)");
  verify_cmd->add_flag("--parallel", parallel, "run trials on multiple threads");
  verify_cmd->add_option("--output", output, "report file (defaults to stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "execute a pipeline spec");
  std::string pipeline;
  bool no_timings = false;
  std::uint64_t run_seed = 0;
  run_cmd->add_option("--pipeline", pipeline, "pipeline spec file")->required();
  run_cmd->add_option("--seed", run_seed, "override the spec seed");
  run_cmd->add_flag("--no-timings", no_timings, "zero step timings for reproducible bytes");
  run_cmd->add_option("--output", output, "report file (defaults to stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cap > 0) dgsp::set_support_cap(cap);
    if (merge_tol >= 0.0) dgsp::set_atom_merge_tolerance(merge_tol);

    if (*apply_cmd) {
      const auto result =
          dgsp::apply(dgsp::load_filter(apply_filter), dgsp::load_measure(apply_measure));
      emit(dgsp::measure_to_json(result), output);
      return 0;
    }

    if (*compose_cmd) {
      if (compose_filters.size() < 2)
        throw dgsp::DomainError("compose needs at least two filters");
      dgsp::LinearFilter acc = dgsp::load_filter(compose_filters[0]);
      for (std::size_t i = 1; i < compose_filters.size(); ++i)
        acc = dgsp::compose_linear(dgsp::load_filter(compose_filters[i]), acc);
      emit(dgsp::filter_to_json(acc), output);
      return 0;
    }

    if (*add_cmd) {
      if (add_filters.size() < 2) throw dgsp::DomainError("add needs at least two filters");
      dgsp::LinearFilter acc = dgsp::load_filter(add_filters[0]);
      for (std::size_t i = 1; i < add_filters.size(); ++i)
        acc = dgsp::add_linear(acc, dgsp::load_filter(add_filters[i]));
      emit(dgsp::filter_to_json(acc), output);
      return 0;
    }

    if (*w_cmd) {
      const auto mu = dgsp::load_measure(w_a);
      const auto nu = dgsp::load_measure(w_b);
      const dgsp::Coupling coupling = dgsp::optimal_coupling(mu, nu);
      json j;
      j["schema"] = dgsp::kSchema;
      j["squared"] = coupling.cost;
      j["distance"] = std::sqrt(std::max(coupling.cost, 0.0));
      if (!w_coupling.empty()) {
        json plan;
        plan["schema"] = dgsp::kSchema;
        json rows = json::array();
        for (std::size_t i = 0; i < coupling.plan.rows(); ++i) {
          json row = json::array();
          for (std::size_t k = 0; k < coupling.plan.cols(); ++k)
            row.push_back(coupling.plan(i, k));
          rows.push_back(std::move(row));
        }
        plan["plan"] = std::move(rows);
        plan["cost"] = coupling.cost;
        dgsp::write_file(w_coupling, plan);
      }
      emit(j, output);
      return 0;
    }

    if (*e_cmd) {
      const dgsp::LinearFilter lf = dgsp::load_filter(e_filter);
      if (!e_measure.empty()) {
        const auto pushed = dgsp::e_pushforward(dgsp::to_correspondence(lf),
                                                dgsp::load_measure(e_measure));
        emit(dgsp::measure_to_json(pushed), output);
      } else {
        const dgsp::Matrix m = dgsp::e_matrix(lf);
        json j;
        j["schema"] = dgsp::kSchema;
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
          json row = json::array();
          for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
          rows.push_back(std::move(row));
        }
        j["e_matrix"] = std::move(rows);
        emit(j, output);
      }
      return 0;
    }

    if (*fourier_cmd) {
      const dgsp::GraphEnsemble ens =
          !g_ensemble.empty()
              ? dgsp::load_ensemble(g_ensemble)
              : dgsp::GraphEnsemble({dgsp::load_graph(g_graph)}, {1.0});
      dgsp::LinearFilter lf = dgsp::change_of_basis(ens);
      if (g_inverse) lf = dgsp::pseudo_inverse_morphism(lf);
      emit(dgsp::filter_to_json(lf), output);
      return 0;
    }

    if (*conv_cmd) {
      const dgsp::GraphEnsemble ens =
          !c_ensemble.empty()
              ? dgsp::load_ensemble(c_ensemble)
              : dgsp::GraphEnsemble({dgsp::load_graph(c_graph)}, {1.0});
      const std::size_t n = ens.vertex_count();
      dgsp::LinearFilter kernel = [&]() {
        if (c_multipliers.size() == 1)
          return dgsp::convolution_kernel(n, parse_multipliers(c_multipliers[0]));
        std::vector<dgsp::Vector> per_graph;
        for (const auto& text : c_multipliers) per_graph.push_back(parse_multipliers(text));
        return dgsp::convolution_kernel(ens, per_graph);
      }();
      emit(dgsp::filter_to_json(dgsp::convolution_filter(kernel, dgsp::change_of_basis(ens))),
           output);
      return 0;
    }

    if (*sample_cmd) {
      const dgsp::SamplingMask mask = dgsp::make_mask(s_n, parse_indices(s_keep));
      emit(dgsp::filter_to_json(dgsp::sampling_morphism(s_n, mask)), output);
      return 0;
    }

    if (*recover_cmd) {
      const dgsp::LinearFilter lf = dgsp::load_filter(r_filter);
      const dgsp::Vector observed = dgsp::vector_from_json(dgsp::parse_file(r_observed));
      const dgsp::SamplingMask mask =
          dgsp::make_mask(lf.domain_dim(), parse_indices(r_keep));
      const dgsp::RecoveryResult result = dgsp::recover(observed, lf, mask);
      json j;
      j["schema"] = dgsp::kSchema;
      j["signal"] = result.signal.entries();
      j["observation_rank"] = result.observation_rank;
      j["filter_rank"] = result.filter_rank;
      j["injective_on_range"] = result.injective_on_range;
      if (!r_signal_out.empty())
        dgsp::write_file(r_signal_out, dgsp::vector_to_json(result.signal));
      emit(j, output);
      return 0;
    }

    if (*verify_cmd) {
      if (suite.empty()) suite = suite_flag;
      if (!dgsp::verify::is_suite_name(suite)) {
        std::cerr << "error: unknown suite \"" << suite << "\"\n";
        return kExitParse;
      }
      const dgsp::Report report = dgsp::verify::run_suite(suite, seed, trials, parallel);
      json j = dgsp::report_to_json(report);
      j["schema"] = dgsp::kSchema;
      j["seed"] = seed;
      j["trials"] = trials > 0 ? trials : dgsp::verify::default_trials(suite);
      emit(j, output);
      return report.pass ? 0 : kExitError;
    }

    if (*run_cmd)
      return run_pipeline(pipeline, output, !no_timings,
                          run_cmd->count("--seed") ? std::optional(run_seed) : std::nullopt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
