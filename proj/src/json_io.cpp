#include "dgsp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dgsp/errors.hpp"

namespace dgsp {

namespace {

void dump_value(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_value(j[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

double finite_number(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(what + " must be finite");
  return x;
}

std::vector<double> number_array(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(finite_number(x, what + " entry"));
  return out;
}

void check_schema(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be a JSON object");
  if (!j.contains("schema") || j["schema"] != kSchema)
    throw ParseError(what + " is missing schema \"" + kSchema + "\"");
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + " must be a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError(what + " rows must be nonempty arrays");
  std::vector<double> data;
  data.reserve(j.size() * cols);
  for (const auto& row : j) {
    const auto values = number_array(row, what + " row");
    if (values.size() != cols) throw ParseError(what + " rows have inconsistent lengths");
    data.insert(data.end(), values.begin(), values.end());
  }
  return Matrix(j.size(), cols, std::move(data));
}

nlohmann::json kernel_to_json(const FiberKernel& k) {
  nlohmann::json out;
  auto fiber_to_json = [](const DiscreteMeasure& fiber) {
    nlohmann::json atoms = nlohmann::json::array();
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      atoms.push_back(matrix_to_json(fiber.atom(i).mat()));
      weights.push_back(fiber.weight(i));
    }
    return std::pair{std::move(atoms), std::move(weights)};
  };
  switch (k.kind()) {
    case FiberKernel::Kind::constant: {
      auto [atoms, weights] = fiber_to_json(k.constant_measure());
      out["kind"] = "constant";
      out["atoms"] = std::move(atoms);
      out["weights"] = std::move(weights);
      break;
    }
    case FiberKernel::Kind::table: {
      out["kind"] = "table";
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& [key, fiber] : k.entries()) {
        auto [atoms, weights] = fiber_to_json(fiber);
        nlohmann::json entry;
        entry["key"] = key.entries();
        entry["atoms"] = std::move(atoms);
        entry["weights"] = std::move(weights);
        entries.push_back(std::move(entry));
      }
      out["entries"] = std::move(entries);
      break;
    }
    case FiberKernel::Kind::functional:
      throw DomainError("functional kernels are library-only and cannot be serialized");
  }
  return out;
}

DiscreteMeasure matrix_fiber_from_json(const nlohmann::json& atoms,
                                       const nlohmann::json& weights) {
  if (!atoms.is_array() || !weights.is_array() || atoms.size() != weights.size())
    throw ParseError("kernel atoms and weights must be arrays of equal length");
  std::vector<Atom> parsed;
  std::vector<double> w;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    parsed.emplace_back(matrix_from_json(atoms[i], "kernel atom"));
    w.push_back(finite_number(weights[i], "kernel weight"));
  }
  try {
    return DiscreteMeasure(std::move(parsed), std::move(w));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid kernel fiber: ") + e.what());
  }
}

FiberKernel kernel_from_json(const nlohmann::json& j, std::size_t base_dim) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("kernel must declare a kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    return FiberKernel::constant(base_dim,
                                 matrix_fiber_from_json(j.at("atoms"), j.at("weights")));
  }
  if (kind == "table") {
    FiberKernel::TableEntries entries;
    for (const auto& entry : j.at("entries")) {
      Vector key(number_array(entry.at("key"), "table key"));
      if (key.dim() != base_dim) throw ParseError("table key dimension mismatch");
      entries.emplace_back(std::move(key),
                           matrix_fiber_from_json(entry.at("atoms"), entry.at("weights")));
    }
    try {
      return FiberKernel::table(base_dim, std::move(entries));
    } catch (const DomainError& e) {
      throw ParseError(std::string("invalid table kernel: ") + e.what());
    }
  }
  throw ParseError("unknown kernel kind \"" + kind + "\"");
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump_value(j, out);
  return out;
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << canonical_dump(j) << '\n';
}

nlohmann::json measure_to_json(const DiscreteMeasure& mu) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["dim"] = mu.atom(0).vec().dim();
  nlohmann::json atoms = nlohmann::json::array();
  nlohmann::json weights = nlohmann::json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    atoms.push_back(mu.atom(i).vec().entries());
    weights.push_back(mu.weight(i));
  }
  j["atoms"] = std::move(atoms);
  j["weights"] = std::move(weights);
  return j;
}

DiscreteMeasure measure_from_json(const nlohmann::json& j) {
  check_schema(j, "measure file");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    throw ParseError("measure file needs a positive integer dim");
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (!j.contains("atoms") || !j.contains("weights"))
    throw ParseError("measure file needs atoms and weights");
  const auto& atoms = j["atoms"];
  const auto& weights = j["weights"];
  if (!atoms.is_array() || !weights.is_array() || atoms.size() != weights.size())
    throw ParseError("measure atoms and weights must be arrays of equal length");
  std::vector<Atom> parsed;
  std::vector<double> w;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Vector v(number_array(atoms[i], "measure atom"));
    if (v.dim() != dim) throw ParseError("measure atom dimension differs from dim");
    parsed.emplace_back(std::move(v));
    w.push_back(finite_number(weights[i], "measure weight"));
  }
  try {
    return DiscreteMeasure(std::move(parsed), std::move(w));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid measure: ") + e.what());
  }
}

nlohmann::json filter_to_json(const LinearFilter& lf) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["pre_map"] = matrix_to_json(lf.pre_map);
  j["kernel"] = kernel_to_json(lf.kernel);
  return j;
}

LinearFilter filter_from_json(const nlohmann::json& j) {
  check_schema(j, "filter file");
  if (!j.contains("pre_map") || !j.contains("kernel"))
    throw ParseError("filter file needs pre_map and kernel");
  Matrix pre_map = matrix_from_json(j["pre_map"], "pre_map");
  FiberKernel kernel = kernel_from_json(j["kernel"], pre_map.rows());
  const DiscreteMeasure& probe = kernel.kind() == FiberKernel::Kind::constant
                                     ? kernel.constant_measure()
                                     : kernel.entries().front().second;
  const std::size_t output_dim = probe.atom(0).mat().rows();
  try {
    return make_linear_filter(std::move(pre_map), output_dim, std::move(kernel));
  } catch (const DimensionError& e) {
    throw ParseError(std::string("inconsistent filter: ") + e.what());
  }
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["n"] = g.size();
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = i + 1; k < g.size(); ++k)
      if (g.adjacency()(i, k) != 0.0)
        edges.push_back(nlohmann::json::array({i, k, g.adjacency()(i, k)}));
  j["edges"] = std::move(edges);
  return j;
}

namespace {

Graph graph_from_body(const nlohmann::json& j) {
  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
    throw ParseError("graph needs a positive integer n");
  const std::size_t n = j["n"].get<std::size_t>();
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("graph edges must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3) throw ParseError("each edge must be [i, j, w]");
      if (!e[0].is_number_unsigned() || !e[1].is_number_unsigned())
        throw ParseError("edge endpoints must be nonnegative integers");
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                         finite_number(e[2], "edge weight"));
    }
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

}  // namespace

Graph graph_from_json(const nlohmann::json& j) {
  check_schema(j, "graph file");
  return graph_from_body(j);
}

nlohmann::json ensemble_to_json(const GraphEnsemble& ens) {
  nlohmann::json j;
  j["schema"] = kSchema;
  nlohmann::json graphs = nlohmann::json::array();
  nlohmann::json probs = nlohmann::json::array();
  for (std::size_t i = 0; i < ens.size(); ++i) {
    nlohmann::json g = graph_to_json(ens.graph(i));
    g.erase("schema");
    graphs.push_back(std::move(g));
    probs.push_back(ens.prob(i));
  }
  j["graphs"] = std::move(graphs);
  j["probs"] = std::move(probs);
  return j;
}

GraphEnsemble ensemble_from_json(const nlohmann::json& j) {
  check_schema(j, "ensemble file");
  if (!j.contains("graphs") || !j.contains("probs"))
    throw ParseError("ensemble file needs graphs and probs");
  const auto& graphs = j["graphs"];
  if (!graphs.is_array() || graphs.empty())
    throw ParseError("ensemble graphs must be a nonempty array");
  std::vector<Graph> parsed;
  for (const auto& g : graphs) parsed.push_back(graph_from_body(g));
  try {
    return GraphEnsemble(std::move(parsed), number_array(j["probs"], "ensemble prob"));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid ensemble: ") + e.what());
  }
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["entries"] = v.entries();
  return j;
}

Vector vector_from_json(const nlohmann::json& j) {
  check_schema(j, "vector file");
  if (!j.contains("entries")) throw ParseError("vector file needs entries");
  return Vector(number_array(j["entries"], "vector entry"));
}

nlohmann::json report_to_json(const Report& r) {
  nlohmann::json j;
  j["suite"] = r.name;
  j["checks"] = r.checks;
  j["max_violation"] = r.max_violation;
  j["pass"] = r.pass;
  nlohmann::json violations = nlohmann::json::array();
  constexpr std::size_t kMaxListed = 20;
  for (std::size_t i = 0; i < r.violations.size() && i < kMaxListed; ++i) {
    nlohmann::json v;
    v["context"] = r.violations[i].context;
    v["magnitude"] = r.violations[i].magnitude;
    violations.push_back(std::move(v));
  }
  j["violations"] = std::move(violations);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

DiscreteMeasure load_measure(const std::string& path) {
  return measure_from_json(parse_file(path));
}
LinearFilter load_filter(const std::string& path) {
  return filter_from_json(parse_file(path));
}
Graph load_graph(const std::string& path) { return graph_from_json(parse_file(path)); }
GraphEnsemble load_ensemble(const std::string& path) {
  return ensemble_from_json(parse_file(path));
}

}  // namespace dgsp
