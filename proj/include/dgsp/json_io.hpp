#pragma once

// File formats for the batch front-end. All payloads are JSON with an
// explicit schema tag ("dgsp/1"); floats are serialized with 17 significant
// digits and object keys sorted, so dump(load(file)) is byte-identical for
// canonical files and identical inputs always produce identical bytes.

#include <string>

#include <json.hpp>

#include "dgsp/correspondence.hpp"
#include "dgsp/gsp.hpp"
#include "dgsp/report.hpp"

namespace dgsp {

inline constexpr const char* kSchema = "dgsp/1";

/// Deterministic serialization: sorted keys, floats as %.17g, no whitespace.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json parse_file(const std::string& path);
void write_file(const std::string& path, const nlohmann::json& j);

nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json filter_to_json(const LinearFilter& lf);
LinearFilter filter_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const GraphEnsemble& ens);
GraphEnsemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& r);

DiscreteMeasure load_measure(const std::string& path);
LinearFilter load_filter(const std::string& path);
Graph load_graph(const std::string& path);
GraphEnsemble load_ensemble(const std::string& path);

}  // namespace dgsp
