#pragma once

#include <json.hpp>

#include <string>

#include "vpd/cubical.hpp"
#include "vpd/diagram.hpp"
#include "vpd/metric_pair.hpp"
#include "vpd/rff.hpp"

namespace vpd::io {

using nlohmann::json;

/// Throws ParseError on a missing file or malformed JSON.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"dist": [[...]], "A": [indices]}
MetricPair metric_pair_from_json(const json& j);
json matrix_to_json(const DistanceMatrix& m);

/// {"counts": {"<vertex>": m, ...}} over a graph with `n_offdiag` vertices;
/// throws GraphMismatch for vertices out of range.
Diagram diagram_from_json(const json& j, std::size_t n_offdiag);
json diagram_to_json(const Diagram& d);

/// {"coeffs": [ints]}
VirtualDiagram virtual_from_json(const json& j);
json virtual_to_json(const VirtualDiagram& v);

json matching_to_json(const Matching& m);

/// Essential deaths are written as the string "inf".
json raw_diagram_to_json(const RawDiagram& rd);
RawDiagram raw_diagram_from_json(const json& j);

json frequency_sample_to_json(const FrequencySample& fs);
FrequencySample frequency_sample_from_json(const json& j);

}  // namespace vpd::io
