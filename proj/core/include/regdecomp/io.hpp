#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "regdecomp/tensor.hpp"

namespace regdecomp {

enum class TensorFormat { kAuto, kCsv, kJson, kEdgeList };

// Reads a tensor from disk. kAuto picks by extension (.json, .csv) and
// otherwise sniffs the content: a leading '{' means tensor JSON, a comma in
// the first data line means dense CSV, anything else is read as an edge
// list. Every failure throws io_error naming the offending line.
StepTensor ingest(const std::string& path,
                  TensorFormat format = TensorFormat::kAuto);

// Dense matrix CSV: rows of comma-separated decimals, no header. Must be
// square; becomes an order-2 Probability tensor.
StepTensor parse_csv_matrix(const std::string& text);

// Whitespace-separated "u v" pairs, 0-indexed, one edge per line. Becomes
// the symmetric {0,1} adjacency tensor on max(index)+1 vertices, order 2,
// Probability measure.
StepTensor parse_edge_list(const std::string& text);

// {"order": l, "resolution": n, "measure": "probability"|"counting",
//  "values": [row-major array]}. Serialized doubles round-trip bit-exactly.
nlohmann::json tensor_to_json(const StepTensor& t);
StepTensor tensor_from_json(const nlohmann::json& j);

void write_tensor_json(const StepTensor& t, const std::string& path);

}  // namespace regdecomp
