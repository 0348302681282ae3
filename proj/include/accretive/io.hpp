#pragma once

#include <string>

#include <json.hpp>

#include "accretive/finsler.hpp"
#include "accretive/matcore.hpp"

namespace accretive {

// Matrix wire format: {"n": k, "data": [[re, im], ...]} with n^2 row-major
// entry pairs; optional "label" and "seed" fields ride along untouched.
// Doubles are emitted with shortest round-trip precision, so
// serialize-then-parse reproduces the matrix bit for bit.

nlohmann::json matrix_to_json(const CMatrix& M, const std::string& label = "");
CMatrix matrix_from_json(const nlohmann::json& j);

CMatrix parse_matrix(const std::string& path);              // IOError/ParseError
void serialize_matrix(const CMatrix& M, const std::string& path,
                      const std::string& label = "");

// Metric wire format:
//   {"phi1": {"p": 2}, "phi2": {"p": 2}, "psi": "euclidean_sum"}
// "p" accepts a number >= 1 or the string "inf"; "psi" accepts
// "euclidean_sum" or {"q": q} for the power mean.  Missing keys default.
nlohmann::json metric_to_json(const MetricConfig& cfg);
MetricConfig metric_from_json(const nlohmann::json& j);

// Accepts an inline JSON object (first non-space char '{'), the literal
// "default", or a path to a JSON file.
MetricConfig parse_metric(const std::string& arg);

}  // namespace accretive
