#pragma once

// JSON interfaces: tensor files, skew-structure files, and report documents.
// All documents carry "schema": 1 and are emitted with a fixed key order so
// identical inputs produce byte-identical files.

#include <string>

#include <json.hpp>

#include "jacobilab/factorizer.hpp"
#include "jacobilab/probes.hpp"
#include "jacobilab/spectral.hpp"

namespace jacobilab {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

// Tensor file: {"dim": n, "entries": [[i, j, k, l, value], ...]} with 1-based
// indices. The writer emits the canonical generator set (i<j, k<l,
// (i,j) <= (k,l)); the reader densifies by symmetry and rejects conflicts.
ordered_json tensor_to_json(const CurvatureTensor& R);
CurvatureTensor tensor_from_json(const nlohmann::json& doc);

void write_tensor_file(const std::string& path, const CurvatureTensor& R);
CurvatureTensor read_tensor_file(const std::string& path);

// Skew endomorphism file: {"dim": n, "matrix": [[...], ...]} row-major.
Eigen::MatrixXd matrix_from_json(const nlohmann::json& doc);
SkewEndomorphism read_skew_file(const std::string& path);

ordered_json analysis_report_to_json(const AnalysisReport& report);
ordered_json probe_report_to_json(const ProbeReport& report);
ordered_json pipeline_report_to_json(const PipelineReport& report);
ordered_json skew_structure_to_json(const SkewStructure& structure,
                                    double residual);

void write_json_file(const std::string& path, const ordered_json& doc);

}  // namespace jacobilab
