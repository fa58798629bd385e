#include "jacobilab/serialize.hpp"

#include <fstream>

namespace jacobilab {

namespace {

ordered_json vector_to_json(const Eigen::VectorXd& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

ordered_json witness_to_json(const WitnessPair& w) {
    return ordered_json{{"x1", vector_to_json(w.x1)},
                        {"x2", vector_to_json(w.x2)},
                        {"deviation", w.deviation}};
}

ordered_json violations_to_json(const std::vector<ViolationRecord>& records) {
    ordered_json out = ordered_json::array();
    for (const auto& rec : records)
        out.push_back(ordered_json{{"check", rec.check},
                                   {"x", vector_to_json(rec.x)},
                                   {"y", vector_to_json(rec.y)},
                                   {"magnitude", rec.magnitude}});
    return out;
}

}  // namespace

ordered_json tensor_to_json(const CurvatureTensor& R) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : canonical_generators(R))
        entries.push_back(
            ordered_json::array({e.i + 1, e.j + 1, e.k + 1, e.l + 1, e.value}));
    return ordered_json{
        {"schema", kSchemaVersion}, {"dim", R.dim()}, {"entries", entries}};
}

CurvatureTensor tensor_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
        throw SchemaError("tensor file: expected object with dim and entries");
    const int dim = doc.at("dim").get<int>();
    std::vector<GeneratorEntry> entries;
    for (const auto& item : doc.at("entries")) {
        if (!item.is_array() || item.size() != 5)
            throw SchemaError("tensor file: each entry must be [i,j,k,l,value]");
        entries.push_back({item[0].get<int>() - 1, item[1].get<int>() - 1,
                           item[2].get<int>() - 1, item[3].get<int>() - 1,
                           item[4].get<double>()});
    }
    return build_act(dim, entries);
}

void write_tensor_file(const std::string& path, const CurvatureTensor& R) {
    write_json_file(path, tensor_to_json(R));
}

CurvatureTensor read_tensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open tensor file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("tensor file parse error: ") + e.what());
    }
    return tensor_from_json(doc);
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("matrix"))
        throw SchemaError("matrix file: expected object with dim and matrix");
    const int dim = doc.at("dim").get<int>();
    const auto& rows = doc.at("matrix");
    if (static_cast<int>(rows.size()) != dim)
        throw SchemaError("matrix file: row count does not match dim");
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(rows[r].size()) != dim)
            throw SchemaError("matrix file: column count does not match dim");
        for (int c = 0; c < dim; ++c) m(r, c) = rows[r][c].get<double>();
    }
    return m;
}

SkewEndomorphism read_skew_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open matrix file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("matrix file parse error: ") + e.what());
    }
    return SkewEndomorphism(matrix_from_json(doc));
}

ordered_json analysis_report_to_json(const AnalysisReport& report) {
    ordered_json kroot;
    if (report.kroot.uniform) {
        kroot["verdict"] = report.kroot.k;
        kroot["multiplicities"] = report.kroot.multiplicities;
        kroot["note"] = "consistent with k-root at " +
                        std::to_string(report.samples) + " samples";
    } else {
        kroot["verdict"] = "varying";
        if (report.kroot.witness)
            kroot["witness"] = witness_to_json(*report.kroot.witness);
    }

    ordered_json stein{{"constants", report.stein.constants},
                       {"max_deviation", report.stein.max_deviation}};
    if (report.stein.formula_constants) {
        stein["formula_constants"] = *report.stein.formula_constants;
        stein["formula_gap"] = report.stein.formula_gap;
    }

    return ordered_json{
        {"schema", kSchemaVersion},
        {"tool_version", kToolVersion},
        {"report", "analysis"},
        {"config",
         {{"samples", report.samples},
          {"seed", report.seed},
          {"rel_tol", report.rel_tol},
          {"k_max", report.k_max}}},
        {"dim", report.dim},
        {"symmetry",
         {{"pair_symmetry", report.symmetry.pair_symmetry},
          {"first_antisymmetry", report.symmetry.first_antisymmetry},
          {"second_antisymmetry", report.symmetry.second_antisymmetry},
          {"bianchi", report.symmetry.bianchi}}},
        {"k_root", kroot},
        {"osserman",
         {{"verdict", report.osserman.osserman},
          {"max_deviation", report.osserman.max_deviation},
          {"witness", witness_to_json(report.osserman.witness)}}},
        {"stein", stein}};
}

ordered_json probe_report_to_json(const ProbeReport& report) {
    auto section = [](const std::vector<ViolationRecord>& records,
                      bool skipped, const char* skip_reason) {
        ordered_json out;
        if (skipped) {
            out["status"] = std::string("skipped (") + skip_reason + ")";
        } else {
            out["status"] = records.empty() ? "green" : "red";
            out["violation_count"] = records.size();
            out["violations"] = violations_to_json(records);
        }
        return out;
    };

    const bool skip_two_root = report.two_root_sections_skipped;
    const char* reason = report.kroot.uniform
                             ? (report.kroot.k == 1 ? "k=1" : "k!=2")
                             : "varying k";

    ordered_json doc{
        {"schema", kSchemaVersion},
        {"tool_version", kToolVersion},
        {"report", "probe"},
        {"config",
         {{"samples", report.samples},
          {"seed", report.seed},
          {"rel_tol", report.rel_tol}}},
        {"dim", report.dim},
        {"duality", section(report.duality, false, "")},
        {"eigenvalue_bounds", section(report.bounds, skip_two_root, reason)},
        {"emex", section(report.emex, skip_two_root, reason)},
        {"rotation_lemma",
         section(report.rotation, report.rotation_skipped, "no dual pairs")}};

    if (report.extrema) {
        const auto& e = *report.extrema;
        doc["extrema"] = ordered_json{{"mu_min", e.mu_min},
                                      {"mu_max", e.mu_max},
                                      {"nu_min", e.nu_min},
                                      {"nu_max", e.nu_max},
                                      {"witness_U", vector_to_json(e.witness_U)},
                                      {"witness_W", vector_to_json(e.witness_W)},
                                      {"intersection_dim", e.intersection_dim}};
    } else {
        doc["extrema"] = ordered_json{{"status", std::string("skipped (") +
                                                     reason + ")"}};
    }
    return doc;
}

ordered_json skew_structure_to_json(const SkewStructure& structure,
                                    double residual) {
    return ordered_json{{"schema", kSchemaVersion},
                        {"sign", structure.sign},
                        {"mu", structure.mu},
                        {"nus", structure.nus},
                        {"P", matrix_to_json(structure.P.matrix())},
                        {"frame", matrix_to_json(structure.frame)},
                        {"residual", residual}};
}

ordered_json pipeline_report_to_json(const PipelineReport& report) {
    ordered_json doc{{"schema", kSchemaVersion},
                     {"tool_version", kToolVersion},
                     {"report", "factorization"},
                     {"config",
                      {{"samples", report.samples},
                       {"seed", report.seed},
                       {"rel_tol", report.rel_tol}}},
                     {"certified", report.certified},
                     {"stage", to_string(report.stage)},
                     {"message", report.message}};
    if (report.mu_estimate) {
        doc["mu_estimate"] = ordered_json{
            {"value", report.mu_estimate->mu},
            {"max_deviation", report.mu_estimate->max_deviation},
            {"p", report.mu_estimate->p},
            {"q", report.mu_estimate->q}};
    }
    if (report.structure)
        doc["structure"] =
            skew_structure_to_json(*report.structure, report.residual);
    return doc;
}

void write_json_file(const std::string& path, const ordered_json& doc) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot open output file: " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace jacobilab
