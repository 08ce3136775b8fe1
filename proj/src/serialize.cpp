#include "nystrompca/serialize.hpp"

#include <fstream>

#include <json.hpp>

#include "nystrompca/errors.hpp"

namespace nystrompca {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Matrix matrix_from_json(const json& j) {
    const auto rows = static_cast<int>(j.size());
    const int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
    }
    return m;
}

Vector vector_from_json(const json& j) {
    Vector v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

} // namespace

std::string serialize_nystrom_model(const NystromPcaModel& model) {
    json blob;
    blob["format_version"] = kFormatVersion;
    blob["kernel"] = {{"family", kernel_family_name(model.spec.family)},
                      {"sigma", model.spec.sigma},
                      {"offset", model.spec.offset},
                      {"degree", model.spec.degree},
                      {"normalized", model.spec.normalized}};
    blob["n"] = model.n;
    blob["variance_mode"] = model.variance_mode == VarianceMode::Exact ? "exact" : "approximate";
    blob["subset_indices"] = model.subset_indices;
    blob["subset_rows"] = matrix_to_json(model.subset_rows);
    blob["lambdas"] = vector_to_json(model.lambdas);
    blob["U"] = matrix_to_json(model.U);
    blob["phi0_coeffs"] = vector_to_json(model.phi0_coeffs);
    blob["newpoint_a"] = vector_to_json(model.newpoint_a);
    blob["newpoint_mu"] = model.newpoint_mu;
    blob["total_variance"] = model.total_variance;
    blob["retained"] = model.retained;
    blob["cutoff_threshold"] = model.cutoff_threshold;
    blob["degenerate"] = model.degenerate;
    return blob.dump();
}

NystromPcaModel deserialize_nystrom_model(const std::string& json_text) {
    json blob;
    try {
        blob = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model blob is not valid JSON: ") + e.what());
    }
    if (!blob.contains("format_version") || blob["format_version"].get<int>() != kFormatVersion) {
        throw ConfigError("unsupported model format version");
    }
    NystromPcaModel model;
    const json& kernel = blob.at("kernel");
    model.spec.family = kernel_family_from_name(kernel.at("family").get<std::string>());
    model.spec.sigma = kernel.at("sigma").get<double>();
    model.spec.offset = kernel.at("offset").get<double>();
    model.spec.degree = kernel.at("degree").get<int>();
    model.spec.normalized = kernel.at("normalized").get<bool>();
    model.n = blob.at("n").get<int>();
    model.variance_mode = blob.at("variance_mode").get<std::string>() == "exact"
                              ? VarianceMode::Exact
                              : VarianceMode::Approximate;
    model.subset_indices = blob.at("subset_indices").get<std::vector<int>>();
    model.subset_rows = matrix_from_json(blob.at("subset_rows"));
    model.lambdas = vector_from_json(blob.at("lambdas"));
    model.U = matrix_from_json(blob.at("U"));
    model.phi0_coeffs = vector_from_json(blob.at("phi0_coeffs"));
    model.newpoint_a = vector_from_json(blob.at("newpoint_a"));
    model.newpoint_mu = blob.at("newpoint_mu").get<double>();
    model.total_variance = blob.at("total_variance").get<double>();
    model.retained = blob.at("retained").get<int>();
    model.cutoff_threshold = blob.at("cutoff_threshold").get<double>();
    model.degenerate = blob.at("degenerate").get<bool>();
    return model;
}

void save_nystrom_model(const NystromPcaModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << serialize_nystrom_model(model);
}

NystromPcaModel load_nystrom_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_nystrom_model(text);
}

} // namespace nystrompca
