#include "xxz/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace xxz {

namespace {

// 16 significant digits, bit-faithful for round-tripping doubles
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15e", v);
    return buf;
}

void emit_data(std::ostringstream& os, const CMat& m) {
    os << "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i || j) os << ", ";
            os << '[' << num(m(i, j).real()) << ", " << num(m(i, j).imag()) << ']';
        }
    os << "]";
}

void emit_metadata(std::ostringstream& os, const ExportMetadata& meta) {
    os << "{\"object\": \"" << meta.object << "\", \"params\": {\"mu\": " << num(meta.mu)
       << ", \"m\": " << num(meta.m) << ", \"zeta\": " << num(meta.zeta)
       << ", \"N\": " << meta.sites << "}";
    if (meta.gradation) os << ", \"gradation\": \"" << to_string(*meta.gradation) << "\"";
    if (meta.bcase) os << ", \"case\": \"" << to_string(*meta.bcase) << "\"";
    if (meta.lambda)
        os << ", \"lambda\": [" << num(meta.lambda->real()) << ", " << num(meta.lambda->imag())
           << "]";
    os << "}";
}

} // namespace

std::string export_matrix_json(const CMat& m, const ExportMetadata& meta) {
    if (m.rows() != m.cols()) throw DimensionError("export_matrix_json: matrix must be square");
    std::ostringstream os;
    os << "{\n  \"dim\": " << m.rows() << ",\n  \"data\": ";
    emit_data(os, m);
    os << ",\n  \"metadata\": ";
    emit_metadata(os, meta);
    os << "\n}\n";
    return os.str();
}

std::string export_laurent_json(const LaurentMatrix& m, const ExportMetadata& meta) {
    if (m.rows() != m.cols()) throw DimensionError("export_laurent_json: matrix must be square");
    std::ostringstream os;
    os << "{\n  \"dim\": " << m.rows() << ",\n  \"terms\": [\n";
    bool first = true;
    for (const auto& [d, coeff] : m.terms()) {
        if (!first) os << ",\n";
        first = false;
        os << "    {\"degree\": " << d << ", \"data\": ";
        emit_data(os, coeff);
        os << "}";
    }
    os << "\n  ],\n  \"metadata\": ";
    emit_metadata(os, meta);
    os << "\n}\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error("short write to '" + path + "'");
}

} // namespace xxz
