#ifndef XXZ_EXPORT_HPP
#define XXZ_EXPORT_HPP

#include <optional>
#include <string>

#include "xxz/lattice.hpp"
#include "xxz/tensor.hpp"

namespace xxz {

/// Companion record written next to every exported matrix.
struct ExportMetadata {
    std::string object;
    double mu = 0, m = 0, zeta = 0;
    int sites = 0;
    std::optional<Gradation> gradation;
    std::optional<BoundaryCase> bcase;
    std::optional<Complex> lambda; // set only for evaluated exports
};

/// Matrix file format: a JSON document with
///   dim   integer matrix dimension,
///   data  row-major list of [re, im] pairs, each printed with 16
///         significant digits,
///   metadata  the companion record.
/// Laurent-valued (symbolic) objects replace "data" by "terms", a list of
/// {degree, data} records in ascending degree order.
std::string export_matrix_json(const CMat& m, const ExportMetadata& meta);
std::string export_laurent_json(const LaurentMatrix& m, const ExportMetadata& meta);

void write_text_file(const std::string& path, const std::string& content);

} // namespace xxz

#endif
