#ifndef XXZ_REPORT_HPP
#define XXZ_REPORT_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xxz/params.hpp"

namespace xxz {

/// Parameter provenance attached to a report entry; fields that do not
/// apply to a given check are left unset and omitted from the output.
struct CheckParams {
    std::optional<double> mu;
    std::optional<double> m;
    std::optional<double> zeta;
    std::optional<int> sites;
    std::optional<BoundaryCase> bcase;
    std::optional<Gradation> gradation;

    static CheckParams from(const ModelParams& p);
};

struct ReportEntry {
    std::string check_name;
    CheckParams params;
    std::vector<Complex> lambda_samples;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Set only when a construction error aborted the check; the entry then
    /// counts as failed and carries the message.
    std::string error;
};

/// Ordered collection of named identity checks.  Deterministic for a fixed
/// (seed, config): entries are sorted by check name and parameters and no
/// timestamps are recorded.
struct VerificationReport {
    std::vector<ReportEntry> entries;
    std::uint64_t seed = 0;
    std::string suite_version;

    bool all_pass() const;
    double max_residual() const;
    std::size_t fail_count() const;

    void add(ReportEntry e) { entries.push_back(std::move(e)); }
    void append(const VerificationReport& other);
    void sort_entries();

    std::string to_json() const;
    std::string to_markdown() const;
};

} // namespace xxz

#endif
