#include "xxz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace xxz {

CheckParams CheckParams::from(const ModelParams& p) {
    CheckParams cp;
    cp.mu = p.mu;
    cp.m = p.m;
    cp.zeta = p.zeta;
    cp.sites = p.sites;
    cp.gradation = p.gradation;
    return cp;
}

bool VerificationReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.pass; });
}

double VerificationReport::max_residual() const {
    double m = 0.0;
    for (const auto& e : entries)
        if (std::isfinite(e.residual)) m = std::max(m, e.residual);
    return m;
}

std::size_t VerificationReport::fail_count() const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (!e.pass) ++n;
    return n;
}

void VerificationReport::append(const VerificationReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

namespace {

std::string cp_key(const CheckParams& p) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.9f|%.9f|%.9f|%04d|%d|%d", p.mu.value_or(-99.0),
                  p.m.value_or(-99.0), p.zeta.value_or(-99.0), p.sites.value_or(-1),
                  p.bcase ? int(*p.bcase) : -1, p.gradation ? int(*p.gradation) : -1);
    return buf;
}

std::string fmt_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

void emit_params(std::ostringstream& os, const CheckParams& p) {
    os << '{';
    bool first = true;
    auto field = [&](const char* k, const std::string& v, bool quoted) {
        if (!first) os << ',';
        first = false;
        os << '"' << k << "\":";
        if (quoted)
            os << '"' << v << '"';
        else
            os << v;
    };
    if (p.mu) field("mu", fmt_double(*p.mu), false);
    if (p.m) field("m", fmt_double(*p.m), false);
    if (p.zeta) field("zeta", fmt_double(*p.zeta), false);
    if (p.sites) field("N", std::to_string(*p.sites), false);
    if (p.bcase) field("case", to_string(*p.bcase), true);
    if (p.gradation) field("gradation", to_string(*p.gradation), true);
    os << '}';
}

} // namespace

void VerificationReport::sort_entries() {
    std::stable_sort(entries.begin(), entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
        if (a.check_name != b.check_name) return a.check_name < b.check_name;
        return cp_key(a.params) < cp_key(b.params);
    });
}

std::string VerificationReport::to_json() const {
    std::ostringstream os;
    os << "{\n";
    os << "  \"suite_version\": \"" << json_escape(suite_version) << "\",\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"overall_pass\": " << (all_pass() ? "true" : "false") << ",\n";
    os << "  \"entries\": [\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        os << "    {\"check_name\": \"" << json_escape(e.check_name) << "\", \"params\": ";
        emit_params(os, e.params);
        os << ", \"lambda_samples\": [";
        for (std::size_t k = 0; k < e.lambda_samples.size(); ++k) {
            if (k) os << ',';
            os << '[' << fmt_double(e.lambda_samples[k].real()) << ','
               << fmt_double(e.lambda_samples[k].imag()) << ']';
        }
        os << "], \"residual\": " << fmt_double(e.residual)
           << ", \"tolerance\": " << fmt_double(e.tolerance)
           << ", \"pass\": " << (e.pass ? "true" : "false");
        if (!e.error.empty()) os << ", \"error\": \"" << json_escape(e.error) << "\"";
        os << '}' << (i + 1 < entries.size() ? "," : "") << '\n';
    }
    os << "  ]\n}\n";
    return os.str();
}

std::string VerificationReport::to_markdown() const {
    std::ostringstream os;
    os << "# Verification report\n\n";
    os << "suite version " << suite_version << ", seed " << seed << ", "
       << (all_pass() ? "**all checks pass**" : "**FAILURES PRESENT**") << "\n\n";
    os << "| check | mu | m | zeta | N | case | gradation | samples | residual | tolerance | pass |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|\n";
    auto opt = [&](const std::optional<double>& v) { return v ? fmt_double(*v) : std::string("-"); };
    for (const auto& e : entries) {
        os << "| " << e.check_name << " | " << opt(e.params.mu) << " | " << opt(e.params.m)
           << " | " << opt(e.params.zeta) << " | "
           << (e.params.sites ? std::to_string(*e.params.sites) : "-") << " | "
           << (e.params.bcase ? to_string(*e.params.bcase) : "-") << " | "
           << (e.params.gradation ? to_string(*e.params.gradation) : "-") << " | "
           << e.lambda_samples.size() << " | " << fmt_double(e.residual) << " | "
           << fmt_double(e.tolerance) << " | " << (e.pass ? "yes" : "**no**") << " |\n";
    }
    if (!all_pass()) {
        os << "\nFailed entries:\n";
        for (const auto& e : entries)
            if (!e.pass) {
                os << "- " << e.check_name << ": residual " << fmt_double(e.residual);
                if (!e.error.empty()) os << " (" << e.error << ")";
                os << "\n";
            }
    }
    return os.str();
}

} // namespace xxz
