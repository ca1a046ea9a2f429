#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "struvint/complex.hpp"
#include "struvint/identities.hpp"

namespace struvint {

using Json = nlohmann::ordered_json;

// "1.5", "-2e-3", "0.25i", "1.5+0.25i", "1-2i" (no spaces).
Complex parse_complex(std::string_view text);

// Human-facing rendering with 16 significant digits: fixed notation for
// magnitudes in [1, 1e16), scientific ("3.333333333333333e-1") otherwise,
// always with a fractional part ("4.0"). Complex values print as "re+imi".
std::string format_value(double x);
std::string format_value(const Complex& z);

// Optional per-file overrides of the run controls.
struct CaseControls {
    std::optional<double> tol;
    std::optional<double> quad_rel_tol;
    std::optional<double> quad_abs_tol;
    std::optional<double> series_rel_tol;
    std::optional<unsigned> max_terms;
    std::optional<unsigned> max_panels;
};

struct CaseFile {
    std::vector<IntegralCase> cases;
    std::vector<std::string> labels;  // parallel to cases; may be empty strings
    CaseControls controls;
};

// Thrown for structurally malformed case files; the message names the field,
// e.g. "cases[2].mu: expected a number or complex literal".
class CaseFileError : public DomainError {
public:
    using DomainError::DomainError;
};

// Parses the document. Records are checked for shape only; theorem
// conditions are left to verification so that violating cases can be
// reported rather than rejected.
CaseFile parse_case_file(const Json& doc);
CaseFile load_case_file(const std::string& path);

Json case_to_json(const IntegralCase& c);
Json case_file_to_json(const CaseFile& file);

struct RunReport {
    std::string tool_version;
    std::string timestamp;
    std::vector<VerificationReport> cases;
    std::vector<std::string> labels;
    double wall_seconds = 0.0;

    std::size_t passed() const;
    std::size_t failed() const { return cases.size() - passed(); }
};

struct RunSettings {
    QuadControl quad;
    SeriesControl series;
    double tol = 1e-6;
    unsigned jobs = 1;
};

// File-level controls override `defaults`.
RunSettings apply_controls(RunSettings defaults, const CaseControls& controls);

// Verifies every case, `settings.jobs` at a time; results keep input order.
RunReport run_cases(const CaseFile& file, const RunSettings& settings);

Json report_to_json(const RunReport& report);

// Serializes with every floating-point number printed to 17 significant
// digits; non-finite numbers become null.
void write_json(std::ostream& os, const Json& doc, int indent = 2);

// One row per case with re/im columns.
void write_csv(std::ostream& os, const RunReport& report);

// Cartesian-product case generation.
struct GridRequest {
    Variant variant = Variant::theorem1;
    std::size_t n = 1;
    std::string a = "1";
    std::string mu;
    std::string lambda;
    std::string b = "1";
    std::string c = "1";
    std::string p;  // comma-separated, n entries (one entry is broadcast)
    std::string y;
};

struct GridResult {
    CaseFile file;
    std::size_t skipped = 0;  // combinations violating the theorem conditions
};

// Scalar axes accept "start:end:step" (inclusive, real) or a single literal.
std::vector<Complex> parse_axis(std::string_view text, std::string_view name);

GridResult generate_grid(const GridRequest& request);

}  // namespace struvint
