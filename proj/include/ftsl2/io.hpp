#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ftsl2/applications.hpp"

namespace ftsl2 {

using Json = nlohmann::json;

inline constexpr const char* kRequestSchema = "ftsl2-request/1";
inline constexpr const char* kReportSchema = "ftsl2-report/1";
inline constexpr const char* kRestrictionSchema = "ftsl2-restriction/1";
inline constexpr const char* kOracleSchema = "ftsl2-oracle-check/1";

struct AnalysisRequest {
    ZPoly field;  // constant coefficient first
    std::optional<RatMatrix> basis;
    std::string fixture_field;  // take field and places from a registered fixture instead
    std::vector<Int> places;
    unsigned ell = 3;
    std::vector<std::string> fixtures;
    long dmin = -8, dmax = 8;
};

// Throws SchemaViolation on malformed input.
AnalysisRequest parse_request(const Json& j);
Json request_json(const AnalysisRequest& r);

// Helpers for command-line values: "0,1", "2,3", "-8:8", "[[1,0],[\"1/2\",\"1/2\"]]".
std::vector<Int> parse_int_list(const std::string& s);
std::pair<long, long> parse_degree_window(const std::string& s);
RatMatrix parse_basis(const std::string& s, size_t n);
RatVec parse_rat_list(const std::string& s);

// Registers the request's fixtures and builds the setup.
RelativeSetup setup_for(const AnalysisRequest& r);

Json analysis_report(const AnalysisRequest& req, const Analysis& a);
Json restriction_report(const RestrictionReport& r, const std::optional<TransferWitness>& w);

struct OracleCheck {
    std::vector<GridPoint> grid;
    struct FormsRow {
        long disc = 0;
        IntVec engine, forms;
        bool ok() const { return engine == forms; }
    };
    std::vector<FormsRow> forms;
    bool passed() const;
};
// Cohomology grid plus class groups of imaginary quadratic fields with
// forms_dmin <= disc < 0 against the reduced-forms oracle.
OracleCheck run_oracle_check(const GridSpec& spec, long forms_dmin, bool parallel);
Json oracle_report(const GridSpec& spec, const OracleCheck& c);

// Class group of Q(sqrt d) for a fundamental d < 0 from the ideal engine.
FiniteAbelianGroup engine_class_group(long d);
// Q(sqrt d) with the standard generator for fundamental d.
FieldPtr quadratic_field(long d);

// Sorted keys, two-space indent, trailing newline.
std::string render(const Json& j);

}  // namespace ftsl2
