#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <set>

#include "ftsl2/forms.hpp"
#include "ftsl2/io.hpp"

using namespace ftsl2;

namespace {

const std::string kFix = FTSL2_FIXTURE_DIR;

Json req_json(const std::string& text) { return Json::parse(text); }

std::string analyze(const Json& rq) {
    AnalysisRequest req = parse_request(rq);
    return render(analysis_report(req, run_analysis(setup_for(req))));
}

// Numbers must sit inside {"value", "provenance"} unless they echo input.
void untagged_numbers(const Json& j, const std::string& path, std::vector<std::string>& out) {
    static const std::set<std::string> echo{"ell", "dmin", "dmax", "places", "request"};
    if (j.is_object()) {
        if (j.contains("provenance")) return;
        for (const auto& [k, v] : j.items())
            if (!echo.count(k)) untagged_numbers(v, path + "/" + k, out);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) untagged_numbers(j[i], path + "/" + std::to_string(i), out);
    } else if (j.is_number()) {
        out.push_back(path);
    }
}

std::set<std::string> provenances(const Json& j) {
    std::set<std::string> out;
    if (j.is_object()) {
        if (j.contains("provenance") && j["provenance"].is_string()) out.insert(j["provenance"].get<std::string>());
        for (const auto& [k, v] : j.items()) {
            auto s = provenances(v);
            out.insert(s.begin(), s.end());
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            auto s = provenances(v);
            out.insert(s.begin(), s.end());
        }
    }
    return out;
}

}  // namespace

TEST_CASE("request parsing") {
    auto r = parse_request(req_json(R"({"schema": "ftsl2-request/1", "field": {"poly": [5, 0, 1]},
                                         "places": [3, 2], "ell": 3, "degrees": [-4, 6]})"));
    CHECK(r.field == ZPoly{5, 0, 1});
    CHECK(r.places == std::vector<Int>{3, 2});
    CHECK(r.ell == 3);
    CHECK(r.dmin == -4);
    CHECK(r.dmax == 6);
    // request_json is a fixed point of parsing
    CHECK(request_json(parse_request(request_json(r))) == request_json(r));

    auto b = parse_request(req_json(R"({"field": {"poly": ["-1", "-1", "1"], "basis": [[1, 0], ["1/2", "1/2"]]}, "ell": 5})"));
    REQUIRE(b.basis);
    CHECK((*b.basis)(1, 0) == Rat(1, 2));
}

TEST_CASE("request schema errors") {
    const char* bad[] = {
        R"([1, 2])",
        R"({"field": {"poly": [0, 1]}})",
        R"({"field": {"poly": [0, 1]}, "ell": 9})",
        R"({"field": {"poly": [0, 1]}, "ell": 2})",
        R"({"field": {"poly": [0, 1]}, "ell": 1009})",
        R"({"field": {"poly": [0, 2]}, "ell": 3})",
        R"({"field": {"poly": ["x", 1]}, "ell": 3})",
        R"({"field": {"poly": [0, 1]}, "fixture_field": "q23", "ell": 3})",
        R"({"ell": 3})",
        R"({"field": {"poly": [0, 1]}, "ell": 3, "places": [4]})",
        R"({"field": {"poly": [0, 1]}, "ell": 3, "degrees": [5, 1]})",
        R"({"field": {"poly": [0, 1]}, "ell": 3, "degrees": [0, 5000]})",
        R"({"field": {"poly": [0, 1]}, "ell": 3, "degrees": [0]})",
        R"({"schema": "ftsl2-request/0", "field": {"poly": [0, 1]}, "ell": 3})",
        R"({"field": {"poly": [1, 0, 1], "basis": [[1, 0]]}, "ell": 3})",
    };
    for (const char* s : bad) {
        CAPTURE(s);
        CHECK_THROWS_AS(parse_request(req_json(s)), SchemaViolation);
    }
    CHECK(SchemaViolation("x").code() == ExitCode::Schema);
    CHECK(static_cast<int>(ExitCode::Schema) == 5);
    CHECK(static_cast<int>(RegularityViolated("x").code()) == 2);
}

TEST_CASE("command-line value parsers") {
    CHECK(parse_int_list("2, 3,5") == std::vector<Int>{2, 3, 5});
    CHECK(parse_int_list("").empty());
    CHECK_THROWS_AS(parse_int_list("2,x"), SchemaViolation);
    CHECK(parse_degree_window("-8:8") == std::pair<long, long>{-8, 8});
    CHECK_THROWS_AS(parse_degree_window("8"), SchemaViolation);
    CHECK_THROWS_AS(parse_degree_window("a:b"), SchemaViolation);
    CHECK(parse_rat_list("-16/17,33/17") == RatVec{Rat(-16, 17), Rat(33, 17)});
    CHECK_THROWS_AS(parse_basis("[[1,0]]", 2), SchemaViolation);
    CHECK_THROWS_AS(parse_basis("not json", 2), SchemaViolation);
}

TEST_CASE("report round-trip and tagging") {
    const Json rq = req_json(R"({"field": {"poly": [26, 0, 1]}, "ell": 3})");
    const std::string text = analyze(rq);
    const Json j = Json::parse(text);
    CHECK(render(j) == text);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["request"] == request_json(parse_request(rq)));
    std::vector<std::string> untagged;
    untagged_numbers(j, "", untagged);
    CHECK(untagged.empty());
    for (const auto& u : untagged) MESSAGE(u);
    CHECK(provenances(j) == std::set<std::string>{"computed"});
    CHECK(j["setup"]["vcd"]["value"] == 2);
    for (const auto& c : j["K_ell"]["classes"])
        if (c.contains("matrix")) CHECK(c["matrix_verified"] == true);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
    const Json rq = req_json(R"({"field": {"poly": [14, 0, 1]}, "places": [2], "ell": 3})");
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string one = analyze(rq);
    omp_set_num_threads(4);
    const std::string four = analyze(rq);
    const std::string again = analyze(rq);
    omp_set_num_threads(saved);
    CHECK(one == four);
    CHECK(four == again);
}

TEST_CASE("fixture provenance in reports") {
    Json rq{{"fixture_field", "q23"}, {"ell", 23}, {"fixtures", {kFix + "/q23.json"}}};
    const Json j = Json::parse(analyze(rq));
    CHECK(provenances(j).count("ingested"));
    CHECK_FALSE(provenances(j).count("asserted"));
    CHECK(j["quillen"]["rank_over_c2"]["value"] == 12288);
    // fixture paths are machine-specific and stay out of the echoed request
    CHECK_FALSE(j["request"].contains("fixtures"));

    Json rz{{"fixture_field", "synthetic-z5"}, {"ell", 3}, {"fixtures", {kFix + "/synthetic_z5.json"}}};
    const Json z = Json::parse(analyze(rz));
    CHECK(provenances(z).count("asserted"));
    CHECK(z["detection"]["verdict"] == "NotInjective");
}

TEST_CASE("restriction report") {
    register_fixture_files({kFix + "/q23.json", kFix + "/q23_hilbert.json"});
    auto a = run_analysis(build_setup_from_fixture(*Backend::instance().by_name("q23"), 23));
    auto h = build_setup_from_fixture(*Backend::instance().by_name("q23-hilbert"), 23);
    auto r = restriction_map(a, h, std::nullopt);
    const std::string text = render(restriction_report(r, transfer_obstruction(r, 23)));
    const Json j = Json::parse(text);
    CHECK(render(j) == text);
    CHECK(j["schema"] == kRestrictionSchema);
    for (const char* k : {"C1_merges", "C1_class_merges", "C2_invariance_gains", "C3_new_target_classes",
                          "transfer_obstruction"})
        CHECK(j.contains(k));
    CHECK_FALSE(j["transfer_obstruction"].is_null());
}

TEST_CASE("oracle check") {
    GridSpec spec;
    spec.rmax = 2;
    spec.dmin = -4;
    spec.dmax = 4;
    auto c = run_oracle_check(spec, -100, true);
    CHECK(c.passed());
    CHECK_FALSE(c.forms.empty());
    for (const auto& row : c.forms) CHECK(row.ok());
    const Json j = oracle_report(spec, c);
    CHECK(j["schema"] == kOracleSchema);

    spec.inject_fault = true;
    CHECK_FALSE(run_oracle_check(spec, 0, true).passed());
}

TEST_CASE("engine class groups") {
    CHECK(engine_class_group(-4).trivial());
    CHECK(engine_class_group(-20).invariants() == IntVec{2});
    CHECK(engine_class_group(-23).invariants() == IntVec{3});
    CHECK(engine_class_group(-84) == forms::class_group(-84));
    CHECK(forms::class_group(-20).invariants() == IntVec{2});
    CHECK(forms::class_group(-23).invariants() == IntVec{3});
    CHECK(forms::class_group(-4).trivial());
}
