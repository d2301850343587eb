#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ftsl2/io.hpp"

using namespace ftsl2;

namespace {

struct FieldFlags {
    std::string field, basis, places, fixture_field;
};

void add_field_flags(CLI::App* app, FieldFlags& f, const std::string& prefix, const std::string& what) {
    app->add_option("--" + prefix + "field", f.field, "minimal polynomial of " + what + ", constant first (e.g. 0,1 for Q)");
    app->add_option("--" + prefix + "basis", f.basis, "integral basis as JSON rows over the power basis");
    app->add_option("--" + prefix + "places", f.places, "rational primes defining S (all places above)");
    app->add_option("--" + prefix + "fixture-field", f.fixture_field, "take " + what + " and S from a registered fixture");
}

Json request_from(const FieldFlags& f, unsigned ell, const std::vector<std::string>& fixtures, const std::string& degrees) {
    Json j;
    j["schema"] = kRequestSchema;
    if (!f.fixture_field.empty()) j["fixture_field"] = f.fixture_field;
    if (!f.field.empty()) {
        Json poly = Json::array();
        for (const auto& c : parse_int_list(f.field)) poly.push_back(c.get_str());
        j["field"] = Json{{"poly", poly}};
        if (!f.basis.empty()) {
            try {
                j["field"]["basis"] = Json::parse(f.basis);
            } catch (const Json::parse_error& e) {
                throw SchemaViolation(std::string("basis is not JSON: ") + e.what());
            }
        }
    }
    Json pl = Json::array();
    for (const auto& p : parse_int_list(f.places)) pl.push_back(p.get_str());
    j["places"] = pl;
    j["ell"] = ell;
    j["fixtures"] = fixtures;
    if (!degrees.empty()) {
        auto [lo, hi] = parse_degree_window(degrees);
        j["degrees"] = {lo, hi};
    }
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaViolation("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaViolation(path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw SchemaViolation("cannot write " + out);
    f << text;
}

std::string summary(const Json& r) {
    std::ostringstream s;
    s << r["setup"]["label"].get<std::string>() << "  case " << r["setup"]["case"].get<std::string>() << "  "
      << r["setup"]["regularity"].get<std::string>() << "\n";
    s << "|C| = " << r["C_ell"]["size"]["value"] << "  |K| = " << r["K_ell"]["size"]["value"] << "\n";
    for (const auto& c : r["K_ell"]["classes"])
        s << "  orbit " << c["orbit"]["value"] << "  " << c["normalizer"]["kind"].get<std::string>() << " m="
          << c["normalizer"]["m"]["value"] << " r=" << c["normalizer"]["r"]["value"] << "\n";
    s << "dims " << r["cohomology"]["dims"]["value"] << " over [" << r["cohomology"]["dmin"] << ", "
      << r["cohomology"]["dmax"] << "]\n";
    s << "quillen rank " << r["quillen"]["rank_over_c2"]["value"] << "  detection "
      << r["detection"]["verdict"].get<std::string>() << "\n";
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Farrell-Tate cohomology of SL2 over S-integers with F_ell coefficients"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");

    FieldFlags src, dst;
    unsigned ell = 3;
    std::vector<std::string> fixtures;
    std::string degrees, out, format = "json", request;

    auto* analyze = app.add_subcommand("analyze", "full analysis report for (K, S, ell)");
    add_field_flags(analyze, src, "", "K");
    analyze->add_option("--ell", ell, "odd prime");
    analyze->add_option("--fixtures", fixtures, "fixture files to register")->delimiter(',');
    analyze->add_option("--degrees", degrees, "degree window lo:hi (default -8:8)");
    analyze->add_option("--out", out, "write the report here instead of stdout");
    analyze->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--request", request, "request JSON file, instead of the field flags");

    std::string embedding;
    auto* restrict_cmd = app.add_subcommand("restrict", "restriction map along an extension L/K");
    add_field_flags(restrict_cmd, src, "", "K");
    add_field_flags(restrict_cmd, dst, "target-", "L");
    restrict_cmd->add_option("--embedding", embedding, "image of the generator of K, power-basis coordinates in L");
    restrict_cmd->add_option("--ell", ell, "odd prime");
    restrict_cmd->add_option("--fixtures", fixtures, "fixture files to register")->delimiter(',');
    restrict_cmd->add_option("--out", out, "write the report here instead of stdout");
    restrict_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

    GridSpec spec;
    long forms_dmin = -200;
    bool serial = false;
    auto* oracle = app.add_subcommand("oracle-check", "cohomology and class-group oracle suites");
    oracle->add_option("--rmax", spec.rmax, "largest free rank on the grid");
    oracle->add_option("--degrees", degrees, "degree window lo:hi (default -12:12)");
    oracle->add_option("--forms-dmin", forms_dmin, "sweep fundamental discriminants in [dmin, -3]; 0 skips");
    oracle->add_flag("--inject-fault", spec.inject_fault, "perturb the formula side (harness test)");
    oracle->add_flag("--serial", serial, "use the serial reference kernels");
    oracle->add_option("--out", out, "write the report here instead of stdout");
    oracle->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*analyze) {
            Json rq = request.empty() ? request_from(src, ell, fixtures, degrees) : read_json_file(request);
            AnalysisRequest req = parse_request(rq);
            Analysis a = run_analysis(setup_for(req));
            Json rep = analysis_report(req, a);
            emit(format == "json" ? render(rep) : summary(rep), out);
            return 0;
        }
        if (*restrict_cmd) {
            AnalysisRequest req = parse_request(request_from(src, ell, fixtures, ""));
            Analysis a = run_analysis(setup_for(req));
            RelativeSetup target;
            if (!dst.fixture_field.empty()) {
                const Fixture* f = Backend::instance().by_name(dst.fixture_field);
                if (!f) throw SchemaViolation("no registered fixture named '" + dst.fixture_field + "'");
                target = build_setup_from_fixture(*f, ell);
            } else {
                target = setup_for(parse_request(request_from(dst, ell, {}, "")));
            }
            std::optional<RatVec> emb;
            if (!embedding.empty()) emb = parse_rat_list(embedding);
            RestrictionReport r = restriction_map(a, target, emb);
            emit(render(restriction_report(r, transfer_obstruction(r, ell))), out);
            return 0;
        }
        if (*oracle) {
            if (!degrees.empty()) std::tie(spec.dmin, spec.dmax) = parse_degree_window(degrees);
            if (spec.rmax > 6 || spec.dmax - spec.dmin > 200) throw SchemaViolation("grid exceeds rmax 6 or 200 degrees");
            OracleCheck c = run_oracle_check(spec, forms_dmin, !serial);
            emit(render(oracle_report(spec, c)), out);
            return c.passed() ? 0 : 1;
        }
    } catch (const Error& e) {
        Json err{{"error", e.kind()}, {"message", e.what()}, {"exit_code", static_cast<int>(e.code())}};
        std::cerr << err.dump() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "Internal"}, {"message", e.what()}, {"exit_code", 1}}.dump() << "\n";
        return 1;
    }
    return 0;
}
