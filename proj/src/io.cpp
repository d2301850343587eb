#include "ftsl2/io.hpp"

#include <sstream>

#include "ftsl2/classgroup.hpp"
#include "ftsl2/forms.hpp"
#include "ftsl2/units.hpp"

namespace ftsl2 {

namespace {

Json int_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

Json ints_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

Json tag(Json v, Provenance p) { return Json{{"value", std::move(v)}, {"provenance", to_string(p)}}; }

Json group_json(const FinGenAbGroup& g) { return Json{{"torsion", ints_json(g.torsion.invariants())}, {"rank", g.free_rank}}; }

Int json_int(const Json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) == 0) return v;
    }
    throw SchemaViolation(std::string(what) + ": expected an integer");
}

Rat json_rat(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        Rat q;
        if (q.set_str(j.get<std::string>(), 10) == 0) {
            if (q.get_den() == 0) throw SchemaViolation(std::string(what) + ": zero denominator");
            q.canonicalize();
            return q;
        }
    }
    throw SchemaViolation(std::string(what) + ": expected an integer or a fraction string");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

Provenance data_provenance(const Analysis& a) {
    if (!a.setup.fixture) return Provenance::Computed;
    return a.setup.fixture->trust == "synthetic" ? Provenance::Asserted : Provenance::Ingested;
}

}  // namespace

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        Int v;
        if (v.set_str(item, 10) != 0) throw SchemaViolation("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

RatVec parse_rat_list(const std::string& s) {
    RatVec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(json_rat(Json(item), "rational list"));
    }
    return out;
}

std::pair<long, long> parse_degree_window(const std::string& s) {
    const auto c = s.find(':');
    if (c == std::string::npos) throw SchemaViolation("degree window must look like lo:hi");
    try {
        size_t p1 = 0, p2 = 0;
        const std::string a = trim(s.substr(0, c)), b = trim(s.substr(c + 1));
        long lo = std::stol(a, &p1), hi = std::stol(b, &p2);
        if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument("trailing");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw SchemaViolation("degree window must look like lo:hi");
    }
}

RatMatrix parse_basis(const std::string& s, size_t n) {
    Json j;
    try {
        j = Json::parse(s);
    } catch (const Json::parse_error& e) {
        throw SchemaViolation(std::string("basis is not JSON: ") + e.what());
    }
    if (!j.is_array() || j.size() != n) throw SchemaViolation("basis must have one row per degree");
    RatMatrix B(n, n);
    for (size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n) throw SchemaViolation("basis rows must have n entries");
        for (size_t c = 0; c < n; ++c) B(r, c) = json_rat(j[r][c], "basis");
    }
    return B;
}

AnalysisRequest parse_request(const Json& j) {
    if (!j.is_object()) throw SchemaViolation("request must be a JSON object");
    if (j.contains("schema") && j["schema"] != kRequestSchema)
        throw SchemaViolation(std::string("request schema must be ") + kRequestSchema);
    AnalysisRequest r;
    if (j.contains("fixture_field")) {
        if (!j["fixture_field"].is_string()) throw SchemaViolation("fixture_field must be a name");
        r.fixture_field = j["fixture_field"].get<std::string>();
    }
    if (j.contains("field")) {
        const Json& f = j["field"];
        if (!f.is_object() || !f.contains("poly") || !f["poly"].is_array())
            throw SchemaViolation("field must be an object with a poly array");
        for (const auto& c : f["poly"]) r.field.push_back(json_int(c, "field.poly"));
        poly::trim(r.field);
        if (r.field.size() < 2 || r.field.back() != 1) throw SchemaViolation("field.poly must be monic of degree >= 1");
        if (f.contains("basis") && !f["basis"].is_null()) r.basis = parse_basis(f["basis"].dump(), r.field.size() - 1);
    }
    if (r.field.empty() == r.fixture_field.empty()) throw SchemaViolation("give exactly one of field and fixture_field");
    if (j.contains("places")) {
        if (!j["places"].is_array()) throw SchemaViolation("places must be an array");
        for (const auto& p : j["places"]) {
            Int v = json_int(p, "places");
            if (!poly::is_prime(v)) throw SchemaViolation("places must be rational primes, got " + v.get_str());
            r.places.push_back(v);
        }
    }
    if (!j.contains("ell")) throw SchemaViolation("ell is required");
    const Int ell = json_int(j["ell"], "ell");
    if (ell < 3 || ell > 1000 || !poly::is_prime(ell)) throw SchemaViolation("ell must be an odd prime below 1000");
    r.ell = static_cast<unsigned>(ell.get_ui());
    if (j.contains("fixtures")) {
        if (!j["fixtures"].is_array()) throw SchemaViolation("fixtures must be an array of paths");
        for (const auto& p : j["fixtures"]) {
            if (!p.is_string()) throw SchemaViolation("fixtures must be an array of paths");
            r.fixtures.push_back(p.get<std::string>());
        }
    }
    if (j.contains("degrees")) {
        const Json& d = j["degrees"];
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
            throw SchemaViolation("degrees must be [lo, hi]");
        r.dmin = d[0].get<long>();
        r.dmax = d[1].get<long>();
    }
    if (r.dmin > r.dmax || r.dmax - r.dmin > 4096) throw SchemaViolation("degree window must satisfy lo <= hi, width <= 4096");
    return r;
}

Json request_json(const AnalysisRequest& r) {
    Json j;
    j["schema"] = kRequestSchema;
    if (!r.fixture_field.empty()) {
        j["fixture_field"] = r.fixture_field;
    } else {
        Json f;
        f["poly"] = ints_json(r.field);
        if (r.basis) {
            Json rows = Json::array();
            for (size_t i = 0; i < r.basis->rows(); ++i) {
                Json row = Json::array();
                for (size_t k = 0; k < r.basis->cols(); ++k) row.push_back((*r.basis)(i, k).get_str());
                rows.push_back(row);
            }
            f["basis"] = rows;
        } else {
            f["basis"] = nullptr;
        }
        j["field"] = f;
    }
    std::vector<Int> pl = r.places;
    std::sort(pl.begin(), pl.end());
    pl.erase(std::unique(pl.begin(), pl.end()), pl.end());
    j["places"] = ints_json(pl);
    j["ell"] = r.ell;
    j["degrees"] = {r.dmin, r.dmax};
    // fixture paths are machine-specific; only their registered names enter reports
    return j;
}

RelativeSetup setup_for(const AnalysisRequest& r) {
    register_fixture_files(r.fixtures);
    if (!r.fixture_field.empty()) {
        const Fixture* f = Backend::instance().by_name(r.fixture_field);
        if (!f) throw SchemaViolation("no registered fixture named '" + r.fixture_field + "'");
        if (!r.places.empty() && r.places != f->places)
            throw SchemaViolation("places differ from those of fixture '" + f->name + "'");
        return build_setup_from_fixture(*f, r.ell);
    }
    return build_setup(NumberField::make(r.field, r.basis), r.places, r.ell);
}

Json analysis_report(const AnalysisRequest& req, const Analysis& a) {
    const auto& s = a.setup;
    const Provenance pd = data_provenance(a);
    Json j;
    j["schema"] = kReportSchema;
    j["request"] = request_json(req);

    Json setup;
    setup["label"] = s.label;
    setup["case"] = to_string(s.kind);
    setup["regularity"] = to_string(s.regularity);
    setup["notes"] = s.notes;
    setup["places"] = ints_json(s.places);
    setup["ell"] = s.ell;
    setup["degree"] = tag(s.degree(), s.K ? Provenance::Computed : pd);
    if (s.K) {
        setup["vcd"] = tag(vcd(*s.K, s.places), Provenance::Computed);
        setup["colimit_case"] = to_string(colimit_case(s.K, s.ell).kind);
    }
    setup["torsion_present"] = s.kind != RelCase::NoTorsion;
    if (s.t) setup["t"] = s.t->str();
    if (s.fixture)
        setup["fixture"] = Json{{"name", s.fixture->name}, {"trust", s.fixture->trust}};
    else
        setup["fixture"] = nullptr;
    j["setup"] = setup;

    if (a.nm) {
        const auto& nm = *a.nm;
        Json n;
        n["provenance"] = to_string(pd);
        n["units_K"] = tag(group_json(nm.units_K), pd);
        n["units_R"] = tag(group_json(nm.units_R), pd);
        n["ker_nm1"] = tag(group_json(nm.ker_nm1.group), pd);
        n["coker_nm1"] = tag(group_json(nm.coker_nm1.group), pd);
        n["m"] = tag(int_json(nm.ker_nm1_torsion()), pd);
        n["r"] = tag(nm.ker_nm1_rank(), pd);
        n["pic_K"] = nm.pic_K ? tag(ints_json(nm.pic_K->invariants()), pd) : Json(nullptr);
        n["pic_R"] = tag(ints_json(nm.pic_R.invariants()), pd);
        n["ker_nm0"] = tag(ints_json(nm.ker_nm0.group.torsion.invariants()), pd);
        j["norm_maps"] = n;
    } else {
        j["norm_maps"] = nullptr;
    }

    Json C;
    C["size"] = tag(a.C.size(), pd);
    C["sub"] = tag(ints_json(a.C.sub.invariants()), pd);
    C["quotient"] = tag(ints_json(a.C.quotient.invariants()), pd);
    C["carrier"] = tag(ints_json(a.C.carrier.invariants()), pd);
    Json elems = Json::array();
    for (size_t i = 0; i < a.C.size() && s.kind != RelCase::NoTorsion; ++i) elems.push_back(ints_json(a.C.carrier.element(i)));
    C["elements"] = tag(elems, pd);
    C["iota"] = tag(a.C.iota, pd);
    j["C_ell"] = C;

    Json classes = Json::array();
    for (const auto& c : a.classes) {
        Json k;
        k["orbit"] = tag(c.orbit, pd);
        k["invariant"] = c.invariant;
        k["normalizer"] = Json{{"kind", to_string(c.normalizer.kind)},
                               {"m", tag(int_json(c.normalizer.m), pd)},
                               {"r", tag(c.normalizer.r, pd)}};
        k["dihedral_overgroups"] = tag(c.dihedral_overgroups, pd);
        const auto ring = component_ring(c.normalizer, s.ell);
        k["ring"] = Json{{"kind", to_string(ring.kind)}, {"r", tag(ring.r, pd)}, {"ell", ring.ell}};
        const auto dims = ring.dimensions();
        k["dimensions"] = Json{{"period", tag(dims.period, pd)}, {"dims", tag(dims.dims, pd)}};
        if (c.matrix) {
            Json m = Json::array();
            for (size_t r = 0; r < 2; ++r) m.push_back({c.matrix->a[2 * r].str(), c.matrix->a[2 * r + 1].str()});
            k["matrix"] = m;
            k["matrix_verified"] = true;
        } else {
            k["matrix"] = nullptr;
        }
        if (!c.matrix_note.empty()) k["matrix_note"] = c.matrix_note;
        classes.push_back(k);
    }
    j["K_ell"] = Json{{"size", tag(a.classes.size(), pd)}, {"classes", classes}};

    Json coh;
    coh["dmin"] = req.dmin;
    coh["dmax"] = req.dmax;
    coh["dims"] = tag(total_dimensions(a.classes, s.ell, req.dmin, req.dmax), pd);
    const auto f = total_dimension_function(a.classes, s.ell);
    coh["period"] = tag(f.period, pd);
    coh["period_dims"] = tag(f.dims, pd);
    j["cohomology"] = coh;

    const auto q = quillen_report(a.classes, a.nm ? &*a.nm : nullptr, s.ell);
    j["quillen"] = Json{{"n1", tag(q.n1, pd)},
                        {"n2", tag(q.n2, pd)},
                        {"r", tag(q.r, pd)},
                        {"rank_over_c2", tag(int_json(q.rank_over_c2), pd)},
                        {"period_sum", tag(int_json(q.period_sum), pd)},
                        {"cross_check", q.cross_check},
                        {"c2_image", q.c2_image}};

    const auto d = detection_report(a, req.dmin, req.dmax);
    Json det;
    det["verdict"] = to_string(d.verdict);
    det["reason"] = d.reason;
    det["criterion"] = d.criterion;
    det["class_count_phrasing"] = d.class_count_phrasing;
    det["class_count_condition"] = d.class_count_condition;
    det["pic_order"] = d.pic_order ? tag(int_json(*d.pic_order), pd) : Json(nullptr);
    det["element_classes"] = tag(d.element_classes, pd);
    det["source_components"] = tag(d.source_components, pd);
    det["target_components"] = tag(d.target_components, pd);
    det["source_dims"] = tag(d.source_dims, pd);
    det["target_dims"] = tag(d.target_dims, pd);
    det["source_period_sum"] = tag(d.source_period_sum, pd);
    det["target_period_sum"] = tag(d.target_period_sum, pd);
    det["degrees_with_gap"] = tag(d.degrees_with_gap, pd);
    j["detection"] = det;
    return j;
}

Json restriction_report(const RestrictionReport& r, const std::optional<TransferWitness>& w) {
    const Provenance p = r.provenance;
    Json j;
    j["schema"] = kRestrictionSchema;
    j["source"] = r.source;
    j["target"] = r.target;
    j["ell"] = r.ell;
    j["degree"] = tag(r.degree, p);
    j["identity"] = r.identity;
    j["target_complete"] = r.target_complete;
    j["target_size"] = r.target_complete ? tag(r.target_size, p) : Json(nullptr);
    j["conditional_on_fixture"] = r.conditional_on_fixture;
    j["provenance"] = to_string(p);
    j["commutes_with_iota"] = r.commutes_with_iota;
    j["element_map"] = tag(r.element_map, p);
    j["class_map"] = tag(r.class_map, p);
    j["C1_merges"] = tag(r.merges, p);
    j["C1_class_merges"] = tag(r.class_merges, p);
    j["C2_invariance_gains"] = tag(r.invariance_gains, p);
    j["C3_new_target_classes"] = r.target_complete ? tag(r.new_target_classes, p) : Json(nullptr);
    j["notes"] = r.notes;
    if (w)
        j["transfer_obstruction"] = Json{{"merge", tag(w->merge, p)}, {"degree", w->degree}, {"ell", w->ell}, {"text", w->text}};
    else
        j["transfer_obstruction"] = nullptr;
    return j;
}

FieldPtr quadratic_field(long d) {
    if (!forms::is_fundamental(d)) throw SchemaViolation(std::to_string(d) + " is not a fundamental discriminant");
    if (((d % 4) + 4) % 4 == 1) return NumberField::make({Int((1 - d) / 4), Int(-1), Int(1)});
    return NumberField::make({Int(-d / 4), Int(0), Int(1)});
}

FiniteAbelianGroup engine_class_group(long d) {
    FieldPtr K = quadratic_field(d);
    ClassGroupOptions opts;
    opts.parallel = false;
    ClassGroupEngine e(*K, unit_basis(*K).fundamental, opts);
    return e.group();
}

bool OracleCheck::passed() const {
    for (const auto& g : grid)
        if (!g.ok()) return false;
    for (const auto& f : forms)
        if (!f.ok()) return false;
    return true;
}

OracleCheck run_oracle_check(const GridSpec& spec, long forms_dmin, bool parallel) {
    OracleCheck c;
    c.grid = oracle_grid(spec, parallel);
    if (forms_dmin < -3) {
        for (const auto& [d, G] : forms::sweep(forms_dmin, -3, parallel)) {
            OracleCheck::FormsRow row;
            row.disc = d;
            row.forms = G.invariants();
            row.engine = engine_class_group(d).invariants();
            c.forms.push_back(row);
        }
    }
    return c;
}

Json oracle_report(const GridSpec& spec, const OracleCheck& c) {
    Json j;
    j["schema"] = kOracleSchema;
    j["grid_spec"] = Json{{"n", spec.ns}, {"ell", spec.ells}, {"rmax", spec.rmax},
                          {"degrees", {spec.dmin, spec.dmax}}, {"inject_fault", spec.inject_fault}};
    Json fails = Json::array();
    size_t bad = 0;
    for (const auto& g : c.grid) {
        if (g.ok()) continue;
        ++bad;
        fails.push_back(Json{{"n", g.n}, {"r", g.r}, {"ell", g.ell}, {"d", g.d},
                             {"kind", g.dihedral ? "Dihedral" : "Abelian"},
                             {"formula", tag(g.formula, Provenance::Computed)},
                             {"oracle", tag(g.oracle, Provenance::Computed)}});
    }
    j["grid"] = Json{{"points", c.grid.size()}, {"failures", bad}, {"mismatches", fails}};
    Json rows = Json::array();
    size_t fbad = 0;
    for (const auto& f : c.forms) {
        fbad += !f.ok();
        rows.push_back(Json{{"disc", f.disc},
                            {"engine", tag(ints_json(f.engine), Provenance::Computed)},
                            {"forms", tag(ints_json(f.forms), Provenance::Computed)},
                            {"ok", f.ok()}});
    }
    j["forms"] = Json{{"fields", c.forms.size()}, {"failures", fbad}, {"rows", rows}};
    j["passed"] = c.passed();
    return j;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ftsl2
