#include "ftsl2/backend.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "ftsl2/units.hpp"

namespace ftsl2 {

using nlohmann::json;

namespace {

Int to_int(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Int x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw SchemaViolation(what + ": not an integer");
        return x;
    }
    throw SchemaViolation(what + ": expected an integer");
}

Rat to_rat(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rat(to_int(j, what));
    if (j.is_string()) {
        Rat q;
        if (q.set_str(j.get<std::string>(), 10) != 0) throw SchemaViolation(what + ": not a rational");
        q.canonicalize();
        return q;
    }
    throw SchemaViolation(what + ": expected a rational");
}

std::vector<Int> int_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw SchemaViolation(what + ": expected an array");
    std::vector<Int> out;
    for (const auto& x : j) out.push_back(to_int(x, what));
    return out;
}

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaViolation(std::string("missing field '") + key + "'");
    return j.at(key);
}

size_t count_u(const json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw SchemaViolation(what + ": expected a nonnegative integer");
    return j.get<size_t>();
}

void check_absolute(Fixture& f) {
    const NumberField& K = *f.field;
    f.finite_places = 0;
    for (const auto& p : f.places) {
        if (!poly::is_prime(p)) throw SchemaViolation("place " + p.get_str() + " is not a prime");
        f.finite_places += primes_above(p, K).size();
    }
    const size_t expect = K.r1() + K.r2() + f.finite_places - 1;
    if (f.unit_rank != expect)
        throw ConsistencyFailure("unit rank " + std::to_string(f.unit_rank) + " contradicts the Dirichlet rank " +
                                 std::to_string(expect));
    if (f.torsion_order % 2 || K.degree() % poly::euler_phi(f.torsion_order))
        throw ConsistencyFailure("torsion order " + std::to_string(f.torsion_order) + " impossible in degree " +
                                 std::to_string(K.degree()));
    if (K.meta().cyclotomic_m || K.degree() <= 4) {
        auto [w, z] = roots_of_unity(K);
        if (w != f.torsion_order)
            throw ConsistencyFailure("torsion order " + std::to_string(f.torsion_order) + " but the field has " +
                                     std::to_string(w) + " roots of unity");
    }
    if (!f.unit_elements.empty()) {
        if (f.unit_elements.size() != f.unit_rank) throw ConsistencyFailure("number of unit elements differs from rank");
        for (const auto& c : f.unit_elements) {
            if (c.size() != K.degree()) throw SchemaViolation("unit element has the wrong length");
            NFElement u = K.from_power(c);
            if (u.is_zero()) throw ConsistencyFailure("claimed unit is zero");
            for (const auto& [P, v] : factor_ideal(Ideal::principal(u)))
                if (std::find(f.places.begin(), f.places.end(), P.p) == f.places.end())
                    throw ConsistencyFailure("claimed unit " + u.str() + " has valuation at " + P.str());
        }
    }
}

}  // namespace

Fixture parse_fixture(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaViolation(std::string("fixture is not JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaViolation("fixture must be an object");
    if (!j.contains("schema") || j["schema"] != kFixtureSchema)
        throw SchemaViolation(std::string("fixture schema must be ") + kFixtureSchema);

    Fixture f;
    f.name = need(j, "name").get<std::string>();
    f.trust = need(j, "trust").get<std::string>();
    if (f.trust != "literature" && f.trust != "synthetic")
        throw SchemaViolation("trust must be 'literature' or 'synthetic'");
    if (j.contains("notes")) f.notes = j["notes"].get<std::string>();
    f.places = int_list(need(j, "places"), "places");
    std::sort(f.places.begin(), f.places.end());
    f.places.erase(std::unique(f.places.begin(), f.places.end()), f.places.end());

    if (j.contains("class_group")) {
        IntVec inv = int_list(need(j["class_group"], "invariants"), "class_group.invariants");
        for (size_t i = 0; i < inv.size(); ++i) {
            if (inv[i] < 2) throw SchemaViolation("class group invariants must be >= 2");
            if (i && inv[i] % inv[i - 1] != 0) throw SchemaViolation("class group invariants must form a divisor chain");
        }
        f.pic = FiniteAbelianGroup(inv);
    }
    const json& u = need(j, "units");
    f.unit_rank = count_u(need(u, "rank"), "units.rank");
    f.torsion_order = count_u(need(u, "torsion_order"), "units.torsion_order");
    if (f.torsion_order == 0) throw SchemaViolation("units.torsion_order must be positive");

    if (j.contains("extension_of")) {
        f.extension_of = j["extension_of"].get<std::string>();
        f.relative_poly = int_list(need(j, "relative_poly"), "relative_poly");
        poly::trim(f.relative_poly);
        if (f.relative_poly.size() < 2 || f.relative_poly.back() != 1)
            throw SchemaViolation("relative_poly must be monic of degree >= 1");
        f.finite_places = count_u(need(j, "finite_places"), "finite_places");
        if (j.contains("class_map")) {
            for (const auto& row : j["class_map"]) f.class_map.append_row(int_list(row, "class_map"));
        }
        if (j.contains("capitulation")) {
            if (j["capitulation"] != "total") throw SchemaViolation("capitulation must be 'total'");
            if (j.contains("class_map")) throw SchemaViolation("give either class_map or capitulation");
        } else if (!j.contains("class_map")) {
            throw SchemaViolation("extension fixtures need class_map or capitulation");
        }
        return f;
    }

    const json& fld = need(j, "field");
    f.poly = int_list(need(fld, "poly"), "field.poly");
    if (fld.contains("basis") && !fld["basis"].is_null()) {
        const json& b = fld["basis"];
        const size_t n = f.poly.size() - 1;
        RatMatrix B(n, n);
        if (!b.is_array() || b.size() != n) throw SchemaViolation("field.basis must have n rows");
        for (size_t r = 0; r < n; ++r) {
            if (!b[r].is_array() || b[r].size() != n) throw SchemaViolation("field.basis rows must have n entries");
            for (size_t c = 0; c < n; ++c) B(r, c) = to_rat(b[r][c], "field.basis");
        }
        f.basis = B;
    }
    if (u.contains("elements")) {
        for (const auto& e : u["elements"]) {
            RatVec c;
            for (const auto& x : e) c.push_back(to_rat(x, "units.elements"));
            f.unit_elements.push_back(c);
        }
    }
    f.field = NumberField::make(f.poly, f.basis);
    f.degree = f.field->degree();
    check_absolute(f);
    return f;
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaViolation("cannot read fixture " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str());
}

Backend& Backend::instance() {
    static Backend b;
    return b;
}

const Fixture& Backend::add(Fixture f) {
    std::unique_lock lock(mu_);
    for (const auto& g : items_)
        if (g->name == f.name) throw ConsistencyFailure("fixture '" + f.name + "' already registered");
    if (f.is_extension()) {
        const Fixture* base = nullptr;
        for (const auto& g : items_)
            if (g->name == f.extension_of) base = g.get();
        if (!base) throw ConsistencyFailure("base fixture '" + f.extension_of + "' is not registered");
        if (base->is_extension()) throw SchemaViolation("extensions of extensions are not supported");
        if (!base->pic) throw ConsistencyFailure("base fixture has no class group");
        const size_t n = base->degree, m = f.relative_poly.size() - 1;
        // Q-irreducible of degree prime to [K:Q] stays irreducible over K
        if (!is_irreducible(f.relative_poly)) throw ReduciblePolynomial("relative polynomial is reducible over Q");
        if (std::gcd(n, m) != 1)
            throw NeedsBackendData("irreducibility over the base is only checked for degrees prime to [K:Q]");
        f.degree = n * m;
        if (base->field->r1() != 0) throw NeedsBackendData("extension fixtures need a totally complex base");
        const size_t expect = f.degree / 2 + f.finite_places - 1;
        if (f.unit_rank != expect)
            throw ConsistencyFailure("unit rank " + std::to_string(f.unit_rank) + " contradicts the Dirichlet rank " +
                                     std::to_string(expect));
        for (const auto& p : base->places)
            if (std::find(f.places.begin(), f.places.end(), p) == f.places.end())
                throw ConsistencyFailure("extension places must contain the base places");
        if (f.finite_places < base->finite_places) throw ConsistencyFailure("fewer places than the base");
        if (f.torsion_order % base->torsion_order) throw ConsistencyFailure("torsion order must be a multiple of the base's");
        const size_t tg = f.pic ? f.pic->ngens() : 0;
        if (f.class_map.rows() == 0) {
            f.class_map = IntMatrix(base->pic->ngens(), tg);
        } else if (f.class_map.rows() != base->pic->ngens() || f.class_map.cols() != tg) {
            throw SchemaViolation("class_map must be (base generators) x (target generators)");
        } else if (!f.pic) {
            throw SchemaViolation("class_map needs the target class group");
        }
    }
    items_.push_back(std::make_shared<const Fixture>(std::move(f)));
    return *items_.back();
}

const Fixture* Backend::find(const ZPoly& poly, std::vector<Int> places) const {
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    std::shared_lock lock(mu_);
    for (const auto& g : items_)
        if (!g->is_extension() && g->poly == poly && g->places == places) return g.get();
    return nullptr;
}

const Fixture* Backend::by_name(const std::string& name) const {
    std::shared_lock lock(mu_);
    for (const auto& g : items_)
        if (g->name == name) return g.get();
    return nullptr;
}

void Backend::clear() {
    std::unique_lock lock(mu_);
    items_.clear();
}

void register_fixture_files(const std::vector<std::string>& paths) {
    // absolute fixtures first so extensions find their base
    std::vector<Fixture> ext;
    for (const auto& p : paths) {
        Fixture f = load_fixture(p);
        if (f.is_extension()) ext.push_back(std::move(f));
        else if (!Backend::instance().by_name(f.name)) Backend::instance().add(std::move(f));
    }
    for (auto& f : ext)
        if (!Backend::instance().by_name(f.name)) Backend::instance().add(std::move(f));
}

}  // namespace ftsl2
