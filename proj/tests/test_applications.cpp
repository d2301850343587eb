#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ftsl2/applications.hpp"
#include "ftsl2/io.hpp"

using namespace ftsl2;

namespace {

const std::string kFix = FTSL2_FIXTURE_DIR;

void load_all() {
    register_fixture_files({kFix + "/q23.json", kFix + "/q23_hilbert.json", kFix + "/synthetic_z5.json"});
}

Analysis fixture_analysis(const std::string& name, unsigned ell) {
    load_all();
    const Fixture* f = Backend::instance().by_name(name);
    REQUIRE(f);
    return run_analysis(build_setup_from_fixture(*f, ell));
}

// Q(sqrt -5, zeta_3) as a quartic with an explicit integral basis
FieldPtr sqrt_m5_zeta3() {
    RatMatrix B(4, 4);
    const long v[4][4] = {{1, 0, 0, 0}, {16, -16, 3, -2}, {-16, 33, -3, 2}, {43, 8, 7, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) B(i, j) = Rat(v[i][j], i ? 17 : 1);
    FieldMeta fm;
    fm.real_quadratic_D = 60;
    fm.real_quadratic_s = RatVec{Rat(-12), Rat(2), Rat(-2), Rat(0)};
    return NumberField::make({21, -12, 13, -2, 1}, B, fm);
}
// image of sqrt -5 in that quartic
const RatVec kSqrtM5{Rat(-16, 17), Rat(33, 17), Rat(-3, 17), Rat(2, 17)};

}  // namespace

TEST_CASE("SL2(Z)") {
    auto a = run_analysis(build_setup(NumberField::make({0, 1}), {}, 3));
    auto q = quillen_report(a.classes, &*a.nm, 3);
    CHECK(q.n1 == 1);
    CHECK(q.n2 == 0);
    CHECK(q.rank_over_c2 == 4);
    CHECK(q.cross_check);
    auto dims = total_dimensions(a.classes, 3, -8, 8);
    CHECK(dims == std::vector<long>(17, 1));
    auto d = detection_report(a);
    CHECK(d.verdict == DetectionReport::Verdict::Inconclusive);
    CHECK_FALSE(d.reason.empty());

    auto b = run_analysis(build_setup(NumberField::make({0, 1}), {}, 5));
    CHECK(b.setup.kind == RelCase::NoTorsion);
    CHECK_FALSE(b.nm);
    CHECK(b.classes.empty());
    CHECK(total_dimensions(b.classes, 5, -8, 8) == std::vector<long>(17, 0));
    CHECK(quillen_report(b.classes, nullptr, 5).rank_over_c2 == 0);
}

TEST_CASE("q23") {
    auto a = fixture_analysis("q23", 23);
    auto q = quillen_report(a.classes, &*a.nm, 23);
    CHECK(q.n1 == 1);
    CHECK(q.n2 == 1);
    CHECK(q.r == 11);
    CHECK(q.rank_over_c2 == 12288);
    CHECK(q.cross_check);
    auto d = detection_report(a);
    CHECK(d.verdict == DetectionReport::Verdict::NotInjective);
    CHECK(d.pic_order == Int(3));
    CHECK(d.element_classes == 3);
    CHECK(d.class_count_condition);
    CHECK(d.source_components == 2);
    CHECK(d.target_components == 1);
    CHECK(d.source_period_sum == 12288);
    CHECK(d.target_period_sum == 4096);
    CHECK(d.degrees_with_gap == 17);
    for (size_t i = 0; i < d.source_dims.size(); ++i) CHECK(d.source_dims[i] > d.target_dims[i]);
}

TEST_CASE("synthetic Z/5 class group") {
    auto a = fixture_analysis("synthetic-z5", 3);
    CHECK(a.classes.size() == 3);
    auto d = detection_report(a);
    CHECK(d.verdict == DetectionReport::Verdict::NotInjective);
    CHECK(d.source_components == 3);
    CHECK(d.target_components == 1);
}

TEST_CASE("restriction to the Hilbert class field of q23") {
    auto a = fixture_analysis("q23", 23);
    auto h = build_setup_from_fixture(*Backend::instance().by_name("q23-hilbert"), 23);
    auto r = restriction_map(a, h, std::nullopt);
    CHECK(r.degree == 3);
    CHECK(r.conditional_on_fixture);
    CHECK(r.provenance == Provenance::Ingested);
    REQUIRE(r.merges.size() == 1);
    CHECK(r.merges[0].size() == 3);
    CHECK(r.invariance_gains.size() == 1);
    auto w = transfer_obstruction(r, 23);
    REQUIRE(w);
    CHECK(w->merge.size() == 3);
    CHECK(w->degree == 3);
    CHECK_THROWS_AS(restriction_map(a, h, RatVec{Rat(1)}), EmbeddingInvalid);
}

TEST_CASE("identity restriction") {
    auto a = run_analysis(build_setup(quadratic_field(-20), {}, 3));
    auto r = restriction_map(a, a.setup, std::nullopt);
    CHECK(r.identity);
    CHECK(r.degree == 1);
    CHECK(r.merges.empty());
    CHECK(r.invariance_gains.empty());
    CHECK(r.new_target_classes.empty());
    for (size_t i = 0; i < r.element_map.size(); ++i) CHECK(r.element_map[i] == i);
    CHECK_FALSE(transfer_obstruction(r, 3));
}

TEST_CASE("invalid embeddings") {
    auto a = run_analysis(build_setup(quadratic_field(-20), {}, 3));
    // 1 + theta is not a square root of -5
    CHECK_THROWS_AS(restriction_map(a, a.setup, RatVec{Rat(1), Rat(1)}), EmbeddingInvalid);
    // S_K must land in S_L
    auto b = build_setup(quadratic_field(-20), {}, 3);
    auto c = run_analysis(build_setup(quadratic_field(-20), {7}, 3));
    CHECK_THROWS_AS(restriction_map(c, b, std::nullopt), EmbeddingInvalid);
    // different ell
    auto e = build_setup(NumberField::make({-5, 0, 1}), {}, 5);
    CHECK_THROWS(restriction_map(a, e, std::nullopt));
}

TEST_CASE("restriction from Q into imaginary quadratic fields") {
    auto a = run_analysis(build_setup(NumberField::make({0, 1}), {}, 3));
    for (long d : {-8L, -20L, -56L, -104L}) {
        CAPTURE(d);
        auto s = build_setup(quadratic_field(d), {}, 3);
        auto r = restriction_map(a, s, RatVec{Rat(0), Rat(0)});
        CHECK(r.degree == 2);
        CHECK(r.commutes_with_iota);
        CHECK(r.element_map.size() == 2);
        // the trivial class goes to the trivial class
        CHECK(r.element_map[0] == 0);
        for (size_t i : r.element_map) CHECK(i < r.target_size);
    }
}

TEST_CASE("classes become invariant in Q(sqrt -5, zeta_3)") {
    auto L = sqrt_m5_zeta3();
    auto K = NumberField::make({5, 0, 1});
    {
        auto a = run_analysis(build_setup(K, {3}, 3));
        auto sL = build_setup(L, {3}, 3);
        CHECK(sL.kind == RelCase::Split);
        CHECK(sL.regularity == Regularity::R2);
        auto r = restriction_map(a, sL, kSqrtM5);
        CHECK(r.degree == 2);
        CHECK(r.element_map == std::vector<size_t>{0, 0});
        CHECK(r.invariance_gains.size() == 1);
        CHECK(r.commutes_with_iota);
    }
    {
        auto a = run_analysis(build_setup(K, {2, 3}, 3));
        auto r = restriction_map(a, build_setup(L, {2, 3}, 3), kSqrtM5);
        CHECK(r.invariance_gains.size() == 2);
    }
}

TEST_CASE("transfer witness needs the degree prime to ell") {
    RestrictionReport r;
    r.degree = 3;
    r.merges = {{0, 1}};
    CHECK_FALSE(transfer_obstruction(r, 3));
    CHECK(transfer_obstruction(r, 5));
    r.degree = 2;
    r.merges = {{0}};
    CHECK_FALSE(transfer_obstruction(r, 3));
}

TEST_CASE("colimit case") {
    auto Q = NumberField::make({0, 1});
    CHECK(colimit_case(Q, 5).kind == ColimitDescriptor::Case::Zero);
    CHECK(colimit_case(Q, 3).kind == ColimitDescriptor::Case::ProductOverRelativeBrauer);
    CHECK(colimit_case(NumberField::make({1, -1, 1, -1, 1}), 5).kind == ColimitDescriptor::Case::NormalizerOfTorus);
    CHECK(colimit_case(NumberField::make({1, 1, 1}), 3).kind == ColimitDescriptor::Case::NormalizerOfTorus);
    CHECK_FALSE(colimit_case(Q, 3).description.empty());
}

TEST_CASE("torsion presence") {
    auto Q = NumberField::make({0, 1});
    CHECK(torsion_presence(Q, 3));
    CHECK_FALSE(torsion_presence(Q, 5));
    CHECK(torsion_presence(NumberField::make({-5, 0, 1}), 5));
    CHECK_FALSE(torsion_presence(NumberField::make({-2, 0, 1}), 5));
    CHECK(torsion_presence(NumberField::make({-2, 0, 1}), 3));
}

TEST_CASE("virtual cohomological dimension") {
    auto Q = NumberField::make({0, 1});
    CHECK(vcd(*Q, {}) == 1);
    CHECK(vcd(*quadratic_field(-20), {}) == 2);
    CHECK(vcd(*Q, {2, 3}) == 3);
    CHECK(vcd(*NumberField::make({-2, 0, 1}), {}) == 3);
    CHECK(vcd(*quadratic_field(-20), {3}) == 4);  // 3 splits
}

TEST_CASE("inconsistent fixture data is rejected") {
    CHECK_THROWS_AS(register_fixture_files({kFix + "/q23_badrank.json"}), ConsistencyFailure);
}
