#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ftsl2/applications.hpp"
#include "ftsl2/io.hpp"

using namespace ftsl2;

namespace {

RepresentativeMatrix int_matrix(const NumberField& K, long a, long b, long c, long d) {
    return {{K.from_int(a), K.from_int(b), K.from_int(c), K.from_int(d)}};
}

}  // namespace

TEST_CASE("matrix checks") {
    auto Q = NumberField::make({0, 1});
    const NFElement t = Q->from_int(-1);
    auto M = int_matrix(*Q, 0, -1, 1, -1);
    CHECK(M.det() == Q->one());
    CHECK(M.trace() == t);
    CHECK((M * M * M).is_identity());
    CHECK(verify_matrix(M, t, 3));
    CHECK_FALSE(verify_matrix(int_matrix(*Q, 1, 0, 0, 1), t, 3));
    CHECK_FALSE(verify_matrix(int_matrix(*Q, 0, -1, 1, 1), t, 3));   // order 6
    CHECK_FALSE(verify_matrix(int_matrix(*Q, 0, -2, 1, -1), t, 3));  // det 2
    CHECK_FALSE(verify_matrix(M, t, 5));
    for (auto c : companion_matrix(t).a) CHECK(c.is_rational());
    CHECK(verify_matrix(companion_matrix(t), t, 3));
}

TEST_CASE("companion matrices over real cyclotomic traces") {
    // t = zeta + 1/zeta for ell = 5 in Q(sqrt 5), ell = 7 in Q(zeta_7)^+
    auto K5 = NumberField::make({-1, 1, 1});  // x^2 + x - 1, root (sqrt5 - 1)/2
    CHECK(verify_matrix(companion_matrix(K5->theta()), K5->theta(), 5));
    RatMatrix I3(3, 3);
    for (size_t i = 0; i < 3; ++i) I3(i, i) = 1;
    auto K7 = NumberField::make({-1, -2, 1, 1}, I3);  // disc 49, monogenic
    CHECK(verify_matrix(companion_matrix(K7->theta()), K7->theta(), 7));
}

TEST_CASE("SL2(Z), ell = 3") {
    auto a = run_analysis(build_setup(NumberField::make({0, 1}), {}, 3));
    REQUIRE(a.classes.size() == 1);
    const auto& c = a.classes[0];
    CHECK_FALSE(c.invariant);
    CHECK(c.orbit == std::vector<size_t>{0, 1});
    CHECK(c.normalizer.kind == NormalizerDescriptor::Kind::Abelian);
    CHECK(c.normalizer.m == 6);
    CHECK(c.normalizer.r == 0);
    CHECK(c.dihedral_overgroups == 0);
    REQUIRE(c.matrix);
    const auto& Q = *a.setup.K;
    CHECK(c.matrix->a[0] == Q.from_int(0));
    CHECK(c.matrix->a[1] == Q.from_int(-1));
    CHECK(c.matrix->a[2] == Q.from_int(1));
    CHECK(c.matrix->a[3] == Q.from_int(-1));
}

TEST_CASE("orbit count identity and matrices over imaginary quadratic fields") {
    for (long d : {-4L, -7L, -8L, -20L, -23L, -31L, -40L, -52L, -56L, -104L}) {
        CAPTURE(d);
        auto a = run_analysis(build_setup(quadratic_field(d), {}, 3));
        size_t inv = 0, pairs = 0;
        for (const auto& c : a.classes) {
            (c.invariant ? inv : pairs) += 1;
            CHECK(c.orbit.size() == (c.invariant ? 1u : 2u));
            CHECK(c.normalizer.kind ==
                  (c.invariant ? NormalizerDescriptor::Kind::Dihedral : NormalizerDescriptor::Kind::Abelian));
            CHECK(c.normalizer.m % 6 == 0);
            if (c.matrix) CHECK(verify_matrix(*c.matrix, *a.setup.t, 3));
            if (c.orbit[0] == 0) CHECK(c.matrix.has_value());
            if (!c.matrix) CHECK_FALSE(c.matrix_note.empty());
        }
        CHECK(a.C.size() == inv + 2 * pairs);
    }
}

TEST_CASE("nontrivial classes get verified matrices") {
    // Q(sqrt -26): class number 6, S empty
    auto a = run_analysis(build_setup(quadratic_field(-104), {}, 3));
    size_t with_matrix = 0;
    for (const auto& c : a.classes) with_matrix += c.matrix.has_value();
    CHECK(with_matrix == a.classes.size());
}

TEST_CASE("split case: q23") {
    register_fixture_files({std::string(FTSL2_FIXTURE_DIR) + "/q23.json"});
    auto a = run_analysis(build_setup_from_fixture(*Backend::instance().by_name("q23"), 23));
    REQUIRE(a.classes.size() == 2);
    const auto& inv = a.classes[0].invariant ? a.classes[0] : a.classes[1];
    const auto& pair = a.classes[0].invariant ? a.classes[1] : a.classes[0];
    CHECK(inv.invariant);
    CHECK_FALSE(pair.invariant);
    CHECK(inv.normalizer.r == 11);
    CHECK(inv.normalizer.m == 46);
    // Z/46 x Z^11 modulo squares
    CHECK(inv.dihedral_overgroups == 4096);
    CHECK(inv.matrix.has_value());
    CHECK_FALSE(pair.matrix.has_value());
    CHECK(pair.matrix_note.find("split") != std::string::npos);
    Backend::instance().clear();
}
