#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ftsl2/forms.hpp"
#include "ftsl2/io.hpp"
#include "ftsl2/sinvariants.hpp"

using namespace ftsl2;

namespace {

std::shared_ptr<SArithmetic> arith(const FieldPtr& K, std::vector<Int> places) {
    return std::make_shared<SArithmetic>(K, PlaceSet::above(*K, std::move(places)));
}

}  // namespace

TEST_CASE("provenance strings") {
    CHECK(to_string(Provenance::Computed) == "computed");
    CHECK(to_string(Provenance::Ingested) == "ingested");
    CHECK(to_string(Provenance::Asserted) == "asserted");
}

TEST_CASE("places above rational primes") {
    auto K = NumberField::make({5, 0, 1});  // Q(sqrt -5): 2 ramified, 3 split, 7 split, 11 inert
    CHECK(PlaceSet::above(*K, {2}).finite_count() == 1);
    CHECK(PlaceSet::above(*K, {3}).finite_count() == 2);
    CHECK(PlaceSet::above(*K, {11}).finite_count() == 1);
    auto S = PlaceSet::above(*K, {3, 2, 3});
    CHECK(S.rational_primes == std::vector<Int>{2, 3});
    CHECK(S.finite_count() == 3);
    CHECK(S.contains_prime(3));
    CHECK_FALSE(S.contains_prime(5));
}

TEST_CASE("Dirichlet rank") {
    auto Q = NumberField::make({0, 1});
    auto K = NumberField::make({5, 0, 1});
    auto R = NumberField::make({-2, 0, 1});
    CHECK(s_unit_rank(*Q, 0) == 0);
    CHECK(s_unit_rank(*Q, 2) == 2);
    CHECK(s_unit_rank(*K, 0) == 0);
    CHECK(s_unit_rank(*K, 3) == 3);
    CHECK(s_unit_rank(*R, 0) == 1);
    CHECK(arith(R, {7})->unit_structure().free_rank == 3);  // 7 splits in Q(sqrt 2)
}

TEST_CASE("S-class groups of Q(sqrt -5)") {
    auto K = NumberField::make({5, 0, 1});
    CHECK(arith(K, {})->pic().order() == 2);
    // the primes above 2 and 3 are non-principal, so inverting them kills the class
    CHECK(arith(K, {2})->pic().trivial());
    CHECK(arith(K, {3})->pic().trivial());
    // 29 = 3^2 + 5*2^2 splits into principal primes
    CHECK(arith(K, {29})->pic().order() == 2);
}

TEST_CASE("class groups agree with reduced forms") {
    for (long d : {-4L, -20L, -23L, -47L, -56L, -84L, -104L}) {
        CAPTURE(d);
        auto A = arith(quadratic_field(d), {});
        CHECK(A->pic() == forms::class_group(d));
    }
}

TEST_CASE("pic dlog inverts representatives") {
    for (long d : {-23L, -56L, -84L}) {
        auto A = arith(quadratic_field(d), {});
        const auto& G = A->pic();
        for (size_t i = 0; i < G.size(); ++i) {
            IntVec g = G.element(i);
            Ideal I = A->pic_representative(g);
            CHECK(A->pic_dlog(I) == g);
            CHECK(A->s_generator(I).has_value() == (i == 0));
        }
    }
}

TEST_CASE("unit coordinates round-trip") {
    struct Case {
        ZPoly f;
        std::vector<Int> S;
        unsigned long w;
        size_t rank;
    };
    std::vector<Case> cases{
        {{0, 1}, {}, 2, 0},          {{0, 1}, {2, 3}, 2, 2},   {{1, 0, 1}, {}, 4, 0},
        {{1, 1, 1}, {}, 6, 0},       {{-2, 0, 1}, {}, 2, 1},   {{-2, 0, 1}, {7}, 2, 3},
        {{5, 0, 1}, {3}, 2, 2},      {{1, -1, 1, -1, 1}, {}, 10, 1},
    };
    for (const auto& c : cases) {
        auto K = NumberField::make(c.f);
        auto A = arith(K, c.S);
        auto U = A->unit_structure();
        CAPTURE(K->describe());
        CHECK(U.free_rank == c.rank);
        CHECK(A->unit_data().torsion_order == c.w);
        // every small coordinate vector comes back from the element it names
        for (long a = 0; a < static_cast<long>(c.w); a += 1 + c.w / 3)
            for (long b = -2; b <= 2; ++b) {
                IntVec v(1 + U.free_rank, Int(0));
                v[0] = a;
                for (size_t i = 1; i < v.size(); ++i) v[i] = (i == 1) ? b : -b + static_cast<long>(i);
                NFElement u = A->unit_element(v);
                CHECK(A->is_s_unit(u));
                CHECK(A->unit_dlog(u) == v);
            }
    }
}

TEST_CASE("S-units") {
    auto Q = NumberField::make({0, 1});
    auto A = arith(Q, {2});
    CHECK(A->is_s_unit(Q->from_int(2)));
    CHECK(A->is_s_unit(Q->from_rat(Rat(-1, 8))));
    CHECK_FALSE(A->is_s_unit(Q->from_int(3)));
    CHECK(A->unit_dlog(Q->from_rat(Rat(-1, 8))) == IntVec{1, -3});
}

TEST_CASE("parallel kernels match their serial references") {
    auto K = NumberField::make({1, -1, 1, -1, 1});
    const auto fb = primes_up_to_norm(*K, 100);
    auto ser = box_relations(*K, fb, 0, 4, false);
    auto par = box_relations(*K, fb, 0, 4, true);
    CHECK_FALSE(ser.empty());
    CHECK(ser == par);
    for (const auto& rel : ser) REQUIRE(rel.size() == fb.size());

    auto fs = forms::sweep(-3000, -3, false);
    auto fp = forms::sweep(-3000, -3, true);
    REQUIRE(fs.size() == fp.size());
    for (size_t i = 0; i < fs.size(); ++i) {
        CHECK(fs[i].first == fp[i].first);
        CHECK(fs[i].second == fp[i].second);
    }
}

TEST_CASE("reduced forms") {
    CHECK(forms::class_group(-4).trivial());
    CHECK(forms::class_group(-20).invariants() == IntVec{2});
    CHECK(forms::class_group(-23).invariants() == IntVec{3});
    CHECK(forms::reduced_forms(-23).size() == 3);
    CHECK(forms::reduce(forms::Form{1, 3, 8}) == forms::Form{1, 1, 6});
    CHECK(forms::reduce(forms::Form{6, 5, 2}) == forms::Form{2, -1, 3});
    CHECK_FALSE(forms::is_fundamental(-12));
    CHECK(forms::is_fundamental(-3));
}
