#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ftsl2/cohomology.hpp"

using namespace ftsl2;

namespace {

NormalizerDescriptor norm(NormalizerDescriptor::Kind k, long m, size_t r) {
    NormalizerDescriptor n;
    n.kind = k;
    n.m = m;
    n.r = r;
    return n;
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long b = 1;
    for (long i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

}  // namespace

TEST_CASE("cyclic oracle") {
    CHECK(oracle_cyclic(6, 3, 1) == 1);
    CHECK(oracle_cyclic(4, 3, 1) == 0);
    CHECK(oracle_cyclic(15, 5, -2) == 1);
    // Tate cohomology of Z/n with F_ell coefficients is F_ell in every degree when ell | n
    for (long n : {3, 6, 9, 15})
        for (long d = -6; d <= 6; ++d) CHECK(oracle_cyclic(n, 3, d) == 1);
    for (long d = -6; d <= 6; ++d) CHECK(oracle_cyclic(10, 3, d) == 0);
}

TEST_CASE("product oracle") {
    CHECK(oracle_product(3, 1, 3, 1) == 2);
    // Kunneth: sum of C(r, j) over all j is 2^r in each degree
    for (size_t r = 0; r <= 3; ++r)
        for (long d = -4; d <= 4; ++d) CHECK(oracle_product(6, r, 3, d) == (1L << r));
    CHECK(oracle_product(5, 2, 3, 0) == 0);
}

TEST_CASE("dihedral oracle") {
    CHECK(oracle_dihedral_invariants(0, 3, 3) == 1);
    CHECK(oracle_dihedral_invariants(0, 3, 1) == 0);
    CHECK(oracle_dihedral_invariants(0, 3, 0) == 1);
    CHECK(oracle_dihedral_invariants(0, 3, 2) == 0);
    // the count is 4-periodic
    for (size_t r = 0; r <= 3; ++r)
        for (long d = -8; d <= 4; ++d) CHECK(oracle_dihedral_invariants(r, 3, d) == oracle_dihedral_invariants(r, 3, d + 4));
}

TEST_CASE("component rings") {
    using K = NormalizerDescriptor::Kind;
    CHECK(component_ring(norm(K::Abelian, 10, 2), 3).kind == GradedRingDescriptor::Kind::Zero);
    CHECK(component_ring(norm(K::Abelian, 6, 2), 3).kind == GradedRingDescriptor::Kind::LaurentTimesExterior);
    CHECK(component_ring(norm(K::Dihedral, 6, 2), 3).kind == GradedRingDescriptor::Kind::InvariantSubring);

    auto d0 = component_ring(norm(K::Dihedral, 6, 0), 3).dimensions();
    CHECK(d0.period == 4);
    CHECK(d0.dims == std::vector<long>{1, 0, 0, 1});
    CHECK(component_ring(norm(K::Dihedral, 6, 1), 3).dimensions().dims == std::vector<long>{1, 0, 1, 2});

    for (size_t r = 0; r <= 6; ++r) {
        auto ab = component_ring(norm(K::Abelian, 6, r), 3).dimensions();
        auto di = component_ring(norm(K::Dihedral, 6, r), 3).dimensions();
        CHECK(ab.sum_over(0, 4) == (1L << (r + 2)));
        CHECK(di.sum_over(0, 4) == (1L << (r + 1)));
        // the invariants sit inside the full ring
        for (long d = 0; d < 4; ++d) CHECK(di.at(d) <= ab.at(d));
        // closed form: monomials a2^i w with i + |w| even
        for (long d = 0; d < 4; ++d) {
            long want = 0;
            for (long w = 0; w <= static_cast<long>(r) + 1; ++w)
                if ((d - w) % 2 == 0 && (((d - w) / 2 + w) % 2 + 2) % 2 == 0) want += binom(r + 1, w);
            CHECK(di.at(d) == want);
        }
    }
}

TEST_CASE("dimension function lookups") {
    DimensionFunction f;
    f.period = 4;
    f.dims = {1, 2, 3, 4};
    CHECK(f.at(0) == 1);
    CHECK(f.at(-1) == 4);
    CHECK(f.at(-8) == 1);
    CHECK(f.at(7) == 4);
    CHECK(f.sum_over(-3, 4) == 10);
    CHECK(f.sum_over(0, 8) == 20);
}

TEST_CASE("total dimensions over components") {
    using K = NormalizerDescriptor::Kind;
    SubgroupClass a, b;
    a.normalizer = norm(K::Abelian, 6, 1);
    b.invariant = true;
    b.normalizer = norm(K::Dihedral, 6, 1);
    auto tot = total_dimensions({a, b}, 3, -4, 3);
    REQUIRE(tot.size() == 8);
    for (long d = -4; d <= 3; ++d) {
        long want = oracle_product(6, 1, 3, d) + oracle_dihedral_invariants(1, 3, d);
        CHECK(tot[d + 4] == want);
    }
    auto fn = total_dimension_function({a, b}, 3);
    CHECK(fn.sum_over(0, 4) == 8 + 4);
}

TEST_CASE("oracle grid") {
    GridSpec spec;
    auto par = oracle_grid(spec, true);
    auto ser = oracle_grid(spec, false);
    REQUIRE(par.size() == ser.size());
    CHECK(par.size() == 4 * 2 * 5 * 25 * 2);
    size_t bad = 0;
    for (size_t i = 0; i < par.size(); ++i) {
        bad += !par[i].ok();
        CHECK(par[i].formula == ser[i].formula);
        CHECK(par[i].oracle == ser[i].oracle);
    }
    CHECK(bad == 0);

    spec.inject_fault = true;
    size_t faulty = 0;
    for (const auto& p : oracle_grid(spec, true)) faulty += !p.ok();
    CHECK(faulty > 0);
}
