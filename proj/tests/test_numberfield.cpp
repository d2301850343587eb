#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ftsl2/numberfield.hpp"

using namespace ftsl2;

namespace {

ZPoly zp(std::initializer_list<long> c) {
    ZPoly p;
    for (long x : c) p.emplace_back(x);
    return p;
}

RatMatrix rat_rows(std::vector<std::vector<Rat>> rows) {
    RatMatrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

// det of the trace form Tr(w_i w_j), computed from numerical embeddings rounded
// to integers; independent of the basis-matrix route used by the library.
Int trace_form_disc(const NumberField& K) {
    const size_t n = K.degree();
    RatMatrix T(n, n);
    auto z = complex_roots(K.poly(), 200);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Real s(200);
            for (const auto& r : z) {
                Complex a = eval_rational_poly(K.basis().row(i), r);
                Complex b = eval_rational_poly(K.basis().row(j), r);
                s += (a * b).re;
            }
            T(i, j) = Rat(s.round());
        }
    return T.det().get_num();
}

// Sylvester-matrix resultant, an oracle for element norms.
Rat sylvester_res(const QPoly& f, const QPoly& g) {
    const size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
    RatMatrix S(N, N);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= m; ++j) S(i, i + j) = f[m - j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= n; ++j) S(n + i, i + j) = g[n - j];
    return S.det();
}

Ideal lattice_product_oracle(const Ideal& a, const Ideal& b) {
    const NumberField& K = a.field();
    IntMatrix rows(0, K.degree());
    Int den = a.den() * b.den();
    for (const auto& x : a.basis_elements())
        for (const auto& y : b.basis_elements()) {
            RatVec c = (x * y).basis_coords();
            IntVec v;
            for (auto& q : c) v.push_back(Rat(q * den).get_num());
            rows.append_row(v);
        }
    return Ideal::from_lattice(K, rows, den);
}

}  // namespace

TEST_CASE("signature and discriminant of small fields") {
    auto gauss = NumberField::make(zp({1, 0, 1}));
    CHECK(gauss->r1() == 0);
    CHECK(gauss->r2() == 1);
    CHECK(gauss->discriminant() == -4);

    auto k5 = NumberField::make(zp({-5, 0, 1}), rat_rows({{1, 0}, {Rat(1, 2), Rat(1, 2)}}));
    CHECK(k5->discriminant() == 5);
    CHECK(trace_form_disc(*k5) == 5);
    CHECK(k5->r1() == 2);

    auto eis = NumberField::make(zp({1, -1, 1}));
    CHECK(eis->discriminant() == -3);
    CHECK(trace_form_disc(*eis) == -3);

    // built-in quadratic basis for a non-maximal power basis
    auto k5b = NumberField::make(zp({-5, 0, 1}));
    CHECK(k5b->discriminant() == 5);
    auto km3 = NumberField::make(zp({3, 0, 1}));
    CHECK(km3->discriminant() == -3);
    CHECK(km3->index() == 2);

    auto cub = NumberField::make(zp({-2, 0, 0, 1}), RatMatrix::identity(3));
    CHECK(cub->r1() == 1);
    CHECK(cub->r2() == 1);
    CHECK(trace_form_disc(*cub) == cub->discriminant());
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(NumberField::make(zp({2, 0, 3, 0, 1})), ReduciblePolynomial);  // (x^2+1)(x^2+2)
    CHECK_THROWS_AS(NumberField::make(zp({-1, 0, 1})), ReduciblePolynomial);
    // x^4+1 and a Swinnerton-Dyer polynomial are reducible modulo every prime
    CHECK(is_irreducible(zp({1, 0, 0, 0, 1})));
    CHECK(is_irreducible(zp({576, 0, -960, 0, 352, 0, -40, 0, 1})));
    CHECK_FALSE(is_irreducible(zp({1, 0, -2, 0, 1})));  // (x^2-1)^2
    // {1, theta/2} is not closed for x^2 + 5
    CHECK_THROWS_AS(NumberField::make(zp({5, 0, 1}), rat_rows({{1, 0}, {0, Rat(1, 2)}})), BasisNotClosed);
    CHECK_THROWS_AS(NumberField::make(zp({-8, -2, -1, 1})), SchemaViolation);  // disc not squarefree, no basis
}

TEST_CASE("element arithmetic and norms") {
    auto K = NumberField::make(zp({1, 1, 1}));  // Q(zeta_3)
    NFElement z = K->theta();
    CHECK((z * z * z).is_one());
    NFElement a = K->one() - z;
    CHECK(a.norm() == 3);
    CHECK(sylvester_res(K->qpoly(), a.coeffs()) == 3);
    CHECK(Ideal::principal(a).norm() == 3);
    CHECK((a * a.inverse()).is_one());
    CHECK(z.trace() == -1);

    auto L = NumberField::make(zp({-8, -2, -1, 1}), rat_rows({{1, 0, 0}, {0, 1, 0}, {0, Rat(1, 2), Rat(1, 2)}}));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-6, 6);
    for (int t = 0; t < 40; ++t) {
        RatVec x(3), y(3);
        for (int i = 0; i < 3; ++i) {
            x[i] = Rat(dist(rng), 1 + (t % 3));
            x[i].canonicalize();
            y[i] = dist(rng);
        }
        NFElement X = L->from_power(x), Y = L->from_power(y);
        if (X.is_zero() || Y.is_zero()) continue;
        CHECK((X * Y).norm() == X.norm() * Y.norm());
        CHECK(sylvester_res(L->qpoly(), [&] { QPoly q = y; poly::trim(q); return q; }()) == Y.norm());
        CHECK(Ideal::principal(Y).norm() == abs(Y.norm()));
        CHECK(Ideal::principal(X) * Ideal::principal(Y) == Ideal::principal(X * Y));
        CHECK(Ideal::principal(X).norm() * Ideal::principal(Y).norm() == Ideal::principal(X * Y).norm());
    }
}

TEST_CASE("ideal arithmetic in Q(sqrt -5)") {
    auto K = NumberField::make(zp({5, 0, 1}));
    NFElement s = K->theta();
    Ideal P = Ideal::from_generators(*K, {K->from_int(2), K->one() + s});
    CHECK(P.norm() == 2);
    CHECK(P * P == Ideal::principal(K->from_int(2)));
    CHECK(lattice_product_oracle(P, P) == P * P);
    CHECK(P * Ideal::unit(*K) == P);
    Ideal Q = Ideal::from_generators(*K, {K->from_int(3), K->one() + s});
    CHECK(lattice_product_oracle(P, Q) == P * Q);
    CHECK(P * P.inverse() == Ideal::unit(*K));
    CHECK(Q.inverse() * Q == Ideal::unit(*K));
    CHECK(P.inverse().norm() == Rat(1, 2));
    CHECK(P.inverse().contains(K->one()));
    CHECK_FALSE(P.contains(K->one()));
    CHECK(P.contains(K->one() + s));
    Ideal half = P.scaled(Rat(1, 3));
    CHECK(half.norm() == Rat(2, 9));
    CHECK(half.scaled(Rat(3)) == P);
}

TEST_CASE("prime factorisation") {
    auto K = NumberField::make(zp({5, 0, 1}));
    auto p5 = factor_rational_prime(5, *K);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].e == 2);
    CHECK(p5[0].f == 1);
    auto p3 = factor_rational_prime(3, *K);
    REQUIRE(p3.size() == 2);
    // x^2 + 5 mod 3 has the two roots 1 and 2
    int roots = 0;
    for (int x = 0; x < 3; ++x) roots += ((x * x + 5) % 3 == 0);
    CHECK(roots == 2);
    for (auto& P : p3) CHECK(P.f == 1);
    CHECK(p3[0].ideal * p3[1].ideal == Ideal::principal(K->from_int(3)));
    auto p11 = factor_rational_prime(11, *K);  // -5 is not a square mod 11
    REQUIRE(p11.size() == 1);
    CHECK(p11[0].f == 2);

    auto Z23 = NumberField::make(poly::cyclotomic(23));
    auto p23 = factor_rational_prime(23, *Z23);
    REQUIRE(p23.size() == 1);
    CHECK(p23[0].e == 22);
    auto p47 = factor_rational_prime(47, *Z23);
    CHECK(p47.size() == 22);
    CHECK(valuation(p47[0], Z23->from_int(47)) == 1);

    for (long p : {2, 3, 5, 7, 11, 13, 29}) {
        auto a = factor_rational_prime(p, *K);
        auto b = decompose_prime(p, *K);
        REQUIRE(a.size() == b.size());
        unsigned sum = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].ideal == b[i].ideal);
            CHECK(a[i].e == b[i].e);
            CHECK(a[i].f == b[i].f);
            sum += a[i].e * a[i].f;
        }
        CHECK(sum == 2);
    }
}

TEST_CASE("index divisors") {
    auto K = NumberField::make(zp({3, 0, 1}));  // maximal order Z[(1+sqrt-3)/2], index 2
    CHECK_THROWS_AS(factor_rational_prime(2, *K), IndexDivisor);
    auto p2 = primes_above(2, *K);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].f == 2);
    CHECK(p2[0].e == 1);

    // Dedekind's cubic: 2 is a common index divisor and splits completely
    auto D = NumberField::make(zp({-8, -2, -1, 1}), rat_rows({{1, 0, 0}, {0, 1, 0}, {0, Rat(1, 2), Rat(1, 2)}}));
    CHECK(D->discriminant() == -503);
    auto d2 = decompose_prime(2, *D);
    REQUIRE(d2.size() == 3);
    Ideal prod = Ideal::unit(*D);
    for (auto& P : d2) {
        CHECK(P.e == 1);
        CHECK(P.f == 1);
        CHECK(P.ideal.norm() == 2);
        CHECK(valuation(P, D->from_int(2)) == 1);
        prod = prod * P.ideal;
    }
    CHECK(prod == Ideal::principal(D->from_int(2)));
}

TEST_CASE("valuations and ideal factorisation") {
    auto K = NumberField::make(zp({5, 0, 1}));
    NFElement x = K->from_power({Rat(3), Rat(7)});
    NFElement y = K->from_power({Rat(-1, 2), Rat(2)});
    for (const NFElement& e : {x, y, x * y, x / y}) {
        Ideal I = Ideal::principal(e);
        auto fac = factor_ideal(I);
        Ideal prod = Ideal::unit(*K);
        for (auto& [P, v] : fac) {
            CHECK(valuation(P, e) == v);
            prod = prod * P.ideal.pow(v);
        }
        CHECK(prod == I);
    }
}

TEST_CASE("root finding") {
    auto E = NumberField::make(zp({1, 1, 1}));  // Q(zeta_3)
    auto r = find_root(to_field_poly(zp({1, -1, 1}), *E), *E);
    REQUIRE(r);
    CHECK(eval_poly(to_field_poly(zp({1, -1, 1}), *E), *r).is_zero());
    CHECK(r->pow(6).is_one());
    CHECK_FALSE(r->pow(3).is_one());

    auto Q = NumberField::make(zp({0, 1}));
    CHECK_FALSE(find_root(to_field_poly(poly::cos_minpoly(5), *Q), *Q));
    CHECK(find_root(to_field_poly(poly::cos_minpoly(3), *Q), *Q)->coeffs()[0] == -1);

    auto K5 = NumberField::make(zp({-5, 0, 1}));
    auto t = find_root(to_field_poly(poly::cos_minpoly(5), *K5), *K5);
    REQUIRE(t);
    // t = (-1 + sqrt5)/2 or (-1 - sqrt5)/2 depending on the root picked
    CHECK(t->coeffs()[0] == Rat(-1, 2));
    CHECK(abs(t->coeffs()[1]) == Rat(1, 2));
    // Psi_5 = T^2 - t T + 1 has no root in Q(sqrt 5)
    NFElement tt = K5->from_power({Rat(-1, 2), Rat(1, 2)});
    CHECK_FALSE(find_root({K5->one(), -tt, K5->one()}, *K5));
    // x^2 - 3 over Q(sqrt 5): none; x^2 - 45/4: 3 sqrt5 / 2
    CHECK_FALSE(find_root({K5->from_int(-3), K5->zero(), K5->one()}, *K5));
    auto h = find_root({K5->from_rat(Rat(-45, 4)), K5->zero(), K5->one()}, *K5);
    REQUIRE(h);
    CHECK(*h * *h == K5->from_rat(Rat(45, 4)));

    // Q(zeta_5) contains zeta_5, so Psi_5 splits there
    auto Z5 = NumberField::make(poly::cyclotomic(5));
    auto t5 = find_root(to_field_poly(poly::cos_minpoly(5), *Z5), *Z5);
    REQUIRE(t5);
    CHECK(find_root({Z5->one(), -*t5, Z5->one()}, *Z5));
}
