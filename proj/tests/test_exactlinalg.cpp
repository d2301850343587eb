#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "ftsl2/exactlinalg.hpp"

using namespace ftsl2;

namespace {

IntMatrix random_matrix(std::mt19937& rng, size_t r, size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// v lies in the row lattice of the square nonsingular m.
bool in_lattice(const IntMatrix& m, const IntVec& v) {
    RatVec b(v.begin(), v.end()), x;
    if (!solve_left(RatMatrix::from(m), b, x)) return false;
    for (const auto& q : x)
        if (q.get_den() != 1) return false;
    return true;
}

Int gcd_minors(const IntMatrix& m, size_t k) {
    Int g = 0;
    for (unsigned rm = 0; rm < (1u << m.rows()); ++rm) {
        if (static_cast<size_t>(__builtin_popcount(rm)) != k) continue;
        for (unsigned cm = 0; cm < (1u << m.cols()); ++cm) {
            if (static_cast<size_t>(__builtin_popcount(cm)) != k) continue;
            RatMatrix sub(k, k);
            size_t a = 0;
            for (size_t i = 0; i < m.rows(); ++i) {
                if (!(rm >> i & 1)) continue;
                size_t b = 0;
                for (size_t j = 0; j < m.cols(); ++j) {
                    if (!(cm >> j & 1)) continue;
                    sub(a, b++) = m(i, j);
                }
                ++a;
            }
            Rat d = sub.det();
            g = gcd(g, Int(d.get_num()));
        }
    }
    return g;
}

// HNF of a nonsingular 3x3 by determinantal divisors plus exhaustive search
// for the reduced off-diagonal entries.
IntMatrix brute_hnf3(const IntMatrix& m) {
    // Row-style upper triangular form: the first k rows span the projection
    // of the lattice onto the first k columns.
    auto leading_gcd = [&](size_t k) {
        IntMatrix t(3, k);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < k; ++j) t(i, j) = m(i, j);
        return gcd_minors(t, k);
    };
    Int g1 = leading_gcd(1), g2 = leading_gcd(2), g3 = leading_gcd(3);
    Int d1 = g1, d2 = g2 / g1, d3 = g3 / g2;
    IntMatrix h(3, 3);
    h(0, 0) = d1;
    h(1, 1) = d2;
    h(2, 2) = d3;
    bool found = false;
    for (Int x = 0; x < d3 && !found; ++x) {
        if (in_lattice(m, {0, d2, x})) {
            h(1, 2) = x;
            found = true;
        }
    }
    REQUIRE(found);
    found = false;
    for (Int y = 0; y < d2 && !found; ++y)
        for (Int z = 0; z < d3 && !found; ++z)
            if (in_lattice(m, {d1, y, z})) {
                h(0, 1) = y;
                h(0, 2) = z;
                found = true;
            }
    REQUIRE(found);
    return h;
}

}  // namespace

TEST_CASE("hnf trivial cases") {
    auto I = IntMatrix::identity(3);
    CHECK(hnf(I).H == I);
    IntMatrix d(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 3;
    CHECK(hnf(d).H == d);
}

TEST_CASE("hnf matches determinantal brute force on random 3x3") {
    std::mt19937 rng(12345);
    int tested = 0;
    while (tested < 40) {
        IntMatrix m = random_matrix(rng, 3, 3, -9, 9);
        if (RatMatrix::from(m).det() == 0) continue;
        auto res = hnf(m);
        CHECK(res.H == brute_hnf3(m));
        CHECK(res.U * m == res.H);
        Rat du = RatMatrix::from(res.U).det();
        CHECK(abs(du) == 1);
        ++tested;
    }
}

TEST_CASE("hnf is idempotent and hnf_rows agrees with modular variant") {
    std::mt19937 rng(7);
    for (int k = 0; k < 30; ++k) {
        IntMatrix m = random_matrix(rng, 5, 4, -20, 20);
        auto h = hnf(m);
        CHECK(hnf(h.H).H == h.H);
        IntMatrix rows = hnf_rows(m);
        CHECK(rows.rows() == h.rank);
        if (h.rank == 4) {
            Rat det = RatMatrix::from(rows).det();
            Int D = abs(det.get_num());
            CHECK(hnf_rows(m, D) == rows);
            CHECK(hnf_rows(m, 3 * D) == rows);
        }
    }
}

TEST_CASE("incremental hnf equals batch hnf") {
    std::mt19937 rng(99);
    for (int k = 0; k < 20; ++k) {
        IntMatrix m = random_matrix(rng, 9, 5, -30, 30);
        HnfAccumulator acc(5);
        for (size_t i = 0; i < m.rows(); ++i) acc.add(m.row(i));
        CHECK(acc.basis() == hnf_rows(m));
    }
}

TEST_CASE("snf examples and minor-gcd oracle") {
    IntMatrix d(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 3;
    CHECK(snf(d) == IntVec{1, 6});
    CHECK(snf(IntMatrix(3, 3)).empty());
    std::mt19937 rng(2024);
    for (int k = 0; k < 25; ++k) {
        IntMatrix m = random_matrix(rng, 3, 4, -9, 9);
        auto s = snf_full(m);
        // determinantal divisors
        Int prod = 1;
        for (size_t i = 0; i < 3; ++i) {
            prod *= s.diag[i];
            CHECK(prod == gcd_minors(m, i + 1));
            if (i + 1 < 3 && s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        }
        // transforms
        IntMatrix D = s.U * m * s.V;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 4; ++j) CHECK(D(i, j) == (i == j ? s.diag[i] : Int(0)));
        CHECK(s.V * s.Vinv == IntMatrix::identity(4));
    }
}

TEST_CASE("snf product equals |det| for square nonsingular") {
    std::mt19937 rng(5);
    for (int k = 0; k < 20; ++k) {
        IntMatrix m = random_matrix(rng, 4, 4, -12, 12);
        Rat det = RatMatrix::from(m).det();
        if (det == 0) continue;
        Int p = 1;
        for (const auto& x : snf(m)) p *= x;
        CHECK(p == abs(det.get_num()));
    }
}

TEST_CASE("cokernel examples") {
    IntMatrix two(1, 1);
    two(0, 0) = 2;
    auto c1 = cokernel(two, 1);
    CHECK(c1.group.free_rank == 0);
    CHECK(c1.group.torsion.invariants() == IntVec{2});

    auto c2 = cokernel(IntMatrix(0, 2), 2);
    CHECK(c2.group.free_rank == 2);
    CHECK(c2.group.torsion.trivial());

    IntMatrix m = IntMatrix::from_rows({{2, 1}, {0, 3}}, 2);
    auto c3 = cokernel(m, 2);
    // coset enumeration of Z^2 / row span
    std::vector<IntVec> classes;
    for (long x = 0; x < 6; ++x)
        for (long y = 0; y < 6; ++y) {
            bool fresh = true;
            for (const auto& c : classes)
                if (in_lattice(m, {x - c[0], y - c[1]})) fresh = false;
            if (fresh) classes.push_back({x, y});
        }
    CHECK(classes.size() == 6);
    CHECK(c3.group.torsion.order() == 6);
    CHECK(c3.group.free_rank == 0);
    // projection is constant on cosets and separates them
    for (const auto& a : classes)
        for (const auto& b : classes) {
            bool same = in_lattice(m, {a[0] - b[0], a[1] - b[1]});
            CHECK((c3.project(a) == c3.project(b)) == same);
        }
    // lifts project back to unit coordinates
    for (size_t k = 0; k < c3.lifts.rows(); ++k) {
        IntVec e(c3.lifts.rows());
        e[k] = 1;
        CHECK(c3.project(c3.lifts.row(k)) == c3.group.torsion.reduce(e));
    }
}

TEST_CASE("kernel examples and small-vector oracle") {
    CHECK(kernel(IntMatrix::identity(3)).rows() == 0);
    auto k = kernel(IntMatrix::from_rows({{1, 1}}, 2));
    REQUIRE(k.rows() == 1);
    CHECK((k.row(0) == IntVec{1, -1} || k.row(0) == IntVec{-1, 1}));

    std::mt19937 rng(77);
    for (int t = 0; t < 10; ++t) {
        IntMatrix m = random_matrix(rng, 2, 4, -4, 4);
        IntMatrix K = kernel(m);
        CHECK(K.rows() == 4 - RatMatrix::from(m).rank());
        for (size_t i = 0; i < K.rows(); ++i) CHECK(is_zero(vec_mat(K.row(i), m.transpose())));
        // every small kernel vector is an integral combination of the basis
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b)
                for (int c = -3; c <= 3; ++c)
                    for (int d = -3; d <= 3; ++d) {
                        IntVec v{a, b, c, d};
                        if (!is_zero(vec_mat(v, m.transpose()))) continue;
                        IntMatrix aug = K;
                        aug.append_row(v);
                        CHECK(RatMatrix::from(aug).rank() == K.rows());
                        IntVec y;
                        CHECK(solve_left_integral(K, v, y));
                    }
    }
}

TEST_CASE("hom kernel and cokernel on Z/6 doubling") {
    FinGenAbGroup z6{0, FiniteAbelianGroup({6})};
    auto P = Presentation::of(z6);
    IntMatrix f = IntMatrix::from_rows({{2}}, 1);
    auto hk = hom_kernel(P, P, f);
    CHECK(hk.group.torsion.invariants() == IntVec{2});
    CHECK(hk.group.free_rank == 0);
    REQUIRE(hk.generators.rows() == 1);
    CHECK(hk.generators(0, 0) % 6 == 3);
    auto ck = hom_cokernel(P, f);
    CHECK(ck.group.torsion.invariants() == IntVec{2});
}

TEST_CASE("hom kernel with free part") {
    // Z x Z/4 -> Z/4, (a, b) -> a + 2b
    Presentation src = Presentation::of(FinGenAbGroup{1, FiniteAbelianGroup({4})});
    Presentation dst = Presentation::of(FinGenAbGroup{0, FiniteAbelianGroup({4})});
    // generator order in src: torsion first (b), then free (a)
    IntMatrix f = IntMatrix::from_rows({{2}, {1}}, 1);
    auto hk = hom_kernel(src, dst, f);
    CHECK(hk.group.free_rank == 1);
    // kernel has order-2 torsion from b = 2
    CHECK(hk.group.torsion.invariants() == IntVec{2});
    auto ck = hom_cokernel(dst, f);
    CHECK(ck.group.torsion.trivial());
}

TEST_CASE("finite abelian group normalisation and enumeration") {
    FiniteAbelianGroup g({2, 3, 4});
    CHECK(g.invariants() == IntVec{2, 12});
    CHECK(g.order() == 24);
    std::set<size_t> seen;
    for (size_t i = 0; i < g.size(); ++i) {
        auto e = g.element(i);
        CHECK(g.index_of(e) == i);
        seen.insert(i);
    }
    CHECK(seen.size() == 24);
    CHECK(g.element_order({1, 1}) == 12);
    CHECK(g.element_order({1, 6}) == 2);
}
