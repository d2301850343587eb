#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace ftsl2 {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}

    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, size_t cols);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Int& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    IntVec row(size_t i) const;
    void set_row(size_t i, const IntVec& v);
    void append_row(const IntVec& v);
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;
    IntMatrix rows_range(size_t begin, size_t end) const;
    std::string str() const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// v * M for a row vector v.
IntVec vec_mat(const IntVec& v, const IntMatrix& m);
bool is_zero(const IntVec& v);

struct HnfResult {
    IntMatrix H;  // same shape as the input, zero rows last
    IntMatrix U;  // unimodular, H = U * M
    size_t rank = 0;
};

HnfResult hnf(const IntMatrix& m);

// Nonzero rows of the HNF of the row lattice. A nonzero modulus D asserts
// that D*Z^c lies in the lattice; entries are then kept reduced mod D and the
// result is square of full rank.
IntMatrix hnf_rows(const IntMatrix& m, const Int& modulus = 0);

// Incremental row HNF for long relation streams.
class HnfAccumulator {
public:
    explicit HnfAccumulator(size_t cols) : cols_(cols), pivot_row_(cols, -1) {}
    // Returns true when the lattice changed.
    bool add(IntVec v);
    size_t rank() const { return rows_.size(); }
    bool full_rank() const { return rows_.size() == cols_; }
    Int determinant() const;  // product of pivots, 0 unless full rank
    IntMatrix basis() const;  // canonical HNF rows

private:
    size_t cols_;
    std::vector<IntVec> rows_;
    std::vector<int> pivot_row_;
    std::vector<size_t> pivot_col_;
    Int modulus_ = 0;
};

struct SnfResult {
    IntMatrix U, V, Vinv;  // U * M * V = D
    IntVec diag;           // min(rows, cols) diagonal entries, divisibility chain, zeros last
};

SnfResult snf_full(const IntMatrix& m);
// Nonzero invariant factors (1s included, zeros dropped).
IntVec snf(const IntMatrix& m);

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    // Accepts any list of positive moduli; 1s are dropped, the chain is normalised.
    explicit FiniteAbelianGroup(const IntVec& moduli);

    const IntVec& invariants() const { return inv_; }
    size_t ngens() const { return inv_.size(); }
    Int order() const;
    bool trivial() const { return inv_.empty(); }

    IntVec zero() const { return IntVec(inv_.size()); }
    IntVec reduce(IntVec v) const;
    IntVec add(const IntVec& a, const IntVec& b) const;
    IntVec neg(const IntVec& a) const;
    IntVec scale(const IntVec& a, const Int& k) const;
    Int element_order(const IntVec& a) const;

    // Mixed-radix enumeration; only for groups small enough to list.
    size_t size() const;
    IntVec element(size_t index) const;
    size_t index_of(const IntVec& a) const;

    std::string str() const;
    bool operator==(const FiniteAbelianGroup& o) const { return inv_ == o.inv_; }

private:
    IntVec inv_;
};

struct FinGenAbGroup {
    size_t free_rank = 0;
    FiniteAbelianGroup torsion;
    std::string str() const;
    bool operator==(const FinGenAbGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

// Z^c modulo the row span of a relation matrix.
struct Cokernel {
    FinGenAbGroup group;
    IntMatrix proj;   // c x (t + r): ambient row vector -> raw coordinates
    IntMatrix lifts;  // (t + r) x c: ambient representative of each generator
    size_t ambient = 0;

    // Canonical coordinates: torsion part reduced, free part as is.
    IntVec project(const IntVec& x) const;
    IntVec lift(const IntVec& coords) const;
    bool is_zero_class(const IntVec& x) const;
};

Cokernel cokernel(const IntMatrix& relations, size_t ngens);

// Rows form the canonical HNF basis of {x : M x = 0}.
IntMatrix kernel(const IntMatrix& m);
// Rows form the canonical HNF basis of {x : x M = 0}.
IntMatrix left_kernel(const IntMatrix& m);

// Finitely presented abelian group: Z^ngens modulo row span of relations.
struct Presentation {
    size_t ngens = 0;
    IntMatrix relations;  // k x ngens
    static Presentation free(size_t n);
    static Presentation of(const FinGenAbGroup& g);  // torsion generators first
};

struct HomKernel {
    FinGenAbGroup group;
    IntMatrix generators;  // one row per generator of `group`, in source coordinates
};

// Hom given by images: row i = image of source generator i in target coordinates.
HomKernel hom_kernel(const Presentation& src, const Presentation& dst, const IntMatrix& images);
Cokernel hom_cokernel(const Presentation& dst, const IntMatrix& images);

// Solve x * M = b over Z; returns false when no integral solution exists.
bool solve_left_integral(const IntMatrix& m, const IntVec& b, IntVec& x);

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
    static RatMatrix identity(size_t n);
    static RatMatrix from(const IntMatrix& m);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Rat& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Rat& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
    RatVec row(size_t i) const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix transpose() const;
    bool operator==(const RatMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Rat det() const;
    bool invert(RatMatrix& out) const;
    size_t rank() const;
    // Common denominator d and integer matrix N with M = N / d.
    Int common_denominator() const;
    IntMatrix scaled_integral(const Int& d) const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

RatVec vec_mat(const RatVec& v, const RatMatrix& m);
// Solve x * M = b for square invertible M.
bool solve_left(const RatMatrix& m, const RatVec& b, RatVec& x);

Int lcm_denominators(const RatVec& v);

}  // namespace ftsl2
