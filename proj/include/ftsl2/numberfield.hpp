#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ftsl2/errors.hpp"
#include "ftsl2/exactlinalg.hpp"
#include "ftsl2/numeric.hpp"
#include "ftsl2/poly.hpp"

namespace ftsl2 {

class NumberField;
struct PrimeIdeal;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q[x]/(f), stored over the power basis.
class NFElement {
public:
    NFElement() = default;
    NFElement(const NumberField* K, RatVec c);

    const NumberField* field() const { return K_; }
    const RatVec& coeffs() const { return c_; }

    NFElement operator+(const NFElement& o) const;
    NFElement operator-(const NFElement& o) const;
    NFElement operator*(const NFElement& o) const;
    NFElement operator/(const NFElement& o) const;
    NFElement operator-() const;
    NFElement scaled(const Rat& q) const;
    bool operator==(const NFElement& o) const { return c_ == o.c_; }
    bool operator!=(const NFElement& o) const { return c_ != o.c_; }

    NFElement inverse() const;
    NFElement pow(long e) const;
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat norm() const;
    Rat trace() const;
    // Coordinates over the integral basis.
    RatVec basis_coords() const;
    bool is_integral() const;
    std::string str() const;

private:
    const NumberField* K_ = nullptr;
    RatVec c_;
};

struct FieldMeta {
    unsigned cyclotomic_m = 0;     // generator is a primitive m-th root of unity
    Int real_quadratic_D = 0;      // CM quartic: maximal real subfield Q(sqrt D)
    RatVec real_quadratic_s;       // power-basis coordinates of sqrt D
    std::string label;
};

class NumberField {
public:
    // Irreducibility is verified; a missing basis is filled in only for the
    // built-in cases (degree 1, quadratic, cyclotomic, squarefree discriminant).
    static FieldPtr make(const ZPoly& min_poly, const std::optional<RatMatrix>& basis = std::nullopt,
                         FieldMeta meta = {});

    size_t degree() const { return n_; }
    size_t r1() const { return r1_; }
    size_t r2() const { return r2_; }
    size_t places() const { return r1_ + r2_; }
    const ZPoly& poly() const { return f_; }
    const QPoly& qpoly() const { return fq_; }
    const RatMatrix& basis() const { return B_; }       // rows: omega_i over power basis
    const RatMatrix& basis_inv() const { return Binv_; }
    const Int& discriminant() const { return disc_; }
    const Int& index() const { return index_; }         // [O : Z[theta]]
    const FieldMeta& meta() const { return meta_; }
    bool power_basis_is_integral_basis() const { return index_ == 1; }

    NFElement zero() const;
    NFElement one() const;
    NFElement theta() const;
    NFElement from_int(const Int& a) const;
    NFElement from_rat(const Rat& a) const;
    NFElement from_power(const RatVec& c) const;
    NFElement from_basis(const RatVec& c) const;
    NFElement from_basis(const IntVec& c) const;
    NFElement omega(size_t i) const;

    // Products in integral-basis coordinates.
    IntVec mul_basis(const IntVec& a, const IntVec& b) const;
    // Row j = a * omega_j in integral-basis coordinates.
    IntMatrix mult_matrix(const IntVec& a) const;
    const std::vector<IntMatrix>& structure() const { return mult_; }

    // Numerical embeddings: places 0..r1-1 real, then one per complex pair.
    std::vector<Complex> roots(mpfr_prec_t prec) const;
    const std::vector<std::complex<double>>& roots_d() const { return roots_d_; }
    Complex embed(const NFElement& x, size_t place, mpfr_prec_t prec) const;
    std::vector<std::complex<double>> embed_d(const NFElement& x) const;
    // Embeddings of the integral basis, [place][i].
    const std::vector<std::vector<std::complex<double>>>& basis_embeddings_d() const { return omega_d_; }
    bool place_is_real(size_t j) const { return j < r1_; }

    // Primes above p, computed once per field (see primes_above).
    const std::vector<PrimeIdeal>& cached_primes(const Int& p) const;

    bool same_as(const NumberField& o) const { return f_ == o.f_ && B_ == o.B_; }
    std::string describe() const;

private:
    NumberField() = default;
    void init_numeric();

    size_t n_ = 0, r1_ = 0, r2_ = 0;
    ZPoly f_;
    QPoly fq_;
    RatMatrix B_, Binv_;
    Int disc_, index_;
    FieldMeta meta_;
    std::vector<IntMatrix> mult_;  // mult_[i] row j = omega_i omega_j
    std::vector<std::complex<double>> roots_d_;
    std::vector<std::vector<std::complex<double>>> omega_d_;
    mutable std::mutex cache_mu_;
    mutable std::map<mpfr_prec_t, std::vector<Complex>> roots_cache_;
    mutable std::mutex primes_mu_;
    mutable std::map<Int, std::shared_ptr<const std::vector<PrimeIdeal>>> primes_cache_;
};

// Irreducibility over Q of a monic integer polynomial: rational roots,
// factorisation patterns modulo small primes, then exact subset products of
// numerical roots for degree <= 12. Throws Undecided when all tests fail.
bool is_irreducible(const ZPoly& f);

// Fractional ideal of the maximal order: (HNF lattice over the integral basis) / den.
class Ideal {
public:
    Ideal() = default;
    static Ideal unit(const NumberField& K);
    static Ideal principal(const NFElement& x);
    static Ideal from_generators(const NumberField& K, const std::vector<NFElement>& gens);
    // Z-lattice given by integer rows over the integral basis, divided by den.
    static Ideal from_lattice(const NumberField& K, const IntMatrix& rows, const Int& den);

    const NumberField& field() const { return *K_; }
    const IntMatrix& hnf() const { return H_; }
    const Int& den() const { return den_; }
    bool is_integral() const { return den_ == 1; }
    bool is_zero() const { return H_.rows() == 0; }

    Ideal operator*(const Ideal& o) const;
    Ideal inverse() const;
    Ideal pow(long e) const;
    Ideal scaled(const Rat& q) const;
    Ideal conjugate_by(const RatMatrix& auto_basis) const;  // image under a field automorphism
    Rat norm() const;
    bool contains(const NFElement& x) const;
    bool contains_basis_vec(const IntVec& v) const;  // integral-basis coordinates
    bool divides(const Ideal& o) const;              // o subset of this
    std::vector<NFElement> basis_elements() const;
    // Integral ideal obtained by clearing the denominator.
    Ideal numerator() const;
    bool operator==(const Ideal& o) const { return H_ == o.H_ && den_ == o.den_; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    bool operator<(const Ideal& o) const;
    std::string str() const;

private:
    void normalise();
    const NumberField* K_ = nullptr;
    IntMatrix H_;
    Int den_ = 1;
};

struct PrimeIdeal {
    Int p;
    unsigned e = 0, f = 0;
    Ideal ideal;
    IntVec helper;  // b in p P^{-1} \ pO, integral-basis coordinates
    Int norm() const;
    bool operator==(const PrimeIdeal& o) const { return ideal == o.ideal; }
    bool operator<(const PrimeIdeal& o) const;
    std::string str() const;
};

// Kummer-Dedekind; throws IndexDivisor when p divides [O : Z[theta]].
std::vector<PrimeIdeal> factor_rational_prime(const Int& p, const NumberField& K);
// Splitting of the algebra O/pO; valid for every p (including index divisors).
std::vector<PrimeIdeal> decompose_prime(const Int& p, const NumberField& K);
// Kummer-Dedekind when applicable, algebra splitting otherwise.
std::vector<PrimeIdeal> primes_above(const Int& p, const NumberField& K);

long valuation(const PrimeIdeal& P, const NFElement& x);
long valuation(const PrimeIdeal& P, const Ideal& I);
std::vector<std::pair<PrimeIdeal, long>> factor_ideal(const Ideal& I);

// Roots in K of a polynomial with coefficients in K (constant first).
// Returns nullopt only when no root exists; throws Undecided when the search
// cannot decide within the precision and combination caps.
struct RootSearchOptions {
    mpfr_prec_t start_prec = 256;
    mpfr_prec_t max_prec = 4096;
    size_t max_combinations = 1u << 16;
};
std::optional<NFElement> find_root(const std::vector<NFElement>& coeffs, const NumberField& K,
                                   const RootSearchOptions& opts = {});
std::vector<NFElement> to_field_poly(const ZPoly& f, const NumberField& K);
NFElement eval_poly(const std::vector<NFElement>& coeffs, const NFElement& x);

}  // namespace ftsl2
