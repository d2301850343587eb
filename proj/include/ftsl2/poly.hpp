#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ftsl2/exactlinalg.hpp"

namespace ftsl2 {

// Dense univariate polynomials, constant term first, no trailing zeros.
using QPoly = std::vector<Rat>;
using ZPoly = std::vector<Int>;

namespace poly {

int degree(const QPoly& p);
int degree(const ZPoly& p);
void trim(QPoly& p);
void trim(ZPoly& p);
QPoly to_q(const ZPoly& p);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rat& c);
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly mod(const QPoly& a, const QPoly& b);
QPoly monic_gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly& a);
Rat eval(const QPoly& p, const Rat& x);
Rat resultant(const QPoly& a, const QPoly& b);
Int discriminant(const ZPoly& f);  // monic f
// Number of distinct real roots (Sturm).
size_t count_real_roots(const ZPoly& f);

ZPoly cyclotomic(unsigned m);
// Minimal polynomial over Q of 2cos(2*pi/ell), ell odd prime.
ZPoly cos_minpoly(unsigned ell);
// m such that f is the m-th cyclotomic polynomial, 0 otherwise.
unsigned cyclotomic_index(const ZPoly& f);

std::vector<Int> prime_factors(Int n);  // distinct primes, ascending
bool is_prime(const Int& n);
Int squarefree_part(const Int& n);       // sign kept
unsigned long euler_phi(unsigned long m);

}  // namespace poly

// Polynomials over F_p with p < 2^32, constant term first.
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(uint64_t p, std::vector<uint64_t> c);
    static FpPoly reduce(const ZPoly& f, uint64_t p);
    static FpPoly x(uint64_t p);
    static FpPoly constant(uint64_t p, uint64_t c);

    uint64_t prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    uint64_t lead() const { return c_.back(); }

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly operator%(const FpPoly& o) const;
    FpPoly operator/(const FpPoly& o) const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const FpPoly& o) const;
    FpPoly monic() const;
    FpPoly derivative() const;
    FpPoly powmod(const Int& e, const FpPoly& m) const;
    ZPoly lift() const;  // coefficients in [0, p)

    static FpPoly gcd(FpPoly a, FpPoly b);

private:
    void trim();
    uint64_t p_ = 2;
    std::vector<uint64_t> c_;
};

uint64_t fp_mul(uint64_t a, uint64_t b, uint64_t p);
uint64_t fp_inv(uint64_t a, uint64_t p);
uint64_t fp_pow(uint64_t a, uint64_t e, uint64_t p);

// Monic irreducible factors with multiplicities, sorted canonically.
std::vector<std::pair<FpPoly, unsigned>> factor_mod_p(const FpPoly& f);

}  // namespace ftsl2
