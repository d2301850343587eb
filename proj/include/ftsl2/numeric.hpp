#pragma once

#include <mpfr.h>

#include <complex>
#include <vector>

#include "ftsl2/poly.hpp"

namespace ftsl2 {

// Thin RAII wrapper over mpfr_t with explicit per-value precision, so that
// concurrent computations at different precisions never share global state.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 53);
    Real(double v, mpfr_prec_t prec);
    Real(const Int& v, mpfr_prec_t prec);
    Real(const Rat& v, mpfr_prec_t prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real operator-() const;
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    bool operator<(const Real& o) const { return mpfr_less_p(v_, o.v_); }
    bool operator>(const Real& o) const { return mpfr_greater_p(v_, o.v_); }

    Real abs() const;
    Real sqrt() const;
    Real log() const;
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const;  // binary exponent, very negative for zero
    Int round() const;
    // Distance to the nearest integer.
    Real frac_dist() const;

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    mpfr_prec_t prec() const { return re.prec(); }
    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const;
    Complex operator/(const Complex& o) const;
    Complex operator-() const { return {-re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const { return norm2().sqrt(); }
    std::complex<double> to_cd() const { return {re.to_double(), im.to_double()}; }
};

// All complex roots of a polynomial with complex coefficients (constant
// first, nonzero leading coefficient) by Aberth iteration at `prec` bits.
// Throws PrecisionExhausted-style std::runtime_error when iteration fails.
std::vector<Complex> complex_roots(const std::vector<Complex>& coeffs, mpfr_prec_t prec);
std::vector<Complex> complex_roots(const ZPoly& f, mpfr_prec_t prec);

// Roots of an integer polynomial ordered as the real roots ascending, then one
// root per conjugate pair with positive imaginary part (ordered by real part).
// Requires a squarefree polynomial with exactly r1 real roots.
std::vector<Complex> ordered_roots(const ZPoly& f, size_t r1, mpfr_prec_t prec);

Complex eval_rational_poly(const QPoly& p, const Complex& x);

// Solve A x = b for a square real system by Gaussian elimination with pivoting.
bool solve_real(std::vector<std::vector<Real>> a, std::vector<Real> b, std::vector<Real>& x);

}  // namespace ftsl2
