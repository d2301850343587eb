#include "ftsl2/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ftsl2/errors.hpp"

namespace ftsl2 {

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Int& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rat& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

namespace {
mpfr_prec_t pmax(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Real Real::operator+(const Real& o) const {
    Real r(pmax(*this, o));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-(const Real& o) const {
    Real r(pmax(*this, o));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator*(const Real& o) const {
    Real r(pmax(*this, o));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator/(const Real& o) const {
    Real r(pmax(*this, o));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real Real::abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const {
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::log() const {
    Real r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}

long Real::exponent() const {
    if (mpfr_zero_p(v_)) return -(1L << 40);
    return mpfr_get_exp(v_);
}

Int Real::round() const {
    Int z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

Real Real::frac_dist() const {
    Real r(prec());
    Real n(round(), prec());
    mpfr_sub(r.v_, v_, n.v_, MPFR_RNDN);
    return r.abs();
}

Complex Complex::operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }

Complex Complex::operator/(const Complex& o) const {
    Real d = o.norm2();
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

namespace {

using cd = std::complex<double>;

std::vector<cd> aberth_double(const std::vector<cd>& a) {
    const size_t n = a.size() - 1;
    double bound = 0;
    for (size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[i] / a[n]));
    double r = 1 + bound;
    // a tighter Fujiwara-type radius keeps the start points reasonable
    double fuj = 0;
    for (size_t i = 0; i < n; ++i)
        fuj = std::max(fuj, std::pow(std::abs(a[i] / a[n]), 1.0 / static_cast<double>(n - i)));
    r = std::min(r, 2 * fuj + 1e-3);
    std::vector<cd> z(n);
    for (size_t k = 0; k < n; ++k)
        z[k] = std::polar(r, 2 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4);
    for (int it = 0; it < 1000; ++it) {
        double maxc = 0;
        for (size_t k = 0; k < n; ++k) {
            cd p = a[n], dp = 0;
            for (size_t i = n; i-- > 0;) {
                dp = dp * z[k] + p;
                p = p * z[k] + a[i];
            }
            if (p == cd(0)) continue;
            cd w = p / dp, s = 0;
            for (size_t j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            cd c = w / (1.0 - w * s);
            z[k] -= c;
            maxc = std::max(maxc, std::abs(c) / (1 + std::abs(z[k])));
        }
        if (maxc < 1e-15) break;
    }
    return z;
}

}  // namespace

std::vector<Complex> complex_roots(const std::vector<Complex>& a, mpfr_prec_t prec) {
    if (a.size() < 2) return {};
    const size_t n = a.size() - 1;
    if (mpfr_zero_p(a[n].re.get()) && mpfr_zero_p(a[n].im.get()))
        throw std::invalid_argument("complex_roots: zero leading coefficient");
    std::vector<cd> ad;
    for (const auto& c : a) ad.push_back(c.to_cd());
    auto zd = aberth_double(ad);
    std::vector<Complex> z;
    for (const auto& v : zd) z.emplace_back(Real(v.real(), prec), Real(v.imag(), prec));
    std::vector<Complex> A;
    for (const auto& c : a) {
        Complex cc(prec);
        mpfr_set(cc.re.get(), c.re.get(), MPFR_RNDN);
        mpfr_set(cc.im.get(), c.im.get(), MPFR_RNDN);
        A.push_back(std::move(cc));
    }
    const long target = -static_cast<long>(prec) + 12;
    bool converged = false;
    for (int it = 0; it < 400 && !converged; ++it) {
        long worst = -(1L << 40);
        for (size_t k = 0; k < n; ++k) {
            Complex p = A[n], dp(prec);
            for (size_t i = n; i-- > 0;) {
                dp = dp * z[k] + p;
                p = p * z[k] + A[i];
            }
            if (mpfr_zero_p(p.re.get()) && mpfr_zero_p(p.im.get())) continue;
            Complex w = p / dp, s(prec);
            for (size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                Complex one(Real(1.0, prec), Real(prec));
                s = s + one / (z[k] - z[j]);
            }
            Complex one(Real(1.0, prec), Real(prec));
            Complex c = w / (one - w * s);
            z[k] = z[k] - c;
            Real rel = c.abs() / (Real(1.0, prec) + z[k].abs());
            worst = std::max(worst, rel.exponent());
        }
        if (worst < target) converged = true;
    }
    if (!converged) throw PrecisionExhausted("root iteration did not converge at " + std::to_string(prec) + " bits");
    return z;
}

std::vector<Complex> complex_roots(const ZPoly& f, mpfr_prec_t prec) {
    std::vector<Complex> a;
    for (const auto& c : f) a.emplace_back(Real(c, prec), Real(prec));
    return complex_roots(a, prec);
}

std::vector<Complex> ordered_roots(const ZPoly& f, size_t r1, mpfr_prec_t prec) {
    auto z = complex_roots(f, prec);
    std::vector<std::pair<Real, size_t>> ims;
    for (size_t i = 0; i < z.size(); ++i) ims.emplace_back(z[i].im.abs(), i);
    std::sort(ims.begin(), ims.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Complex> real, cplx;
    for (size_t k = 0; k < ims.size(); ++k) {
        Complex c = z[ims[k].second];
        if (k < r1) {
            c.im = Real(prec);
            real.push_back(c);
        } else if (c.im.sign() > 0) {
            cplx.push_back(c);
        }
    }
    if (cplx.size() * 2 + r1 != z.size()) throw PrecisionExhausted("root pairing failed");
    std::sort(real.begin(), real.end(), [](const Complex& a, const Complex& b) { return a.re < b.re; });
    std::sort(cplx.begin(), cplx.end(), [](const Complex& a, const Complex& b) {
        if (a.re < b.re || b.re < a.re) return a.re < b.re;
        return a.im < b.im;
    });
    real.insert(real.end(), cplx.begin(), cplx.end());
    return real;
}

Complex eval_rational_poly(const QPoly& p, const Complex& x) {
    const mpfr_prec_t prec = x.prec();
    Complex v(prec);
    for (size_t i = p.size(); i-- > 0;) {
        v = v * x;
        v.re += Real(p[i], prec);
    }
    return v;
}

bool solve_real(std::vector<std::vector<Real>> a, std::vector<Real> b, std::vector<Real>& x) {
    const size_t n = a.size();
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (a[i][k].abs() > a[piv][k].abs()) piv = i;
        if (mpfr_zero_p(a[piv][k].get())) return false;
        std::swap(a[piv], a[k]);
        std::swap(b[piv], b[k]);
        for (size_t i = k + 1; i < n; ++i) {
            Real f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    x.assign(n, Real(b.empty() ? 53 : b[0].prec()));
    for (size_t k = n; k-- > 0;) {
        Real s = b[k];
        for (size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
        x[k] = s / a[k][k];
    }
    return true;
}

}  // namespace ftsl2
