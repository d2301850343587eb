#include "ftsl2/poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace ftsl2 {
namespace poly {

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const ZPoly& p) { return QPoly(p.begin(), p.end()); }

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly scale(const QPoly& a, const Rat& c) {
    QPoly r = a;
    for (auto& x : r) x *= c;
    trim(r);
    return r;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.empty()) throw std::domain_error("poly::divmod: division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rat(0));
    const Rat lb = b.back();
    while (!r.empty() && r.size() >= b.size()) {
        size_t sh = r.size() - b.size();
        Rat c = r.back() / lb;
        q[sh] = c;
        for (size_t i = 0; i < b.size(); ++i) r[sh + i] -= c * b[i];
        trim(r);
    }
    trim(q);
}

QPoly mod(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    divmod(a, b, q, r);
    return r;
}

QPoly monic_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return scale(a, 1 / a.back());
}

QPoly derivative(const QPoly& a) {
    QPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<unsigned long>(i));
    trim(d);
    return d;
}

Rat eval(const QPoly& p, const Rat& x) {
    Rat v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

Rat resultant(const QPoly& a0, const QPoly& b0) {
    QPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    Rat res = 1;
    while (true) {
        int da = degree(a), db = degree(b);
        if (db == 0) {
            Rat p = 1;
            for (int i = 0; i < da; ++i) p *= b[0];
            return res * p;
        }
        if (da < db) {
            if ((da * db) % 2) res = -res;
            std::swap(a, b);
            continue;
        }
        QPoly r = mod(a, b);
        if (r.empty()) return 0;
        int dr = degree(r);
        // Res(a,b) = (-1)^{da db} lc(b)^{da-dr} Res(b, r)
        if ((da * db) % 2) res = -res;
        Rat lb = b.back(), pw = 1;
        for (int i = 0; i < da - dr; ++i) pw *= lb;
        res *= pw;
        a = std::move(b);
        b = std::move(r);
    }
}

Int discriminant(const ZPoly& f) {
    QPoly q = to_q(f);
    int n = degree(q);
    Rat r = resultant(q, derivative(q));
    if ((n * (n - 1) / 2) % 2) r = -r;
    r /= q.back();
    if (r.get_den() != 1) throw std::logic_error("poly::discriminant: non-integral");
    return r.get_num();
}

namespace {

int sign_at_pinf(const QPoly& p) { return p.empty() ? 0 : sgn(p.back()); }
int sign_at_minf(const QPoly& p) {
    if (p.empty()) return 0;
    int s = sgn(p.back());
    return (degree(p) % 2) ? -s : s;
}

int changes(const std::vector<int>& s) {
    int c = 0, last = 0;
    for (int x : s) {
        if (x == 0) continue;
        if (last != 0 && x != last) ++c;
        last = x;
    }
    return c;
}

}  // namespace

size_t count_real_roots(const ZPoly& f) {
    QPoly q = to_q(f);
    QPoly g = monic_gcd(q, derivative(q));
    QPoly sq, rem;
    divmod(q, g, sq, rem);
    std::vector<QPoly> seq{sq, derivative(sq)};
    while (!seq.back().empty() && degree(seq.back()) > 0) {
        QPoly r = mod(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        seq.push_back(scale(r, -1));
    }
    std::vector<int> pinf, minf;
    for (const auto& p : seq) {
        pinf.push_back(sign_at_pinf(p));
        minf.push_back(sign_at_minf(p));
    }
    return static_cast<size_t>(changes(minf) - changes(pinf));
}

ZPoly cyclotomic(unsigned m) {
    if (m == 0) throw std::invalid_argument("cyclotomic: m must be positive");
    QPoly num(m + 1);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d) continue;
        QPoly q, r;
        divmod(num, to_q(cyclotomic(d)), q, r);
        num = q;
    }
    ZPoly out;
    for (const auto& c : num) out.push_back(c.get_num());
    return out;
}

ZPoly cos_minpoly(unsigned ell) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("cos_minpoly: ell must be an odd prime");
    unsigned h = (ell - 1) / 2;
    // Dickson polynomials: D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}
    std::vector<QPoly> D{{Rat(2)}, {Rat(0), Rat(1)}};
    for (unsigned k = 2; k <= h; ++k) D.push_back(sub(mul({Rat(0), Rat(1)}, D[k - 1]), D[k - 2]));
    QPoly g{Rat(1)};
    for (unsigned k = 1; k <= h; ++k) g = add(g, D[k]);
    ZPoly out;
    for (const auto& c : g) out.push_back(c.get_num());
    return out;
}

unsigned long euler_phi(unsigned long m) {
    unsigned long r = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        r -= r / p;
    }
    if (m > 1) r -= r / m;
    return r;
}

unsigned cyclotomic_index(const ZPoly& f) {
    unsigned long n = static_cast<unsigned long>(degree(f));
    if (n < 1) return 0;
    for (unsigned long m = 1; m <= 2 * n * n + 2; ++m) {
        if (euler_phi(m) != n) continue;
        if (cyclotomic(static_cast<unsigned>(m)) == f) return static_cast<unsigned>(m);
    }
    return 0;
}

bool is_prime(const Int& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

namespace {

Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) { return Int((v * v + c) % n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(Int(abs(x - y)), n);
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<Int> prime_factors(Int n) {
    n = abs(n);
    std::vector<Int> out;
    if (n == 0) throw std::invalid_argument("prime_factors: zero");
    for (unsigned long p = 2; p < 100000 && Int(p) * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Int squarefree_part(const Int& n) {
    if (n == 0) return 0;
    Int m = abs(n), s = 1;
    for (const auto& p : prime_factors(m)) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e % 2) s *= p;
    }
    return n < 0 ? Int(-s) : s;
}

}  // namespace poly

uint64_t fp_mul(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t fp_pow(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t fp_inv(uint64_t a, uint64_t p) {
    if (a % p == 0) throw std::domain_error("fp_inv: zero");
    return fp_pow(a, p - 2, p);
}

FpPoly::FpPoly(uint64_t p, std::vector<uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& x : c_) x %= p_;
    trim();
}

FpPoly FpPoly::reduce(const ZPoly& f, uint64_t p) {
    std::vector<uint64_t> c;
    for (const auto& a : f) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
        c.push_back(r.get_ui());
    }
    return FpPoly(p, c);
}

FpPoly FpPoly::x(uint64_t p) { return FpPoly(p, {0, 1}); }
FpPoly FpPoly::constant(uint64_t p, uint64_t c) { return FpPoly(p, {c}); }

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t a = i < c_.size() ? c_[i] : 0, b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = (a + b) % p_;
    }
    return FpPoly(p_, r);
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t a = i < c_.size() ? c_[i] : 0, b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = (a + p_ - b) % p_;
    }
    return FpPoly(p_, r);
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (c_.empty() || o.c_.empty()) return FpPoly(p_, {});
    std::vector<uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = (r[i + j] + fp_mul(c_[i], o.c_[j], p_)) % p_;
    }
    return FpPoly(p_, r);
}

namespace {

void fp_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
    if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
    const uint64_t p = a.prime();
    std::vector<uint64_t> rc = a.coeffs(), qc;
    const auto& bc = b.coeffs();
    uint64_t inv = fp_inv(bc.back(), p);
    if (rc.size() >= bc.size()) qc.assign(rc.size() - bc.size() + 1, 0);
    while (rc.size() >= bc.size() && !rc.empty()) {
        size_t sh = rc.size() - bc.size();
        uint64_t c = fp_mul(rc.back(), inv, p);
        qc[sh] = c;
        for (size_t i = 0; i < bc.size(); ++i) rc[sh + i] = (rc[sh + i] + p - fp_mul(c, bc[i], p)) % p;
        while (!rc.empty() && rc.back() == 0) rc.pop_back();
    }
    q = FpPoly(p, qc);
    r = FpPoly(p, rc);
}

}  // namespace

FpPoly FpPoly::operator%(const FpPoly& o) const {
    FpPoly q, r;
    fp_divmod(*this, o, q, r);
    return r;
}

FpPoly FpPoly::operator/(const FpPoly& o) const {
    FpPoly q, r;
    fp_divmod(*this, o, q, r);
    return q;
}

bool FpPoly::operator<(const FpPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

FpPoly FpPoly::monic() const {
    if (c_.empty()) return *this;
    uint64_t inv = fp_inv(c_.back(), p_);
    std::vector<uint64_t> r(c_);
    for (auto& x : r) x = fp_mul(x, inv, p_);
    return FpPoly(p_, r);
}

FpPoly FpPoly::derivative() const {
    std::vector<uint64_t> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(fp_mul(c_[i], i % p_, p_));
    return FpPoly(p_, r);
}

FpPoly FpPoly::powmod(const Int& e, const FpPoly& m) const {
    FpPoly result = FpPoly::constant(p_, 1) % m, base = *this % m;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base) % m;
    }
    return result;
}

ZPoly FpPoly::lift() const {
    ZPoly z;
    for (auto x : c_) z.push_back(Int(static_cast<unsigned long>(x)));
    return z;
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

// Squarefree decomposition: list of (g, k) with f = prod g^k, g squarefree.
std::vector<std::pair<FpPoly, unsigned>> squarefree(const FpPoly& f) {
    const uint64_t p = f.prime();
    std::vector<std::pair<FpPoly, unsigned>> out;
    FpPoly d = f.derivative();
    if (d.is_zero()) {
        // f = g(x^p)
        std::vector<uint64_t> gc;
        for (size_t i = 0; i < f.coeffs().size(); i += p) gc.push_back(f.coeffs()[i]);
        for (auto& [g, k] : squarefree(FpPoly(p, gc))) out.emplace_back(g, k * static_cast<unsigned>(p));
        return out;
    }
    FpPoly c = FpPoly::gcd(f, d);
    FpPoly w = f.monic() / c;
    unsigned i = 1;
    while (!w.is_one()) {
        FpPoly y = FpPoly::gcd(w, c);
        FpPoly z = w / y;
        if (!z.is_one()) out.emplace_back(z.monic(), i);
        ++i;
        w = y;
        c = c / y;
    }
    if (!c.is_one()) {
        // remaining part is a p-th power
        std::vector<uint64_t> gc;
        for (size_t j = 0; j < c.coeffs().size(); j += p) gc.push_back(c.coeffs()[j]);
        for (auto& [g, k] : squarefree(FpPoly(p, gc))) out.emplace_back(g, k * static_cast<unsigned>(p));
    }
    return out;
}

void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const uint64_t p = f.prime();
    Int q = 1;
    for (int i = 0; i < d; ++i) q *= static_cast<unsigned long>(p);
    for (;;) {
        std::vector<uint64_t> rc(static_cast<size_t>(f.degree()));
        for (auto& x : rc) x = rng() % p;
        FpPoly a(p, rc);
        if (a.degree() < 1) continue;
        FpPoly g = FpPoly::gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
        FpPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^{2^{d-1}}... over F_{2^d}
            FpPoly t = a % f, s = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % f;
                s = s + t;
            }
            b = s;
        } else {
            b = a.powmod((q - 1) / 2, f) - FpPoly::constant(p, 1);
        }
        g = FpPoly::gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> factor_mod_p(const FpPoly& f) {
    if (f.degree() < 1) return {};
    const uint64_t p = f.prime();
    std::mt19937_64 rng(0x5eed);
    std::map<FpPoly, unsigned> acc;
    for (auto& [g, k] : squarefree(f.monic())) {
        // distinct degree
        FpPoly rest = g, h = FpPoly::x(p);
        for (int d = 1; rest.degree() >= 2 * d; ++d) {
            h = h.powmod(Int(static_cast<unsigned long>(p)), rest);
            FpPoly gd = FpPoly::gcd(h - FpPoly::x(p), rest);
            if (gd.degree() > 0) {
                std::vector<FpPoly> parts;
                equal_degree(gd, d, rng, parts);
                for (auto& q : parts) acc[q] += k;
                rest = rest / gd;
                h = h % rest;
            }
        }
        if (rest.degree() > 0) acc[rest.monic()] += k;
    }
    return {acc.begin(), acc.end()};
}

}  // namespace ftsl2
