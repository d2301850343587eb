#include <algorithm>
#include <sstream>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

namespace {

// Row-vector linear algebra over F_p.
using Vec = std::vector<uint64_t>;
using Mat = std::vector<Vec>;

struct Fp {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
    uint64_t mul(uint64_t a, uint64_t b) const { return fp_mul(a, b, p); }
    uint64_t inv(uint64_t a) const { return fp_inv(a, p); }

    // Reduced row echelon form; returns the nonzero rows.
    Mat rref(Mat m) const {
        size_t r = 0;
        const size_t cols = m.empty() ? 0 : m[0].size();
        for (size_t c = 0; c < cols && r < m.size(); ++c) {
            size_t piv = r;
            while (piv < m.size() && m[piv][c] == 0) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[piv], m[r]);
            uint64_t iv = inv(m[r][c]);
            for (auto& x : m[r]) x = mul(x, iv);
            for (size_t i = 0; i < m.size(); ++i) {
                if (i == r || m[i][c] == 0) continue;
                uint64_t f = m[i][c];
                for (size_t j = 0; j < cols; ++j) m[i][j] = sub(m[i][j], mul(f, m[r][j]));
            }
            ++r;
        }
        m.resize(r);
        return m;
    }

    // Basis of {x : x M = 0}.
    Mat left_kernel(const Mat& m, size_t nrows) const {
        if (m.empty()) {
            Mat id(nrows, Vec(nrows, 0));
            for (size_t i = 0; i < nrows; ++i) id[i][i] = 1;
            return id;
        }
        const size_t cols = m[0].size();
        // augment [M | I] and reduce; rows with zero M-part give the kernel
        Mat a(nrows, Vec(cols + nrows, 0));
        for (size_t i = 0; i < nrows; ++i) {
            for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j] % p;
            a[i][cols + i] = 1;
        }
        size_t r = 0;
        for (size_t c = 0; c < cols && r < nrows; ++c) {
            size_t piv = r;
            while (piv < nrows && a[piv][c] == 0) ++piv;
            if (piv == nrows) continue;
            std::swap(a[piv], a[r]);
            uint64_t iv = inv(a[r][c]);
            for (auto& x : a[r]) x = mul(x, iv);
            for (size_t i = 0; i < nrows; ++i) {
                if (i == r || a[i][c] == 0) continue;
                uint64_t f = a[i][c];
                for (size_t j = 0; j < cols + nrows; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j]));
            }
            ++r;
        }
        Mat k;
        for (size_t i = r; i < nrows; ++i) k.emplace_back(a[i].begin() + cols, a[i].end());
        return rref(k);
    }

    Mat matmul(const Mat& a, const Mat& b) const {
        Mat c(a.size(), Vec(b.empty() ? 0 : b[0].size(), 0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t k = 0; k < b.size(); ++k) {
                if (a[i][k] == 0) continue;
                for (size_t j = 0; j < b[k].size(); ++j) c[i][j] = add(c[i][j], mul(a[i][k], b[k][j]));
            }
        return c;
    }

    Vec vecmat(const Vec& v, const Mat& m) const {
        Vec r(m.empty() ? 0 : m[0].size(), 0);
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0) continue;
            for (size_t j = 0; j < r.size(); ++j) r[j] = add(r[j], mul(v[k], m[k][j]));
        }
        return r;
    }

    Mat transpose(const Mat& m, size_t cols) const {
        Mat t(cols, Vec(m.size(), 0));
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
        return t;
    }

    // U cap W for subspaces given by row bases of Z^n.
    Mat intersect(const Mat& u, const Mat& w, size_t n) const {
        if (u.empty() || w.empty()) return {};
        Mat stacked = u;
        for (const auto& r : w) stacked.push_back(r);
        Mat k = left_kernel(stacked, stacked.size());
        Mat out;
        for (const auto& c : k) {
            Vec v(n, 0);
            for (size_t i = 0; i < u.size(); ++i)
                for (size_t j = 0; j < n; ++j) v[j] = add(v[j], mul(c[i], u[i][j]));
            out.push_back(v);
        }
        return rref(out);
    }
};

uint64_t small_prime(const Int& p) {
    if (!p.fits_ulong_p() || p >= Int(1UL << 32)) throw DataError("prime " + p.get_str() + " is too large");
    return p.get_ui();
}

// Structure constants mod p: mult[i] row j = w_i w_j.
struct ResidueAlgebra {
    const NumberField& K;
    Fp F;
    size_t n;

    Vec mulv(const Vec& a, const Vec& b) const {
        Vec r(n, 0);
        const auto& mt = K.structure();
        for (size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                uint64_t ab = F.mul(a[i], b[j]);
                for (size_t k = 0; k < n; ++k) {
                    uint64_t c = mpz_fdiv_ui(mt[i](j, k).get_mpz_t(), F.p);
                    if (c) r[k] = F.add(r[k], F.mul(ab, c));
                }
            }
        }
        return r;
    }

    Vec one() const {
        RatVec c(n);
        c[0] = 1;
        RatVec b = vec_mat(c, K.basis_inv());
        Vec r(n);
        for (size_t i = 0; i < n; ++i) r[i] = mpz_fdiv_ui(b[i].get_num().get_mpz_t(), F.p);
        return r;
    }

    Vec powv(Vec a, const Int& e) const {
        Vec r = one();
        Int k = e;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) r = mulv(r, a);
            k >>= 1;
            if (k > 0) a = mulv(a, a);
        }
        return r;
    }

    // Row i = coordinates of v * e_i.
    Mat mult_by(const Vec& v) const {
        Mat m(n);
        for (size_t i = 0; i < n; ++i) {
            Vec e(n, 0);
            e[i] = 1;
            m[i] = mulv(v, e);
        }
        return m;
    }
};

Vec to_fp(const IntVec& v, uint64_t p) {
    Vec r;
    for (const auto& x : v) r.push_back(mpz_fdiv_ui(x.get_mpz_t(), p));
    return r;
}

IntVec lift(const Vec& v) {
    IntVec r;
    for (auto x : v) r.emplace_back(static_cast<unsigned long>(x));
    return r;
}

// b with b P in pO, b not in pO: a nonzero element of Ann(P/pO) in O/pO.
IntVec make_helper(const ResidueAlgebra& A, const Mat& pbar) {
    const size_t n = A.n;
    Mat big(n);
    for (const auto& y : pbar) {
        Mat m = A.mult_by(y);  // row i = y e_i, so x y = x * m
        for (size_t i = 0; i < n; ++i) big[i].insert(big[i].end(), m[i].begin(), m[i].end());
    }
    Mat k = A.F.left_kernel(big[0].empty() ? Mat{} : big, n);
    if (k.empty()) throw DataError("no annihilator for prime ideal");
    return lift(k[0]);
}

Mat ideal_mod_p(const Ideal& I, uint64_t p) {
    Mat rows;
    for (size_t i = 0; i < I.hnf().rows(); ++i) rows.push_back(to_fp(I.hnf().row(i), p));
    Fp F{p};
    return F.rref(rows);
}

PrimeIdeal finish_prime(const NumberField& K, const Int& p, unsigned e, unsigned f, const Ideal& I) {
    PrimeIdeal P;
    P.p = p;
    P.e = e;
    P.f = f;
    P.ideal = I;
    uint64_t pu = p.get_ui();
    ResidueAlgebra A{K, Fp{pu}, K.degree()};
    P.helper = make_helper(A, ideal_mod_p(I, pu));
    return P;
}

void sort_primes(std::vector<PrimeIdeal>& v) { std::sort(v.begin(), v.end()); }

Int pow_int(const Int& p, unsigned f) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), f);
    return r;
}

}  // namespace

Int PrimeIdeal::norm() const { return pow_int(p, f); }

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
    if (p != o.p) return p < o.p;
    if (f != o.f) return f < o.f;
    if (e != o.e) return e < o.e;
    return ideal < o.ideal;
}

std::string PrimeIdeal::str() const {
    std::ostringstream os;
    os << "P(" << p.get_str() << ", e=" << e << ", f=" << f << ")";
    return os.str();
}

std::vector<PrimeIdeal> factor_rational_prime(const Int& p, const NumberField& K) {
    if (K.index() % p == 0)
        throw IndexDivisor("p = " + p.get_str() + " divides [O : Z[theta]]");
    uint64_t pu = small_prime(p);
    auto fac = factor_mod_p(FpPoly::reduce(K.poly(), pu));
    std::vector<PrimeIdeal> out;
    for (const auto& [g, mult] : fac) {
        ZPoly gl = g.lift();
        NFElement x = K.zero();
        NFElement th = K.theta();
        for (size_t i = gl.size(); i-- > 0;) x = x * th + K.from_int(gl[i]);
        Ideal I = Ideal::from_generators(K, {K.from_int(p), x});
        out.push_back(finish_prime(K, p, mult, static_cast<unsigned>(g.degree()), I));
    }
    sort_primes(out);
    return out;
}

std::vector<PrimeIdeal> decompose_prime(const Int& p, const NumberField& K) {
    uint64_t pu = small_prime(p);
    const size_t n = K.degree();
    ResidueAlgebra A{K, Fp{pu}, n};
    const Fp& F = A.F;

    // Frobenius matrix and the radical J = ker F^k with p^k >= n
    Mat frob(n);
    for (size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        frob[i] = A.powv(e, p);
    }
    Mat fk = frob;
    for (uint64_t pk = pu; pk < n; pk *= pu) fk = F.matmul(fk, frob);
    Mat J = F.left_kernel(fk, n);

    // V = {x : x^p - x in J} contains J; dim V - dim J counts the primes
    Mat fmi = frob;
    for (size_t i = 0; i < n; ++i) fmi[i][i] = F.sub(fmi[i][i], 1);
    Mat annJ;  // columns spanning the annihilator of J
    {
        Mat jt = J.empty() ? Mat{} : F.transpose(J, n);
        Mat ker = F.left_kernel(jt, n);
        annJ = F.transpose(ker, n);
        if (ker.empty()) annJ = Mat(n, Vec{});
    }
    Mat test = F.matmul(fmi, annJ);
    Mat V = (annJ.empty() || annJ[0].empty()) ? F.left_kernel(Mat{}, n) : F.left_kernel(test, n);
    const size_t g = V.size() - J.size();

    std::vector<Mat> blocks;
    {
        Mat id(n, Vec(n, 0));
        for (size_t i = 0; i < n; ++i) id[i][i] = 1;
        blocks.push_back(id);
    }
    for (const auto& v : V) {
        if (blocks.size() == g) break;
        Mat M = A.mult_by(v);
        // minimal polynomial of v gives its eigenvalues (all in F_p)
        Mat powers = {A.one()};
        std::vector<uint64_t> minpoly;
        while (true) {
            Vec next = A.mulv(powers.back(), v);
            Mat k = F.left_kernel([&] {
                Mat m = powers;
                m.push_back(next);
                return m;
            }(), powers.size() + 1);
            if (!k.empty()) {
                Vec c = k[0];
                uint64_t lead = c.back();
                uint64_t il = F.inv(lead);
                for (auto& x : c) x = F.mul(x, il);
                minpoly = c;
                break;
            }
            powers.push_back(next);
        }
        auto fac = factor_mod_p(FpPoly(pu, minpoly));
        std::vector<Mat> nb;
        for (const auto& B : blocks) {
            for (const auto& [h, m] : fac) {
                if (h.degree() != 1) throw DataError("non-split eigenvalue in residue algebra");
                uint64_t lambda = F.sub(0, h.coeffs()[0]);
                Mat ML = M;
                for (size_t i = 0; i < n; ++i) ML[i][i] = F.sub(ML[i][i], lambda);
                Mat P = ML;
                for (size_t i = 1; i < n; ++i) P = F.matmul(P, ML);
                Mat ker = F.left_kernel(P, n);
                Mat part = F.intersect(B, ker, n);
                if (!part.empty()) nb.push_back(part);
            }
        }
        blocks = std::move(nb);
    }
    if (blocks.size() != g) throw DataError("prime decomposition did not separate " + std::to_string(g) + " primes");

    std::vector<PrimeIdeal> out;
    for (size_t i = 0; i < g; ++i) {
        Mat Ji = F.intersect(J, blocks[i], n);
        size_t dimA = blocks[i].size();
        size_t f = dimA - Ji.size();
        size_t e = dimA / f;
        Mat gens = Ji;
        for (size_t j = 0; j < g; ++j)
            if (j != i) gens.insert(gens.end(), blocks[j].begin(), blocks[j].end());
        IntMatrix rows(0, n);
        for (const auto& r : gens) rows.append_row(lift(r));
        for (size_t j = 0; j < n; ++j) {
            IntVec pe(n);
            pe[j] = p;
            rows.append_row(pe);
        }
        Ideal I = Ideal::from_lattice(K, rows, 1);
        out.push_back(finish_prime(K, p, static_cast<unsigned>(e), static_cast<unsigned>(f), I));
    }
    sort_primes(out);
    return out;
}

const std::vector<PrimeIdeal>& NumberField::cached_primes(const Int& p) const {
    {
        std::lock_guard<std::mutex> lk(primes_mu_);
        auto it = primes_cache_.find(p);
        if (it != primes_cache_.end()) return *it->second;
    }
    auto v = std::make_shared<const std::vector<PrimeIdeal>>(
        index() % p == 0 ? decompose_prime(p, *this) : factor_rational_prime(p, *this));
    std::lock_guard<std::mutex> lk(primes_mu_);
    auto [it, inserted] = primes_cache_.emplace(p, v);
    return *it->second;
}

std::vector<PrimeIdeal> primes_above(const Int& p, const NumberField& K) { return K.cached_primes(p); }

namespace {

long vp_int(const Int& d, const Int& p) {
    if (d == 0) return 0;
    return static_cast<long>(mpz_remove(Int().get_mpz_t(), Int(d).get_mpz_t(), p.get_mpz_t()));
}

long val_integral(const PrimeIdeal& P, IntVec y) {
    const NumberField& K = P.ideal.field();
    long v = 0;
    while (true) {
        IntVec z = K.mul_basis(y, P.helper);
        for (const auto& c : z)
            if (c % P.p != 0) return v;
        for (auto& c : z) c /= P.p;
        y = std::move(z);
        ++v;
    }
}

}  // namespace

long valuation(const PrimeIdeal& P, const NFElement& x) {
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    RatVec c = x.basis_coords();
    Int d = lcm_denominators(c);
    IntVec y;
    for (auto& q : c) y.push_back(Rat(q * d).get_num());
    return val_integral(P, y) - static_cast<long>(P.e) * vp_int(d, P.p);
}

long valuation(const PrimeIdeal& P, const Ideal& I) {
    if (I.is_zero()) throw std::domain_error("valuation of the zero ideal");
    long best = -1;
    for (size_t i = 0; i < I.hnf().rows(); ++i) {
        IntVec r = I.hnf().row(i);
        long v = val_integral(P, r);
        if (best < 0 || v < best) best = v;
        if (best == 0) break;
    }
    return best - static_cast<long>(P.e) * vp_int(I.den(), P.p);
}

std::vector<std::pair<PrimeIdeal, long>> factor_ideal(const Ideal& I) {
    Int num = 1;
    for (size_t i = 0; i < I.hnf().rows(); ++i) num *= I.hnf()(i, i);
    std::vector<Int> ps = poly::prime_factors(abs(num));
    for (const auto& q : poly::prime_factors(I.den())) ps.push_back(q);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<std::pair<PrimeIdeal, long>> out;
    for (const auto& p : ps)
        for (const auto& P : primes_above(p, I.field())) {
            long v = valuation(P, I);
            if (v != 0) out.emplace_back(P, v);
        }
    return out;
}

}  // namespace ftsl2
