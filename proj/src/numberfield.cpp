#include "ftsl2/numberfield.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ftsl2 {

namespace {

QPoly reduce_mod(const QPoly& a, const QPoly& f) {
    QPoly r = a;
    poly::trim(r);
    const int n = poly::degree(f);
    // f is monic, so plain long division is cheap
    for (int d = poly::degree(r); d >= n; --d) {
        Rat c = r[d];
        if (c == 0) continue;
        for (int i = 0; i <= n; ++i) r[d - n + i] -= c * f[i];
    }
    r.resize(std::min<size_t>(r.size(), static_cast<size_t>(n)));
    poly::trim(r);
    return r;
}

RatVec pad(QPoly p, size_t n) {
    p.resize(n, Rat(0));
    return p;
}

// u with u*a = 1 mod f, for a coprime to f.
QPoly inverse_mod(const QPoly& a, const QPoly& f) {
    QPoly r0 = f, r1 = a, s0, s1 = {Rat(1)};
    poly::trim(r1);
    if (r1.empty()) throw std::domain_error("inverse of zero");
    while (poly::degree(r1) > 0) {
        QPoly q, r;
        poly::divmod(r0, r1, q, r);
        QPoly s = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        poly::trim(r1);
        if (r1.empty()) throw std::domain_error("element not invertible");
    }
    return poly::scale(s1, Rat(1) / r1[0]);
}

}  // namespace

// ---------------------------------------------------------------- NFElement

NFElement::NFElement(const NumberField* K, RatVec c) : K_(K), c_(std::move(c)) {
    c_.resize(K_->degree(), Rat(0));
}

NFElement NFElement::operator+(const NFElement& o) const {
    RatVec r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = c_[i] + o.c_[i];
    return {K_, std::move(r)};
}

NFElement NFElement::operator-(const NFElement& o) const {
    RatVec r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = c_[i] - o.c_[i];
    return {K_, std::move(r)};
}

NFElement NFElement::operator-() const {
    RatVec r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
    return {K_, std::move(r)};
}

NFElement NFElement::operator*(const NFElement& o) const {
    QPoly p = poly::mul(c_, o.c_);
    return {K_, pad(reduce_mod(p, K_->qpoly()), K_->degree())};
}

NFElement NFElement::operator/(const NFElement& o) const { return *this * o.inverse(); }

NFElement NFElement::scaled(const Rat& q) const {
    RatVec r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = c_[i] * q;
    return {K_, std::move(r)};
}

NFElement NFElement::inverse() const {
    return {K_, pad(inverse_mod(c_, K_->qpoly()), K_->degree())};
}

NFElement NFElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElement r = K_->one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool NFElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

bool NFElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& x) { return x == 0; });
}

bool NFElement::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& x) { return x == 0; });
}

Rat NFElement::norm() const {
    if (is_zero()) return 0;
    if (K_->degree() == 1) return c_[0];
    QPoly g = c_;
    poly::trim(g);
    return poly::resultant(K_->qpoly(), g);
}

Rat NFElement::trace() const {
    // Newton sums of the defining polynomial give Tr(theta^k).
    const size_t n = K_->degree();
    const QPoly& f = K_->qpoly();
    std::vector<Rat> s(n);
    s[0] = n;
    for (size_t k = 1; k < n; ++k) {
        Rat v = -Rat(static_cast<long>(k)) * f[n - k];
        for (size_t i = 1; i < k; ++i) v -= f[n - i] * s[k - i];
        s[k] = v;
    }
    Rat t = 0;
    for (size_t k = 0; k < n; ++k) t += c_[k] * s[k];
    return t;
}

RatVec NFElement::basis_coords() const { return vec_mat(c_, K_->basis_inv()); }

bool NFElement::is_integral() const {
    for (const auto& x : basis_coords())
        if (x.get_den() != 1) return false;
    return true;
}

std::string NFElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) os << "-";
        Rat a = abs(c_[i]);
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------- irreducibility

namespace {

std::set<int> subset_sums(const std::vector<int>& degs) {
    std::set<int> s = {0};
    for (int d : degs) {
        std::set<int> t = s;
        for (int x : s) t.insert(x + d);
        s = std::move(t);
    }
    return s;
}

bool numeric_factor_search(const ZPoly& f, const std::set<int>& allowed) {
    const int n = poly::degree(f);
    auto z = complex_roots(f, 256);
    std::vector<int> idx;
    bool found = false;
    // products over subsets of size k; a true factor has integer coefficients
    for (int k : allowed) {
        if (k <= 0 || k > n / 2) continue;
        idx.resize(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<Complex> c = {Complex(Real(1.0, 256), Real(256))};
            for (int i : idx) {
                std::vector<Complex> nc(c.size() + 1, Complex(256));
                for (size_t j = 0; j < c.size(); ++j) {
                    nc[j + 1] = nc[j + 1] + c[j];
                    nc[j] = nc[j] - c[j] * z[i];
                }
                c = std::move(nc);
            }
            bool ok = true;
            ZPoly g;
            for (auto& v : c) {
                if (v.im.abs().to_double() > 1e-30 || v.re.frac_dist().to_double() > 1e-30) {
                    ok = false;
                    break;
                }
                g.push_back(v.re.round());
            }
            if (ok) {
                QPoly q, r;
                poly::divmod(poly::to_q(f), poly::to_q(g), q, r);
                if (r.empty()) found = true;
            }
            if (found) return true;
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace

bool is_irreducible(const ZPoly& f) {
    const int n = poly::degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    if (f[0] == 0) return false;
    QPoly fq = poly::to_q(f);
    if (poly::degree(poly::monic_gcd(fq, poly::derivative(fq))) > 0) return false;
    Int disc = poly::discriminant(f);
    std::set<int> possible;
    for (int k = 1; k < n; ++k) possible.insert(k);
    int used = 0;
    for (uint64_t p = 2; p < 5000 && used < 80 && !possible.empty(); ++p) {
        if (!poly::is_prime(Int(static_cast<unsigned long>(p)))) continue;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        auto fac = factor_mod_p(FpPoly::reduce(f, p));
        std::vector<int> degs;
        for (auto& [g, m] : fac)
            for (unsigned i = 0; i < m; ++i) degs.push_back(g.degree());
        auto sums = subset_sums(degs);
        std::set<int> keep;
        for (int k : possible)
            if (sums.count(k)) keep.insert(k);
        possible = std::move(keep);
        ++used;
    }
    if (possible.empty()) return true;
    if (n <= 12) return !numeric_factor_search(f, possible);
    throw Undecided("irreducibility of a degree " + std::to_string(n) + " polynomial");
}

// ---------------------------------------------------------------- NumberField

FieldPtr NumberField::make(const ZPoly& min_poly, const std::optional<RatMatrix>& basis, FieldMeta meta) {
    ZPoly f = min_poly;
    poly::trim(f);
    if (f.size() < 2 || f.back() != 1) throw SchemaViolation("minimal polynomial must be monic of degree >= 1");
    if (!is_irreducible(f)) throw ReduciblePolynomial("polynomial is reducible over Q");

    std::shared_ptr<NumberField> K(new NumberField());
    K->f_ = f;
    K->fq_ = poly::to_q(f);
    const size_t n = f.size() - 1;
    K->n_ = n;
    K->r1_ = poly::count_real_roots(f);
    K->r2_ = (n - K->r1_) / 2;
    if (!meta.cyclotomic_m) meta.cyclotomic_m = poly::cyclotomic_index(f);
    K->meta_ = meta;

    RatMatrix B(n, n);
    if (basis) {
        if (basis->rows() != n || basis->cols() != n) throw SchemaViolation("integral basis must be n x n");
        B = *basis;
    } else if (n == 1) {
        B(0, 0) = 1;
    } else if (n == 2) {
        // x^2 + b x + c: sqrt(disc) = 2 theta + b = s sqrt(D0)
        Int b = f[1], c = f[0];
        Int delta = b * b - 4 * c;
        Int d = poly::squarefree_part(delta);
        Int D0 = (mpz_fdiv_ui(d.get_mpz_t(), 4) == 1) ? d : 4 * d;
        Int s2 = delta / D0, s;
        mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
        B(0, 0) = 1;
        B(1, 0) = Rat(D0, 2) + Rat(b, 2 * s);
        B(1, 1) = Rat(1, s);
        B(1, 0).canonicalize();
        B(1, 1).canonicalize();
    } else {
        Int disc = poly::discriminant(f);
        if (!meta.cyclotomic_m && poly::squarefree_part(disc) != disc)
            throw SchemaViolation("an integral basis must be supplied for this polynomial");
        B = RatMatrix::identity(n);
    }
    Rat det = B.det();
    if (det == 0) throw BasisNotClosed("basis is singular");
    if (!B.invert(K->Binv_)) throw BasisNotClosed("basis is singular");
    K->B_ = B;
    Rat idx = 1 / abs(det);
    if (idx.get_den() != 1) throw BasisNotClosed("basis lattice does not contain Z[theta]");
    K->index_ = idx.get_num();
    Rat disc = det * det * Rat(poly::discriminant(f));
    if (disc.get_den() != 1) throw BasisNotClosed("non-integral discriminant");
    K->disc_ = disc.get_num();

    // 1 must lie in the lattice and products must stay inside
    RatVec one(n);
    one[0] = 1;
    for (const auto& x : vec_mat(one, K->Binv_))
        if (x.get_den() != 1) throw BasisNotClosed("1 is not in the span of the basis");
    std::vector<NFElement> om;
    for (size_t i = 0; i < n; ++i) om.emplace_back(K.get(), B.row(i));
    K->mult_.assign(n, IntMatrix(n, n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            RatVec c = vec_mat((om[i] * om[j]).coeffs(), K->Binv_);
            for (size_t k = 0; k < n; ++k) {
                if (c[k].get_den() != 1) throw BasisNotClosed("basis is not closed under multiplication");
                K->mult_[i](j, k) = c[k].get_num();
                K->mult_[j](i, k) = c[k].get_num();
            }
        }
    K->init_numeric();
    return K;
}

void NumberField::init_numeric() {
    auto z = ordered_roots(f_, r1_, 256);
    roots_d_.clear();
    for (auto& c : z) roots_d_.push_back(c.to_cd());
    omega_d_.assign(places(), {});
    for (size_t j = 0; j < places(); ++j)
        for (size_t i = 0; i < n_; ++i) {
            Complex v = eval_rational_poly(B_.row(i), z[j]);
            omega_d_[j].push_back(v.to_cd());
        }
    std::lock_guard<std::mutex> lk(cache_mu_);
    roots_cache_[256] = std::move(z);
}

std::vector<Complex> NumberField::roots(mpfr_prec_t prec) const {
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = roots_cache_.find(prec);
        if (it != roots_cache_.end()) return it->second;
    }
    auto z = ordered_roots(f_, r1_, prec);
    std::lock_guard<std::mutex> lk(cache_mu_);
    roots_cache_[prec] = z;
    return z;
}

Complex NumberField::embed(const NFElement& x, size_t place, mpfr_prec_t prec) const {
    return eval_rational_poly(x.coeffs(), roots(prec)[place]);
}

std::vector<std::complex<double>> NumberField::embed_d(const NFElement& x) const {
    std::vector<std::complex<double>> out;
    for (const auto& z : roots_d_) {
        std::complex<double> v = 0;
        const auto& c = x.coeffs();
        for (size_t i = c.size(); i-- > 0;) v = v * z + c[i].get_d();
        out.push_back(v);
    }
    return out;
}

NFElement NumberField::zero() const { return {this, RatVec(n_)}; }
NFElement NumberField::one() const { return from_int(1); }
NFElement NumberField::theta() const {
    RatVec c(n_);
    if (n_ == 1) c[0] = -Rat(f_[0]);
    else c[1] = 1;
    return {this, c};
}
NFElement NumberField::from_int(const Int& a) const { return from_rat(Rat(a)); }
NFElement NumberField::from_rat(const Rat& a) const {
    RatVec c(n_);
    c[0] = a;
    return {this, c};
}
NFElement NumberField::from_power(const RatVec& c) const { return {this, c}; }
NFElement NumberField::from_basis(const RatVec& c) const { return {this, vec_mat(c, B_)}; }
NFElement NumberField::from_basis(const IntVec& c) const { return from_basis(RatVec(c.begin(), c.end())); }
NFElement NumberField::omega(size_t i) const { return {this, B_.row(i)}; }

IntVec NumberField::mul_basis(const IntVec& a, const IntVec& b) const {
    IntVec r(n_);
    for (size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            Int ab = a[i] * b[j];
            for (size_t k = 0; k < n_; ++k) r[k] += ab * mult_[i](j, k);
        }
    }
    return r;
}

IntMatrix NumberField::mult_matrix(const IntVec& a) const {
    IntMatrix m(n_, n_);
    for (size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < n_; ++j)
            for (size_t k = 0; k < n_; ++k) m(j, k) += a[i] * mult_[i](j, k);
    }
    return m;
}

std::string NumberField::describe() const {
    if (!meta_.label.empty()) return meta_.label;
    if (n_ == 1) return "Q";
    if (meta_.cyclotomic_m) return "Q(zeta_" + std::to_string(meta_.cyclotomic_m) + ")";
    std::ostringstream os;
    os << "Q[x]/(";
    bool first = true;
    for (size_t i = f_.size(); i-- > 0;) {
        if (f_[i] == 0) continue;
        Int a = abs(f_[i]);
        os << (first ? (f_[i] < 0 ? "-" : "") : (f_[i] < 0 ? " - " : " + "));
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) os << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    os << ")";
    return os.str();
}

std::vector<NFElement> to_field_poly(const ZPoly& f, const NumberField& K) {
    std::vector<NFElement> out;
    for (const auto& c : f) out.push_back(K.from_int(c));
    return out;
}

NFElement eval_poly(const std::vector<NFElement>& coeffs, const NFElement& x) {
    NFElement v = x.field()->zero();
    for (size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
}

}  // namespace ftsl2
