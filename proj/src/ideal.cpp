#include <algorithm>
#include <sstream>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

namespace {

Int content(const IntMatrix& h) {
    Int g = 0;
    for (size_t i = 0; i < h.rows(); ++i)
        for (size_t j = 0; j < h.cols(); ++j) g = gcd(g, h(i, j));
    return g;
}

Int diag_product(const IntMatrix& h) {
    Int d = 1;
    for (size_t i = 0; i < h.rows(); ++i) d *= h(i, i);
    return d;
}

}  // namespace

void Ideal::normalise() {
    if (H_.rows() == 0) {
        den_ = 1;
        return;
    }
    Int g = gcd(content(H_), den_);
    if (g != 1) {
        for (size_t i = 0; i < H_.rows(); ++i)
            for (size_t j = 0; j < H_.cols(); ++j) H_(i, j) /= g;
        den_ /= g;
    }
}

Ideal Ideal::unit(const NumberField& K) {
    Ideal I;
    I.K_ = &K;
    I.H_ = IntMatrix::identity(K.degree());
    return I;
}

Ideal Ideal::from_lattice(const NumberField& K, const IntMatrix& rows, const Int& den) {
    Ideal I;
    I.K_ = &K;
    I.H_ = hnf_rows(rows);
    I.den_ = den;
    if (I.H_.rows() != 0 && I.H_.rows() != K.degree())
        throw DataError("ideal lattice is not of full rank");
    I.normalise();
    return I;
}

Ideal Ideal::from_generators(const NumberField& K, const std::vector<NFElement>& gens) {
    const size_t n = K.degree();
    std::vector<RatVec> coords;
    Int d = 1;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        coords.push_back(g.basis_coords());
        d = lcm(d, lcm_denominators(coords.back()));
    }
    Ideal I;
    I.K_ = &K;
    if (coords.empty()) return I;
    IntMatrix rows(0, n);
    for (const auto& c : coords) {
        IntVec v(n);
        for (size_t i = 0; i < n; ++i) {
            Rat x = c[i] * d;
            v[i] = x.get_num();
        }
        IntMatrix m = K.mult_matrix(v);
        for (size_t j = 0; j < n; ++j) rows.append_row(m.row(j));
    }
    // d*g0 O contains N(d*g0) O
    NFElement g0 = K.from_basis(coords[0]).scaled(Rat(d));
    Rat nm = abs(g0.norm());
    I.H_ = hnf_rows(rows, nm.get_num());
    I.den_ = d;
    I.normalise();
    return I;
}

Ideal Ideal::principal(const NFElement& x) { return from_generators(*x.field(), {x}); }

Ideal Ideal::operator*(const Ideal& o) const {
    Ideal I;
    I.K_ = K_;
    if (is_zero() || o.is_zero()) return I;
    const size_t n = K_->degree();
    IntMatrix rows(0, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) rows.append_row(K_->mul_basis(H_.row(i), o.H_.row(j)));
    I.H_ = hnf_rows(rows, diag_product(H_) * diag_product(o.H_));
    I.den_ = den_ * o.den_;
    I.normalise();
    return I;
}

Ideal Ideal::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of the zero ideal");
    const size_t n = K_->degree();
    // x = sum y_i w_i lies in J^{-1} iff y * [M(b_1) | ... | M(b_n)] is integral
    IntMatrix A(n, n * n);
    for (size_t k = 0; k < n; ++k) {
        IntMatrix m = K_->mult_matrix(H_.row(k));  // row j = b_k w_j
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) A(i, k * n + j) = m(i, j);
    }
    SnfResult s = snf_full(A);
    Int dmax = s.diag[n - 1];
    IntMatrix rows(n, n);
    for (size_t i = 0; i < n; ++i) {
        Int f = dmax / s.diag[i];
        for (size_t j = 0; j < n; ++j) rows(i, j) = s.U(i, j) * f;
    }
    // (H/den)^{-1} = den * H^{-1}
    Ideal I;
    I.K_ = K_;
    I.H_ = hnf_rows(rows, dmax);
    I.den_ = dmax;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) I.H_(i, j) *= den_;
    I.H_ = hnf_rows(I.H_);
    I.normalise();
    return I;
}

Ideal Ideal::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Ideal r = unit(*K_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Ideal Ideal::scaled(const Rat& q) const {
    if (q == 0) throw std::domain_error("scaling an ideal by zero");
    Ideal I = *this;
    Int a = abs(q.get_num());
    for (size_t i = 0; i < I.H_.rows(); ++i)
        for (size_t j = 0; j < I.H_.cols(); ++j) I.H_(i, j) *= a;
    I.den_ *= q.get_den();
    I.normalise();
    return I;
}

Ideal Ideal::conjugate_by(const RatMatrix& m) const {
    const size_t n = K_->degree();
    IntMatrix rows(n, n);
    for (size_t i = 0; i < n; ++i) {
        const IntVec h = H_.row(i);
        RatVec r = vec_mat(RatVec(h.begin(), h.end()), m);
        for (size_t j = 0; j < n; ++j) {
            if (r[j].get_den() != 1) throw DataError("automorphism does not preserve the maximal order");
            rows(i, j) = r[j].get_num();
        }
    }
    return from_lattice(*K_, rows, den_);
}

Rat Ideal::norm() const {
    if (is_zero()) return 0;
    Rat r(abs(diag_product(H_)));
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), den_.get_mpz_t(), K_->degree());
    r /= Rat(dn);
    return r;
}

bool Ideal::contains_basis_vec(const IntVec& v0) const {
    const size_t n = K_->degree();
    if (is_zero()) return ftsl2::is_zero(v0);
    IntVec v(n);
    for (size_t i = 0; i < n; ++i) v[i] = v0[i] * den_;
    // H is upper triangular
    for (size_t i = 0; i < n; ++i) {
        if (v[i] % H_(i, i) != 0) return false;
        Int c = v[i] / H_(i, i);
        if (c != 0)
            for (size_t j = i; j < n; ++j) v[j] -= c * H_(i, j);
    }
    return true;
}

bool Ideal::contains(const NFElement& x) const {
    RatVec c = x.basis_coords();
    const size_t n = c.size();
    IntVec v(n);
    for (size_t i = 0; i < n; ++i) {
        Rat y = c[i] * den_;
        if (y.get_den() != 1) return false;
        v[i] = y.get_num();
    }
    // contains_basis_vec multiplies by den again, so test the lattice directly
    for (size_t i = 0; i < n; ++i) {
        if (v[i] % H_(i, i) != 0) return false;
        Int q = v[i] / H_(i, i);
        if (q != 0)
            for (size_t j = i; j < n; ++j) v[j] -= q * H_(i, j);
    }
    return true;
}

bool Ideal::divides(const Ideal& o) const {
    for (const auto& x : o.basis_elements())
        if (!contains(x)) return false;
    return true;
}

std::vector<NFElement> Ideal::basis_elements() const {
    std::vector<NFElement> out;
    for (size_t i = 0; i < H_.rows(); ++i) {
        IntVec r = H_.row(i);
        out.push_back(K_->from_basis(r).scaled(Rat(1) / Rat(den_)));
    }
    return out;
}

Ideal Ideal::numerator() const {
    Ideal I = *this;
    I.den_ = 1;
    return I;
}

bool Ideal::operator<(const Ideal& o) const {
    if (den_ != o.den_) return den_ < o.den_;
    for (size_t i = 0; i < H_.rows(); ++i)
        for (size_t j = 0; j < H_.cols(); ++j)
            if (H_(i, j) != o.H_(i, j)) return H_(i, j) < o.H_(i, j);
    return false;
}

std::string Ideal::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < H_.rows(); ++i) {
        if (i) os << "; ";
        for (size_t j = 0; j < H_.cols(); ++j) os << (j ? " " : "") << H_(i, j).get_str();
    }
    os << "]";
    if (den_ != 1) os << "/" << den_.get_str();
    return os.str();
}

}  // namespace ftsl2
