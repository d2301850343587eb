#include "ftsl2/exactlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ftsl2 {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMatrix::row(size_t i) const {
    return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                  a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
}

void IntMatrix::set_row(size_t i, const IntVec& v) {
    for (size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

void IntMatrix::append_row(const IntVec& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw std::invalid_argument("IntMatrix::append_row: width mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix p(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::rows_range(size_t begin, size_t end) const {
    IntMatrix m(end - begin, c_);
    for (size_t i = begin; i < end; ++i)
        for (size_t j = 0; j < c_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < r_; ++i) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntVec vec_mat(const IntVec& v, const IntMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: shape mismatch");
    IntVec out(m.cols());
    for (size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

namespace {

// Extended gcd with g >= 0 and s*a + t*b = g.
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Row op on a pair of rows: (ri, rk) <- (s ri + t rk, -b/g ri + a/g rk).
void combine_rows(IntVec& ri, IntVec& rk, const Int& s, const Int& t, const Int& ag, const Int& bg) {
    for (size_t j = 0; j < ri.size(); ++j) {
        Int x = s * ri[j] + t * rk[j];
        Int y = ag * rk[j] - bg * ri[j];
        ri[j] = std::move(x);
        rk[j] = std::move(y);
    }
}

void reduce_above(std::vector<IntVec>& rows, const std::vector<size_t>& pivots) {
    for (size_t i = 0; i < rows.size(); ++i) {
        size_t pc = pivots[i];
        const Int& p = rows[i][pc];
        for (size_t k = 0; k < i; ++k) {
            if (rows[k][pc] == 0) continue;
            Int q = floor_div(rows[k][pc], p);
            if (q == 0) continue;
            for (size_t j = 0; j < rows[k].size(); ++j) rows[k][j] -= q * rows[i][j];
        }
    }
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    const size_t r = m.rows(), c = m.cols();
    std::vector<IntVec> H(r), U(r);
    for (size_t i = 0; i < r; ++i) {
        H[i] = m.row(i);
        U[i] = IntVec(r);
        U[i][i] = 1;
    }
    // Work on the augmented rows so that transforms are carried along.
    std::vector<IntVec> A(r);
    for (size_t i = 0; i < r; ++i) {
        A[i] = H[i];
        A[i].insert(A[i].end(), U[i].begin(), U[i].end());
    }
    size_t row = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < c && row < r; ++col) {
        for (size_t i = row + 1; i < r; ++i) {
            if (A[i][col] == 0) continue;
            Int a = A[row][col], b = A[i][col], g, s, t;
            if (a != 0 && b % a == 0) {
                Int q = b / a;
                for (size_t j = 0; j < A[i].size(); ++j) A[i][j] -= q * A[row][j];
                continue;
            }
            xgcd(a, b, g, s, t);
            Int ag = a / g, bg = b / g;
            combine_rows(A[row], A[i], s, t, ag, bg);
        }
        if (A[row][col] == 0) continue;
        if (A[row][col] < 0)
            for (auto& x : A[row]) x = -x;
        pivots.push_back(col);
        ++row;
    }
    std::vector<IntVec> top(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(row));
    reduce_above(top, pivots);
    for (size_t i = 0; i < row; ++i) A[i] = std::move(top[i]);

    HnfResult res;
    res.rank = row;
    res.H = IntMatrix(r, c);
    res.U = IntMatrix(r, r);
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < c; ++j) res.H(i, j) = A[i][j];
        for (size_t j = 0; j < r; ++j) res.U(i, j) = A[i][c + j];
    }
    return res;
}

IntMatrix hnf_rows(const IntMatrix& m, const Int& modulus) {
    const size_t c = m.cols();
    std::vector<IntVec> A;
    A.reserve(m.rows() + (modulus != 0 ? c : 0));
    for (size_t i = 0; i < m.rows(); ++i) A.push_back(m.row(i));
    const bool modular = modulus != 0;
    Int D = abs(modulus);
    if (modular) {
        for (auto& v : A)
            for (auto& x : v) x = mod_pos(x, D);
        for (size_t j = 0; j < c; ++j) {
            IntVec e(c);
            e[j] = D;
            A.push_back(std::move(e));
        }
    }
    std::vector<IntVec> out;
    std::vector<size_t> pivots;
    std::vector<bool> used(A.size(), false);
    for (size_t col = 0; col < c; ++col) {
        long piv = -1;
        for (size_t i = 0; i < A.size(); ++i) {
            if (used[i] || A[i][col] == 0) continue;
            if (piv < 0) {
                piv = static_cast<long>(i);
                continue;
            }
            IntVec& P = A[static_cast<size_t>(piv)];
            Int a = P[col], b = A[i][col], g, s, t;
            if (b % a == 0) {
                Int q = b / a;
                for (size_t j = col; j < c; ++j) A[i][j] -= q * P[j];
            } else {
                xgcd(a, b, g, s, t);
                Int ag = a / g, bg = b / g;
                combine_rows(P, A[i], s, t, ag, bg);
            }
            if (modular)
                for (size_t j = col + 1; j < c; ++j) {
                    A[i][j] = mod_pos(A[i][j], D);
                    P[j] = mod_pos(P[j], D);
                }
        }
        if (piv < 0) continue;
        IntVec& P = A[static_cast<size_t>(piv)];
        used[static_cast<size_t>(piv)] = true;
        if (P[col] < 0)
            for (auto& x : P) x = -x;
        out.push_back(P);
        pivots.push_back(col);
    }
    reduce_above(out, pivots);
    return IntMatrix::from_rows(out, c);
}

bool HnfAccumulator::add(IntVec v) {
    if (v.size() != cols_) throw std::invalid_argument("HnfAccumulator::add: width mismatch");
    if (modulus_ != 0)
        for (auto& x : v) x = mod_pos(x, modulus_);
    bool changed = false;
    for (size_t col = 0; col < cols_; ++col) {
        if (v[col] == 0) continue;
        int pr = pivot_row_[col];
        if (pr < 0) {
            if (v[col] < 0)
                for (auto& x : v) x = -x;
            pivot_row_[col] = static_cast<int>(rows_.size());
            pivot_col_.push_back(col);
            rows_.push_back(std::move(v));
            changed = true;
            break;
        }
        IntVec& R = rows_[static_cast<size_t>(pr)];
        Int a = R[col], b = v[col];
        if (b % a == 0) {
            Int q = b / a;
            for (size_t j = col; j < cols_; ++j) v[j] -= q * R[j];
        } else {
            Int g, s, t;
            xgcd(a, b, g, s, t);
            Int ag = a / g, bg = b / g;
            combine_rows(R, v, s, t, ag, bg);
            if (R[col] < 0)
                for (auto& x : R) x = -x;
            if (modulus_ != 0)
                for (size_t j = col + 1; j < cols_; ++j) R[j] = mod_pos(R[j], modulus_);
            changed = true;
        }
        if (modulus_ != 0)
            for (size_t j = col + 1; j < cols_; ++j) v[j] = mod_pos(v[j], modulus_);
    }
    if (changed && full_rank()) {
        modulus_ = determinant();
        for (size_t i = 0; i < rows_.size(); ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (j != pivot_col_[i]) rows_[i][j] = mod_pos(rows_[i][j], modulus_);
    }
    return changed;
}

Int HnfAccumulator::determinant() const {
    if (!full_rank()) return 0;
    Int d = 1;
    for (size_t j = 0; j < cols_; ++j) d *= rows_[static_cast<size_t>(pivot_row_[j])][j];
    return abs(d);
}

IntMatrix HnfAccumulator::basis() const {
    std::vector<IntVec> rows;
    std::vector<size_t> pivots;
    for (size_t j = 0; j < cols_; ++j) {
        if (pivot_row_[j] < 0) continue;
        rows.push_back(rows_[static_cast<size_t>(pivot_row_[j])]);
        pivots.push_back(j);
    }
    if (modulus_ != 0) {
        // Columns are cut down mod the determinant except pivots, then fully reduced.
        return hnf_rows(IntMatrix::from_rows(rows, cols_), modulus_);
    }
    reduce_above(rows, pivots);
    return IntMatrix::from_rows(rows, cols_);
}

SnfResult snf_full(const IntMatrix& m) {
    const size_t r = m.rows(), c = m.cols();
    IntMatrix D = m, U = IntMatrix::identity(r), V = IntMatrix::identity(c), Vi = IntMatrix::identity(c);
    auto swap_rows = [&](size_t i, size_t k) {
        if (i == k) return;
        for (size_t j = 0; j < c; ++j) std::swap(D(i, j), D(k, j));
        for (size_t j = 0; j < r; ++j) std::swap(U(i, j), U(k, j));
    };
    auto swap_cols = [&](size_t i, size_t k) {
        if (i == k) return;
        for (size_t j = 0; j < r; ++j) std::swap(D(j, i), D(j, k));
        for (size_t j = 0; j < c; ++j) std::swap(V(j, i), V(j, k));
        for (size_t j = 0; j < c; ++j) std::swap(Vi(i, j), Vi(k, j));
    };
    // row_i += q * row_k
    auto addrow = [&](size_t i, size_t k, const Int& q) {
        for (size_t j = 0; j < c; ++j) D(i, j) += q * D(k, j);
        for (size_t j = 0; j < r; ++j) U(i, j) += q * U(k, j);
    };
    // col_j += q * col_k ; inverse gets row_k -= q * row_j
    auto addcol = [&](size_t j, size_t k, const Int& q) {
        for (size_t i = 0; i < r; ++i) D(i, j) += q * D(i, k);
        for (size_t i = 0; i < c; ++i) V(i, j) += q * V(i, k);
        for (size_t i = 0; i < c; ++i) Vi(k, i) -= q * Vi(j, i);
    };
    const size_t n = std::min(r, c);
    for (size_t k = 0; k < n; ++k) {
        for (;;) {
            // Move the smallest nonzero entry of the trailing block to (k, k).
            size_t bi = r, bj = c;
            for (size_t i = k; i < r; ++i)
                for (size_t j = k; j < c; ++j) {
                    if (D(i, j) == 0) continue;
                    if (bi == r || abs(D(i, j)) < abs(D(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == r) goto done;
            swap_rows(k, bi);
            swap_cols(k, bj);
            bool clean = true;
            for (size_t i = k + 1; i < r; ++i) {
                if (D(i, k) == 0) continue;
                Int q = D(i, k) / D(k, k);
                addrow(i, k, -q);
                if (D(i, k) != 0) clean = false;
            }
            for (size_t j = k + 1; j < c; ++j) {
                if (D(k, j) == 0) continue;
                Int q = D(k, j) / D(k, k);
                addcol(j, k, -q);
                if (D(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (size_t i = k + 1; i < r && divides; ++i)
                for (size_t j = k + 1; j < c; ++j)
                    if (D(i, j) % D(k, k) != 0) {
                        addrow(k, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(k, k) < 0) {
            for (size_t j = 0; j < c; ++j) D(k, j) = -D(k, j);
            for (size_t j = 0; j < r; ++j) U(k, j) = -U(k, j);
        }
    }
done:
    SnfResult res;
    res.U = std::move(U);
    res.V = std::move(V);
    res.Vinv = std::move(Vi);
    res.diag.resize(n);
    for (size_t k = 0; k < n; ++k) res.diag[k] = D(k, k);
    return res;
}

IntVec snf(const IntMatrix& m) {
    IntVec out;
    for (const auto& d : snf_full(m).diag)
        if (d != 0) out.push_back(d);
    return out;
}

FiniteAbelianGroup::FiniteAbelianGroup(const IntVec& moduli) {
    for (const auto& d : moduli)
        if (d <= 0) throw std::invalid_argument("FiniteAbelianGroup: moduli must be positive");
    IntMatrix m(moduli.size(), moduli.size());
    for (size_t i = 0; i < moduli.size(); ++i) m(i, i) = moduli[i];
    for (const auto& d : snf(m))
        if (d != 1) inv_.push_back(d);
}

Int FiniteAbelianGroup::order() const {
    Int o = 1;
    for (const auto& d : inv_) o *= d;
    return o;
}

IntVec FiniteAbelianGroup::reduce(IntVec v) const {
    if (v.size() != inv_.size()) throw std::invalid_argument("FiniteAbelianGroup::reduce: arity");
    for (size_t i = 0; i < v.size(); ++i) v[i] = mod_pos(v[i], inv_[i]);
    return v;
}

IntVec FiniteAbelianGroup::add(const IntVec& a, const IntVec& b) const {
    IntVec s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return reduce(std::move(s));
}

IntVec FiniteAbelianGroup::neg(const IntVec& a) const {
    IntVec s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = -a[i];
    return reduce(std::move(s));
}

IntVec FiniteAbelianGroup::scale(const IntVec& a, const Int& k) const {
    IntVec s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] * k;
    return reduce(std::move(s));
}

Int FiniteAbelianGroup::element_order(const IntVec& a) const {
    Int o = 1;
    for (size_t i = 0; i < a.size(); ++i) {
        Int g = gcd(a[i], inv_[i]);
        Int oi = inv_[i] / g;
        o = lcm(o, oi);
    }
    return o;
}

size_t FiniteAbelianGroup::size() const {
    Int o = order();
    if (o > Int(1) << 40) throw std::length_error("FiniteAbelianGroup: too large to enumerate");
    return static_cast<size_t>(o.get_ui());
}

IntVec FiniteAbelianGroup::element(size_t index) const {
    IntVec v(inv_.size());
    for (size_t i = 0; i < inv_.size(); ++i) {
        size_t d = inv_[i].get_ui();
        v[i] = static_cast<unsigned long>(index % d);
        index /= d;
    }
    return v;
}

size_t FiniteAbelianGroup::index_of(const IntVec& a) const {
    IntVec v = reduce(a);
    size_t idx = 0, mul = 1;
    for (size_t i = 0; i < inv_.size(); ++i) {
        idx += v[i].get_ui() * mul;
        mul *= inv_[i].get_ui();
    }
    return idx;
}

std::string FiniteAbelianGroup::str() const {
    if (inv_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < inv_.size(); ++i) s += (i ? " x Z/" : "Z/") + inv_[i].get_str();
    return s;
}

std::string FinGenAbGroup::str() const {
    std::string s;
    if (free_rank > 0) s = "Z^" + std::to_string(free_rank);
    if (!torsion.trivial()) s += (s.empty() ? "" : " x ") + torsion.str();
    return s.empty() ? "1" : s;
}

IntVec Cokernel::project(const IntVec& x) const {
    IntVec y = vec_mat(x, proj);
    const auto& inv = group.torsion.invariants();
    for (size_t i = 0; i < inv.size(); ++i) y[i] = mod_pos(y[i], inv[i]);
    return y;
}

IntVec Cokernel::lift(const IntVec& coords) const { return vec_mat(coords, lifts); }

bool Cokernel::is_zero_class(const IntVec& x) const { return ftsl2::is_zero(project(x)); }

Cokernel cokernel(const IntMatrix& relations, size_t ngens) {
    if (relations.rows() > 0 && relations.cols() != ngens)
        throw std::invalid_argument("cokernel: relation width differs from generator count");
    Cokernel ck;
    ck.ambient = ngens;
    IntMatrix R = relations.rows() == 0 ? IntMatrix(0, ngens) : relations;
    SnfResult s = snf_full(R);
    std::vector<size_t> tors, freec;
    IntVec invs;
    for (size_t i = 0; i < ngens; ++i) {
        Int d = i < s.diag.size() ? s.diag[i] : Int(0);
        if (d == 1) continue;
        if (d == 0)
            freec.push_back(i);
        else {
            tors.push_back(i);
            invs.push_back(d);
        }
    }
    std::vector<size_t> order = tors;
    order.insert(order.end(), freec.begin(), freec.end());
    ck.proj = IntMatrix(ngens, order.size());
    ck.lifts = IntMatrix(order.size(), ngens);
    for (size_t k = 0; k < order.size(); ++k) {
        for (size_t i = 0; i < ngens; ++i) {
            ck.proj(i, k) = s.V(i, order[k]);
            ck.lifts(k, i) = s.Vinv(order[k], i);
        }
    }
    ck.group.free_rank = freec.size();
    ck.group.torsion = FiniteAbelianGroup(invs);
    if (ck.group.torsion.invariants() != invs) throw std::logic_error("cokernel: SNF chain not normalised");
    return ck;
}

IntMatrix left_kernel(const IntMatrix& m) {
    HnfResult h = hnf(m);
    IntMatrix k(0, m.rows());
    for (size_t i = h.rank; i < m.rows(); ++i) k.append_row(h.U.row(i));
    if (k.rows() == 0) return IntMatrix(0, m.rows());
    return hnf_rows(k);
}

IntMatrix kernel(const IntMatrix& m) { return left_kernel(m.transpose()); }

Presentation Presentation::free(size_t n) { return Presentation{n, IntMatrix(0, n)}; }

Presentation Presentation::of(const FinGenAbGroup& g) {
    const auto& inv = g.torsion.invariants();
    size_t n = inv.size() + g.free_rank;
    Presentation p{n, IntMatrix(0, n)};
    for (size_t i = 0; i < inv.size(); ++i) {
        IntVec r(n);
        r[i] = inv[i];
        p.relations.append_row(r);
    }
    return p;
}

bool solve_left_integral(const IntMatrix& m, const IntVec& b, IntVec& x) {
    if (b.size() != m.cols()) throw std::invalid_argument("solve_left_integral: shape mismatch");
    HnfResult h = hnf(m);
    IntVec res = b, y(m.rows());
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < h.rank; ++col) {
        if (h.H(row, col) == 0) {
            if (res[col] != 0) {
                // Column without a pivot: nothing can cancel it.
                bool later = false;
                for (size_t r2 = row; r2 < h.rank; ++r2)
                    if (h.H(r2, col) != 0) later = true;
                if (!later) return false;
            }
            continue;
        }
        if (res[col] % h.H(row, col) != 0) return false;
        y[row] = res[col] / h.H(row, col);
        for (size_t j = col; j < m.cols(); ++j) res[j] -= y[row] * h.H(row, j);
        ++row;
    }
    if (!is_zero(res)) return false;
    x = vec_mat(y, h.U);
    return true;
}

HomKernel hom_kernel(const Presentation& src, const Presentation& dst, const IntMatrix& images) {
    if (images.rows() != src.ngens || images.cols() != dst.ngens)
        throw std::invalid_argument("hom_kernel: image matrix shape");
    const size_t a = src.ngens, b = dst.ngens;
    IntMatrix S(0, b);
    for (size_t i = 0; i < a; ++i) S.append_row(images.row(i));
    for (size_t i = 0; i < dst.relations.rows(); ++i) S.append_row(dst.relations.row(i));
    IntMatrix K = S.rows() ? left_kernel(S) : IntMatrix(0, 0);
    IntMatrix X(0, a);
    for (size_t i = 0; i < K.rows(); ++i) {
        IntVec full = K.row(i);
        X.append_row(IntVec(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(a)));
    }
    if (a == 0) return HomKernel{};
    IntMatrix BX = X.rows() ? hnf_rows(X) : IntMatrix(0, a);
    const size_t k = BX.rows();
    IntMatrix C(0, k);
    for (size_t i = 0; i < src.relations.rows(); ++i) {
        IntVec coef;
        if (!solve_left_integral(BX, src.relations.row(i), coef))
            throw std::logic_error("hom_kernel: map does not respect source relations");
        C.append_row(coef);
    }
    HomKernel hk;
    if (k == 0) {
        hk.generators = IntMatrix(0, a);
        return hk;
    }
    Cokernel ck = cokernel(C, k);
    hk.group = ck.group;
    hk.generators = ck.lifts * BX;
    return hk;
}

Cokernel hom_cokernel(const Presentation& dst, const IntMatrix& images) {
    IntMatrix R(0, dst.ngens);
    for (size_t i = 0; i < dst.relations.rows(); ++i) R.append_row(dst.relations.row(i));
    for (size_t i = 0; i < images.rows(); ++i) R.append_row(images.row(i));
    return cokernel(R, dst.ngens);
}

RatMatrix RatMatrix::identity(size_t n) {
    RatMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

RatVec RatMatrix::row(size_t i) const {
    return RatVec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                  a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("RatMatrix: shape mismatch in product");
    RatMatrix p(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Rat& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rat RatMatrix::det() const {
    if (r_ != c_) throw std::invalid_argument("RatMatrix::det: not square");
    RatMatrix a = *this;
    Rat d = 1;
    for (size_t k = 0; k < r_; ++k) {
        size_t p = k;
        while (p < r_ && a(p, k) == 0) ++p;
        if (p == r_) return 0;
        if (p != k) {
            for (size_t j = 0; j < c_; ++j) std::swap(a(p, j), a(k, j));
            d = -d;
        }
        d *= a(k, k);
        for (size_t i = k + 1; i < r_; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);
            for (size_t j = k; j < c_; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

bool RatMatrix::invert(RatMatrix& out) const {
    if (r_ != c_) throw std::invalid_argument("RatMatrix::invert: not square");
    const size_t n = r_;
    RatMatrix a = *this;
    out = identity(n);
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return false;
        if (p != k)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
                std::swap(out(p, j), out(k, j));
            }
        Rat piv = a(k, k);
        for (size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            out(k, j) /= piv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            for (size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                out(i, j) -= f * out(k, j);
            }
        }
    }
    return true;
}

size_t RatMatrix::rank() const {
    RatMatrix a = *this;
    size_t rank = 0;
    for (size_t col = 0; col < c_ && rank < r_; ++col) {
        size_t p = rank;
        while (p < r_ && a(p, col) == 0) ++p;
        if (p == r_) continue;
        for (size_t j = 0; j < c_; ++j) std::swap(a(p, j), a(rank, j));
        for (size_t i = rank + 1; i < r_; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(rank, col);
            for (size_t j = col; j < c_; ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

Int RatMatrix::common_denominator() const {
    Int d = 1;
    for (const auto& x : a_) d = lcm(d, Int(x.get_den()));
    return d;
}

IntMatrix RatMatrix::scaled_integral(const Int& d) const {
    IntMatrix m(r_, c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) {
            Rat x = (*this)(i, j) * d;
            if (x.get_den() != 1) throw std::logic_error("RatMatrix::scaled_integral: not integral");
            m(i, j) = x.get_num();
        }
    return m;
}

RatVec vec_mat(const RatVec& v, const RatMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: shape mismatch");
    RatVec out(m.cols());
    for (size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

bool solve_left(const RatMatrix& m, const RatVec& b, RatVec& x) {
    RatMatrix inv;
    if (!m.invert(inv)) return false;
    x = vec_mat(b, inv);
    return true;
}

Int lcm_denominators(const RatVec& v) {
    Int d = 1;
    for (const auto& x : v) d = lcm(d, Int(x.get_den()));
    return d;
}

}  // namespace ftsl2
