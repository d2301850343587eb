#include "ftsl2/cohomology.hpp"

#include <omp.h>

#include <stdexcept>

namespace ftsl2 {

std::string to_string(GradedRingDescriptor::Kind k) {
    switch (k) {
        case GradedRingDescriptor::Kind::Zero: return "Zero";
        case GradedRingDescriptor::Kind::LaurentTimesExterior: return "LaurentTimesExterior";
        case GradedRingDescriptor::Kind::InvariantSubring: return "InvariantSubring";
    }
    return "?";
}

namespace {

long pmod(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

using Mat = std::vector<std::vector<long>>;

long inv_mod(long a, long p) {
    long r = 1, e = p - 2, b = pmod(a, p);
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Row echelon form mod p in place; returns the rank.
size_t echelon(Mat& a, long p, std::vector<size_t>* pivots = nullptr) {
    size_t rank = 0;
    const size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t c = 0; c < cols && rank < a.size(); ++c) {
        size_t piv = rank;
        while (piv < a.size() && pmod(a[piv][c], p) == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        long iv = inv_mod(a[rank][c], p);
        for (auto& x : a[rank]) x = pmod(x * iv, p);
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == rank) continue;
            long f = pmod(a[i][c], p);
            if (!f) continue;
            for (size_t j = 0; j < cols; ++j) a[i][j] = pmod(a[i][j] - f * a[rank][j], p);
        }
        if (pivots) pivots->push_back(c);
        ++rank;
    }
    return rank;
}

size_t rank_mod(Mat a, long p) { return echelon(a, p); }

// Basis of {x : A x = 0} mod p.
Mat nullspace(Mat a, size_t cols, long p) {
    std::vector<size_t> piv;
    echelon(a, p, &piv);
    Mat out;
    std::vector<bool> is_piv(cols, false);
    for (size_t c : piv) is_piv[c] = true;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<long> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = pmod(-a[i][f], p);
        out.push_back(v);
    }
    return out;
}

// Coordinates of v in the span of the rows of B (B independent), mod p.
std::vector<long> coordinates(const Mat& B, const std::vector<long>& v, long p) {
    const size_t k = B.size(), n = v.size();
    // solve c B = v: transpose system
    Mat a(n, std::vector<long>(k + 1));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < k; ++i) a[j][i] = B[i][j];
        a[j][k] = v[j];
    }
    std::vector<size_t> piv;
    echelon(a, p, &piv);
    std::vector<long> c(k, 0);
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == k) throw std::logic_error("vector not in span");
        c[piv[i]] = a[i][k];
    }
    return c;
}

// Z/n: right multiplication by x on Z[G], row h = g^h x.
Mat right_mult(const std::vector<long>& x) {
    const size_t n = x.size();
    Mat D(n, std::vector<long>(n));
    for (size_t h = 0; h < n; ++h)
        for (size_t k = 0; k < n; ++k) D[h][(h + k) % n] = x[k];
    return D;
}

struct CyclicCochains {
    long n, p;
    Mat V;              // basis of Hom_G(Z[G], F_p), as functionals on the standard basis
    Mat delta_odd_src;  // cochain map induced by a boundary of each type, in V coordinates
    Mat delta_even_src;

    CyclicCochains(long n_, long p_) : n(n_), p(p_) {
        // f(e_h g) = f(e_h)
        Mat cons;
        for (long h = 0; h < n; ++h) {
            std::vector<long> row(n, 0);
            row[(h + 1) % n] = 1;
            row[h] = pmod(row[h] - 1, p);
            cons.push_back(row);
        }
        V = nullspace(cons, n, p);
        std::vector<long> gm1(n, 0), norm(n, 1);
        gm1[0] = -1;
        gm1[1 % n] += 1;
        delta_odd_src = induced(right_mult(gm1));
        delta_even_src = induced(right_mult(norm));
    }

    // f -> f o D, expressed in the basis V
    Mat induced(const Mat& D) const {
        Mat out;
        for (const auto& f : V) {
            std::vector<long> g(n, 0);
            for (long h = 0; h < n; ++h) {
                long s = 0;
                for (long k = 0; k < n; ++k) s += D[h][k] * f[k];
                g[h] = pmod(s, p);
            }
            out.push_back(coordinates(V, g, p));
        }
        return out;
    }

    // delta^k : C^k -> C^{k+1} is induced by the boundary P_{k+1} -> P_k
    const Mat& delta(long k) const { return pmod(k + 1, 2) == 1 ? delta_odd_src : delta_even_src; }
    size_t dim() const { return V.size(); }
};

Mat kron(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    const size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    Mat out(ar * br, std::vector<long>(ac * bc, 0));
    for (size_t i = 0; i < ar; ++i)
        for (size_t j = 0; j < ac; ++j)
            for (size_t k = 0; k < br; ++k)
                for (size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

Mat identity(size_t n) {
    Mat m(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Subsets of {0..r-1} of size j in a fixed order.
std::vector<unsigned> subsets(size_t r, size_t j) {
    std::vector<unsigned> out;
    for (unsigned s = 0; s < (1u << r); ++s)
        if (static_cast<size_t>(__builtin_popcount(s)) == j) out.push_back(s);
    return out;
}

// Koszul cochain map Hom(K_j) -> Hom(K_{j+1}) for the trivial module.
// The boundary e_S -> sum +-(t_i - 1) e_{S - i}; each coefficient is replaced
// by its augmentation.
Mat koszul_delta(size_t r, size_t j) {
    auto src = subsets(r, j), dst = subsets(r, j + 1);
    Mat m(src.size(), std::vector<long>(dst.size(), 0));
    for (size_t a = 0; a < dst.size(); ++a) {
        unsigned T = dst[a];
        int pos = 0;
        for (size_t i = 0; i < r; ++i) {
            if (!(T >> i & 1)) continue;
            unsigned S = T & ~(1u << i);
            const long sign = pos % 2 ? -1 : 1;
            // group ring element t_i - 1: coefficients +1 at t_i, -1 at 1
            const long augmentation = 1 + (-1);
            for (size_t b = 0; b < src.size(); ++b)
                if (src[b] == S) m[b][a] += sign * augmentation;
            ++pos;
        }
    }
    return m;
}

}  // namespace

long DimensionFunction::at(long d) const { return dims[static_cast<size_t>(pmod(d, period))]; }

long DimensionFunction::sum_over(long start, long len) const {
    long s = 0;
    for (long d = start; d < start + len; ++d) s += at(d);
    return s;
}

DimensionFunction GradedRingDescriptor::dimensions() const {
    DimensionFunction f;
    switch (kind) {
        case Kind::Zero:
            f.period = 1;
            f.dims = {0};
            break;
        case Kind::LaurentTimesExterior:
            f.period = 2;
            f.dims = {1L << r, 1L << r};
            break;
        case Kind::InvariantSubring:
            f.period = 4;
            f.dims.assign(4, 0);
            for (long d = 0; d < 4; ++d)
                for (long j = 0; j <= static_cast<long>(r) + 1; ++j)
                    if (pmod(j - d, 2) == 0 && pmod(d + j, 4) == 0) f.dims[d] += binom(static_cast<long>(r) + 1, j);
            break;
    }
    return f;
}

GradedRingDescriptor component_ring(const NormalizerDescriptor& n, unsigned ell) {
    GradedRingDescriptor g;
    g.r = n.r;
    g.ell = ell;
    if (n.m % ell != 0) return g;
    g.kind = n.kind == NormalizerDescriptor::Kind::Abelian ? GradedRingDescriptor::Kind::LaurentTimesExterior
                                                           : GradedRingDescriptor::Kind::InvariantSubring;
    return g;
}

std::vector<long> total_dimensions(const std::vector<SubgroupClass>& classes, unsigned ell, long dmin, long dmax) {
    std::vector<long> out(static_cast<size_t>(dmax - dmin + 1), 0);
    for (const auto& c : classes) {
        DimensionFunction f = component_ring(c.normalizer, ell).dimensions();
        for (long d = dmin; d <= dmax; ++d) out[static_cast<size_t>(d - dmin)] += f.at(d);
    }
    return out;
}

DimensionFunction total_dimension_function(const std::vector<SubgroupClass>& classes, unsigned ell) {
    DimensionFunction f;
    f.period = 4;
    f.dims = total_dimensions(classes, ell, 0, 3);
    return f;
}

long oracle_cyclic(long n, unsigned ell, long d) { return oracle_product(n, 0, ell, d); }

long oracle_product(long n, size_t r, unsigned ell, long d) {
    if (n < 1) throw std::invalid_argument("oracle_product: n >= 1");
    const long p = ell;
    CyclicCochains cyc(n, p);
    // C^k = sum_j Hom(P_{k-j}) (x) Hom(Lambda^j)
    auto dimC = [&](long) {
        size_t s = 0;
        for (size_t j = 0; j <= r; ++j) s += cyc.dim() * static_cast<size_t>(binom(static_cast<long>(r), static_cast<long>(j)));
        return s;
    };
    auto offset = [&](size_t j) {
        size_t s = 0;
        for (size_t i = 0; i < j; ++i) s += cyc.dim() * static_cast<size_t>(binom(static_cast<long>(r), static_cast<long>(i)));
        return s;
    };
    auto total_delta = [&](long k) {
        Mat D(dimC(k), std::vector<long>(dimC(k + 1), 0));
        for (size_t j = 0; j <= r; ++j) {
            const size_t bj = static_cast<size_t>(binom(static_cast<long>(r), static_cast<long>(j)));
            const long q = k - static_cast<long>(j);  // cyclic degree
            Mat a = kron(cyc.delta(q), identity(bj));
            for (size_t x = 0; x < a.size(); ++x)
                for (size_t y = 0; y < a[x].size(); ++y) D[offset(j) + x][offset(j) + y] += a[x][y];
            if (j < r) {
                Mat b = kron(identity(cyc.dim()), koszul_delta(r, j));
                const long sign = pmod(q, 2) ? -1 : 1;
                for (size_t x = 0; x < b.size(); ++x)
                    for (size_t y = 0; y < b[x].size(); ++y) D[offset(j) + x][offset(j + 1) + y] += sign * b[x][y];
            }
        }
        for (auto& row : D)
            for (auto& v : row) v = pmod(v, p);
        return D;
    };
    Mat out_d = total_delta(d), in_d = total_delta(d - 1);
    const long dim = static_cast<long>(dimC(d));
    return dim - static_cast<long>(rank_mod(out_d, p)) - static_cast<long>(rank_mod(in_d, p));
}

long oracle_dihedral_invariants(size_t r, unsigned ell, long d) {
    (void)ell;  // -1 acts with eigenvalues +-1, distinct for odd ell
    long count = 0;
    const size_t gens = r + 1;  // b1, x1..xr
    for (unsigned w = 0; w < (1u << gens); ++w) {
        const long len = __builtin_popcount(w);
        if (pmod(d - len, 2) != 0) continue;
        const long i = (d - len) / 2;  // power of a2, any integer
        if (pmod(i + len, 2) == 0) ++count;
    }
    return count;
}

std::vector<GridPoint> oracle_grid(const GridSpec& spec, bool parallel) {
    std::vector<GridPoint> pts;
    for (long n : spec.ns)
        for (unsigned ell : spec.ells)
            for (size_t r = 0; r <= spec.rmax; ++r)
                for (long d = spec.dmin; d <= spec.dmax; ++d)
                    for (bool dih : {false, true}) {
                        GridPoint g;
                        g.n = n;
                        g.ell = ell;
                        g.r = r;
                        g.d = d;
                        g.dihedral = dih;
                        pts.push_back(g);
                    }
    const long N = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (long i = 0; i < N; ++i) {
        GridPoint& g = pts[static_cast<size_t>(i)];
        NormalizerDescriptor nd;
        nd.m = g.n;
        nd.r = g.r;
        nd.kind = g.dihedral ? NormalizerDescriptor::Kind::Dihedral : NormalizerDescriptor::Kind::Abelian;
        g.formula = component_ring(nd, g.ell).dimensions().at(g.d);
        if (spec.inject_fault && !g.dihedral && g.r == 1 && g.d == 0) g.formula += 1;
        if (g.dihedral)
            g.oracle = g.n % g.ell == 0 ? oracle_dihedral_invariants(g.r, g.ell, g.d) : 0;
        else
            g.oracle = oracle_product(g.n, g.r, g.ell, g.d);
    }
    return pts;
}

}  // namespace ftsl2
