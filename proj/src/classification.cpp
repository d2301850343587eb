#include "ftsl2/classification.hpp"

#include "ftsl2/lattice.hpp"

#include <algorithm>
#include <complex>

namespace ftsl2 {

std::string to_string(NormalizerDescriptor::Kind k) {
    return k == NormalizerDescriptor::Kind::Abelian ? "Abelian" : "Dihedral";
}

NFElement RepresentativeMatrix::det() const { return a[0] * a[3] - a[1] * a[2]; }
NFElement RepresentativeMatrix::trace() const { return a[0] + a[3]; }

RepresentativeMatrix RepresentativeMatrix::operator*(const RepresentativeMatrix& o) const {
    return {{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3], a[2] * o.a[0] + a[3] * o.a[2],
             a[2] * o.a[1] + a[3] * o.a[3]}};
}

bool RepresentativeMatrix::is_identity() const {
    return a[0].is_one() && a[1].is_zero() && a[2].is_zero() && a[3].is_one();
}

bool verify_matrix(const RepresentativeMatrix& M, const NFElement& t, unsigned ell) {
    if (!M.det().is_one() || M.trace() != t) return false;
    if (M.is_identity()) return false;
    RepresentativeMatrix P = M;
    for (unsigned k = 1; k < ell; ++k) P = P * M;
    return P.is_identity();
}

RepresentativeMatrix companion_matrix(const NFElement& t) {
    const NumberField& K = *t.field();
    return {{K.zero(), -K.one(), K.one(), t}};
}

NormalizerDescriptor normalizer_base(const NormMapsData& nm, unsigned ell) {
    NormalizerDescriptor d;
    d.base = nm.ker_nm1.group;
    d.m = nm.ker_nm1_torsion();
    d.r = nm.ker_nm1_rank();
    if (d.m % ell != 0 || d.m % 2 != 0)
        throw DataError("torsion of ker Nm1 has order " + d.m.get_str() + ", not divisible by 2*" + std::to_string(ell));
    return d;
}

long dihedral_overgroup_count(const SubgroupClass& c) {
    if (!c.invariant) return 0;
    // |ker Nm1 / squares|
    size_t e = c.normalizer.r;
    for (const auto& q : c.normalizer.base.torsion.invariants())
        if (q % 2 == 0) ++e;
    return 1L << e;
}

std::optional<RepresentativeMatrix> representative_matrix(const OrientedIdeal& x, const RelativeField& rel,
                                                          const SArithmetic& AK, long bound) {
    // small representative of the class, then an LLL-reduced Z-basis of it
    NFElement alpha;
    const Ideal J = reduce_ideal(x.ideal, &alpha);
    const NFElement orientation = x.orientation * rel.norm(alpha);
    const NumberField& L = *rel.field();
    std::vector<NFElement> zb;
    {
        const auto hb = J.basis_elements();
        RealRows B;
        const std::vector<double> w(L.places(), 1.0);
        for (const auto& e : hb) {
            IntVec c;
            for (const auto& q : e.basis_coords()) c.push_back(q.get_num());
            B.push_back(weighted_embedding(L, c, w));
        }
        LongRows T;
        lll_reduce(B, T);
        for (const auto& row : T) {
            NFElement e = L.zero();
            for (size_t k = 0; k < row.size(); ++k)
                if (row[k]) e = e + hb[k].scaled(Rat(row[k]));
            zb.push_back(e);
        }
    }
    const size_t N = zb.size();
    // candidates in order of growing coefficient box, unit vectors first
    std::vector<std::pair<NFElement, NFElement>> cand;  // (a, b) with element a + b zeta
    for (size_t i = 0; i < N; ++i) {
        auto [a, b] = rel.split(zb[i]);
        cand.emplace_back(a, b);
    }
    for (long B = 1; B <= bound; ++B) {
        std::vector<long> c(N, -B);
        while (true) {
            long mx = 0, nz = 0;
            for (long v : c) {
                mx = std::max(mx, std::labs(v));
                nz += v != 0;
            }
            if (mx == B && nz > 1) {
                NFElement e = rel.field()->zero();
                for (size_t i = 0; i < N; ++i)
                    if (c[i]) e = e + zb[i].scaled(Rat(c[i]));
                auto [a, b] = rel.split(e);
                cand.emplace_back(a, b);
            }
            size_t i = 0;
            while (i < N && c[i] == B) c[i++] = -B;
            if (i == N) break;
            ++c[i];
        }
    }
    const NFElement t = rel.trace();
    const NumberField& K = *orientation.field();
    const PlaceSet& S = AK.places();

    // multiplication by zeta on the basis (x1, x2), given as (a_i, b_i)
    auto matrix_on = [&](const NFElement& A1, const NFElement& B1, const NFElement& A2,
                         const NFElement& B2) -> std::optional<RepresentativeMatrix> {
        const NFElement det = A1 * B2 - A2 * B1;
        auto coords = [&](const NFElement& al, const NFElement& be) {
            return std::make_pair((al * B2 - A2 * be) / det, (A1 * be - al * B1) / det);
        };
        // zeta (a + b zeta) = -b + (a + b t) zeta
        auto [c11, c21] = coords(-B1, A1 + B1 * t);
        auto [c12, c22] = coords(-B2, A2 + B2 * t);
        RepresentativeMatrix M{{c11, c12, c21, c22}};
        for (const auto& e : M.a)
            for (const auto& p : poly::prime_factors(lcm_denominators(e.basis_coords())))
                if (!S.contains_prime(p)) return std::nullopt;
        return M;
    };

    // x1 primitive: y -> det(x1, y) maps J onto (orientation); solve for x2
    const Ideal target_ideal = Ideal::principal(orientation);
    for (size_t i = 0; i < std::min<size_t>(cand.size(), 64); ++i) {
        const auto& [a1, b1] = cand[i];
        std::vector<NFElement> f;
        for (const auto& y : zb) {
            auto [a, b] = rel.split(y);
            f.push_back(a1 * b - a * b1);
        }
        if (Ideal::from_generators(K, f) != target_ideal) continue;
        std::vector<RatVec> rows;
        for (const auto& e : f) rows.push_back(e.basis_coords());
        RatVec rhs = orientation.basis_coords();
        Int D = lcm_denominators(rhs);
        for (const auto& r : rows) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), lcm_denominators(r).get_mpz_t());
        IntMatrix F(N, K.degree());
        IntVec b(K.degree());
        for (size_t r = 0; r < N; ++r)
            for (size_t c = 0; c < K.degree(); ++c) F(r, c) = Rat(rows[r][c] * D).get_num();
        for (size_t c = 0; c < K.degree(); ++c) b[c] = Rat(rhs[c] * D).get_num();
        IntVec xs;
        if (!solve_left_integral(F, b, xs)) continue;
        NFElement x2 = L.zero();
        for (size_t k = 0; k < N; ++k)
            if (xs[k] != 0) x2 = x2 + zb[k].scaled(Rat(xs[k]));
        auto [a2, b2] = rel.split(x2);
        if (auto M = matrix_on(a1, b1, a2, b2)) return M;
    }

    // pair search, with a floating prefilter on |N(det)| when S has no finite places
    const bool prefilter = S.finite_count() == 0;
    std::vector<std::vector<std::complex<double>>> ea, eb;
    for (const auto& [a, b] : cand) {
        ea.push_back(K.embed_d(a));
        eb.push_back(K.embed_d(b));
    }
    const double target = std::abs(orientation.norm().get_d());
    for (size_t i = 0; i < cand.size(); ++i)
        for (size_t j = 0; j < cand.size(); ++j) {
            if (i == j) continue;
            if (prefilter) {
                std::complex<double> nd = 1;
                for (size_t k = 0; k < ea[i].size(); ++k) nd *= ea[i][k] * eb[j][k] - ea[j][k] * eb[i][k];
                if (std::abs(std::abs(nd) - target) > 1e-6 * std::max(1.0, target)) continue;
            }
            const auto& [a1, b1] = cand[i];
            const auto& [a2, b2] = cand[j];
            NFElement d = a1 * b2 - a2 * b1;
            if (d.is_zero()) continue;
            NFElement v = d / orientation;
            Rat nv = v.norm();
            if (nv != 1 && nv != -1) {
                // S-units may have norms with S-primes; leave those to the exact test
                bool ok = true;
                for (const auto& p : poly::prime_factors(abs(nv.get_num()) * nv.get_den()))
                    if (!S.contains_prime(p)) ok = false;
                if (!ok) continue;
            }
            if (!AK.is_s_unit(v)) continue;
            // rescale x1 so the determinant is exactly the orientation
            const NFElement vi = v.inverse();
            if (auto M = matrix_on(a1 * vi, b1 * vi, a2, b2)) return M;
        }
    return std::nullopt;
}

std::vector<SubgroupClass> subgroup_classes(const RelativeSetup& s, const NormMapsData& nm,
                                            const OrientedClassGroup& C) {
    std::vector<SubgroupClass> out;
    if (s.kind == RelCase::NoTorsion) return out;
    const NormalizerDescriptor base = normalizer_base(nm, s.ell);
    const size_t n = C.size();
    std::vector<bool> done(n, false);
    for (size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        SubgroupClass c;
        c.orbit = {i};
        if (C.iota[i] != i) c.orbit.push_back(C.iota[i]);
        std::sort(c.orbit.begin(), c.orbit.end());
        for (size_t k : c.orbit) {
            done[k] = true;
            c.orbit_coords.push_back(C.carrier.element(k));
        }
        c.invariant = c.orbit.size() == 1;
        c.normalizer = base;
        c.normalizer.kind = c.invariant ? NormalizerDescriptor::Kind::Dihedral : NormalizerDescriptor::Kind::Abelian;
        c.dihedral_overgroups = dihedral_overgroup_count(c);

        if (c.orbit[0] == 0) {
            // (R, 1) with basis (1, zeta)
            c.matrix = companion_matrix(*s.t);
        } else if (s.kind == RelCase::Split) {
            c.matrix_note = "no matrix: nontrivial class in the split case";
        } else if (!C.reps.empty()) {
            try {
                c.matrix = representative_matrix(C.reps[c.orbit[0]], *nm.rel, *nm.arith_K);
            } catch (const Error& e) {
                c.matrix_note = std::string("no matrix: ") + e.what();
            }
            if (!c.matrix && c.matrix_note.empty()) c.matrix_note = "no matrix: basis search bound reached";
        }
        if (c.matrix && !verify_matrix(*c.matrix, *s.t, s.ell))
            throw DataError("representative matrix fails the det/trace/order check");
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace ftsl2
