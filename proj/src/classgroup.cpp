#include "ftsl2/classgroup.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "ftsl2/lattice.hpp"

namespace ftsl2 {

double minkowski_bound(const NumberField& K) {
    const double n = static_cast<double>(K.degree());
    double b = std::pow(4 / M_PI, static_cast<double>(K.r2()));
    b *= std::tgamma(n + 1) / std::pow(n, n);
    b *= std::sqrt(std::abs(K.discriminant().get_d()));
    return b;
}

std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& K, double bound) {
    std::vector<PrimeIdeal> out;
    for (unsigned long p = 2; static_cast<double>(p) <= bound; ++p) {
        if (!poly::is_prime(Int(p))) continue;
        for (const auto& P : primes_above(Int(p), K))
            if (P.norm().get_d() <= bound) out.push_back(P);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

double approx_norm(const NumberField& K, const std::vector<long>& c) {
    const auto& om = K.basis_embeddings_d();
    double N = 1;
    for (size_t j = 0; j < K.places(); ++j) {
        std::complex<double> v = 0;
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i]) v += static_cast<double>(c[i]) * om[j][i];
        N *= K.place_is_real(j) ? std::abs(v) : std::norm(v);
    }
    return N;
}

std::vector<unsigned long> fb_primes(const std::vector<PrimeIdeal>& fb) {
    std::vector<unsigned long> ps;
    for (const auto& P : fb) ps.push_back(P.p.get_ui());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

// Trial division over the factor-base primes; true when fully smooth.
bool quick_smooth(double N, const std::vector<unsigned long>& ps) {
    if (!(N >= 0.5) || N > 1e15) return false;
    unsigned long long m = static_cast<unsigned long long>(std::llround(N));
    for (auto p : ps)
        while (m % p == 0) m /= p;
    return m == 1;
}

std::optional<IntVec> exact_relation(const NumberField& K, const std::vector<PrimeIdeal>& fb, const IntVec& x) {
    NFElement e = K.from_basis(x);
    if (e.is_zero()) return std::nullopt;
    Rat N = abs(e.norm());
    Int m = N.get_num();
    IntVec rel(fb.size());
    for (const auto& p : fb_primes(fb)) {
        Int pp(p);
        unsigned long vp = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
        if (vp == 0) continue;
        unsigned long got = 0;
        for (size_t i = 0; i < fb.size(); ++i) {
            if (fb[i].p != pp) continue;
            long v = valuation(fb[i], e);
            rel[i] = v;
            got += static_cast<unsigned long>(v) * fb[i].f;
        }
        if (got != vp) return std::nullopt;  // a prime outside the factor base divides (x)
    }
    if (m != 1) return std::nullopt;
    return rel;
}

}  // namespace

std::optional<IntVec> smooth_relation(const NumberField& K, const std::vector<PrimeIdeal>& fb, const IntVec& x) {
    return exact_relation(K, fb, x);
}

std::vector<IntVec> box_relations(const NumberField& K, const std::vector<PrimeIdeal>& fb, long Blo, long Bhi,
                                  bool parallel) {
    const size_t n = K.degree();
    const auto ps = fb_primes(fb);
    std::vector<std::vector<IntVec>> chunks(static_cast<size_t>(Bhi + 1));
    // the first coordinate is the leading one, so c0 >= 0 picks one of +-x
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (long c0 = 0; c0 <= Bhi; ++c0) {
        std::vector<long> c(n, -Bhi);
        c[0] = c0;
        if (n == 1) c.assign(1, c0);
        std::vector<IntVec>& out = chunks[static_cast<size_t>(c0)];
        while (true) {
            long mx = 0;
            bool leading_ok = true;
            for (size_t i = 0; i < n; ++i) mx = std::max(mx, std::labs(c[i]));
            if (c0 == 0) {
                size_t f = 1;
                while (f < n && c[f] == 0) ++f;
                leading_ok = f < n && c[f] > 0;
            }
            if (mx > Blo && leading_ok && quick_smooth(approx_norm(K, c), ps)) {
                IntVec x(c.begin(), c.end());
                if (auto r = exact_relation(K, fb, x)) out.push_back(std::move(*r));
            }
            size_t i = 1;
            while (i < n && ++c[i] > Bhi) c[i++] = -Bhi;
            if (i >= n) break;
        }
    }
    std::vector<IntVec> all;
    for (auto& ch : chunks)
        for (auto& r : ch) all.push_back(std::move(r));
    return all;
}

namespace {

// Relations from short elements of each factor-base prime.
std::vector<IntVec> prime_lattice_relations(const NumberField& K, const std::vector<PrimeIdeal>& fb) {
    const size_t n = K.degree();
    std::vector<IntVec> out;
    const auto ps = fb_primes(fb);
    for (const auto& P : fb) {
        const IntMatrix& H = P.ideal.hnf();
        double N = P.norm().get_d();
        std::vector<double> w(K.places(), std::pow(N, -2.0 / static_cast<double>(n)));
        RealRows B;
        for (size_t i = 0; i < n; ++i) B.push_back(weighted_embedding(K, H.row(i), w));
        LongRows T;
        lll_reduce(B, T);
        const long R = n <= 2 ? 4 : (n <= 4 ? 2 : 1);
        std::vector<long> c(n, -R);
        while (true) {
            IntVec x(n);
            bool nz = false;
            for (size_t a = 0; a < n; ++a) {
                if (!c[a]) continue;
                nz = true;
                for (size_t b = 0; b < n; ++b)
                    if (T[a][b])
                        for (size_t t = 0; t < n; ++t) x[t] += Int(c[a] * T[a][b]) * H(b, t);
            }
            if (nz) {
                std::vector<long> xl;
                bool fits = true;
                for (auto& v : x) {
                    if (!v.fits_slong_p()) fits = false;
                    xl.push_back(fits ? v.get_si() : 0);
                }
                if (fits && quick_smooth(approx_norm(K, xl), ps))
                    if (auto r = exact_relation(K, fb, x)) out.push_back(std::move(*r));
            }
            size_t i = 0;
            while (i < n && ++c[i] > R) c[i++] = -R;
            if (i == n) break;
        }
    }
    return out;
}

}  // namespace

ClassGroupEngine::ClassGroupEngine(const NumberField& K, std::vector<NFElement> units, ClassGroupOptions opts)
    : K_(K), units_(std::move(units)), opts_(opts) {
    if (K.degree() > 1) fb_ = primes_up_to_norm(K, minkowski_bound(K));
    const size_t m = fb_.size();
    if (m == 0) {
        ck_ = cokernel(IntMatrix(0, 0), 0);
        return;
    }
    HnfAccumulator acc(m);
    for (auto& r : prime_lattice_relations(K, fb_)) {
        acc.add(r);
        ++nrel_;
    }
    long lo = 0, hi = opts_.B0;
    while (!acc.full_rank()) {
        if (hi > opts_.Bmax) throw RelationSearchIncomplete("relation lattice not of full rank at B = " + std::to_string(opts_.Bmax));
        double shell = std::pow(2.0 * static_cast<double>(hi) + 1, static_cast<double>(K.degree()));
        if (shell > static_cast<double>(opts_.max_shell))
            throw RelationSearchIncomplete("box of radius " + std::to_string(hi) + " exceeds the enumeration budget");
        for (auto& r : box_relations(K, fb_, lo, hi, opts_.parallel)) {
            acc.add(r);
            ++nrel_;
        }
        bound_ = hi;
        lo = hi;
        hi *= 2;
    }
    // certify: an element of prime order in the candidate group must not be principal
    while (true) {
        ck_ = cokernel(acc.basis(), m);
        group_ = ck_.group.torsion;
        bool changed = false;
        for (const auto& q : poly::prime_factors(group_.order())) {
            std::vector<size_t> idx;
            for (size_t i = 0; i < group_.ngens(); ++i)
                if (group_.invariants()[i] % q == 0) idx.push_back(i);
            const unsigned long qu = q.get_ui();
            std::vector<unsigned long> a(idx.size(), 0);
            while (!changed) {
                size_t t = 0;
                while (t < a.size() && ++a[t] == qu) a[t++] = 0;
                if (t == a.size()) break;
                size_t lead = a.size();
                while (lead-- > 0 && a[lead] == 0) {
                }
                if (a[lead] != 1) continue;  // one representative per cyclic subgroup
                IntVec g = group_.zero();
                for (size_t s = 0; s < idx.size(); ++s)
                    g[idx[s]] = Int(a[s]) * (group_.invariants()[idx[s]] / q);
                IntVec e = ck_.lift(g);
                if (principal_generator(product(e), units_)) {
                    acc.add(e);
                    changed = true;
                }
            }
            if (changed) break;
        }
        if (!changed) break;
    }
}

Ideal ClassGroupEngine::product(const IntVec& e) const {
    Ideal J = Ideal::unit(K_);
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        J = reduce_ideal(J * fb_[i].ideal.pow(e[i].get_si()));
    }
    return J;
}

Ideal ClassGroupEngine::representative(const IntVec& g) const {
    if (fb_.empty()) return Ideal::unit(K_);
    return product(ck_.lift(group_.reduce(g)));
}

std::vector<Ideal> ClassGroupEngine::generator_ideals() const {
    std::vector<Ideal> out;
    for (size_t i = 0; i < group_.ngens(); ++i) {
        IntVec g = group_.zero();
        g[i] = 1;
        out.push_back(representative(g));
    }
    return out;
}

IntVec ClassGroupEngine::prime_exponents(const PrimeIdeal& Q) const {
    for (size_t i = 0; i < fb_.size(); ++i)
        if (fb_[i] == Q) {
            IntVec e(fb_.size());
            e[i] = 1;
            return e;
        }
    const std::string key = Q.ideal.str();
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = prime_cache_.find(key);
        if (it != prime_cache_.end()) return it->second;
    }
    // (x/p) Q is integral for x in p Q^{-1}; look for one that is smooth
    const size_t n = K_.degree();
    Ideal J = Q.ideal.inverse().scaled(Rat(Q.p));
    const IntMatrix& H = J.hnf();
    double N = J.norm().get_d();
    std::vector<double> w(K_.places(), std::pow(N, -2.0 / static_cast<double>(n)));
    RealRows B;
    for (size_t i = 0; i < n; ++i) B.push_back(weighted_embedding(K_, H.row(i), w));
    LongRows T;
    lll_reduce(B, T);
    std::optional<IntVec> found;
    size_t tried = 0;
    for (double bound = 2.0 * static_cast<double>(n); !found && bound < 1e6; bound *= 2) {
        enumerate_short(B, bound, [&](const std::vector<long>& c, double) {
            IntVec x(n);
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    if (c[a] != 0 && T[a][b] != 0)
                        for (size_t t = 0; t < n; ++t) x[t] += Int(c[a] * T[a][b]) * H(b, t);
            Ideal A = Ideal::principal(K_.from_basis(x)) * Q.ideal.scaled(Rat(1) / Rat(Q.p));
            IntVec e(fb_.size());
            bool smooth = true;
            for (auto& [P, v] : factor_ideal(A)) {
                auto it = std::find(fb_.begin(), fb_.end(), P);
                if (it == fb_.end()) {
                    smooth = false;
                    break;
                }
                e[static_cast<size_t>(it - fb_.begin())] += v;
            }
            if (smooth) found = e;
            return !found && ++tried < 200000;
        }, 5'000'000);
        if (tried >= 200000) break;
    }
    if (!found) throw SearchExhausted("no smooth multiple found for a prime of norm " + Q.norm().get_str());
    std::lock_guard<std::mutex> lk(mu_);
    prime_cache_[key] = *found;
    return *found;
}

IntVec ClassGroupEngine::fb_exponents(const Ideal& I) const {
    IntVec e(fb_.size());
    for (auto& [P, v] : factor_ideal(I)) {
        IntVec pe = prime_exponents(P);
        for (size_t i = 0; i < e.size(); ++i) e[i] += pe[i] * v;
    }
    return e;
}

IntVec ClassGroupEngine::dlog(const Ideal& I) const {
    if (fb_.empty()) return {};
    return ck_.project(fb_exponents(I));
}

}  // namespace ftsl2
