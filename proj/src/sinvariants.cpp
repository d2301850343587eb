#include "ftsl2/sinvariants.hpp"

#include <algorithm>
#include <cmath>

#include "ftsl2/lattice.hpp"

namespace ftsl2 {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Computed: return "computed";
        case Provenance::Ingested: return "ingested";
        case Provenance::Asserted: return "asserted";
    }
    return "unknown";
}

PlaceSet PlaceSet::above(const NumberField& K, std::vector<Int> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    PlaceSet S;
    for (const auto& p : primes) {
        if (!poly::is_prime(p)) throw SchemaViolation("place " + p.get_str() + " is not a prime");
        S.rational_primes.push_back(p);
        for (const auto& P : primes_above(p, K)) S.finite.push_back(P);
    }
    std::sort(S.finite.begin(), S.finite.end());
    return S;
}

bool PlaceSet::contains_prime(const Int& p) const {
    return std::binary_search(rational_primes.begin(), rational_primes.end(), p);
}

FinGenAbGroup UnitGroupData::structure() const {
    return FinGenAbGroup{rank, FiniteAbelianGroup(IntVec{Int(torsion_order)})};
}

size_t s_unit_rank(const NumberField& K, size_t finite_places) {
    return K.r1() + K.r2() + finite_places - 1;
}

namespace {

NFElement generator_of(const Ideal& I, const std::vector<NFElement>& units) {
    const NumberField& K = I.field();
    if (K.degree() == 1) return *principal_generator(I, units);
    NFElement beta;
    Ideal J = reduce_ideal(I, &beta);
    auto g = principal_generator(J, units);
    if (!g) throw DataError("ideal expected to be principal has no generator");
    return *g / beta;
}

}  // namespace

SArithmetic::SArithmetic(FieldPtr K, PlaceSet S, ClassGroupOptions opts) : K_(std::move(K)), S_(std::move(S)) {
    basis_ = unit_basis(*K_);
    engine_ = std::make_unique<ClassGroupEngine>(*K_, basis_.fundamental, opts);
    const FiniteAbelianGroup& G = engine_->group();
    const size_t g = G.ngens(), k = S_.finite.size();

    IntMatrix C(0, g);
    for (const auto& P : S_.finite) C.append_row(engine_->dlog(P.ideal));
    s_classes_ = C;
    for (size_t i = 0; i < g; ++i) {
        IntVec r(g);
        r[i] = G.invariants()[i];
        s_classes_.append_row(r);
    }
    pic_ck_ = cokernel(s_classes_, g);
    pic_ = pic_ck_.group.torsion;

    units_.torsion_order = basis_.w;
    units_.torsion_generator = basis_.zeta;
    units_.generators = basis_.fundamental;
    s_val_ = IntMatrix(0, k);
    if (k > 0) {
        IntMatrix B;
        if (g == 0) {
            B = IntMatrix::identity(k);
        } else {
            HomKernel hk = hom_kernel(Presentation::free(k), Presentation::of(FinGenAbGroup{0, G}), C);
            B = hk.generators;
        }
        for (size_t j = 0; j < B.rows(); ++j) {
            Ideal I = Ideal::unit(*K_);
            for (size_t i = 0; i < k; ++i)
                if (B(j, i) != 0) I = I * S_.finite[i].ideal.pow(B(j, i).get_si());
            units_.generators.push_back(generator_of(I, basis_.fundamental));
            s_val_.append_row(B.row(j));
        }
    }
    units_.rank = units_.generators.size();
    if (units_.rank != s_unit_rank(*K_, k))
        throw ConsistencyFailure("S-unit rank " + std::to_string(units_.rank) + " disagrees with Dirichlet");
    for (const auto& u : basis_.fundamental) unit_logs_.push_back(log_embedding(u));
}

IntVec SArithmetic::pic_dlog(const Ideal& I) const {
    if (pic_.ngens() == 0) return {};
    return pic_ck_.project(engine_->dlog(I));
}

Ideal SArithmetic::pic_representative(const IntVec& g) const {
    if (pic_.ngens() == 0) return Ideal::unit(*K_);
    return engine_->representative(pic_ck_.lift(pic_.reduce(g)));
}

ClassGroupData SArithmetic::class_group_data() const {
    ClassGroupData d;
    d.group = pic_;
    for (size_t i = 0; i < pic_.ngens(); ++i) {
        IntVec e = pic_.zero();
        e[i] = 1;
        d.generator_ideals.push_back(pic_representative(e));
    }
    d.provenance = Provenance::Computed;
    return d;
}

std::optional<NFElement> SArithmetic::s_generator(const Ideal& I) const {
    const FiniteAbelianGroup& G = engine_->group();
    const size_t k = S_.finite.size();
    Ideal J = I;
    if (G.ngens() > 0) {
        IntVec x;
        if (!solve_left_integral(s_classes_, engine_->dlog(I), x)) return std::nullopt;
        for (size_t i = 0; i < k; ++i)
            if (x[i] != 0) J = J * S_.finite[i].ideal.pow(-x[i].get_si());
    }
    return generator_of(J, basis_.fundamental);
}

FinGenAbGroup SArithmetic::unit_structure() const { return units_.structure(); }

std::vector<long> SArithmetic::s_valuations(const NFElement& x) const {
    std::vector<long> v;
    for (const auto& P : S_.finite) v.push_back(valuation(P, x));
    return v;
}

IntVec SArithmetic::unit_dlog(const NFElement& u) const {
    const size_t r = basis_.fundamental.size(), k = S_.finite.size();
    IntVec out(1 + r + k);
    NFElement rest = u;
    if (k > 0) {
        auto v = s_valuations(u);
        IntVec x;
        if (!solve_left_integral(s_val_, IntVec(v.begin(), v.end()), x))
            throw DataError("element is not an S-unit");
        for (size_t j = 0; j < k; ++j) {
            out[1 + r + j] = x[j];
            if (x[j] != 0) rest = rest / units_.generators[r + j].pow(x[j].get_si());
        }
    }
    if (r > 0) {
        // least squares is unnecessary: the first r places determine the exponents
        auto lg = log_embedding(rest);
        std::vector<std::vector<double>> A(r, std::vector<double>(r + 1));
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < r; ++j) A[i][j] = unit_logs_[j][i];
            A[i][r] = lg[i];
        }
        for (size_t c = 0; c < r; ++c) {
            size_t piv = c;
            for (size_t i = c + 1; i < r; ++i)
                if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
            std::swap(A[c], A[piv]);
            for (size_t i = 0; i < r; ++i) {
                if (i == c) continue;
                double f = A[i][c] / A[c][c];
                for (size_t j = c; j <= r; ++j) A[i][j] -= f * A[c][j];
            }
        }
        for (size_t j = 0; j < r; ++j) {
            long y = std::lround(A[j][r] / A[j][j]);
            out[1 + j] = y;
            if (y != 0) rest = rest / basis_.fundamental[j].pow(y);
        }
    }
    NFElement z = K_->one();
    for (unsigned long t = 0; t < basis_.w; ++t, z = z * basis_.zeta)
        if (z == rest) {
            out[0] = t;
            return out;
        }
    throw DataError("element is not an S-unit");
}

NFElement SArithmetic::unit_element(const IntVec& c) const {
    Int t = c[0] % Int(basis_.w);
    if (t < 0) t += basis_.w;
    NFElement x = basis_.zeta.pow(t.get_si());
    for (size_t i = 0; i < units_.generators.size(); ++i)
        if (c[1 + i] != 0) x = x * units_.generators[i].pow(c[1 + i].get_si());
    return x;
}

bool SArithmetic::is_s_unit(const NFElement& x) const {
    if (x.is_zero()) return false;
    for (const auto& [P, v] : factor_ideal(Ideal::principal(x)))
        if (!S_.contains_prime(P.p)) return false;
    return true;
}

}  // namespace ftsl2
