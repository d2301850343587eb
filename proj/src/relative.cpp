#include "ftsl2/relative.hpp"

#include <algorithm>

namespace ftsl2 {

std::string to_string(RelCase c) {
    switch (c) {
        case RelCase::NoTorsion: return "NoTorsion";
        case RelCase::Field: return "Field";
        case RelCase::Split: return "Split";
    }
    return "?";
}

std::string to_string(Regularity r) {
    switch (r) {
        case Regularity::NotApplicable: return "NotApplicable";
        case Regularity::R1: return "R1";
        case Regularity::R2: return "R2";
        case Regularity::Violated: return "Violated";
    }
    return "?";
}

namespace {

RatVec power_coords(const NFElement& x) { return x.coeffs(); }

NFElement combine(const NumberField& L, const RatMatrix& M, size_t from, size_t count, const RatVec& c) {
    RatVec out(L.degree());
    for (size_t i = 0; i < count; ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < L.degree(); ++j) out[j] += c[i] * M(from + i, j);
    }
    return L.from_power(out);
}

// a + b z in K[z]/(z^2 - t z + 1)
struct Pair {
    NFElement a, b;
};

Pair mul(const Pair& x, const Pair& y, const NFElement& t) {
    // z^2 = t z - 1
    NFElement bb = x.b * y.b;
    return {x.a * y.a - bb, x.a * y.b + x.b * y.a + bb * t};
}

RatVec pair_coords(const Pair& x, size_t n) {
    RatVec v = x.a.coeffs();
    v.resize(n);
    RatVec w = x.b.coeffs();
    w.resize(n);
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

// Quadratic fields: sqrt of the field discriminant as an element.
NFElement sqrt_disc(const NumberField& K) {
    NFElement om = K.omega(1);
    return om.scaled(2) - K.from_rat(om.trace());
}

HomKernel safe_hom_kernel(const Presentation& src, const Presentation& dst, const IntMatrix& images) {
    if (src.ngens == 0) return HomKernel{FinGenAbGroup{}, IntMatrix(0, 0)};
    if (dst.ngens == 0) {
        // everything is in the kernel
        Cokernel ck = cokernel(src.relations, src.ngens);
        return HomKernel{ck.group, ck.lifts};
    }
    return hom_kernel(src, dst, images);
}

Presentation doubled(const FinGenAbGroup& G) {
    Presentation one = Presentation::of(G);
    Presentation p;
    p.ngens = 2 * one.ngens;
    p.relations = IntMatrix(0, p.ngens);
    for (size_t c = 0; c < 2; ++c)
        for (size_t i = 0; i < one.relations.rows(); ++i) {
            IntVec r(p.ngens);
            for (size_t j = 0; j < one.ngens; ++j) r[c * one.ngens + j] = one.relations(i, j);
            p.relations.append_row(r);
        }
    return p;
}

IntMatrix stacked_identity(size_t n) {
    IntMatrix m(0, n);
    for (size_t c = 0; c < 2; ++c)
        for (size_t i = 0; i < n; ++i) {
            IntVec r(n);
            r[i] = 1;
            m.append_row(r);
        }
    return m;
}

FiniteAbelianGroup doubled_group(const FiniteAbelianGroup& G) {
    IntVec inv = G.invariants();
    IntVec both = inv;
    both.insert(both.end(), inv.begin(), inv.end());
    return FiniteAbelianGroup(both);
}

}  // namespace

std::shared_ptr<const RelativeField> RelativeField::build(const FieldPtr& K, const NFElement& t, unsigned ell) {
    auto R = std::shared_ptr<RelativeField>(new RelativeField());
    R->K_ = K;
    R->t_ = t;
    const size_t n = K->degree();
    NFElement theta_img;
    if (n == 1 || 2 * n == ell - 1) {
        R->L_ = NumberField::make(poly::cyclotomic(ell));
        const NumberField& L = *R->L_;
        if (n == 1) {
            theta_img = L.from_rat(K->theta().coeffs()[0]);
        } else {
            auto r = find_root(to_field_poly(K->poly(), L), L);
            if (!r) throw DataError("base field does not embed in the cyclotomic field");
            theta_img = *r;
        }
        NFElement timg = L.zero();
        for (size_t i = t.coeffs().size(); i-- > 0;) timg = timg * theta_img + L.from_rat(t.coeffs()[i]);
        auto z = find_root({L.one(), -timg, L.one()}, L);
        if (!z) throw DataError("Psi has no root in the cyclotomic field");
        R->zeta_ = *z;
    } else {
        // primitive element theta + c z of K[z]/(Psi)
        const size_t N = 2 * n;
        std::optional<ZPoly> minpoly;
        RatMatrix P;
        for (long c = 1; c < 20 && !minpoly; ++c) {
            Pair g{K->theta(), K->from_int(c)};
            Pair p{K->one(), K->zero()};
            RatMatrix rows(N, N);
            for (size_t k = 0; k < N; ++k) {
                RatVec v = pair_coords(p, n);
                for (size_t j = 0; j < N; ++j) rows(k, j) = v[j];
                p = mul(p, g, t);
            }
            if (rows.rank() < N) continue;
            RatVec x;
            if (!solve_left(rows, pair_coords(p, n), x)) continue;
            ZPoly f(N + 1);
            bool integral = true;
            for (size_t k = 0; k < N; ++k) {
                Rat q = -x[k];
                if (q.get_den() != 1) integral = false;
                f[k] = q.get_num();
            }
            f[N] = 1;
            if (!integral) continue;
            minpoly = f;
            P = rows;
        }
        if (!minpoly) throw SearchExhausted("no primitive element theta + c zeta with small c");
        RatMatrix Pinv;
        P.invert(Pinv);  // row k of Pinv: A-basis element k in L power coordinates
        // integral basis: omega_i and omega_i zeta
        RatMatrix B(N, N);
        for (size_t i = 0; i < n; ++i) {
            RatVec w = K->basis().row(i);
            for (size_t half = 0; half < 2; ++half) {
                RatVec a(N);
                for (size_t k = 0; k < n; ++k) a[half * n + k] = w[k];
                RatVec row = vec_mat(a, Pinv);
                for (size_t j = 0; j < N; ++j) B(half * n + i, j) = row[j];
            }
        }
        FieldMeta meta;
        if (n == 2) {
            RatVec zc = Pinv.row(n);  // zeta in power coordinates
            RatVec s1(N);
            RatVec sk = sqrt_disc(*K).coeffs();
            sk.resize(n);
            for (size_t k = 0; k < n; ++k) s1[k] = sk[k];
            RatVec s_emb = vec_mat(s1, Pinv);
            if (K->r1() == 0 && t.is_rational() && t.coeffs()[0] == -1) {
                // K imaginary quadratic, ell = 3: sqrt(-3 d_K) = sqrt(d_K)(2 zeta + 1)
                RatVec tz(N);
                for (size_t j = 0; j < N; ++j) tz[j] = 2 * zc[j];
                tz[0] += 1;
                auto Lp = NumberField::make(*minpoly, B);
                NFElement s = Lp->from_power(s_emb) * Lp->from_power(tz);
                meta.real_quadratic_D = -3 * K->discriminant();
                meta.real_quadratic_s = s.coeffs();
            } else if (K->r1() == 2) {
                meta.real_quadratic_D = K->discriminant();
                meta.real_quadratic_s = s_emb;
            }
        }
        R->L_ = NumberField::make(*minpoly, B, meta);
        const NumberField& L = *R->L_;
        theta_img = L.from_power(Pinv.row(1));
        R->zeta_ = L.from_power(Pinv.row(n));
    }

    const NumberField& L = *R->L_;
    const size_t N = L.degree();
    R->M_ = RatMatrix(N, N);
    NFElement p = L.one();
    for (size_t i = 0; i < n; ++i, p = p * theta_img) {
        RatVec a = power_coords(p), b = power_coords(p * R->zeta_);
        for (size_t j = 0; j < N; ++j) {
            R->M_(i, j) = a[j];
            R->M_(n + i, j) = b[j];
        }
    }
    if (!R->M_.invert(R->Minv_)) throw DataError("relative basis is degenerate");
    if (!eval_poly(to_field_poly(K->poly(), L), theta_img).is_zero()) throw DataError("base field embedding failed");
    R->conj_ = RatMatrix(N, N);
    for (size_t j = 0; j < N; ++j) {
        RatVec c = R->conj(L.omega(j)).basis_coords();
        for (size_t k = 0; k < N; ++k) R->conj_(j, k) = c[k];
    }
    return R;
}

NFElement RelativeField::embed(const NFElement& a) const {
    RatVec c = a.coeffs();
    c.resize(K_->degree());
    return combine(*L_, M_, 0, K_->degree(), c);
}

std::pair<NFElement, NFElement> RelativeField::split(const NFElement& x) const {
    const size_t n = K_->degree();
    RatVec c = vec_mat(x.coeffs(), Minv_);
    return {K_->from_power(RatVec(c.begin(), c.begin() + n)), K_->from_power(RatVec(c.begin() + n, c.end()))};
}

NFElement RelativeField::conj(const NFElement& x) const {
    auto [a, b] = split(x);
    return join(a + b * t_, -b);
}

NFElement RelativeField::norm(const NFElement& x) const {
    auto [a, b] = split(x * conj(x));
    if (!b.is_zero()) throw DataError("relative norm left K");
    return a;
}

Ideal RelativeField::extend(const Ideal& I) const {
    std::vector<NFElement> g;
    for (const auto& x : I.basis_elements()) g.push_back(embed(x));
    return Ideal::from_generators(*L_, g);
}

Ideal RelativeField::conjugate(const Ideal& A) const { return A.conjugate_by(conj_); }

Ideal RelativeField::norm(const Ideal& A) const {
    Ideal out = Ideal::unit(*K_);
    for (const auto& [P, v] : factor_ideal(A)) {
        std::optional<PrimeIdeal> below;
        for (const auto& p : primes_above(P.p, *K_))
            if (P.ideal.divides(extend(p.ideal))) below = p;
        if (!below) throw DataError("no prime of K below " + P.str());
        out = out * below->ideal.pow(v * static_cast<long>(P.f / below->f));
    }
    return out;
}

size_t RelativeSetup::degree() const {
    if (K) return K->degree();
    return fixture ? fixture->degree : 0;
}

RelativeSetup build_setup(const FieldPtr& K, const std::vector<Int>& places, unsigned ell) {
    if (ell < 3 || !poly::is_prime(Int(ell))) throw SchemaViolation("ell must be an odd prime");
    RelativeSetup s;
    s.K = K;
    s.ell = ell;
    s.places = places;
    std::sort(s.places.begin(), s.places.end());
    s.places.erase(std::unique(s.places.begin(), s.places.end()), s.places.end());
    s.S = PlaceSet::above(*K, s.places);
    s.fixture = Backend::instance().find(K->poly(), s.places);
    s.label = s.fixture ? s.fixture->name : K->describe();

    auto t = find_root(to_field_poly(poly::cos_minpoly(ell), *K), *K);
    if (!t) return s;
    s.t = t;
    std::vector<NFElement> psi{K->one(), -*t, K->one()};
    if (auto z = find_root(psi, *K)) {
        s.kind = RelCase::Split;
        s.zeta_in_K = z;
        if (s.S.contains_prime(Int(ell))) {
            s.regularity = Regularity::R2;
        } else {
            s.regularity = Regularity::Violated;
            s.offending_prime = ell;
            s.violation = "zeta_" + std::to_string(ell) + " lies in K but S omits the places above " + std::to_string(ell);
        }
        return s;
    }
    s.kind = RelCase::Field;
    s.regularity = Regularity::R1;
    s.notes.push_back("R1 applied in the reading 'zeta_ell not in K'");
    s.notes.push_back("R1 also stated as 'ell not in K'; here zeta_ell not in K was tested");
    if (!s.S.contains_prime(Int(ell))) {
        for (const auto& P : primes_above(Int(ell), *K)) {
            if (P.e != (ell - 1) / 2) {
                s.regularity = Regularity::Violated;
                s.offending_prime = ell;
                s.violation = "the prime " + P.str() + " above " + std::to_string(ell) +
                              " ramifies in K over Q(zeta+1/zeta), so O_K[zeta] is not maximal there";
                break;
            }
        }
    }
    return s;
}

RelativeSetup build_setup_from_fixture(const Fixture& f, unsigned ell) {
    if (!f.is_extension()) {
        RelativeSetup s = build_setup(f.field, f.places, ell);
        if (s.fixture != &f) s.fixture = Backend::instance().find(f.poly, f.places);
        return s;
    }
    const Fixture* base = Backend::instance().by_name(f.extension_of);
    if (!base) throw ConsistencyFailure("base fixture '" + f.extension_of + "' is not registered");
    RelativeSetup b = build_setup(base->field, base->places, ell);
    if (b.kind != RelCase::Split)
        throw NeedsBackendData("extension fixtures are only supported when zeta_ell lies in the base");
    RelativeSetup s;
    s.fixture = &f;
    s.ell = ell;
    s.places = f.places;
    s.t = b.t;
    s.zeta_in_K = b.zeta_in_K;
    s.kind = RelCase::Split;
    s.label = f.name;
    bool has_ell = std::find(f.places.begin(), f.places.end(), Int(ell)) != f.places.end();
    s.regularity = has_ell ? Regularity::R2 : Regularity::Violated;
    if (!has_ell) {
        s.offending_prime = ell;
        s.violation = "S omits the places above " + std::to_string(ell);
    }
    return s;
}

void require_regular(const RelativeSetup& s) {
    if (s.regularity == Regularity::Violated)
        throw RegularityViolated(s.violation + " (offending prime " + s.offending_prime.get_str() + ")");
}

Int NormMapsData::ker_nm1_torsion() const { return ker_nm1.group.torsion.order(); }

NormMapsData norm_maps(const RelativeSetup& s, ClassGroupOptions opts) {
    require_regular(s);
    if (s.kind == RelCase::NoTorsion) throw DataError("norm maps need zeta + 1/zeta in K");
    NormMapsData nm;
    if (s.kind == RelCase::Split) {
        std::optional<FiniteAbelianGroup> pic;
        if (s.fixture) {
            nm.provenance = Provenance::Ingested;
            nm.units_K = FinGenAbGroup{s.fixture->unit_rank, FiniteAbelianGroup(IntVec{Int(s.fixture->torsion_order)})};
            pic = s.fixture->pic;
        } else {
            auto A = std::make_shared<SArithmetic>(s.K, s.S, opts);
            nm.units_K = A->unit_structure();
            pic = A->pic();
            nm.arith_K = A;
        }
        // R = O x O: Nm1 is multiplication, Nm0 the product of classes
        Presentation pu = Presentation::of(nm.units_K);
        nm.units_R = FinGenAbGroup{2 * nm.units_K.free_rank, doubled_group(nm.units_K.torsion)};
        nm.nm1 = stacked_identity(pu.ngens);
        nm.ker_nm1 = safe_hom_kernel(doubled(nm.units_K), pu, nm.nm1);
        nm.coker_nm1 = hom_cokernel(pu, nm.nm1);
        nm.pic_K = pic;
        if (pic) {
            FinGenAbGroup P{0, *pic};
            nm.pic_R = doubled_group(*pic);
            nm.nm0 = stacked_identity(pic->ngens());
            nm.ker_nm0 = safe_hom_kernel(doubled(P), Presentation::of(P), nm.nm0);
        }
        return nm;
    }

    if (s.fixture) throw NeedsBackendData("ingested data for K(zeta) is not supported; the field case is computed in process");
    if (s.S.contains_prime(Int(s.ell)) && s.K->degree() > 1 && 2 * s.K->degree() != s.ell - 1) {
        for (const auto& P : primes_above(Int(s.ell), *s.K))
            if (P.e != (s.ell - 1) / 2)
                throw NeedsBackendData("O_K[zeta] may not be maximal above " + std::to_string(s.ell) +
                                       "; an integral basis of K(zeta) is needed");
    }
    auto AK = std::make_shared<SArithmetic>(s.K, s.S, opts);
    auto rel = RelativeField::build(s.K, *s.t, s.ell);
    auto AL = std::make_shared<SArithmetic>(rel->field(), PlaceSet::above(*rel->field(), s.places), opts);
    nm.arith_K = AK;
    nm.arith_L = AL;
    nm.rel = rel;
    nm.units_K = AK->unit_structure();
    nm.units_R = AL->unit_structure();

    const auto& ud = AL->unit_data();
    std::vector<NFElement> gens{*ud.torsion_generator};
    gens.insert(gens.end(), ud.generators.begin(), ud.generators.end());
    nm.nm1 = IntMatrix(0, 1 + nm.units_K.free_rank);
    for (const auto& u : gens) nm.nm1.append_row(AK->unit_dlog(rel->norm(u)));
    Presentation pk = Presentation::of(nm.units_K);
    nm.ker_nm1 = safe_hom_kernel(Presentation::of(nm.units_R), pk, nm.nm1);
    nm.coker_nm1 = hom_cokernel(pk, nm.nm1);

    nm.pic_K = AK->pic();
    nm.pic_R = AL->pic();
    const size_t g = nm.pic_R.ngens();
    nm.nm0 = IntMatrix(0, nm.pic_K->ngens());
    for (size_t i = 0; i < g; ++i) {
        IntVec e = nm.pic_R.zero();
        e[i] = 1;
        nm.nm0.append_row(AK->pic_dlog(rel->norm(AL->pic_representative(e))));
    }
    nm.ker_nm0 = safe_hom_kernel(Presentation::of(FinGenAbGroup{0, nm.pic_R}),
                                 Presentation::of(FinGenAbGroup{0, *nm.pic_K}), nm.nm0);
    return nm;
}

OrientedArithmetic::OrientedArithmetic(const RelativeSetup& s, const NormMapsData& nm)
    : nm_(nm), rel_(*nm.rel), AK_(*nm.arith_K), AL_(*nm.arith_L) {
    (void)s;
    const FinGenAbGroup& co = nm.coker_nm1.group;
    if (co.free_rank != 0) throw DataError("coker Nm1 is infinite");
    q_ = co.torsion.ngens();
    s_ = nm.ker_nm0.group.torsion.ngens();
    const size_t gL = nm.pic_R.ngens();
    pic_solve_ = IntMatrix(0, gL);
    IntMatrix R(0, q_ + s_);
    for (size_t i = 0; i < q_; ++i) {
        IntVec r(q_ + s_);
        r[i] = co.torsion.invariants()[i];
        R.append_row(r);
    }
    for (size_t j = 0; j < s_; ++j) {
        IntVec k = nm.ker_nm0.generators.row(j);
        pic_solve_.append_row(k);
        Ideal A = AL_.pic_representative(k);
        auto n = AK_.s_generator(rel_.norm(A));
        if (!n) throw DataError("norm of a ker Nm0 representative is not S-principal");
        const Int& e = nm.ker_nm0.group.torsion.invariants()[j];
        auto beta = AL_.s_generator(A.pow(e.get_si()));
        if (!beta) throw DataError("power of a ker Nm0 representative is not S-principal");
        NFElement u = n->pow(e.get_si()) / rel_.norm(*beta);
        IntVec c = nm.coker_nm1.project(AK_.unit_dlog(u));
        IntVec r(q_ + s_);
        for (size_t i = 0; i < q_; ++i) r[i] = -c[i];
        r[q_ + j] = e;
        R.append_row(r);
        kid_.push_back(A);
        kn_.push_back(*n);
    }
    for (size_t i = 0; i < gL; ++i) {
        IntVec r(gL);
        r[i] = nm.pic_R.invariants()[i];
        pic_solve_.append_row(r);
    }
    ck_ = cokernel(R, q_ + s_);
    if (ck_.group.free_rank != 0) throw DataError("oriented class group is infinite");
}

IntVec OrientedArithmetic::dlog(const OrientedIdeal& x) const {
    IntVec xs(s_);
    if (nm_.pic_R.ngens() > 0) {
        IntVec sol;
        if (!solve_left_integral(pic_solve_, AL_.pic_dlog(x.ideal), sol))
            throw DataError("ideal class is not in ker Nm0");
        for (size_t j = 0; j < s_; ++j) xs[j] = sol[j];
    }
    Ideal J = x.ideal;
    NFElement nprod = AK_.field().one();
    for (size_t j = 0; j < s_; ++j)
        if (xs[j] != 0) {
            J = J * kid_[j].pow(-xs[j].get_si());
            nprod = nprod * kn_[j].pow(xs[j].get_si());
        }
    auto beta = AL_.s_generator(J);
    if (!beta) throw DataError("ideal is not S-principal after removing ker Nm0 generators");
    NFElement u = x.orientation / (nprod * rel_.norm(*beta));
    IntVec c = nm_.coker_nm1.project(AK_.unit_dlog(u));
    IntVec raw(q_ + s_);
    for (size_t i = 0; i < q_; ++i) raw[i] = c[i];
    for (size_t j = 0; j < s_; ++j) raw[q_ + j] = xs[j];
    return ck_.project(raw);
}

OrientedIdeal OrientedArithmetic::representative(const IntVec& g) const {
    IntVec raw = ck_.lift(g);
    IntVec c(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(q_));
    Ideal A = Ideal::unit(*rel_.field());
    NFElement a = AK_.unit_element(nm_.coker_nm1.lift(c));
    for (size_t j = 0; j < s_; ++j) {
        const long x = raw[q_ + j].get_si();
        if (x == 0) continue;
        A = A * kid_[j].pow(x);
        a = a * kn_[j].pow(x);
    }
    return {A, a};
}

OrientedIdeal OrientedArithmetic::iota(const OrientedIdeal& x) const {
    // conj(x1) ^ conj(x2) = -(x1 ^ x2) against the basis (1, zeta)
    return {rel_.conjugate(x.ideal), -x.orientation};
}

OrientedClassGroup oriented_class_group(const RelativeSetup& s, const NormMapsData& nm) {
    require_regular(s);
    OrientedClassGroup C;
    C.provenance = nm.provenance;
    if (s.kind == RelCase::NoTorsion) return C;
    if (s.kind == RelCase::Split) {
        if (!nm.pic_K) throw NeedsBackendData("class group of " + s.label + " was not supplied");
        C.carrier = *nm.pic_K;
        C.quotient = *nm.pic_K;
        const size_t n = C.carrier.size();
        for (size_t i = 0; i < n; ++i) C.iota.push_back(C.carrier.index_of(C.carrier.neg(C.carrier.element(i))));
        return C;
    }
    OrientedArithmetic oa(s, nm);
    C.carrier = oa.carrier();
    C.sub = nm.coker_nm1.group.torsion;
    C.quotient = nm.ker_nm0.group.torsion;
    const size_t n = C.carrier.size();
    for (size_t i = 0; i < n; ++i) {
        IntVec g = C.carrier.element(i);
        OrientedIdeal r = oa.representative(g);
        if (oa.dlog(r) != g) throw DataError("oriented representative does not round-trip");
        C.iota.push_back(C.carrier.index_of(oa.dlog(oa.iota(r))));
        C.reps.push_back(std::move(r));
    }
    for (size_t i = 0; i < n; ++i)
        if (C.iota[C.iota[i]] != i) throw DataError("Galois action is not an involution");
    return C;
}

}  // namespace ftsl2
