#include "ftsl2/applications.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace ftsl2 {

Analysis run_analysis(RelativeSetup s, ClassGroupOptions opts) {
    Analysis a;
    a.setup = std::move(s);
    if (a.setup.kind == RelCase::NoTorsion) return a;
    require_regular(a.setup);
    a.nm = norm_maps(a.setup, opts);
    a.C = oriented_class_group(a.setup, *a.nm);
    a.classes = subgroup_classes(a.setup, *a.nm, a.C);
    return a;
}

QuillenReport quillen_report(const std::vector<SubgroupClass>& classes, const NormMapsData* nm, unsigned ell) {
    QuillenReport q;
    if (classes.empty()) return q;
    for (const auto& c : classes) (c.invariant ? q.n2 : q.n1)++;
    q.r = nm ? nm->ker_nm1_rank() : classes.front().normalizer.r;
    Int two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, q.r + 1);
    q.rank_over_c2 = two_pow * Int(2 * q.n1 + q.n2);
    for (const auto& c : classes) q.period_sum += Int(component_ring(c.normalizer, ell).dimensions().sum_over(0, 4));
    q.cross_check = q.period_sum == q.rank_over_c2;
    return q;
}

std::string to_string(DetectionReport::Verdict v) {
    return v == DetectionReport::Verdict::NotInjective ? "NotInjective" : "Inconclusive";
}

DetectionReport detection_report(const Analysis& a, long dmin, long dmax) {
    DetectionReport d;
    d.dmin = dmin;
    const auto& s = a.setup;
    if (s.kind != RelCase::Split || s.regularity != Regularity::R2) {
        d.reason = "the criterion needs zeta_" + std::to_string(s.ell) + " in K with S containing the places above " +
                   std::to_string(s.ell);
        return d;
    }
    d.pic_order = Int(a.C.carrier.size());
    d.element_classes = a.C.size();
    d.class_count_condition = d.element_classes > 2;
    d.source_components = a.classes.size();
    d.source_dims = total_dimensions(a.classes, s.ell, dmin, dmax);
    // the torus normalizer is the component of the trivial class
    std::vector<SubgroupClass> torus;
    for (const auto& c : a.classes)
        if (c.orbit.front() == 0) torus.push_back(c);
    d.target_components = torus.size();
    d.target_dims = total_dimensions(torus, s.ell, dmin, dmax);
    d.source_period_sum = total_dimension_function(a.classes, s.ell).sum_over(0, 4);
    d.target_period_sum = total_dimension_function(torus, s.ell).sum_over(0, 4);
    for (size_t i = 0; i < d.source_dims.size(); ++i) d.degrees_with_gap += d.source_dims[i] > d.target_dims[i];
    if (*d.pic_order > 2) {
        d.verdict = DetectionReport::Verdict::NotInjective;
        d.reason = "Pic has " + d.pic_order->get_str() + " elements; " + std::to_string(d.source_components) +
                   " components restrict to " + std::to_string(d.target_components);
        if (d.degrees_with_gap != d.source_dims.size()) throw DataError("detection verdict without a rank gap in every degree");
    } else {
        d.reason = "Pic has at most two elements; the criterion does not apply";
    }
    return d;
}

namespace {

std::vector<std::vector<size_t>> orbits_of(const std::vector<size_t>& iota) {
    std::vector<std::vector<size_t>> out;
    std::vector<bool> seen(iota.size(), false);
    for (size_t i = 0; i < iota.size(); ++i) {
        if (seen[i]) continue;
        std::vector<size_t> o{i};
        if (iota[i] != i) o.push_back(iota[i]);
        std::sort(o.begin(), o.end());
        for (size_t k : o) seen[k] = true;
        out.push_back(o);
    }
    return out;
}

// phi: K -> L with theta_K -> e
NFElement field_map(const NFElement& x, const NFElement& e) {
    NFElement out = e.field()->zero(), p = e.field()->one();
    for (const auto& c : x.coeffs()) {
        if (c != 0) out = out + p.scaled(c);
        p = p * e;
    }
    return out;
}

Ideal ideal_map(const Ideal& I, const std::function<NFElement(const NFElement&)>& f, const NumberField& L) {
    std::vector<NFElement> g;
    for (const auto& x : I.basis_elements()) g.push_back(f(x));
    return Ideal::from_generators(L, g);
}

// smallest power z of zeta with z + 1/z = t
NFElement matching_power(const NFElement& zeta, const NFElement& t, unsigned ell) {
    NFElement z = zeta;
    for (unsigned k = 1; k < ell; ++k, z = z * zeta)
        if (z + z.inverse() == t) return z;
    throw EmbeddingInvalid("the image of zeta + 1/zeta is not a trace of a root of unity in L");
}

void classify_merges(RestrictionReport& R, const std::vector<std::vector<size_t>>& src_orbits,
                     const std::vector<size_t>& src_iota, const std::vector<size_t>& dst_iota) {
    const auto dst_orbits = orbits_of(dst_iota);
    std::vector<size_t> dst_class(dst_iota.size());
    for (size_t c = 0; c < dst_orbits.size(); ++c)
        for (size_t k : dst_orbits[c]) dst_class[k] = c;

    std::map<size_t, std::vector<size_t>> by_image;
    for (size_t i = 0; i < R.element_map.size(); ++i) by_image[R.element_map[i]].push_back(i);
    for (auto& [img, g] : by_image)
        if (g.size() > 1) R.merges.push_back(g);

    std::map<size_t, std::vector<size_t>> by_class;
    std::vector<bool> hit(dst_orbits.size(), false);
    for (size_t c = 0; c < src_orbits.size(); ++c) {
        const size_t tc = dst_class[R.element_map[src_orbits[c].front()]];
        R.class_map.push_back(tc);
        by_class[tc].push_back(c);
        hit[tc] = true;
        if (src_orbits[c].size() == 2 && dst_orbits[tc].size() == 1) R.invariance_gains.push_back(c);
    }
    for (auto& [tc, g] : by_class)
        if (g.size() > 1) R.class_merges.push_back(g);
    if (R.target_complete)
        for (size_t c = 0; c < hit.size(); ++c)
            if (!hit[c]) R.new_target_classes.push_back(c);

    for (size_t i = 0; i < R.element_map.size(); ++i)
        if (R.element_map[src_iota[i]] != dst_iota[R.element_map[i]]) R.commutes_with_iota = false;
    if (!R.commutes_with_iota) throw DataError("restriction does not commute with the Galois involution");
}

RestrictionReport restrict_to_fixture(const Analysis& src, const Fixture& ext) {
    const auto& s = src.setup;
    if (!s.fixture || s.fixture->name != ext.extension_of)
        throw EmbeddingInvalid("fixture " + ext.name + " extends '" + ext.extension_of + "', not " + s.label);
    RestrictionReport R;
    R.source = s.label;
    R.target = ext.name;
    R.ell = s.ell;
    R.degree = ext.degree / s.degree();
    R.provenance = Provenance::Ingested;
    R.conditional_on_fixture = true;
    R.notes.push_back("target data ingested from fixture '" + ext.name + "' (" + ext.trust + ")");

    const FiniteAbelianGroup& src_pic = src.C.carrier;
    std::vector<size_t> dst_iota;
    if (ext.pic) {
        const FiniteAbelianGroup& P = *ext.pic;
        R.target_size = P.size();
        for (size_t i = 0; i < P.size(); ++i) dst_iota.push_back(P.index_of(P.neg(P.element(i))));
    } else {
        R.target_complete = false;
        dst_iota = {0};
        R.notes.push_back("class group of the target not supplied; only the image classes are listed");
    }
    bool capitulates = true;
    for (size_t i = 0; i < src_pic.size(); ++i) {
        if (!ext.pic) {
            R.element_map.push_back(0);  // total capitulation, checked on load
            continue;
        }
        const IntVec g = src_pic.element(i);
        IntVec img = ext.pic->zero();
        for (size_t j = 0; j < g.size(); ++j)
            for (size_t k = 0; k < img.size(); ++k) img[k] += g[j] * ext.class_map(j, k);
        R.element_map.push_back(ext.pic->index_of(ext.pic->reduce(img)));
        capitulates = capitulates && R.element_map.back() == 0;
    }
    if (capitulates) R.notes.push_back("every class capitulates");
    classify_merges(R, orbits_of(src.C.iota), src.C.iota, dst_iota);
    return R;
}

}  // namespace

RestrictionReport restriction_map(const Analysis& src, const RelativeSetup& dst, const std::optional<RatVec>& embedding,
                                  ClassGroupOptions opts) {
    const auto& s = src.setup;
    if (dst.ell != s.ell) throw SchemaViolation("restriction needs the same ell on both sides");
    require_regular(s);
    require_regular(dst);
    for (const auto& p : s.places)
        if (std::find(dst.places.begin(), dst.places.end(), p) == dst.places.end())
            throw EmbeddingInvalid("S of the target must contain the places above " + p.get_str());

    if (dst.fixture && dst.fixture->is_extension()) {
        if (embedding) throw EmbeddingInvalid("extension fixtures use the tower inclusion; no embedding is taken");
        return restrict_to_fixture(src, *dst.fixture);
    }
    if (!s.K || !dst.K) throw NeedsBackendData("restriction needs both fields in process");
    const NumberField& K = *s.K;
    const NumberField& L = *dst.K;

    NFElement e;
    if (embedding) {
        if (embedding->size() != L.degree()) throw EmbeddingInvalid("embedding must have " + std::to_string(L.degree()) + " coordinates");
        e = L.from_power(*embedding);
    } else if (K.poly() == L.poly()) {
        e = L.theta();
    } else {
        throw EmbeddingInvalid("an embedding is required for distinct fields");
    }
    if (!eval_poly(to_field_poly(K.poly(), L), e).is_zero())
        throw EmbeddingInvalid("the minimal polynomial of K does not vanish at the given image");
    if (L.degree() % K.degree() != 0) throw EmbeddingInvalid("degree of K does not divide degree of L");

    RestrictionReport R;
    R.source = s.label;
    R.target = dst.label;
    R.ell = s.ell;
    R.degree = L.degree() / K.degree();
    R.identity = R.degree == 1 && e == L.theta() && K.poly() == L.poly() && s.places == dst.places;
    if (s.kind == RelCase::NoTorsion) {
        R.notes.push_back("no elements of order " + std::to_string(s.ell));
        return R;
    }
    auto phi = [&](const NFElement& x) { return field_map(x, e); };

    Analysis tgt = run_analysis(dst, opts);
    R.target_size = tgt.C.size();
    R.provenance = (src.nm->provenance == Provenance::Computed && tgt.nm->provenance == Provenance::Computed)
                       ? Provenance::Computed
                       : Provenance::Ingested;
    R.conditional_on_fixture = R.provenance != Provenance::Computed;

    const size_t n = src.C.size();
    if (s.kind == RelCase::Split) {
        // dst is split as well
        if (!src.nm->arith_K || !tgt.nm->arith_K) throw NeedsBackendData("split-case restriction needs computed class groups");
        const NFElement z = matching_power(*dst.zeta_in_K, phi(*s.t), s.ell);
        const bool swap = phi(*s.zeta_in_K) != z;
        for (size_t i = 0; i < n; ++i) {
            Ideal I = src.nm->arith_K->pic_representative(src.C.carrier.element(i));
            IntVec g = tgt.nm->arith_K->pic_dlog(ideal_map(I, phi, L));
            if (swap) g = tgt.C.carrier.neg(g);
            R.element_map.push_back(tgt.C.carrier.index_of(tgt.C.carrier.reduce(g)));
        }
    } else {
        const RelativeField& relK = *src.nm->rel;
        if (dst.kind == RelCase::Split) {
            const NFElement z = matching_power(*dst.zeta_in_K, phi(*s.t), s.ell);
            auto psi = [&](const NFElement& x) {
                auto [a, b] = relK.split(x);
                return phi(a) + phi(b) * z;
            };
            for (size_t i = 0; i < n; ++i) {
                IntVec g = tgt.nm->arith_K->pic_dlog(ideal_map(src.C.reps[i].ideal, psi, L));
                R.element_map.push_back(tgt.C.carrier.index_of(tgt.C.carrier.reduce(g)));
            }
        } else {
            const RelativeField& relL = *tgt.nm->rel;
            const NumberField& F = *relL.field();
            const NFElement z = matching_power(relL.zeta(), relL.embed(phi(*s.t)), s.ell);
            const NFElement scale = relL.split(z).second;  // 1 ^ z = scale (1 ^ zeta)
            auto psi = [&](const NFElement& x) {
                auto [a, b] = relK.split(x);
                return relL.embed(phi(a)) + relL.embed(phi(b)) * z;
            };
            OrientedArithmetic oa(tgt.setup, *tgt.nm);
            for (size_t i = 0; i < n; ++i) {
                const auto& x = src.C.reps[i];
                OrientedIdeal y{ideal_map(x.ideal, psi, F), phi(x.orientation) * scale};
                R.element_map.push_back(tgt.C.carrier.index_of(oa.dlog(y)));
            }
        }
    }
    classify_merges(R, orbits_of(src.C.iota), src.C.iota, tgt.C.iota);
    if (R.identity) {
        for (size_t i = 0; i < n; ++i)
            if (R.element_map[i] != i) throw DataError("identity restriction is not the identity");
    }
    return R;
}

std::optional<TransferWitness> transfer_obstruction(const RestrictionReport& r, unsigned ell) {
    if (std::gcd(r.degree, static_cast<size_t>(ell)) != 1) return std::nullopt;
    for (const auto& m : r.merges) {
        if (m.size() < 2) continue;
        TransferWitness w;
        w.merge = m;
        w.degree = r.degree;
        w.ell = ell;
        w.text = std::to_string(m.size()) + " classes of order-" + std::to_string(ell) +
                 " elements merge under restriction, so the image lies in a diagonal subring of rank smaller than the source; "
                 "multiplication by the degree " + std::to_string(r.degree) + " is invertible mod " + std::to_string(ell) +
                 ", which a transfer would require to be injective";
        return w;
    }
    return std::nullopt;
}

std::string to_string(ColimitDescriptor::Case c) {
    switch (c) {
        case ColimitDescriptor::Case::Zero: return "Zero";
        case ColimitDescriptor::Case::ProductOverRelativeBrauer: return "ProductOverRelativeBrauer";
        case ColimitDescriptor::Case::NormalizerOfTorus: return "NormalizerOfTorus";
    }
    return "?";
}

ColimitDescriptor colimit_case(const FieldPtr& K, unsigned ell) {
    RelativeSetup s = build_setup(K, {}, ell);
    ColimitDescriptor d;
    switch (s.kind) {
        case RelCase::NoTorsion:
            d.kind = ColimitDescriptor::Case::Zero;
            d.description = "zeta_" + std::to_string(ell) + " + zeta_" + std::to_string(ell) + "^-1 not in K";
            break;
        case RelCase::Field:
            d.kind = ColimitDescriptor::Case::ProductOverRelativeBrauer;
            d.description = "product over the relative Brauer group of K(zeta_" + std::to_string(ell) + ")/K";
            break;
        case RelCase::Split:
            d.kind = ColimitDescriptor::Case::NormalizerOfTorus;
            d.description = "cohomology of the normalizer of a maximal torus";
            break;
    }
    return d;
}

bool torsion_presence(const FieldPtr& K, unsigned ell) {
    return find_root(to_field_poly(poly::cos_minpoly(ell), *K), *K).has_value();
}

long vcd(const NumberField& K, const std::vector<Int>& places) {
    const long sf = static_cast<long>(PlaceSet::above(K, places).finite_count());
    return 2 * static_cast<long>(K.r1()) + 3 * static_cast<long>(K.r2()) + sf - 1;
}

}  // namespace ftsl2
