#include <algorithm>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

namespace {

std::optional<NFElement> cyclotomic_candidates(const std::vector<NFElement>& c, const NumberField& K) {
    const unsigned m = K.meta().cyclotomic_m;
    if (!m) return std::nullopt;
    NFElement z = K.theta(), zi = z.inverse();
    NFElement zj = K.one(), zij = K.one();
    for (unsigned j = 0; j < m; ++j) {
        for (const NFElement& x : {zj, -zj, zj + zij})
            if (eval_poly(c, x).is_zero()) return x;
        zj = zj * z;
        zij = zij * zi;
    }
    return std::nullopt;
}

enum class Outcome { Found, None, Ambiguous };

Outcome search_at(const std::vector<NFElement>& q, const NumberField& K, mpfr_prec_t prec, size_t cap,
                  NFElement& root) {
    const size_t n = K.degree(), k = q.size() - 1;
    const auto z = K.roots(prec);
    std::vector<std::vector<Complex>> cand(K.places());
    Real tiny(1.0, prec);
    mpfr_mul_2si(tiny.get(), tiny.get(), -static_cast<long>(prec) / 2, MPFR_RNDN);
    size_t combos = 1;
    for (size_t j = 0; j < K.places(); ++j) {
        std::vector<Complex> a;
        for (const auto& c : q) a.push_back(eval_rational_poly(c.coeffs(), z[j]));
        auto r = complex_roots(a, prec);
        for (auto& x : r) {
            if (K.place_is_real(j)) {
                Real bound = tiny * (Real(1.0, prec) + x.re.abs());
                if (x.im.abs() > bound) continue;
                x.im = Real(prec);
            }
            cand[j].push_back(x);
        }
        if (cand[j].empty()) return Outcome::None;
        combos *= cand[j].size();
        if (combos > cap) throw Undecided("root search needs more than " + std::to_string(cap) + " combinations");
    }
    (void)k;

    // E c = v, one equation per real place and two per complex place
    std::vector<std::vector<Real>> E;
    for (size_t j = 0; j < K.places(); ++j) {
        std::vector<Real> re, im;
        for (size_t i = 0; i < n; ++i) {
            Complex w = eval_rational_poly(K.basis().row(i), z[j]);
            re.push_back(w.re);
            im.push_back(w.im);
        }
        E.push_back(re);
        if (!K.place_is_real(j)) E.push_back(im);
    }
    std::vector<std::vector<Real>> Einv(n, std::vector<Real>(n, Real(prec)));
    for (size_t col = 0; col < n; ++col) {
        std::vector<Real> e(n, Real(prec)), x;
        e[col] = Real(1.0, prec);
        if (!solve_real(E, e, x)) throw PrecisionExhausted("singular embedding matrix");
        for (size_t i = 0; i < n; ++i) Einv[i][col] = x[i];
    }

    Real big(1.0, prec);
    mpfr_mul_2si(big.get(), big.get(), static_cast<long>(prec) / 3, MPFR_RNDN);
    bool ambiguous = false;
    std::vector<size_t> idx(K.places(), 0);
    while (true) {
        std::vector<Real> v;
        for (size_t j = 0; j < K.places(); ++j) {
            const Complex& x = cand[j][idx[j]];
            v.push_back(x.re);
            if (!K.place_is_real(j)) v.push_back(x.im);
        }
        bool integral = true;
        IntVec c(n);
        for (size_t i = 0; i < n && integral; ++i) {
            Real s(prec);
            for (size_t t = 0; t < n; ++t) s += Einv[i][t] * v[t];
            if (s.abs() > big) {
                ambiguous = true;
                integral = false;
                break;
            }
            if (s.frac_dist() > tiny) integral = false;
            else c[i] = s.round();
        }
        if (integral) {
            NFElement y = K.from_basis(c);
            if (eval_poly(q, y).is_zero()) {
                root = y;
                return Outcome::Found;
            }
        }
        size_t j = 0;
        while (j < idx.size() && ++idx[j] == cand[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    return ambiguous ? Outcome::Ambiguous : Outcome::None;
}

}  // namespace

std::optional<NFElement> find_root(const std::vector<NFElement>& coeffs0, const NumberField& K,
                                   const RootSearchOptions& opts) {
    std::vector<NFElement> c = coeffs0;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("find_root: polynomial of degree < 1");
    NFElement lead_inv = c.back().inverse();
    for (auto& x : c) x = x * lead_inv;
    const size_t k = c.size() - 1;
    if (k == 1) return -c[0];
    if (c[0].is_zero()) return K.zero();
    if (auto r = cyclotomic_candidates(c, K)) return r;

    // y = d x has a monic integral minimal equation
    Int d = 1;
    for (const auto& x : c) d = lcm(d, lcm_denominators(x.basis_coords()));
    std::vector<NFElement> q(k + 1);
    Int dp = 1;
    for (size_t i = k + 1; i-- > 0;) {
        q[i] = c[i].scaled(Rat(dp));
        dp *= d;
    }

    for (mpfr_prec_t prec = opts.start_prec; prec <= opts.max_prec; prec *= 2) {
        try {
            NFElement y;
            switch (search_at(q, K, prec, opts.max_combinations, y)) {
                case Outcome::Found: return y.scaled(Rat(1) / Rat(d));
                case Outcome::None: return std::nullopt;
                case Outcome::Ambiguous: break;
            }
        } catch (const PrecisionExhausted&) {
        }
    }
    throw Undecided("root search did not settle within " + std::to_string(opts.max_prec) + " bits");
}

}  // namespace ftsl2
