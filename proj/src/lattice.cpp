#include "ftsl2/lattice.hpp"

#include <cmath>

namespace ftsl2 {

namespace {

using LD = long double;

void gram_schmidt(const RealRows& b, std::vector<std::vector<LD>>& mu, std::vector<LD>& bn) {
    const size_t n = b.size(), m = n ? b[0].size() : 0;
    std::vector<std::vector<LD>> bs(n, std::vector<LD>(m));
    mu.assign(n, std::vector<LD>(n, 0));
    bn.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t t = 0; t < m; ++t) bs[i][t] = b[i][t];
        for (size_t j = 0; j < i; ++j) {
            LD dot = 0;
            for (size_t t = 0; t < m; ++t) dot += static_cast<LD>(b[i][t]) * bs[j][t];
            mu[i][j] = bn[j] > 0 ? dot / bn[j] : 0;
            for (size_t t = 0; t < m; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
        }
        mu[i][i] = 1;
        for (size_t t = 0; t < m; ++t) bn[i] += bs[i][t] * bs[i][t];
    }
}

}  // namespace

void lll_reduce(RealRows& b, LongRows& T, double delta) {
    const size_t n = b.size();
    if (T.empty()) {
        T.assign(n, std::vector<long>(n, 0));
        for (size_t i = 0; i < n; ++i) T[i][i] = 1;
    }
    if (n < 2) return;
    std::vector<std::vector<LD>> mu;
    std::vector<LD> bn;
    gram_schmidt(b, mu, bn);
    size_t k = 1;
    size_t guard = 0;
    while (k < n) {
        if (++guard > 100000) break;  // floating LLL can cycle on degenerate input
        for (size_t j = k; j-- > 0;) {
            LD q = std::round(mu[k][j]);
            if (q == 0) continue;
            long qi = static_cast<long>(q);
            for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= static_cast<double>(q) * b[j][t];
            for (size_t t = 0; t < n; ++t) T[k][t] -= qi * T[j][t];
            for (size_t i = 0; i <= j; ++i) mu[k][i] -= q * mu[j][i];
        }
        if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            std::swap(T[k], T[k - 1]);
            gram_schmidt(b, mu, bn);
            k = std::max<size_t>(k - 1, 1);
        }
    }
}

bool enumerate_short(const RealRows& B, double bound,
                     const std::function<bool(const std::vector<long>&, double)>& visit, size_t node_cap) {
    const size_t n = B.size();
    if (n == 0) return true;
    std::vector<std::vector<LD>> q(n, std::vector<LD>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            LD s = 0;
            for (size_t t = 0; t < B[i].size(); ++t) s += static_cast<LD>(B[i][t]) * B[j][t];
            q[i][j] = s;
        }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (size_t k = i + 1; k < n; ++k)
            for (size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    std::vector<long> x(n, 0);
    size_t nodes = 0;
    bool stop = false, capped = false;
    const LD eps = 1e-9L * (1 + bound);
    std::function<void(size_t, LD, bool)> rec = [&](size_t i, LD remaining, bool zero_above) {
        if (stop) return;
        LD c = 0;
        for (size_t j = i + 1; j < n; ++j) c -= q[i][j] * x[j];
        LD r = std::sqrt(std::max<LD>(remaining, 0) / q[i][i]);
        long lo = static_cast<long>(std::ceil(c - r - 1e-9L));
        long hi = static_cast<long>(std::floor(c + r + 1e-9L));
        if (zero_above) lo = std::max(lo, 0L);
        for (long v = lo; v <= hi && !stop; ++v) {
            if (++nodes > node_cap) {
                capped = stop = true;
                return;
            }
            LD d = v - c;
            LD t = remaining - q[i][i] * d * d;
            if (t < -eps) continue;
            x[i] = v;
            if (i == 0) {
                if (zero_above && v == 0) continue;
                if (!visit(x, static_cast<double>(bound - t))) stop = true;
            } else {
                rec(i - 1, t, zero_above && v == 0);
            }
        }
        x[i] = 0;
    };
    rec(n - 1, bound, true);
    return !capped;
}

std::vector<double> weighted_embedding(const NumberField& K, const IntVec& c, const std::vector<double>& w) {
    const auto& om = K.basis_embeddings_d();
    std::vector<double> out;
    for (size_t j = 0; j < K.places(); ++j) {
        std::complex<double> v = 0;
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) v += c[i].get_d() * om[j][i];
        if (K.place_is_real(j)) {
            out.push_back(std::sqrt(w[j]) * v.real());
        } else {
            double s = std::sqrt(2 * w[j]);
            out.push_back(s * v.real());
            out.push_back(s * v.imag());
        }
    }
    return out;
}

std::vector<double> log_embedding(const NFElement& u) {
    const NumberField& K = *u.field();
    std::vector<double> out;
    if (K.degree() <= 8) {
        auto e = K.embed_d(u);
        bool ok = true;
        for (auto& z : e)
            if (!(std::abs(z) > 1e-200)) ok = false;
        if (ok) {
            for (auto& z : e) out.push_back(std::log(std::abs(z)));
            return out;
        }
    }
    for (size_t j = 0; j < K.places(); ++j) out.push_back(K.embed(u, j, 256).abs().log().to_double());
    return out;
}

namespace {

IntVec combine(const std::vector<long>& c, const LongRows& T, const IntMatrix& H) {
    const size_t n = H.cols();
    IntVec x(n);
    for (size_t a = 0; a < c.size(); ++a) {
        if (c[a] == 0) continue;
        for (size_t b = 0; b < T.size(); ++b) {
            long k = c[a] * T[a][b];
            if (k == 0) continue;
            for (size_t t = 0; t < n; ++t) x[t] += Int(k) * H(b, t);
        }
    }
    return x;
}

}  // namespace

std::optional<NFElement> principal_generator(const Ideal& I, const std::vector<NFElement>& units, size_t node_cap) {
    const NumberField& K = I.field();
    const size_t n = K.degree();
    const Rat inv_den = Rat(1) / Rat(I.den());
    const IntMatrix& H = I.hnf();
    if (n == 1) return K.from_int(H(0, 0)).scaled(inv_den);
    Int N = 1;
    for (size_t i = 0; i < n; ++i) N *= H(i, i);
    if (N == 1) return K.one().scaled(inv_den);

    const size_t places = K.places();
    std::vector<std::vector<double>> lam;
    for (const auto& u : units) lam.push_back(log_embedding(u));
    const size_t r = lam.size();
    std::vector<long> k(r, 1);
    for (size_t i = 0; i < r; ++i) {
        double m = 0;
        for (double v : lam[i]) m = std::max(m, std::abs(v));
        k[i] = std::max<long>(1, static_cast<long>(std::ceil(m / 0.35)));
    }
    double E = 0;
    for (size_t j = 0; j < places; ++j) {
        double s = 0;
        for (size_t i = 0; i < r; ++i) s += std::abs(lam[i][j]) / static_cast<double>(k[i]);
        E = std::max(E, s);
    }
    const double bound = static_cast<double>(n) * std::exp(E) * (1 + 1e-6) + 1e-6;
    const double scale = std::pow(N.get_d(), -2.0 / static_cast<double>(n));
    const double Nd = N.get_d();

    std::vector<long> a(r, 0);
    std::optional<NFElement> found;
    while (true) {
        std::vector<double> w(places);
        for (size_t j = 0; j < places; ++j) {
            double s = 0;
            for (size_t i = 0; i < r; ++i) {
                double t = -0.5 + (static_cast<double>(a[i]) + 0.5) / static_cast<double>(k[i]);
                s += t * lam[i][j];
            }
            w[j] = std::exp(-2 * s) * scale;
        }
        RealRows B;
        for (size_t i = 0; i < n; ++i) B.push_back(weighted_embedding(K, H.row(i), w));
        LongRows T;
        lll_reduce(B, T);
        bool complete = enumerate_short(B, bound, [&](const std::vector<long>& c, double) {
            IntVec x = combine(c, T, H);
            NFElement e = K.from_basis(x);
            auto emb = K.embed_d(e);
            double approx = 1;
            for (size_t j = 0; j < places; ++j) approx *= std::pow(std::abs(emb[j]), K.place_is_real(j) ? 1 : 2);
            if (std::abs(approx - Nd) > 1e-6 * Nd) return true;
            if (abs(e.norm()) == Rat(N)) {
                found = e.scaled(inv_den);
                return false;
            }
            return true;
        }, node_cap);
        if (found) return found;
        if (!complete) throw SearchExhausted("principal ideal test exceeded its enumeration budget");
        size_t i = 0;
        while (i < r && ++a[i] == k[i]) a[i++] = 0;
        if (i == r) break;
    }
    return std::nullopt;
}

NFElement short_element(const Ideal& I) {
    const NumberField& K = I.field();
    const size_t n = K.degree();
    const IntMatrix& H = I.hnf();
    double N = 1;
    for (size_t i = 0; i < n; ++i) N *= H(i, i).get_d();
    std::vector<double> w(K.places(), std::pow(N, -2.0 / static_cast<double>(n)));
    RealRows B;
    for (size_t i = 0; i < n; ++i) B.push_back(weighted_embedding(K, H.row(i), w));
    LongRows T;
    lll_reduce(B, T);
    size_t best = 0;
    double bestn = -1;
    for (size_t i = 0; i < n; ++i) {
        double s = 0;
        for (double v : B[i]) s += v * v;
        if (bestn < 0 || s < bestn) {
            bestn = s;
            best = i;
        }
    }
    std::vector<long> c(n, 0);
    c[best] = 1;
    return K.from_basis(combine(c, T, H)).scaled(Rat(1) / Rat(I.den()));
}

Ideal reduce_ideal(const Ideal& I, NFElement* alpha) {
    const NumberField& K = I.field();
    Ideal J0 = I.numerator();
    NFElement x1 = short_element(J0);
    Ideal J1 = Ideal::principal(x1) * J0.inverse();
    NFElement x2 = short_element(J1);
    Ideal J2 = Ideal::principal(x2) * J1.inverse();
    // J2 = (x2 / x1) J0 = (x2 / x1) den I
    if (alpha) *alpha = (x2 / x1).scaled(Rat(I.den()));
    (void)K;
    return J2;
}

}  // namespace ftsl2
