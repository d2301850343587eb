#include "ftsl2/units.hpp"

#include <numeric>

namespace ftsl2 {

std::pair<Rat, Rat> real_quadratic_unit(const Int& delta, size_t max_steps) {
    if (delta <= 4) throw std::invalid_argument("real_quadratic_unit: discriminant must exceed 4");
    Int s = sqrt(delta);
    if (s * s == delta) throw std::invalid_argument("real_quadratic_unit: square discriminant");
    const Int T = delta % 2 == 0 ? Int(0) : Int(1);
    const Int N = (T * T - delta) / 4;  // alpha = (T + sqrt delta)/2 has x^2 - T x + N
    // complete quotients (P + sqrt delta)/Q
    Int P = T, Q = 2;
    Int p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (size_t step = 0; step < max_steps; ++step) {
        Int a;
        if (Q > 0) {
            a = P + s;
            mpz_fdiv_q(a.get_mpz_t(), a.get_mpz_t(), Q.get_mpz_t());
        } else {
            Int t = P + s, aq = -Q;
            mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), aq.get_mpz_t());
            a = -(t + 1);
        }
        Int p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        Int nrm = p * p - p * q * T + q * q * N;
        if (q > 0 && (nrm == 1 || nrm == -1)) {
            // p - q alpha is small; its conjugate p - q alpha' exceeds 1
            Rat a0 = Rat(p) - Rat(q * T, 2);
            Rat b0 = Rat(q, 2);
            a0.canonicalize();
            b0.canonicalize();
            return {a0, b0};
        }
        P = a * Q - P;
        Q = (delta - P * P) / Q;
    }
    throw SearchExhausted("continued fraction period exceeded " + std::to_string(max_steps) + " steps");
}

unsigned long root_of_unity_order(const NFElement& x, unsigned long bound) {
    NFElement y = x;
    for (unsigned long k = 1; k <= bound; ++k) {
        if (y.is_one()) return k;
        y = y * x;
    }
    return 0;
}

std::pair<unsigned long, NFElement> roots_of_unity(const NumberField& K) {
    const unsigned m = K.meta().cyclotomic_m;
    if (m) {
        if (m % 2) return {2ul * m, -K.theta()};
        return {m, K.theta()};
    }
    const unsigned long n = K.degree();
    if (K.r1() > 0) return {2, -K.one()};
    for (unsigned long w = 2 * n * n + 2; w > 2; --w) {
        if (w % 2 || n % poly::euler_phi(w)) continue;
        auto z = find_root(to_field_poly(poly::cyclotomic(static_cast<unsigned>(w)), K), K);
        if (z) return {w, *z};
    }
    return {2, -K.one()};
}

namespace {

// An element r of K with r^2 = delta, the real quadratic discriminant of Q(sqrt D).
NFElement sqrt_of_discriminant(const NumberField& K, const NFElement& s, const Int& D, Int& delta) {
    Int d = poly::squarefree_part(D);
    delta = d % 4 == 1 ? d : 4 * d;
    // D = f^2 d, sqrt(delta) = (1 or 2) s / f
    Int f2 = D / d;
    Int f = sqrt(f2);
    if (f * f != f2) throw DataError("real quadratic metadata is inconsistent");
    Rat c = (delta == d ? Rat(1) : Rat(2)) / Rat(f);
    NFElement r = s.scaled(c);
    if (r * r != K.from_int(delta)) throw DataError("recorded square root does not square to D");
    return r;
}

}  // namespace

UnitBasis unit_basis(const NumberField& K) {
    UnitBasis U;
    const size_t n = K.degree();
    if (n == 1) {
        U.w = 2;
        U.zeta = -K.one();
        return U;
    }
    auto [w, z] = roots_of_unity(K);
    U.w = w;
    U.zeta = z;
    const unsigned m = K.meta().cyclotomic_m;
    if (n == 2) {
        if (K.r1() == 2) {
            // sqrt(delta) = 2 omega_1 - Tr(omega_1)
            NFElement om = K.omega(1);
            NFElement r = om.scaled(2) - K.from_rat(om.trace());
            Int delta = K.discriminant();
            auto [a, b] = real_quadratic_unit(delta);
            U.fundamental.push_back(K.from_rat(a) + r.scaled(b));
        }
        return U;
    }
    if (m == 5 || m == 7 || m == 10 || m == 14) {
        // cyclotomic units (zeta^a - 1)/(zeta - 1) generate the full group here
        const unsigned p = m % 2 ? m : m / 2;
        NFElement zeta = m % 2 ? K.theta() : -K.theta();
        for (unsigned a = 2; a <= (p - 1) / 2; ++a)
            U.fundamental.push_back((zeta.pow(a) - K.one()) / (zeta - K.one()));
        return U;
    }
    if (n == 4 && K.r1() == 0 && K.meta().real_quadratic_D > 0) {
        Int delta;
        NFElement r = sqrt_of_discriminant(K, K.from_power(K.meta().real_quadratic_s), K.meta().real_quadratic_D, delta);
        auto [a, b] = real_quadratic_unit(delta);
        NFElement eps = K.from_rat(a) + r.scaled(b);
        NFElement best = eps;
        NFElement zk = K.one();
        // unit index 2 exactly when some zeta^k eps is a square
        for (unsigned long k = 0; k < U.w; ++k, zk = zk * U.zeta) {
            std::vector<NFElement> f{-(zk * eps), K.zero(), K.one()};
            if (auto root = find_root(f, K)) {
                best = *root;
                break;
            }
        }
        U.fundamental.push_back(best);
        return U;
    }
    throw NeedsBackendData("no built-in unit group for " + K.describe());
}

}  // namespace ftsl2
