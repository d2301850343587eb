#include "ftsl2/forms.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ftsl2::forms {

bool Form::operator<(const Form& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

namespace {

bool squarefree(long m) {
    m = std::labs(m);
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// (g, x, y) with x a + y b = g >= 0
void xgcd(long a, long b, long& g, long& x, long& y) {
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    g = a;
    x = x0;
    y = y0;
}

Form normalise(Form f) {
    const long d = f.disc();
    if (-f.a < f.b && f.b <= f.a) return f;
    long r = mod(f.b, 2 * f.a);
    if (r > f.a) r -= 2 * f.a;
    f.b = r;
    f.c = (f.b * f.b - d) / (4 * f.a);
    return f;
}

}  // namespace

bool is_fundamental(long d) {
    if (d % 4 == 1 || d % 4 == -3) return d != 1 && squarefree(d);
    if (d % 4 != 0) return false;
    long m = d / 4;
    long r = mod(m, 4);
    return (r == 2 || r == 3) && squarefree(m);
}

Form reduce(Form f) {
    f = normalise(f);
    while (f.a > f.c) {
        f = normalise(Form{f.c, -f.b, f.a});
    }
    if ((f.a == f.c || f.a == f.b) && f.b < 0) f.b = -f.b;
    return f;
}

Form identity(long d) {
    long b = mod(d, 2);
    return Form{1, b, (b * b - d) / 4};
}

Form compose(const Form& f, const Form& g) {
    Form f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    const long s = (f1.b + f2.b) / 2, n = f2.b - s;
    long y1 = 0, d = f1.a;
    if (f2.a % f1.a != 0) {
        long u, v;
        xgcd(f2.a, f1.a, d, u, v);
        y1 = u;
    }
    long x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        long yy;
        xgcd(s, d, d1, x2, yy);
        y2 = -yy;
    }
    const long v1 = f1.a / d1, v2 = f2.a / d1;
    const long r = mod(y1 * y2 * n - x2 * f2.c, v1);
    const long b3 = f2.b + 2 * v2 * r;
    const long a3 = v1 * v2;
    const long c3 = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
    return reduce(Form{a3, b3, c3});
}

std::vector<Form> reduced_forms(long d) {
    if (d >= 0 || mod(d, 4) > 1) throw std::invalid_argument("reduced_forms: need d < 0, d = 0,1 mod 4");
    std::vector<Form> out;
    for (long a = 1; 3 * a * a <= -d; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            out.push_back(Form{a, b, c});
        }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteAbelianGroup class_group(long d) {
    const auto all = reduced_forms(d);
    const Form e = identity(d);
    // greedy generators; coordinates of every element of the span built so far
    std::map<Form, IntVec> coords{{e, {}}};
    std::vector<Form> gens;
    IntMatrix rel(0, 0);
    std::vector<IntVec> rows;
    for (const Form& f : all) {
        if (coords.count(f)) continue;
        const size_t k = gens.size();
        gens.push_back(f);
        for (auto& [_, v] : coords) v.resize(k + 1);
        for (auto& r : rows) r.resize(k + 1);
        // smallest m with m f in the old span gives one relation
        std::map<Form, IntVec> old = coords;
        Form p = f;
        long m = 1;
        std::vector<std::pair<Form, IntVec>> added;
        while (!old.count(p)) {
            for (const auto& [g, v] : old) {
                IntVec w = v;
                w[k] = m;
                added.emplace_back(compose(g, p), w);
            }
            p = compose(p, f);
            ++m;
        }
        IntVec r = old.at(p);
        for (auto& x : r) x = -x;
        r[k] = m;
        rows.push_back(r);
        for (auto& [g, w] : added) coords.emplace(g, w);
    }
    if (coords.size() != all.size()) throw std::logic_error("forms: composition does not close on reduced forms");
    const size_t k = gens.size();
    if (k == 0) return FiniteAbelianGroup(IntVec{});
    IntMatrix R(0, k);
    for (auto& r : rows) R.append_row(r);
    return cokernel(R, k).group.torsion;
}

std::vector<std::pair<long, FiniteAbelianGroup>> sweep(long dmin, long dmax, bool parallel) {
    std::vector<long> ds;
    for (long d = dmax; d >= dmin; --d)
        if (is_fundamental(d)) ds.push_back(d);
    std::vector<std::pair<long, FiniteAbelianGroup>> out(ds.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (size_t i = 0; i < ds.size(); ++i) out[i] = {ds[i], class_group(ds[i])};
    return out;
}

}  // namespace ftsl2::forms
