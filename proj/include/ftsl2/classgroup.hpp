#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

struct ClassGroupOptions {
    long B0 = 10;
    long Bmax = 640;
    size_t max_shell = 60'000'000;  // elements per box shell before giving up
    bool parallel = true;
};

// Minkowski bound (4/pi)^r2 n!/n^n sqrt|d|.
double minkowski_bound(const NumberField& K);

// Every prime ideal of norm at most `bound`, sorted.
std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& K, double bound);

// Exponent vector of (x) over the factor base when x is smooth.
std::optional<IntVec> smooth_relation(const NumberField& K, const std::vector<PrimeIdeal>& fb, const IntVec& x);

// Relations from x = sum c_i w_i with Blo < max|c_i| <= Bhi, one of +-x each.
// The parallel and serial paths return identical lists.
std::vector<IntVec> box_relations(const NumberField& K, const std::vector<PrimeIdeal>& fb, long Blo, long Bhi,
                                  bool parallel);

// Cl(O_K) by relation search over the Minkowski factor base, certified by
// checking that no element of prime order in the candidate group is principal.
class ClassGroupEngine {
public:
    ClassGroupEngine(const NumberField& K, std::vector<NFElement> units, ClassGroupOptions opts = {});

    const NumberField& field() const { return K_; }
    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<PrimeIdeal>& factor_base() const { return fb_; }
    const std::vector<NFElement>& units() const { return units_; }

    IntVec dlog(const Ideal& I) const;
    // Small integral ideal in the class with these coordinates.
    Ideal representative(const IntVec& g) const;
    std::vector<Ideal> generator_ideals() const;

    long final_bound() const { return bound_; }
    size_t relation_count() const { return nrel_; }

private:
    IntVec fb_exponents(const Ideal& I) const;
    IntVec prime_exponents(const PrimeIdeal& Q) const;
    Ideal product(const IntVec& e) const;

    const NumberField& K_;
    std::vector<NFElement> units_;
    ClassGroupOptions opts_;
    std::vector<PrimeIdeal> fb_;
    Cokernel ck_;
    FiniteAbelianGroup group_;
    long bound_ = 0;
    size_t nrel_ = 0;
    mutable std::mutex mu_;
    mutable std::map<std::string, IntVec> prime_cache_;
};

}  // namespace ftsl2
