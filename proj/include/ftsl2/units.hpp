#pragma once

#include <utility>
#include <vector>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

// Fundamental unit of the real quadratic order of discriminant delta, as
// (a, b) with eps = a + b sqrt(delta) > 1. Found among the convergents of
// (delta mod 2 + sqrt(delta)) / 2.
std::pair<Rat, Rat> real_quadratic_unit(const Int& delta, size_t max_steps = 100000);

// Generators of O_K^x: a root of unity of order w and fundamental units.
struct UnitBasis {
    unsigned long w = 2;
    NFElement zeta;
    std::vector<NFElement> fundamental;
};

// Built-in cases: Q, quadratic fields, Q(zeta_5), Q(zeta_7), and CM quartic
// fields whose real quadratic subfield is recorded in the field metadata.
// Anything else throws NeedsBackendData.
UnitBasis unit_basis(const NumberField& K);

// Largest w such that the w-th cyclotomic polynomial has a root in K, with that root.
std::pair<unsigned long, NFElement> roots_of_unity(const NumberField& K);

// Multiplicative order of x if it is a root of unity dividing `bound`, else 0.
unsigned long root_of_unity_order(const NFElement& x, unsigned long bound);

}  // namespace ftsl2
