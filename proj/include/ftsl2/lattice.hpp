#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

using RealRows = std::vector<std::vector<double>>;
using LongRows = std::vector<std::vector<long>>;

// LLL on the rows of b (floating point). T accumulates the unimodular
// transform: on return b = T * b_original.
void lll_reduce(RealRows& b, LongRows& T, double delta = 0.99);

// Calls visit(c, q) for every nonzero c, up to sign, with q = |c B|^2 <= bound.
// visit returns false to stop early. Returns false when node_cap was hit.
bool enumerate_short(const RealRows& B, double bound,
                     const std::function<bool(const std::vector<long>&, double)>& visit,
                     size_t node_cap = 50'000'000);

// Real coordinates of an element under the weighted Minkowski embedding:
// sqrt(w_j) sigma_j(x) at real places, sqrt(2 w_j) (Re, Im) at complex ones.
std::vector<double> weighted_embedding(const NumberField& K, const IntVec& basis_coords,
                                       const std::vector<double>& weights);

// log|sigma_j(u)| for every place.
std::vector<double> log_embedding(const NFElement& u);

// A generator of the fractional ideal I, or nullopt when I is not principal.
// `units` must generate a finite-index subgroup of O_K^x modulo torsion; the
// search is exhaustive within the resulting ellipsoid bounds.
std::optional<NFElement> principal_generator(const Ideal& I, const std::vector<NFElement>& units,
                                             size_t node_cap = 20'000'000);

// Short element of an integral ideal (first LLL vector for the T2 norm).
NFElement short_element(const Ideal& I);

// J = alpha * I integral with small norm, in the class of I.
Ideal reduce_ideal(const Ideal& I, NFElement* alpha = nullptr);

}  // namespace ftsl2
