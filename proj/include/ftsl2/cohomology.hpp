#pragma once

#include <string>
#include <vector>

#include "ftsl2/classification.hpp"

namespace ftsl2 {

struct DimensionFunction {
    int period = 1;
    std::vector<long> dims;  // dims[d mod period]
    long at(long d) const;
    long sum_over(long start, long len) const;
};

struct GradedRingDescriptor {
    // Zero: ell does not divide m. LaurentTimesExterior: F[a2, 1/a2](b1, x1..xr).
    // InvariantSubring: its (-1)-invariants.
    enum class Kind { Zero, LaurentTimesExterior, InvariantSubring };
    Kind kind = Kind::Zero;
    size_t r = 0;
    unsigned ell = 3;
    DimensionFunction dimensions() const;
};
std::string to_string(GradedRingDescriptor::Kind k);

GradedRingDescriptor component_ring(const NormalizerDescriptor& n, unsigned ell);

// Degree-wise sum over components for d in [dmin, dmax].
std::vector<long> total_dimensions(const std::vector<SubgroupClass>& classes, unsigned ell, long dmin, long dmax);
// The same sum as a period-4 function.
DimensionFunction total_dimension_function(const std::vector<SubgroupClass>& classes, unsigned ell);

// Tate cohomology of Z/n with F_ell coefficients from the periodic resolution,
// by ranks of the cochain maps.
long oracle_cyclic(long n, unsigned ell, long d);
// Z/n x Z^r: periodic resolution tensored with the Koszul complex.
long oracle_product(long n, size_t r, unsigned ell, long d);
// Monomials a2^i * (exterior word in b1, x1..xr) in degree d fixed by -1.
long oracle_dihedral_invariants(size_t r, unsigned ell, long d);

struct GridPoint {
    long n = 0;
    size_t r = 0;
    unsigned ell = 3;
    long d = 0;
    bool dihedral = false;
    long formula = 0, oracle = 0;
    bool ok() const { return formula == oracle; }
};

struct GridSpec {
    std::vector<long> ns{3, 5, 6, 15};
    std::vector<unsigned> ells{3, 5};
    size_t rmax = 4;
    long dmin = -12, dmax = 12;
    bool inject_fault = false;  // perturb the formula side, for testing the harness
};

std::vector<GridPoint> oracle_grid(const GridSpec& spec, bool parallel);

}  // namespace ftsl2
