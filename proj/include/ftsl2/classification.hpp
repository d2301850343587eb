#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ftsl2/relative.hpp"

namespace ftsl2 {

struct NormalizerDescriptor {
    enum class Kind { Abelian, Dihedral };
    Kind kind = Kind::Abelian;
    FinGenAbGroup base;  // ker Nm1 = Z/m x Z^r
    Int m = 0;
    size_t r = 0;
};
std::string to_string(NormalizerDescriptor::Kind k);

// 2x2 matrix over K, entries row-major.
struct RepresentativeMatrix {
    std::array<NFElement, 4> a;
    NFElement det() const;
    NFElement trace() const;
    RepresentativeMatrix operator*(const RepresentativeMatrix& o) const;
    bool is_identity() const;
};

// det 1, trace t, M^ell = 1 and M != 1.
bool verify_matrix(const RepresentativeMatrix& M, const NFElement& t, unsigned ell);

struct SubgroupClass {
    std::vector<size_t> orbit;          // carrier indices, ascending
    std::vector<IntVec> orbit_coords;
    bool invariant = false;
    NormalizerDescriptor normalizer;
    long dihedral_overgroups = 0;
    std::optional<RepresentativeMatrix> matrix;  // for orbit[0]
    std::string matrix_note;
};

NormalizerDescriptor normalizer_base(const NormMapsData& nm, unsigned ell);
long dihedral_overgroup_count(const SubgroupClass& c);

// Orbits of iota in carrier order; matrices attached where a basis is found.
std::vector<SubgroupClass> subgroup_classes(const RelativeSetup& s, const NormMapsData& nm,
                                            const OrientedClassGroup& C);

// Multiplication by zeta on an O_K-basis of A whose determinant against
// (1, zeta) is the orientation; nullopt when the bounded search fails.
std::optional<RepresentativeMatrix> representative_matrix(const OrientedIdeal& x, const RelativeField& rel,
                                                          const SArithmetic& AK, long bound = 2);
// Companion matrix of Psi, for the trivial class.
RepresentativeMatrix companion_matrix(const NFElement& t);

}  // namespace ftsl2
