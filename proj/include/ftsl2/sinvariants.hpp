#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ftsl2/classgroup.hpp"
#include "ftsl2/numberfield.hpp"
#include "ftsl2/units.hpp"

namespace ftsl2 {

enum class Provenance { Computed, Ingested, Asserted };
std::string to_string(Provenance p);

// Finite part of S, given by rational primes: every place above each of them.
struct PlaceSet {
    std::vector<Int> rational_primes;  // sorted, distinct
    std::vector<PrimeIdeal> finite;    // sorted

    static PlaceSet above(const NumberField& K, std::vector<Int> primes);
    size_t finite_count() const { return finite.size(); }
    bool contains_prime(const Int& p) const;
};

struct ClassGroupData {
    FiniteAbelianGroup group;
    std::vector<Ideal> generator_ideals;  // empty when ingested without ideals
    Provenance provenance = Provenance::Computed;
};

struct UnitGroupData {
    unsigned long torsion_order = 2;
    std::optional<NFElement> torsion_generator;
    std::vector<NFElement> generators;  // fundamental units of O_K, then S-units
    size_t rank = 0;
    Provenance provenance = Provenance::Computed;

    // Z/w x Z^rank with the torsion coordinate first.
    FinGenAbGroup structure() const;
};

// Dirichlet: r1 + r2 + #S_f - 1.
size_t s_unit_rank(const NumberField& K, size_t finite_places);

// Pic(O_{K,S}) and O_{K,S}^x for a field with built-in class and unit groups.
class SArithmetic {
public:
    SArithmetic(FieldPtr K, PlaceSet S, ClassGroupOptions opts = {});

    const NumberField& field() const { return *K_; }
    const FieldPtr& field_ptr() const { return K_; }
    const PlaceSet& places() const { return S_; }
    const ClassGroupEngine& class_engine() const { return *engine_; }

    // S-class group: Cl(O_K) modulo the classes of the primes in S.
    const FiniteAbelianGroup& pic() const { return pic_; }
    IntVec pic_dlog(const Ideal& I) const;
    Ideal pic_representative(const IntVec& g) const;
    ClassGroupData class_group_data() const;

    // alpha with I O_{K,S} = alpha O_{K,S}, or nullopt when I is not S-principal.
    std::optional<NFElement> s_generator(const Ideal& I) const;

    // Unit coordinates: torsion exponent mod w, fundamental units, S-units.
    FinGenAbGroup unit_structure() const;
    const UnitGroupData& unit_data() const { return units_; }
    IntVec unit_dlog(const NFElement& u) const;
    NFElement unit_element(const IntVec& coords) const;
    bool is_s_unit(const NFElement& x) const;

private:
    std::vector<long> s_valuations(const NFElement& x) const;

    FieldPtr K_;
    PlaceSet S_;
    UnitBasis basis_;
    std::unique_ptr<ClassGroupEngine> engine_;
    FiniteAbelianGroup pic_;
    Cokernel pic_ck_;      // Cl -> Pic_S
    IntMatrix s_classes_;  // rows: classes of the S-primes in Cl, then Cl relations
    UnitGroupData units_;
    IntMatrix s_val_;      // valuations of the S-units at the S-primes
    std::vector<std::vector<double>> unit_logs_;
};

}  // namespace ftsl2
