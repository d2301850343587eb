#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftsl2/cohomology.hpp"

namespace ftsl2 {

// Everything downstream of a setup: norm maps, C_ell with iota, subgroup classes.
struct Analysis {
    RelativeSetup setup;
    std::optional<NormMapsData> nm;  // absent in the NoTorsion case
    OrientedClassGroup C;
    std::vector<SubgroupClass> classes;
};
Analysis run_analysis(RelativeSetup s, ClassGroupOptions opts = {});

struct QuillenReport {
    size_t n1 = 0, n2 = 0;  // abelian and dihedral components
    size_t r = 0;
    Int rank_over_c2 = 0;
    Int period_sum = 0;     // dims summed over 4 consecutive degrees
    bool cross_check = true;
    std::string c2_image = "sum of a2^2 across components";
};
QuillenReport quillen_report(const std::vector<SubgroupClass>& classes, const NormMapsData* nm, unsigned ell);

struct DetectionReport {
    enum class Verdict { NotInjective, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    std::optional<Int> pic_order;
    size_t element_classes = 0;
    std::string criterion = "|Pic(O_{K,S})| > 2";
    std::string class_count_phrasing = "more than two conjugacy classes";
    bool class_count_condition = false;  // element_classes > 2
    // source: all components; target: the torus normalizer component alone
    size_t source_components = 0, target_components = 0;
    long dmin = 0;
    std::vector<long> source_dims, target_dims;
    long source_period_sum = 0, target_period_sum = 0;
    size_t degrees_with_gap = 0;
};
std::string to_string(DetectionReport::Verdict v);
DetectionReport detection_report(const Analysis& a, long dmin = -8, long dmax = 8);

struct RestrictionReport {
    std::string source, target;
    unsigned ell = 3;
    size_t degree = 1;             // [L : K]
    bool identity = false;
    bool target_complete = true;   // false when the target C_ell is not known
    bool conditional_on_fixture = false;
    bool commutes_with_iota = true;
    Provenance provenance = Provenance::Computed;
    size_t target_size = 0;        // |C_ell(L)|, when complete
    std::vector<size_t> element_map;  // source carrier index -> target carrier index
    std::vector<size_t> class_map;    // source class -> target class
    std::vector<std::vector<size_t>> merges;        // C1, source element classes with one image
    std::vector<std::vector<size_t>> class_merges;  // C1 on subgroup classes
    std::vector<size_t> invariance_gains;           // C2, source classes
    std::vector<size_t> new_target_classes;         // C3
    std::vector<std::string> notes;
};

// embedding: power-basis coordinates in L of the image of K's generator.
// Extension fixtures use the tower inclusion and take no embedding.
RestrictionReport restriction_map(const Analysis& src, const RelativeSetup& dst,
                                  const std::optional<RatVec>& embedding, ClassGroupOptions opts = {});

struct TransferWitness {
    std::vector<size_t> merge;
    size_t degree = 1;
    unsigned ell = 3;
    std::string text;
};
std::optional<TransferWitness> transfer_obstruction(const RestrictionReport& r, unsigned ell);

struct ColimitDescriptor {
    enum class Case { Zero, ProductOverRelativeBrauer, NormalizerOfTorus };
    Case kind = Case::Zero;
    std::string description;
};
std::string to_string(ColimitDescriptor::Case c);
ColimitDescriptor colimit_case(const FieldPtr& K, unsigned ell);
bool torsion_presence(const FieldPtr& K, unsigned ell);
long vcd(const NumberField& K, const std::vector<Int>& places);

}  // namespace ftsl2
