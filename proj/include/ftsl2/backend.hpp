#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ftsl2/numberfield.hpp"

namespace ftsl2 {

inline constexpr const char* kFixtureSchema = "ftsl2-fixture/1";

// Externally computed class and unit data for one (field, S), or for an
// extension L = K[y]/(g) of a registered field when `extension_of` is set.
struct Fixture {
    std::string name;
    std::string trust;  // "literature" or "synthetic"
    std::string notes;
    ZPoly poly;         // absolute field (empty for extensions)
    std::optional<RatMatrix> basis;
    std::vector<Int> places;
    std::optional<FiniteAbelianGroup> pic;  // absent when not supplied
    size_t unit_rank = 0;
    unsigned long torsion_order = 2;
    std::vector<RatVec> unit_elements;  // optional, power-basis coordinates

    std::string extension_of;
    ZPoly relative_poly;
    size_t degree = 0;                      // absolute degree
    IntMatrix class_map;                    // rows: images of base Pic generators

    FieldPtr field;  // constructed for absolute fixtures
    size_t finite_places = 0;
    bool is_extension() const { return !extension_of.empty(); }
};

// Parse and check a fixture document; throws SchemaViolation or ConsistencyFailure.
Fixture parse_fixture(const std::string& json_text);
Fixture load_fixture(const std::string& path);

// Read-mostly registry keyed by (polynomial, places) and by name.
class Backend {
public:
    static Backend& instance();
    const Fixture& add(Fixture f);
    const Fixture* find(const ZPoly& poly, std::vector<Int> places) const;
    const Fixture* by_name(const std::string& name) const;
    void clear();

private:
    mutable std::shared_mutex mu_;
    std::vector<std::shared_ptr<const Fixture>> items_;
};

// Load and register; absolute fixtures before extensions, already known names skipped.
void register_fixture_files(const std::vector<std::string>& paths);

}  // namespace ftsl2
