#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace strata {

// (i, j) is the exponent of x1^i x2^j; the tangent line is x2 = 0.
struct LatticePoint {
    int i = 0;
    int j = 0;
    auto operator<=>(const LatticePoint&) const = default;
};

struct NewtonDiagram {
    // lower-left boundary, increasing i and strictly decreasing j
    std::vector<LatticePoint> vertices;
    bool operator==(const NewtonDiagram&) const = default;
};

struct Staircase {
    // heights[m] = largest i with (i, m) strictly under the boundary
    std::vector<int> heights;
    bool operator==(const Staircase&) const = default;
};

struct SingularityDescriptor {
    std::string name;
    std::vector<std::string> aliases;
    std::vector<LatticePoint> normal_form;
    int codim = 0;
    bool linear = false;
    bool newton_degenerate = false;
    std::string notes;
    // set for substrata cut out by an extra condition the diagram does not see
    // (a modulus constraint); such entries are never linear
    std::string modifier;
    // explicit staircase used instead of the one read off the diagram
    std::optional<Staircase> staircase_override;
};

NewtonDiagram diagram_from_monomials(const std::vector<LatticePoint>& points);
bool is_linear(const NewtonDiagram& diag);
NewtonDiagram transpose(const NewtonDiagram& diag);

// Lattice points strictly below the boundary; the first and last segments are
// extended as lines until they meet the axes.
std::vector<LatticePoint> under_points(const NewtonDiagram& diag);
Staircase staircase(const NewtonDiagram& diag);
size_t staircase_conditions(const Staircase& s);

// Largest total degree of a lattice point on or below the extended boundary.
// For diagrams touching both axes this is the top degree of the normal form.
int determinacy(const SingularityDescriptor& desc);

struct UniversalityBounds {
    int min_d_via_determinacy;
    int min_d_via_codim;
    bool admits(int d) const { return d >= min_d_via_determinacy || d >= min_d_via_codim; }
};
UniversalityBounds universality_bounds(const SingularityDescriptor& desc);

// "A_4", "A4", "a_{4}" all map to "A4"
std::string normalize_type_name(const std::string& name);

class Catalog {
   public:
    Catalog() = default;
    explicit Catalog(std::vector<SingularityDescriptor> entries);

    static Catalog from_json(const std::string& text);
    std::string to_json() const;

    const std::vector<SingularityDescriptor>& entries() const { return entries_; }
    const SingularityDescriptor* find(const std::string& name) const;
    const SingularityDescriptor& at(const std::string& name) const;
    // names closest to the query, for error messages
    std::vector<std::string> suggestions(const std::string& name, size_t n = 3) const;

   private:
    std::vector<SingularityDescriptor> entries_;
};

}  // namespace strata
