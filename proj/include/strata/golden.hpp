#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/ideal.hpp"
#include "strata/ring.hpp"
#include "strata/scalar.hpp"

namespace strata {

// A published value. `printed` is the text as it appears in the source table;
// `used` is what the checks compare against (the printed text, or a correction
// when `erratum` explains one).
struct GoldenEntry {
    enum class Kind { Degree, Series, Multidegree, FixedDegree };
    Kind kind = Kind::Degree;
    std::string type;
    std::string printed;
    std::string used;
    std::string citation;
    std::string erratum;
    std::string known_issue;
    // the engine is known to disagree with this row; explained in the notes
    std::string known_deviation;
    int q = 0;  // Q = (d - q) X + F in multidegree rows
    bool ordinary = false;
    std::optional<int> fixed_degree;

    DegreeScalar degree;  // also filled for multidegree rows (from the class)
    std::optional<ClassElement> cls;
    std::optional<ClassElement> printed_cls;
};

std::string kind_name(GoldenEntry::Kind k);

struct InspectionGolden {
    std::string kill;
    std::vector<ComponentSpec> components;
    std::string citation;
};

// A printed ideal. The computed ideal is compared after saturating by
// `saturate_by` (the coefficient that is a unit on the normal-form chart).
struct IdealGolden {
    std::string type;
    std::optional<int> curve_degree;
    std::vector<std::string> printed;
    std::vector<Poly> generators;  // printed, or corrected where `erratum` says so
    std::string erratum;
    std::string saturate_by;
    std::string citation;
    std::vector<InspectionGolden> inspections;
};

struct GoldenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-level comparison of a multidegree row against the degree table.
struct ConsistencyItem {
    std::string type;
    bool printed_consistent = false;
    bool used_consistent = false;
    std::string explanation;  // erratum or known issue, when any
};

class GoldenStore {
   public:
    GoldenStore() = default;
    // Parses and cross-checks every row; an inconsistency that is neither
    // corrected nor flagged as known aborts the load.
    static GoldenStore from_json(const std::string& text);

    const std::vector<GoldenEntry>& entries() const { return entries_; }
    std::vector<const GoldenEntry*> of_kind(GoldenEntry::Kind k) const;
    // table degree (falls back to series formula)
    std::optional<DegreeScalar> degree(const std::string& type) const;
    // "A_7" or "A_7@4"
    std::optional<ClassElement> multidegree(const std::string& type) const;
    const GoldenEntry* find(GoldenEntry::Kind k, const std::string& type) const;
    const std::vector<ConsistencyItem>& consistency() const { return consistency_; }
    const std::vector<IdealGolden>& ideals() const { return ideals_; }

   private:
    std::vector<GoldenEntry> entries_;
    std::vector<IdealGolden> ideals_;
    std::vector<ConsistencyItem> consistency_;
};

// Q -> ((d - q) X + F), then parse into the standard ring
ClassElement parse_multidegree(const std::string& text, int q);

}  // namespace strata
