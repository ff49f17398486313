#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "strata/degen.hpp"
#include "strata/diagram.hpp"
#include "strata/golden.hpp"

namespace strata {

std::string_view embedded_file(const char* name);

struct DataSources {
    std::string catalog;
    std::string degenerations;
    std::string goldens;
    std::string origin;  // "embedded" or the override path
};

// Shipped data; STRATA_CATALOG may name a type-catalog file, or a directory
// holding any of catalog.json, degenerations.json, goldens.json.
DataSources load_data_sources();

struct UnknownType : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything the front ends need, loaded and checked once. Immutable apart
// from the resolver memo, which is internally synchronized.
class Engine {
   public:
    explicit Engine(const DataSources& src);
    static const Engine& instance();

    const Catalog& types() const { return *types_; }
    const DegenCatalog& degenerations() const { return degens_; }
    const GoldenStore& goldens() const { return goldens_; }
    Resolver& resolver() const { return *resolver_; }

    // throws UnknownType with the nearest names
    const SingularityDescriptor& describe(const std::string& name) const;
    // class in (X, L, F); the ordinary-point form for ordinary types
    ClassElement multidegree(const std::string& name, std::optional<int> d = {}) const;
    ClassElement lifted(const std::string& name, std::optional<int> d = {}) const;
    DegreeScalar degree(const std::string& name, std::optional<int> d = {}) const;
    bool is_ordinary(const std::string& name) const;
    bool has_fixed_step(const std::string& name, int d) const;

   private:
    std::shared_ptr<const Catalog> types_;
    DegenCatalog degens_;
    GoldenStore goldens_;
    std::unique_ptr<Resolver> resolver_;
};

}  // namespace strata
