#include "strata/data.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "strata/linear.hpp"

namespace strata {

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

DataSources load_data_sources() {
    DataSources s{std::string(embedded_file("catalog.json")), std::string(embedded_file("degenerations.json")),
                  std::string(embedded_file("goldens.json")), "embedded"};
    const char* env = std::getenv("STRATA_CATALOG");
    if (!env || !*env) return s;
    std::filesystem::path p(env);
    if (std::filesystem::is_directory(p)) {
        if (std::filesystem::exists(p / "catalog.json")) s.catalog = read_file(p / "catalog.json");
        if (std::filesystem::exists(p / "degenerations.json")) s.degenerations = read_file(p / "degenerations.json");
        if (std::filesystem::exists(p / "goldens.json")) s.goldens = read_file(p / "goldens.json");
    } else {
        s.catalog = read_file(p);
    }
    s.origin = p.string();
    return s;
}

Engine::Engine(const DataSources& src)
    : types_(std::make_shared<const Catalog>(Catalog::from_json(src.catalog))),
      degens_(DegenCatalog::from_json(src.degenerations, types_)),
      goldens_(GoldenStore::from_json(src.goldens)),
      resolver_(std::make_unique<Resolver>(degens_)) {}

const Engine& Engine::instance() {
    static const Engine e(load_data_sources());
    return e;
}

const SingularityDescriptor& Engine::describe(const std::string& name) const {
    if (auto* d = types_->find(name)) return *d;
    std::string msg = "unknown singularity type '" + name + "'";
    auto near = types_->suggestions(name);
    if (!near.empty()) {
        msg += "; closest catalog names:";
        for (auto& n : near) msg += " " + n;
    }
    throw UnknownType(msg);
}

bool Engine::is_ordinary(const std::string& name) const {
    const auto& d = describe(name);
    return d.linear && build_chain(effective_staircase(d)).is_ordinary();
}

bool Engine::has_fixed_step(const std::string& name, int d) const {
    auto* s = degens_.step_for(describe(name).name, d);
    return s && s->fixed_degree == d;
}

ClassElement Engine::lifted(const std::string& name, std::optional<int> d) const {
    const auto& desc = describe(name);
    return resolver_->resolve({desc.name, d});
}

ClassElement Engine::multidegree(const std::string& name, std::optional<int> d) const {
    const auto& desc = describe(name);
    if (desc.linear && !(d && has_fixed_step(name, *d))) {
        ClassElement c = strata::multidegree(desc).on_ring(standard_ring());
        return d ? c.eval_at(*d) : c;
    }
    return lifted(name, d);
}

DegreeScalar Engine::degree(const std::string& name, std::optional<int> d) const {
    ClassElement c = multidegree(name, d);
    return is_ordinary(name) ? degree_of_ordinary(c) : degree_of_lifted(c);
}

}  // namespace strata
