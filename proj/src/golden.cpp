#include "strata/golden.hpp"

#include <regex>

#include "json.hpp"
#include "strata/diagram.hpp"
#include "strata/linear.hpp"
#include "strata/poly.hpp"

namespace strata {

std::string kind_name(GoldenEntry::Kind k) {
    switch (k) {
        case GoldenEntry::Kind::Degree: return "degree";
        case GoldenEntry::Kind::Series: return "series";
        case GoldenEntry::Kind::Multidegree: return "multidegree";
        case GoldenEntry::Kind::FixedDegree: return "fixed_degree";
    }
    return "?";
}

ClassElement parse_multidegree(const std::string& text, int q) {
    std::string sub = std::regex_replace(text, std::regex("Q"), "((d-" + std::to_string(q) + ")*X+F)");
    return parse_class(sub, standard_ring());
}

namespace {

DegreeScalar parse_degree(const std::string& text) {
    return sole_scalar(parse_class(text, standard_ring()));
}

DegreeScalar degree_of_row(const GoldenEntry& e, const ClassElement& c) {
    return e.ordinary ? degree_of_ordinary(c) : degree_of_lifted(c);
}

}  // namespace

GoldenStore GoldenStore::from_json(const std::string& text) {
    GoldenStore g;
    auto j = nlohmann::json::parse(text);
    auto read = [&](const char* section, GoldenEntry::Kind kind) {
        if (!j.contains(section)) return;
        for (auto& r : j.at(section)) {
            GoldenEntry e;
            e.kind = kind;
            e.type = r.at("type").get<std::string>();
            e.printed = r.at("printed").get<std::string>();
            e.citation = r.value("citation", "");
            e.erratum = r.value("erratum", "");
            e.known_issue = r.value("known_issue", "");
            e.known_deviation = r.value("known_deviation", "");
            e.q = r.value("q", 0);
            e.ordinary = r.value("ordinary", false);
            if (r.contains("fixed_degree")) e.fixed_degree = r["fixed_degree"].get<int>();
            // the printed text is typeset; "expr" is its machine-readable transcription
            std::string printed_expr = r.value("expr", e.printed);
            e.used = r.value("corrected", printed_expr);
            if (r.contains("corrected") && e.erratum.empty())
                throw GoldenError("correction without an erratum for " + e.type);
            try {
                if (kind == GoldenEntry::Kind::Degree || kind == GoldenEntry::Kind::Series) {
                    e.degree = parse_degree(e.used);
                } else if (kind == GoldenEntry::Kind::Multidegree) {
                    e.cls = parse_multidegree(e.used, e.q);
                    e.printed_cls = parse_multidegree(printed_expr, e.q);
                    e.degree = degree_of_row(e, *e.cls);
                } else {
                    e.cls = parse_class(e.used, standard_ring());
                    e.printed_cls = e.cls;
                    e.degree = degree_of_lifted(*e.cls);
                    if (r.contains("degree") && e.degree != DegreeScalar(Int(r["degree"].get<long>())))
                        throw GoldenError("fixed-degree row " + e.type + " disagrees with its own degree");
                }
            } catch (const ParseError& ex) {
                throw GoldenError("cannot parse golden " + e.type + ": " + ex.what());
            }
            g.entries_.push_back(std::move(e));
        }
    };
    read("degrees", GoldenEntry::Kind::Degree);
    read("series", GoldenEntry::Kind::Series);
    read("multidegrees", GoldenEntry::Kind::Multidegree);
    read("fixed_degree", GoldenEntry::Kind::FixedDegree);

    if (j.contains("ideals")) {
        for (auto& r : j.at("ideals")) {
            IdealGolden ig;
            ig.type = r.at("type").get<std::string>();
            if (r.contains("curve_degree")) ig.curve_degree = r["curve_degree"].get<int>();
            ig.printed = r.at("printed").get<std::vector<std::string>>();
            auto used = r.value("corrected", ig.printed);
            ig.erratum = r.value("erratum", "");
            if (r.contains("corrected") && ig.erratum.empty())
                throw GoldenError("corrected ideal without an erratum for " + ig.type);
            try {
                for (auto& g : used) ig.generators.push_back(parse_poly(g));
            } catch (const ParseError& ex) {
                throw GoldenError("cannot parse ideal golden " + ig.type + ": " + ex.what());
            }
            ig.saturate_by = r.value("saturate_by", "");
            ig.citation = r.value("citation", "");
            for (auto& in : r.value("inspections", nlohmann::json::array())) {
                InspectionGolden g;
                g.kill = in.at("kill").get<std::string>();
                g.citation = in.value("citation", "");
                for (auto& c : in.at("components")) {
                    ComponentSpec cs;
                    cs.name = c.at("name").get<std::string>();
                    cs.forms = c.at("forms").get<std::vector<std::string>>();
                    cs.distinguished = c.at("distinguished").get<std::string>();
                    cs.localize = c.value("localize", "");
                    cs.expected_multiplicity = c.at("multiplicity").get<int>();
                    g.components.push_back(cs);
                }
                ig.inspections.push_back(g);
            }
            g.ideals_.push_back(std::move(ig));
        }
    }

    // series formulas restate table rows; they have to agree
    for (auto* s : g.of_kind(GoldenEntry::Kind::Series)) {
        auto* t = g.find(GoldenEntry::Kind::Degree, s->type);
        if (t && t->degree != s->degree)
            throw GoldenError("series formula for " + s->type + " disagrees with the degree table");
    }
    for (auto* m : g.of_kind(GoldenEntry::Kind::Multidegree)) {
        auto d = g.degree(m->type);
        if (!d) continue;
        const GoldenEntry* t = g.find(GoldenEntry::Kind::Degree, m->type);
        ConsistencyItem item;
        item.type = m->type;
        try {
            item.printed_consistent = degree_of_row(*m, *m->printed_cls) == *d;
        } catch (const std::exception&) {
            item.printed_consistent = false;  // not even of the expected shape
        }
        item.used_consistent = m->degree == *d;
        for (const std::string* why : {&m->erratum, &m->known_issue}) {
            if (!why->empty()) item.explanation += (item.explanation.empty() ? "" : "; ") + *why;
        }
        if (t && !t->erratum.empty()) item.explanation += (item.explanation.empty() ? "" : "; ") + t->erratum;
        if (!item.used_consistent && m->known_issue.empty())
            throw GoldenError("multidegree row " + m->type + " has degree " + m->degree.pretty() +
                              " but the table says " + d->pretty());
        g.consistency_.push_back(item);
    }
    return g;
}

std::vector<const GoldenEntry*> GoldenStore::of_kind(GoldenEntry::Kind k) const {
    std::vector<const GoldenEntry*> out;
    for (auto& e : entries_)
        if (e.kind == k) out.push_back(&e);
    return out;
}

const GoldenEntry* GoldenStore::find(GoldenEntry::Kind k, const std::string& type) const {
    auto key = normalize_type_name(type);
    for (auto& e : entries_)
        if (e.kind == k && normalize_type_name(e.type) == key) return &e;
    return nullptr;
}

std::optional<DegreeScalar> GoldenStore::degree(const std::string& type) const {
    if (auto* e = find(GoldenEntry::Kind::Degree, type)) return e->degree;
    if (auto* e = find(GoldenEntry::Kind::Series, type)) return e->degree;
    return std::nullopt;
}

std::optional<ClassElement> GoldenStore::multidegree(const std::string& type) const {
    auto at = type.find('@');
    if (at != std::string::npos) {
        int fixed = std::stoi(type.substr(at + 1));
        std::string base = normalize_type_name(type.substr(0, at));
        for (auto& e : entries_)
            if (e.kind == GoldenEntry::Kind::FixedDegree && e.fixed_degree == fixed &&
                normalize_type_name(e.type) == base)
                return e.cls;
        return std::nullopt;
    }
    if (auto* e = find(GoldenEntry::Kind::Multidegree, type)) return e->cls;
    return std::nullopt;
}

}  // namespace strata
