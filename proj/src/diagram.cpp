#include "strata/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace strata {

namespace {

using Seg = std::pair<LatticePoint, LatticePoint>;

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return long(a.i - o.i) * (b.j - o.j) - long(a.j - o.j) * (b.i - o.i);
}

const Seg& segment_for(const std::vector<Seg>& segs, int i) {
    for (auto& s : segs)
        if (i <= s.second.i) return s;
    return segs.back();
}

// sign of (j - boundary(i)) as -1, 0, 1
int side(const std::vector<Seg>& segs, int i, int j) {
    const auto& [a, b] = segment_for(segs, i);
    long w = b.i - a.i;
    long lhs = long(j) * w;
    long rhs = long(a.j) * w + long(b.j - a.j) * (i - a.i);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

std::vector<Seg> segments(const NewtonDiagram& d) {
    std::vector<Seg> s;
    for (size_t k = 0; k + 1 < d.vertices.size(); ++k) s.emplace_back(d.vertices[k], d.vertices[k + 1]);
    return s;
}

// points with side <= limit (limit -1: strictly under, 0: on or under)
std::vector<LatticePoint> region(const NewtonDiagram& d, int limit) {
    std::vector<LatticePoint> out;
    auto segs = segments(d);
    if (segs.empty()) return out;
    for (int i = 0; side(segs, i, 0) <= limit; ++i)
        for (int j = 0; side(segs, i, j) <= limit; ++j) out.push_back({i, j});
    return out;
}

}  // namespace

NewtonDiagram diagram_from_monomials(const std::vector<LatticePoint>& points) {
    if (points.empty()) throw std::invalid_argument("Newton diagram of an empty monomial set");
    for (auto& p : points)
        if (p.i < 0 || p.j < 0) throw std::invalid_argument("negative exponent in monomial set");
    std::vector<LatticePoint> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePoint start = pts.front();  // minimal i, then minimal j
    LatticePoint end = *std::min_element(pts.begin(), pts.end(), [](auto& a, auto& b) {
        return a.j != b.j ? a.j < b.j : a.i < b.i;
    });
    std::vector<LatticePoint> cand;
    for (auto& p : pts)
        if (p.i >= start.i && p.i <= end.i) cand.push_back(p);

    // lower hull, dropping collinear points
    std::vector<LatticePoint> hull;
    for (auto& p : cand) {
        if (!hull.empty() && hull.back().i == p.i) continue;
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    // keep the part from start to end
    NewtonDiagram d;
    for (auto& p : hull) {
        if (!d.vertices.empty() && p.j >= d.vertices.back().j) continue;
        d.vertices.push_back(p);
        if (p == end) break;
    }
    return d;
}

bool is_linear(const NewtonDiagram& diag) {
    for (auto& [a, b] : segments(diag)) {
        long di = b.i - a.i, dj = a.j - b.j;
        // 1/2 <= dj/di <= 2
        if (2 * dj < di || dj > 2 * di) return false;
    }
    return true;
}

NewtonDiagram transpose(const NewtonDiagram& diag) {
    NewtonDiagram t;
    for (auto it = diag.vertices.rbegin(); it != diag.vertices.rend(); ++it) t.vertices.push_back({it->j, it->i});
    return t;
}

std::vector<LatticePoint> under_points(const NewtonDiagram& diag) { return region(diag, -1); }

Staircase staircase(const NewtonDiagram& diag) {
    Staircase s;
    for (auto& p : under_points(diag)) {
        if (p.j >= static_cast<int>(s.heights.size())) s.heights.resize(p.j + 1, -1);
        s.heights[p.j] = std::max(s.heights[p.j], p.i);
    }
    return s;
}

size_t staircase_conditions(const Staircase& s) {
    size_t n = 0;
    for (int h : s.heights) n += h + 1;
    return n;
}

int determinacy(const SingularityDescriptor& desc) {
    if (desc.normal_form.empty()) throw std::invalid_argument("empty normal form for " + desc.name);
    int best = 0;
    for (auto& p : desc.normal_form) best = std::max(best, p.i + p.j);
    for (auto& p : region(diagram_from_monomials(desc.normal_form), 0)) best = std::max(best, p.i + p.j);
    return best;
}

UniversalityBounds universality_bounds(const SingularityDescriptor& desc) {
    // 2d - 1 > codim
    int via_codim = std::max(1, (desc.codim + 1) / 2 + 1);
    return {std::max(1, determinacy(desc) - 1), via_codim};
}

std::string normalize_type_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (c == '_' || c == '{' || c == '}' || c == ',' || std::isspace(static_cast<unsigned char>(c))) continue;
        out += c;
    }
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

// ---- catalog ----------------------------------------------------------------

Catalog::Catalog(std::vector<SingularityDescriptor> entries) : entries_(std::move(entries)) {
    std::vector<std::string> seen;
    for (auto& e : entries_) {
        if (e.normal_form.empty()) throw std::invalid_argument("catalog entry " + e.name + " has no normal form");
        bool lin = is_linear(diagram_from_monomials(e.normal_form));
        if (e.newton_degenerate || !e.modifier.empty()) {
            if (e.linear) throw std::invalid_argument("catalog entry " + e.name + " cannot be both constrained and linear");
        } else if (lin != e.linear)
            throw std::invalid_argument("catalog entry " + e.name + ": linear flag disagrees with its Newton diagram");
        std::vector<std::string> keys{normalize_type_name(e.name)};
        for (auto& a : e.aliases) keys.push_back(normalize_type_name(a));
        for (auto& k : keys) {
            if (std::find(seen.begin(), seen.end(), k) != seen.end())
                throw std::invalid_argument("duplicate catalog name " + k);
            seen.push_back(k);
        }
    }
}

const SingularityDescriptor* Catalog::find(const std::string& name) const {
    std::string key = normalize_type_name(name);
    for (auto& e : entries_) {
        if (normalize_type_name(e.name) == key) return &e;
        for (auto& a : e.aliases)
            if (normalize_type_name(a) == key) return &e;
    }
    return nullptr;
}

const SingularityDescriptor& Catalog::at(const std::string& name) const {
    if (auto* e = find(name)) return *e;
    throw std::out_of_range("unknown singularity type " + name);
}

namespace {

size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

std::vector<std::string> Catalog::suggestions(const std::string& name, size_t n) const {
    std::string key = normalize_type_name(name);
    std::vector<std::pair<size_t, std::string>> scored;
    for (auto& e : entries_) scored.emplace_back(edit_distance(key, normalize_type_name(e.name)), e.name);
    std::stable_sort(scored.begin(), scored.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    for (size_t k = 0; k < scored.size() && k < n; ++k) out.push_back(scored[k].second);
    return out;
}

Catalog Catalog::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<SingularityDescriptor> v;
    for (auto& e : j) {
        SingularityDescriptor d;
        d.name = e.at("name").get<std::string>();
        if (e.contains("aliases")) d.aliases = e["aliases"].get<std::vector<std::string>>();
        for (auto& p : e.at("normal_form")) d.normal_form.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
        d.codim = e.at("codim").get<int>();
        d.linear = e.at("linear").get<bool>();
        d.newton_degenerate = e.value("newton_degenerate", false);
        d.notes = e.value("notes", "");
        d.modifier = e.value("modifier", "");
        if (e.contains("staircase_override")) d.staircase_override = Staircase{e["staircase_override"].get<std::vector<int>>()};
        v.push_back(std::move(d));
    }
    return Catalog(std::move(v));
}

std::string Catalog::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& d : entries_) {
        nlohmann::ordered_json e;
        e["name"] = d.name;
        if (!d.aliases.empty()) e["aliases"] = d.aliases;
        nlohmann::ordered_json nf = nlohmann::ordered_json::array();
        for (auto& p : d.normal_form) nf.push_back({p.i, p.j});
        e["normal_form"] = nf;
        e["codim"] = d.codim;
        e["linear"] = d.linear;
        e["newton_degenerate"] = d.newton_degenerate;
        e["notes"] = d.notes;
        if (!d.modifier.empty()) e["modifier"] = d.modifier;
        if (d.staircase_override) e["staircase_override"] = d.staircase_override->heights;
        arr.push_back(e);
    }
    return arr.dump(2);
}

}  // namespace strata
