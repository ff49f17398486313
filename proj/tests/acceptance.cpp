// One line per acceptance criterion. Exit status is nonzero only when a
// criterion fails for a reason that is not a documented deviation.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "strata/data.hpp"
#include "strata/diagram.hpp"
#include "strata/verify.hpp"

using namespace strata;

namespace {

struct Outcome {
    size_t total = 0;
    std::vector<std::string> failed;
    std::set<std::string> deviations;
    double seconds = 0;
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Outcome collect(const VerifyReport& rep, const std::function<bool(const VerifyCase&)>& pick) {
    Outcome o;
    for (const auto& c : rep.cases) {
        if (!pick(c)) continue;
        ++o.total;
        o.seconds += c.seconds;
        if (c.passed) continue;
        o.failed.push_back(c.name);
        if (!c.known_deviation.empty()) o.deviations.insert(c.name);
    }
    return o;
}

template <class F>
Outcome property(F body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    body(o);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

void check(Outcome& o, bool ok, const std::string& what) {
    ++o.total;
    if (!ok) o.failed.push_back(what);
}

int unexplained = 0;

void report(int n, const std::string& title, const Outcome& o) {
    bool pass = o.failed.empty();
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << title << "  [" << (o.total - o.failed.size())
         << "/" << o.total << " checks, ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs]", o.seconds);
    line << buf;
    if (!pass) {
        size_t undocumented = o.failed.size() - o.deviations.size();
        line << "  failing:";
        for (auto& f : o.failed) line << " " << f;
        if (undocumented == 0)
            line << "  (all documented deviations)";
        else
            unexplained += static_cast<int>(undocumented);
    }
    std::puts(line.str().c_str());
}

SingularityDescriptor descriptor(std::vector<LatticePoint> nf, int codim) {
    SingularityDescriptor d;
    d.name = "probe";
    d.normal_form = std::move(nf);
    d.codim = codim;
    return d;
}

}  // namespace

int main() {
    try {
        const Engine& e = Engine::instance();
        VerifyReport tables = run_verify(e, "tables", 4);
        VerifyReport ids = run_verify(e, "identities", 4);
        VerifyReport ideals = run_verify(e, "ideals", 4);

        report(1, "golden degree formulas and series bullets", collect(tables, [](const VerifyCase& c) {
                   return starts_with(c.name, "degree/") || starts_with(c.name, "series/");
               }));
        report(2, "golden multidegree rows",
               collect(tables, [](const VerifyCase& c) { return starts_with(c.name, "multidegree/"); }));

        Outcome c3 = collect(tables, [](const VerifyCase& c) { return starts_with(c.name, "consistency/"); });
        {
            auto lin = [](long a, long b) { return DegreeScalar::linear(a, b); };
            auto seed = [&](const char* t, const DegreeScalar& want) {
                auto g = e.goldens().multidegree(t);
                check(c3, g && degree_of_lifted(*g) == want, std::string("seed/") + t);
            };
            seed("A_2", DegreeScalar(12) * lin(1, -1) * lin(1, -2));
            seed("A_3", DegreeScalar(std::vector<Int>{168, -192, 50}));
            seed("D_7", DegreeScalar(std::vector<Int>{48 * 135, -48 * 92, 48 * 15}));
            seed("E_8", DegreeScalar(std::vector<Int>{9 * 448, -9 * 288, 9 * 45}));
        }
        report(3, "multidegree rows agree with degree rows", c3);

        report(4, "cusp series: lifting chain = inverted degeneration, p = 2, 3, 4",
               collect(ids, [](const VerifyCase& c) { return starts_with(c.name, "cusp_cross_method/"); }));

        Outcome c5 = collect(ids, [](const VerifyCase& c) {
            for (const char* p : {"A_4", "A_5", "A_6", "A_7", "D_7", "D_8"})
                if (c.name == std::string("step/") + p) return true;
            return false;
        });
        {
            auto t0 = std::chrono::steady_clock::now();
            RingPtr r = standard_ring();
            ClassElement X = ClassElement::gen(r, "X"), L = ClassElement::gen(r, "L"), F = ClassElement::gen(r, "F");
            check(c5, e.lifted("A_4") * (DegreeScalar::linear(1, -2) * X + F - DegreeScalar(2) * L) ==
                          DegreeScalar(2) * e.lifted("D_5"),
                  "[A_4]((d-2)X+F-2L) = 2[D_5]");
            check(c5, e.lifted("D_7") * (DegreeScalar::linear(1, -4) * X + F - L) == DegreeScalar(2) * e.lifted("E_8"),
                  "[D_7]((d-4)X+F-L) = 2[E_8]");
            c5.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        report(5, "degeneration steps as full-class identities", c5);

        report(6, "quartic A_7 degree 504 by three routes", collect(ids, [](const VerifyCase& c) {
                   return starts_with(c.name, "quartic_a7/") || c.name == "step/A_7@4";
               }));

        report(7, "elimination ideals and inspected multiplicities",
               collect(ideals, [](const VerifyCase&) { return true; }));

        report(8, "ring, division, diagonal and diagram properties", property([](Outcome& o) {
                   std::mt19937 rng(99);
                   std::uniform_int_distribution<int> coef(-5, 5), ex(0, 2), nt(0, 4);
                   RingPtr r = standard_ring({{"B1", 3}});
                   auto elem = [&](bool with_f) {
                       ClassElement out = ClassElement::zero(r);
                       int n = nt(rng);
                       for (int t = 0; t < n; ++t)
                           out += ClassElement::monomial(r, {ex(rng), ex(rng), with_f ? ex(rng) : 0, ex(rng)},
                                                         DegreeScalar(std::vector<Int>{coef(rng), coef(rng)}));
                       return out;
                   };
                   int ring_cases = 0;
                   for (int it = 0; it < 250; ++it) {
                       ClassElement a = elem(true), b = elem(true), c = elem(true);
                       check(o, a * b == b * a && a + b == b + a, "commutativity");
                       check(o, (a * b) * c == a * (b * c), "associativity");
                       check(o, a * (b + c) == a * b + a * c, "distributivity");
                       check(o, (a - a).is_zero() && a * ClassElement::one(r) == a, "units");
                       ring_cases += 4;
                   }
                   check(o, ring_cases >= 1000, "at least 1000 ring cases");
                   ClassElement F = ClassElement::gen(r, "F");
                   for (int it = 0; it < 200; ++it) {
                       ClassElement q = elem(true), div = DegreeScalar(it % 2 ? 1 : -1) * F + elem(false);
                       check(o, exact_divide(q * div, div) == q, "exact_divide round trip");
                   }
                   for (int it = 0; it < 100; ++it) {
                       ClassElement a = elem(true), b = elem(true);
                       int n = it % 6;
                       ClassElement s = diagonal_class(a, b, n);
                       check(o, s == diagonal_class(b, a, n), "diagonal symmetry");
                       check(o, (a - b) * s == a.pow(n + 1) - b.pow(n + 1), "diagonal telescoping");
                   }
                   RingPtr s = standard_ring();
                   ClassElement X = ClassElement::gen(s, "X"), L = ClassElement::gen(s, "L");
                   check(o, ((L + X) * (X * X - X * L + L * L)).is_zero(), "annihilator (L+X)(X^2-XL+L^2)");
                   std::uniform_int_distribution<int> pc(0, 9), np(1, 6);
                   for (int it = 0; it < 300; ++it) {
                       std::vector<LatticePoint> pts;
                       for (int k = np(rng); k > 0; --k) pts.push_back({pc(rng), pc(rng)});
                       NewtonDiagram d = diagram_from_monomials(pts);
                       check(o, diagram_from_monomials(d.vertices) == d, "hull idempotence");
                       if (d.vertices.front().i <= 1 && d.vertices.back().j == 0 && d.vertices.front().j > 0) {
                           Staircase st = staircase(d);
                           bool mono = std::is_sorted(st.heights.rbegin(), st.heights.rend());
                           check(o, mono, "staircase monotonicity");
                       }
                   }
               }));

        report(9, "universality bounds for k <= 15", property([](Outcome& o) {
                   for (int k = 1; k <= 15; ++k) {
                       auto a = universality_bounds(descriptor({{0, 2}, {k + 1, 0}}, k));
                       auto dk = universality_bounds(descriptor({{1, 2}, {k - 1, 0}}, k));
                       // E_{6k}, E_{6k+1}, E_{6k+2}: codimension mu - (k - 1)
                       auto e0 = universality_bounds(descriptor({{0, 3}, {3 * k + 1, 0}}, 5 * k + 1));
                       auto e1 = universality_bounds(descriptor({{0, 3}, {2 * k + 1, 1}}, 5 * k + 2));
                       auto e2 = universality_bounds(descriptor({{0, 3}, {3 * k + 2, 0}}, 5 * k + 3));
                       for (int d = 1; d <= 60; ++d) {
                           std::string at = " k=" + std::to_string(k) + " d=" + std::to_string(d);
                           check(o, (d >= a.min_d_via_codim) == (k < 2 * d - 1), "A_k: k<2d-1" + at);
                           if (k >= 4) check(o, (d >= dk.min_d_via_codim) == (k < 2 * d - 1), "D_k: k<2d-1" + at);
                           // max of the determinacy bound (3k <= d, 3k+1 <= d) and the codimension bound
                           check(o, e0.admits(d) == (3 * k <= d || 5 * k < 2 * d - 2), "E_6k" + at);
                           check(o, e1.admits(d) == (3 * k <= d || 5 * k < 2 * d - 3), "E_6k+1" + at);
                           check(o, e2.admits(d) == (3 * k + 1 <= d || 5 * k < 2 * d - 4), "E_6k+2" + at);
                       }
                   }
               }));
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "acceptance: %s\n", ex.what());
        return 3;
    }
    return unexplained == 0 ? 0 : 1;
}
