#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "json.hpp"
#include "strata/data.hpp"
#include "strata/ideal.hpp"
#include "strata/linear.hpp"
#include "strata/verify.hpp"

using namespace strata;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string monomial_text(const LatticePoint& p) {
    auto part = [](const char* v, int e) -> std::string {
        if (e == 0) return "";
        return e == 1 ? v : std::string(v) + "^" + std::to_string(e);
    };
    std::string a = part("x1", p.i), b = part("x2", p.j);
    if (a.empty()) return b.empty() ? "1" : b;
    return b.empty() ? a : a + "*" + b;
}

std::string universality_note(const SingularityDescriptor& d, int deg) {
    auto u = universality_bounds(d);
    if (u.admits(deg)) return "";
    std::ostringstream s;
    s << "warning: d=" << deg << " is below the universality range of " << d.name << " (d >= "
      << u.min_d_via_determinacy << " by determinacy, d >= " << u.min_d_via_codim
      << " by codimension); the polynomial need not count curves of this degree";
    return s.str();
}

std::optional<int> opt_d(const CLI::Option* o, int v) { return o->count() ? std::optional<int>(v) : std::nullopt; }

int cmd_degree(const std::string& type, std::optional<int> d, const std::string& format) {
    const Engine& en = Engine::instance();
    const auto& desc = en.describe(type);
    bool special = d && en.has_fixed_step(type, *d);
    DegreeScalar deg = en.degree(type, special ? d : std::nullopt);
    std::string warning = d && !special ? universality_note(desc, *d) : "";
    auto u = universality_bounds(desc);
    if (format == "json") {
        ojson j;
        j["type"] = desc.name;
        // a fixed-degree route yields a number, not a polynomial in d
        if (special) {
            j["degree"] = nullptr;
        } else {
            j["degree"] = deg.pretty();
            std::vector<std::string> coeffs;
            for (auto& c : deg.coeffs()) coeffs.push_back(c.get_str());
            j["coefficients"] = coeffs;
        }
        if (d) {
            j["d"] = *d;
            j["value"] = (special ? deg.coeff(0) : deg.eval(*d)).get_str();
            j["route"] = special ? "fixed-degree degeneration" : "evaluation";
        }
        j["universality"] = {{"min_d_via_determinacy", u.min_d_via_determinacy},
                             {"min_d_via_codim", u.min_d_via_codim}};
        if (!warning.empty()) j["warning"] = warning;
        std::cout << j.dump() << "\n";
    } else {
        if (!warning.empty()) std::cerr << warning << "\n";
        if (d)
            std::cout << (special ? deg.coeff(0) : deg.eval(*d)).get_str() << "\n";
        else
            std::cout << deg.pretty() << "\n";
    }
    return kOk;
}

int cmd_multidegree(const std::string& type, std::optional<int> d, const std::string& format) {
    const Engine& en = Engine::instance();
    const auto& desc = en.describe(type);
    bool special = d && en.has_fixed_step(type, *d);
    std::string warning = d && !special ? universality_note(desc, *d) : "";
    if (!warning.empty() && format != "json") std::cerr << warning << "\n";
    ClassElement c = en.multidegree(type, d);
    if (format == "json") {
        ojson j;
        j["type"] = desc.name;
        j["form"] = en.is_ordinary(type) ? "ordinary point" : "lifted";
        if (d) j["d"] = *d;
        j["class"] = ojson::parse(to_json(c));
        j["text"] = c.str();
        if (!warning.empty()) j["warning"] = warning;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << c.str() << "\n";
    }
    return kOk;
}

struct TreePrinter {
    const Engine& en;
    std::ostringstream out;
    bool unsupported = false;

    std::string status(const std::string& ref, std::optional<int> fixed, const DegenStep* step) {
        if (step && step->omitted) return "unsupported";
        std::string s = step ? "solved" : "linear leaf";
        if (is_anonymous_ref(ref)) return s;
        std::string key = ref + (fixed ? "@" + std::to_string(*fixed) : "");
        auto g = en.goldens().multidegree(key);
        if (!g) return s;
        try {
            ClassElement c = en.multidegree(ref, fixed);
            return s + (c == *g ? ", golden matched" : ", differs from golden");
        } catch (const std::exception&) {
            return s;
        }
    }

    void node(const std::string& ref, std::optional<int> fixed, const std::string& indent, const std::string& lead,
              long mult) {
        std::string canon = is_anonymous_ref(ref) ? ref : en.describe(ref).name;
        const DegenStep* step = en.degenerations().step_for(canon, fixed);
        if (step && fixed && step->fixed_degree && step->fixed_degree != fixed) step = nullptr;
        if (!step && !is_anonymous_ref(ref) && !en.describe(ref).linear)
            step = en.degenerations().step_for(canon, std::nullopt);
        out << lead << (mult ? std::to_string(mult) + " x " : "") << canon;
        if (fixed) out << " (d=" << *fixed << ")";
        if (step && !step->omitted) {
            ClassElement div = fixed ? step->divisor->eval_at(*fixed) : *step->divisor;
            out << "  kill " << monomial_text(step->killed) << ", divide by " << div.str();
        }
        out << "  [" << status(canon, fixed, step) << "]\n";
        if (step && step->omitted) {
            unsupported = true;
            out << indent << "    unsupported: the final degeneration step for " << canon
                << " is not in the catalog (the source omits the calculation)\n";
            return;
        }
        if (!step) return;
        std::optional<int> child_fixed = step->fixed_degree ? step->fixed_degree : fixed;
        for (size_t k = 0; k < step->children.size(); ++k) {
            bool last = k + 1 == step->children.size();
            node(step->children[k].first, child_fixed, indent + (last ? "    " : "|   "),
                 indent + (last ? "`-- " : "|-- "), step->children[k].second);
        }
    }
};

int cmd_tree(const std::string& type, std::optional<int> d) {
    const Engine& en = Engine::instance();
    TreePrinter tp{en, {}, false};
    tp.node(en.describe(type).name, d, "", "", 0);
    std::cout << tp.out.str();
    return tp.unsupported ? kUsage : kOk;
}

int cmd_ideal(const std::string& type, std::optional<int> jet_order, std::optional<int> curve_degree,
              const std::string& saturate_by, int guard, const std::string& format) {
    const Engine& en = Engine::instance();
    StratumIdealOptions opt;
    opt.jet_order = jet_order;
    opt.curve_degree = curve_degree;
    opt.degree_guard = guard;
    RatIdeal i = stratum_ideal(en.describe(type), opt);
    if (!saturate_by.empty()) i = saturate(i, parse_poly(saturate_by), guard);
    if (format == "json") {
        std::cout << i.json() << "\n";
    } else {
        for (auto& g : i.generators) std::cout << g.str() << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& suite, int jobs, const std::string& format) {
    VerifyReport rep = run_verify(Engine::instance(), suite, jobs);
    if (format == "json") {
        std::cout << rep.json() << "\n";
    } else {
        for (auto& c : rep.cases) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.suite << " " << c.name << "\n";
            if (!c.passed) {
                std::cout << "    expected: " << c.expected << "\n    actual:   " << c.actual << "\n";
                if (!c.detail.empty()) std::cout << "    detail:   " << c.detail << "\n";
                if (!c.known_deviation.empty()) std::cout << "    known:    " << c.known_deviation << "\n";
            }
        }
        std::cout << rep.cases.size() - rep.failures() << " passed, " << rep.failures() << " failed ("
                  << rep.failures() - rep.unexplained_failures() << " documented)\n";
    }
    return rep.ok() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degrees and multidegrees of equisingular strata of plane curves"};
    app.require_subcommand(1);
    std::string type, format = "text", suite = "all", saturate_by;
    int d = 0, jets = 0, curve = 0, jobs = 1, guard = 20;
    auto formats = CLI::IsMember({"text", "json"});

    auto* deg = app.add_subcommand("degree", "degree of the stratum as a polynomial in d");
    deg->add_option("type", type, "singularity type, e.g. A_5 or A5")->required();
    auto* deg_d = deg->add_option("--d", d, "curve degree to evaluate at")->check(CLI::PositiveNumber);
    deg->add_option("--format", format)->check(formats);

    auto* md = app.add_subcommand("multidegree", "class of the lifted stratum in X, L, F");
    md->add_option("type", type)->required();
    auto* md_d = md->add_option("--d", d, "curve degree")->check(CLI::PositiveNumber);
    md->add_option("--format", format)->check(formats);

    auto* tree = app.add_subcommand("tree", "degeneration tree");
    tree->add_option("type", type)->required();
    auto* tree_d = tree->add_option("--d", d, "curve degree for fixed-degree trees")->check(CLI::PositiveNumber);

    auto* ideal = app.add_subcommand("ideal", "local ideal of the stratum in the jet coefficients");
    ideal->add_option("type", type)->required();
    auto* jet_o = ideal->add_option("--jet-order", jets, "jet truncation order")->check(CLI::Range(2, 40));
    auto* cd_o = ideal->add_option("--curve-degree", curve, "zero the coefficients above this degree")
                     ->check(CLI::PositiveNumber);
    ideal->add_option("--saturate", saturate_by, "saturate by this polynomial (a unit on the chart)");
    ideal->add_option("--degree-guard", guard, "bound on S-pair degree")->check(CLI::PositiveNumber);
    ideal->add_option("--format", format)->check(formats);

    auto* ver = app.add_subcommand("verify", "run acceptance suites");
    ver->add_option("--suite", suite)->check(CLI::IsMember({"tables", "identities", "ideals", "all"}));
    ver->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    ver->add_option("--format", format)->check(formats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*deg) return cmd_degree(type, opt_d(deg_d, d), format);
        if (*md) return cmd_multidegree(type, opt_d(md_d, d), format);
        if (*tree) return cmd_tree(type, opt_d(tree_d, d));
        if (*ideal) return cmd_ideal(type, opt_d(jet_o, jets), opt_d(cd_o, curve), saturate_by, guard, format);
        if (*ver) return cmd_verify(suite, jobs, format);
    } catch (const UnknownType& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenError& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        return msg.rfind("unsupported", 0) == 0 ? kUsage : kInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const EliminationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
