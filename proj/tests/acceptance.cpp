// Acceptance runner: one line per criterion, exit status 0 when all pass.

#include "structural.hpp"

#include <skewfield/skewfield.hpp>

#include <filesystem>
#include <iostream>
#include <map>

using namespace skewfield;
using namespace testsupport;

namespace {

struct Line {
    int id;
    std::string title;
    bool pass;
    std::string detail;
};

std::string scenario_detail(const ScenarioReport& rep) {
    std::size_t failed = 0;
    std::string first;
    for (const auto& c : rep.checks) {
        if (!c.pass) {
            if (failed++ == 0) {
                first = c.description + ": expected " + c.expected + ", got " + c.verdict;
            }
        }
    }
    std::string s = std::to_string(rep.checks.size()) + " checks";
    if (rep.presentation) {
        s += ", d=" + std::to_string(rep.presentation->d());
    }
    s += ", |z|=" + std::to_string(rep.generators.size());
    if (rep.freeness) {
        s += rep.freeness->all_vanish ? ", AllVanish" : ", RelationsPresent";
    }
    if (failed) {
        s += "; " + std::to_string(failed) + " failed, first: " + first;
    }
    return s;
}

Line identity() {
    const FieldPtr Q = FieldSpec::rationals();
    const std::string lhs = "inv(x1-x2*inv(x4)*x3)";
    const std::string rhs = "inv(x1)+inv(x1)*x2*inv(x4-x3*inv(x1)*x2)*x3*inv(x1)";
    Expr l = parse_expr(lhs, 4, Q), r = parse_expr(rhs, 4, Q);
    ZeroVerdict v = is_zero(l - r, Q, {}, 4);
    Rng rng(2024);
    std::size_t defined = 0, agree = 0, draws = 0;
    while (defined < 100 && draws < 1000) {
        ++draws;
        MatrixTuple X = random_tuple(Q, 4, 3, rng, 41);
        try {
            Mat<Scalar> a = evaluate(l, X), b = evaluate(r, X);
            ++defined;
            agree += a == b;
        } catch (const DomainError&) {
        } catch (const DivisionByZero&) {
        }
    }
    const bool ok = v.probably_zero() && defined == 100 && agree == 100;
    return {1, "rational identity", ok,
            std::string("rit ") + (v.probably_zero() ? "probably_zero" : "nonzero") + ", exact agreement at " +
                std::to_string(agree) + "/" + std::to_string(defined) + " random 3x3 tuples"};
}

Line scenario_line(int id, const std::string& title, const ScenarioReport& rep) {
    return {id, title, rep.passed(), scenario_detail(rep)};
}

Line structural_line() {
    std::vector<PropertyTally> ts = structural_suite(0);
    std::size_t cases = 0, failures = 0;
    bool ok = true;
    std::string first;
    for (const auto& t : ts) {
        cases += t.cases;
        failures += t.failures.size();
        ok = ok && t.ok();
        if (first.empty() && !t.failures.empty()) {
            first = t.name + ": " + t.failures[0];
        }
    }
    std::string d = std::to_string(cases) + " random cases over " + std::to_string(ts.size()) + " properties, " +
                    std::to_string(failures) + " failures";
    if (!first.empty()) {
        d += "; first: " + first;
    }
    return {7, "structural invariants", ok, d};
}

Line bounds(const std::map<std::string, ScenarioReport>& reports, const std::filesystem::path& actions) {
    std::size_t checked = 0;
    std::vector<std::string> bad;
    for (const auto& [name, rep] : reports) {
        for (const auto& c : rep.checks) {
            const std::string& s = c.description;
            if (s.find("d <= |G|") != std::string::npos || s.find("|z| <= d^2") != std::string::npos ||
                s.find("|z| = |G|(m-1)+1") != std::string::npos) {
                ++checked;
                if (!c.pass) {
                    bad.push_back(name + ": " + s);
                }
            }
        }
    }
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(actions)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        ++files;
        const std::string file = entry.path().filename().string();
        ActionSpec a = action_from_json(read_json_file(entry.path().string()));
        const std::uint64_t ch = a.field->characteristic();
        const bool linear = a.linear_part && (ch == 0 || a.group.order() % ch != 0);
        Presentation p = linear ? algorithm_linear(a) : algorithm_general(a);
        checked += 2;
        if (p.d() > a.group.order()) {
            bad.push_back(file + ": d > |G|");
        }
        if (p.t() > p.d() * p.d() * (a.m - 1) + p.d()) {
            bad.push_back(file + ": |z| above d^2(m-1)+d");
        }
        if (linear && p.effective_order == a.group.order()) {
            ++checked;
            if (p.t() != a.group.order() * (a.m - 1) + 1) {
                bad.push_back(file + ": |z| != |G|(m-1)+1");
            }
        }
    }
    std::string d = std::to_string(checked) + " bound checks over " + std::to_string(reports.size()) +
                    " scenarios and " + std::to_string(files) + " action files";
    if (!bad.empty()) {
        d += "; failing: " + bad[0];
    }
    return {8, "bounds", bad.empty() && files > 0, d};
}

Line determinism(const std::map<std::string, ScenarioReport>& first) {
    std::vector<std::string> differ;
    for (const auto& [name, rep] : first) {
        ScenarioReport again = run_scenario(name);
        if (to_json(again).dump() != to_json(rep).dump()) {
            differ.push_back(name);
        }
    }
    std::string d = "seed 0 reruns of " + std::to_string(first.size()) + " scenarios";
    d += differ.empty() ? " give identical JSON" : ", differing: " + differ[0];
    return {9, "determinism", differ.empty(), d};
}

} // namespace

int main(int argc, char** argv) {
    const std::filesystem::path actions = argc > 1 ? argv[1] : SKEWFIELD_ACTIONS_DIR;
    std::vector<Line> lines;
    auto report = [&lines](Line l) {
        std::cout << "criterion " << l.id << " " << (l.pass ? "PASS" : "FAIL") << ": " << l.title << " (" << l.detail
                  << ")" << std::endl;
        lines.push_back(std::move(l));
    };
    auto guarded = [&report](int id, const std::string& title, auto&& fn) {
        try {
            report(fn());
        } catch (const std::exception& e) {
            report({id, title, false, std::string("error: ") + e.what()});
        }
    };

    guarded(1, "rational identity", identity);

    const std::vector<std::pair<std::string, std::string>> scenarios = {
        {"z2_sign", "Z2 sign action"},
        {"z2_double_sign", "Z2 double-sign action"},
        {"z2_char2_swap", "char-2 swap action"},
        {"z3_scaling_f7", "Z3 scaling over F7"},
        {"jonquieres", "de Jonquieres involution"}};
    std::map<std::string, ScenarioReport> reports;
    for (std::size_t k = 0; k < scenarios.size(); ++k) {
        const int id = static_cast<int>(k) + 2;
        const auto& [name, title] = scenarios[k];
        guarded(id, title, [&] {
            ScenarioReport rep = run_scenario(name);
            Line l = scenario_line(id, title, rep);
            reports.emplace(name, std::move(rep));
            return l;
        });
    }

    guarded(7, "structural invariants", structural_line);
    guarded(8, "bounds", [&] { return bounds(reports, actions); });
    guarded(9, "determinism", [&] { return determinism(reports); });

    std::size_t passed = 0;
    for (const auto& l : lines) {
        passed += l.pass;
    }
    std::cout << passed << "/" << lines.size() << " criteria pass" << std::endl;
    return passed == lines.size() && reports.size() == scenarios.size() ? 0 : 1;
}
