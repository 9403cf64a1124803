// skewfield: identity testing and invariant skew subfields from the command line.

#include <skewfield/skewfield.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace skewfield;

namespace {

struct Options {
    std::uint64_t seed = 0;
    std::size_t trials = 8;
    std::size_t size_cap = 64;
    std::size_t max_degree = 0;
    std::size_t threads = 1;
    std::string field;
    std::string json_path; // "-" is stdout
    bool json = false;

    RitConfig rit() const {
        RitConfig c;
        c.seed = seed;
        c.trials = trials;
        c.size_cap = size_cap;
        c.threads = threads;
        return c;
    }
    InvariantsConfig inv() const {
        InvariantsConfig c;
        c.rit = rit();
        c.max_degree = max_degree;
        return c;
    }
    FieldPtr field_or(const FieldPtr& fallback) const { return field.empty() ? fallback : FieldSpec::parse(field); }
};

void emit(const Options& o, const json& j) {
    if (!o.json) {
        return;
    }
    const std::string text = j.dump(2) + "\n";
    if (o.json_path.empty() || o.json_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(o.json_path);
    if (!out) {
        throw FormatError("cannot write " + o.json_path);
    }
    out << text;
}

// Human output goes to stdout unless JSON already does.
std::ostream& human(const Options& o) {
    static std::ostringstream sink;
    if (o.json && (o.json_path.empty() || o.json_path == "-")) {
        sink.str("");
        return sink;
    }
    return std::cout;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t highest_variable(const std::string& text) {
    static const std::regex var("x([0-9]+)");
    std::size_t m = 1;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
        m = std::max<std::size_t>(m, std::stoul((*it)[1].str()));
    }
    return m;
}

void print_matrix(std::ostream& os, const std::vector<std::vector<std::string>>& rows, const std::string& indent) {
    for (const auto& row : rows) {
        os << indent << "[";
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << (j ? ", " : "") << row[j];
        }
        os << "]\n";
    }
}

void print_scalar_matrix(std::ostream& os, const Mat<Scalar>& a, const std::string& indent) {
    std::vector<std::vector<std::string>> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            rows[i].push_back(a(i, j).to_string());
        }
    }
    print_matrix(os, rows, indent);
}

int cmd_rit(const Options& o, const std::string& expr_text, const std::string& file, std::size_t m) {
    const std::string text = file.empty() ? expr_text : slurp(file);
    if (text.empty()) {
        throw ParamError("give an expression with --expr or --file");
    }
    const FieldPtr f = o.field_or(FieldSpec::rationals());
    if (m == 0) {
        m = highest_variable(text);
    }
    Expr r = parse_expr(text, m, f);
    ZeroVerdict v = is_zero(r, f, o.rit(), m);
    emit(o, to_json(v, r));
    std::ostream& os = human(o);
    if (v.nonzero()) {
        os << "nonzero (witness of size " << v.witness->n << ", " << v.route << ")\n";
        for (std::size_t i = 0; i < v.witness->mats.size(); ++i) {
            os << "  x" << i + 1 << " =\n";
            print_scalar_matrix(os, v.witness->mats[i], "    ");
        }
        return 1;
    }
    os << "probably_zero (" << v.trials << " trials at size " << v.size << ")\n";
    return 0;
}

int cmd_eval(const Options& o, const std::string& expr_text, const std::string& tuple_file) {
    const FieldPtr f = o.field_or(FieldSpec::rationals());
    MatrixTuple t = tuple_from_json(read_json_file(tuple_file), f);
    Expr r = parse_expr(expr_text, t.mats.size(), t.field);
    Mat<Scalar> value = evaluate(r, t);
    json j;
    j["n"] = t.n;
    j["value"] = to_json(value);
    emit(o, j);
    print_scalar_matrix(human(o), value, "");
    return 0;
}

ActionSpec load_action(const Options& o, const std::string& path) {
    return action_from_json(read_json_file(path), o.field.empty() ? nullptr : FieldSpec::parse(o.field), true, o.rit());
}

void summarize(std::ostream& os, const Presentation& p, const ActionSpec& a) {
    os << "algorithm: " << p.algorithm << "\n";
    os << "field: " << p.field->to_string() << ", m = " << p.m << ", |G| = " << p.group_order;
    if (p.effective_order != p.group_order) {
        os << " (acting through a quotient of order " << p.effective_order << ")";
    }
    os << "\n";
    os << "d = " << p.d() << ", basis {";
    for (std::size_t i = 0; i < p.basis_labels.size(); ++i) {
        os << (i ? ", " : "") << p.basis_labels[i];
    }
    os << "}\n";
    os << "|z| = " << p.t() << "\n";
    for (std::size_t j = 0; j < p.z.size(); ++j) {
        os << "  z" << j + 1 << " = " << to_string(p.z[j]) << "\n";
    }
    for (std::size_t i = 0; i < p.X.size(); ++i) {
        os << "X" << i + 1 << " =\n";
        print_matrix(os, to_strings(p.X[i]), "  ");
    }
    const std::size_t d = p.d(), m = a.m;
    const std::size_t bound = d * d * (m - 1) + d;
    os << "bounds: d <= |G| " << (d <= a.group.order() ? "ok" : "FAILS") << ", |z| <= " << bound << " "
       << (p.t() <= bound ? "ok" : "FAILS");
    if (p.algorithm == "linear" && p.effective_order == p.group_order) {
        const std::size_t exact = a.group.order() * (m - 1) + 1;
        os << ", |z| = " << exact << " " << (p.t() == exact ? "ok" : "FAILS");
    }
    os << "\n";
    for (const auto& n : p.notes) {
        os << "note: " << n << "\n";
    }
}

int cmd_invariants(const Options& o, const std::string& path, const std::string& algorithm) {
    ActionSpec a = load_action(o, path);
    bool linear = false;
    if (algorithm == "linear") {
        linear = true;
    } else if (algorithm == "auto") {
        const std::uint64_t p = a.field->characteristic();
        linear = a.linear_part.has_value() && (p == 0 || a.group.order() % p != 0);
    }
    Presentation pr = linear ? algorithm_linear(a, o.inv()) : algorithm_general(a, o.inv());
    emit(o, to_json(pr, a));
    summarize(human(o), pr, a);
    return 0;
}


int cmd_freeness(const Options& o, const std::string& path) {
    LoadedPresentation lp = presentation_from_json(read_json_file(path));
    const Presentation& p = lp.presentation;
    const RitConfig cfg = o.rit();
    const std::vector<MatM> frakX = build_frak_X(p.affine, p.field);
    RelationSet corner = fundamental_relations(p.z, frakX, p.field, cfg);
    RelationSet block = fundamental_relations_block(p.basis, lp.action, frakX, p.t(), cfg);
    FreenessVerdict fc = freeness_check(corner, cfg);
    FreenessVerdict fb = freeness_check(block, cfg);
    const bool free = fc.all_vanish && fb.all_vanish;
    json j;
    j["verdict"] = free ? "AllVanish" : "RelationsPresent";
    j["t"] = p.t();
    j["corner"] = to_json(corner, fc);
    j["block"] = to_json(block, fb);
    emit(o, j);
    std::ostream& os = human(o);
    os << "t = " << p.t() << "\n";
    os << "corner-form: " << corner.relations.size() << " relations, " << fc.indices.size() << " nonzero\n";
    os << "block-form: " << block.relations.size() << " relations, " << fb.indices.size() << " nonzero\n";
    const RelationSet& R = fc.all_vanish ? block : corner;
    const FreenessVerdict& v = fc.all_vanish ? fb : fc;
    for (std::size_t k = 0; k < v.indices.size() && k < 5; ++k) {
        os << "  " << R.labels[v.indices[k]] << ": " << to_string(R.relations[v.indices[k]], 'z', 120) << "\n";
    }
    os << (free ? "AllVanish" : "RelationsPresent") << "\n";
    return free ? 0 : 1;
}

int cmd_examples(const Options& o, const std::string& name, const std::string& f) {
    std::vector<std::string> names;
    if (name == "all") {
        names = scenario_names();
    } else {
        names = {name};
    }
    ScenarioConfig cfg;
    cfg.inv = o.inv();
    cfg.f = f;
    if (!o.field.empty()) {
        cfg.field = FieldSpec::parse(o.field);
    }
    json reports = json::array();
    bool all_pass = true;
    std::ostream& os = human(o);
    for (const auto& n : names) {
        ScenarioReport rep = run_scenario(n, cfg);
        all_pass = all_pass && rep.passed();
        os << n << " over " << rep.field->to_string() << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
        for (const auto& c : rep.checks) {
            os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.description;
            if (!c.pass) {
                os << " (expected " << c.expected << ", got " << c.verdict << ")";
            }
            os << "\n";
        }
        reports.push_back(to_json(rep));
    }
    emit(o, name == "all" ? reports : reports[0]);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational identity testing and invariants of free skew fields"};
    app.require_subcommand(1);
    Options o;
    auto common = [&o](CLI::App* c) {
        c->add_option("--seed", o.seed, "random seed")->capture_default_str();
        c->add_option("--trials", o.trials, "evaluation trials")->capture_default_str();
        c->add_option("--size-cap", o.size_cap, "largest matrix size")->capture_default_str();
        c->add_option("--max-degree", o.max_degree, "word length cap (0 means |G|+2)");
        c->add_option("--field", o.field, "Q, F(p) or F(p,k)");
        c->add_option("--threads", o.threads, "worker threads")->capture_default_str();
        c->add_option("--json", o.json_path, "write JSON to a file, or - for stdout")->expected(0, 1);
    };

    std::string expr_text, file, tuple_file, path, algorithm = "auto", name, f = "x^3-x";
    std::size_t m = 0;

    CLI::App* rit = app.add_subcommand("rit", "test whether an expression is zero");
    rit->add_option("--expr", expr_text, "expression");
    rit->add_option("--file", file, "file holding the expression")->check(CLI::ExistingFile);
    rit->add_option("--m", m, "number of variables (default: highest index used)");
    common(rit);

    CLI::App* ev = app.add_subcommand("eval", "evaluate an expression at a matrix tuple");
    ev->add_option("expr", expr_text, "expression")->required();
    ev->add_option("tuple", tuple_file, "matrix tuple JSON")->required()->check(CLI::ExistingFile);
    common(ev);

    CLI::App* inv = app.add_subcommand("invariants", "generators of the invariant skew subfield");
    inv->add_option("action", path, "action JSON")->required()->check(CLI::ExistingFile);
    inv->add_option("--algorithm", algorithm, "auto, general or linear")
        ->check(CLI::IsMember({"auto", "general", "linear"}))
        ->capture_default_str();
    common(inv);

    CLI::App* fr = app.add_subcommand("freeness", "relations among the generators of a presentation");
    fr->add_option("presentation", path, "presentation JSON")->required()->check(CLI::ExistingFile);
    common(fr);

    CLI::App* ex = app.add_subcommand("examples", "run the worked examples");
    ex->add_option("name", name, "scenario name or all")->required();
    ex->add_option("--f", f, "monic cubic for jonquieres")->capture_default_str();
    common(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    o.json = app.got_subcommand(rit) ? rit->count("--json") > 0
             : app.got_subcommand(ev) ? ev->count("--json") > 0
             : app.got_subcommand(inv) ? inv->count("--json") > 0
             : app.got_subcommand(fr) ? fr->count("--json") > 0
                                      : ex->count("--json") > 0;

    try {
        if (*rit) {
            return cmd_rit(o, expr_text, file, m);
        }
        if (*ev) {
            return cmd_eval(o, expr_text, tuple_file);
        }
        if (*inv) {
            return cmd_invariants(o, path, algorithm);
        }
        if (*fr) {
            return cmd_freeness(o, path);
        }
        if (*ex) {
            if (name != "all") {
                const auto& names = scenario_names();
                if (std::find(names.begin(), names.end(), name) == names.end()) {
                    throw ParamError("unknown scenario '" + name + "'");
                }
            }
            return cmd_examples(o, name, f);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
