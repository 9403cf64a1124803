#ifndef SKEWFIELD_JSON_IO_HPP
#define SKEWFIELD_JSON_IO_HPP

// JSON reading and writing for tuples, actions, presentations, relation sets and reports.

#include <skewfield/scenarios.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace skewfield {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small pieces

inline json to_json(const Mat<Scalar>& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) {
            row.push_back(a(i, j).to_string());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat<Scalar> scalar_matrix_from_json(const json& j, const FieldPtr& f) {
    if (!j.is_array()) {
        throw FormatError("expected a matrix of scalar strings");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    Mat<Scalar> a(rows, cols, Scalar::zero(f));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw FormatError("ragged scalar matrix");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            const json& v = j[i][k];
            a(i, k) = Scalar::parse(f, v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    return a;
}

inline json to_json(const MatM& a, char letter = 'x') { return json(to_strings(a, letter)); }

inline MatM expr_matrix_from_json(const json& j, std::size_t nvars, const FieldPtr& f, char letter = 'x') {
    try {
        return parse_matrix(j.get<std::vector<std::vector<std::string>>>(), nvars, f, letter);
    } catch (const json::exception& e) {
        throw FormatError(std::string("expected a grid of expression strings: ") + e.what());
    }
}

inline json to_json(const MatrixTuple& t) {
    json j;
    j["field"] = t.field->to_string();
    j["n"] = t.n;
    json mats = json::array();
    for (const auto& M : t.mats) {
        mats.push_back(to_json(M));
    }
    j["mats"] = std::move(mats);
    if (t.generator_image) {
        j["generator_image"] = t.generator_image->to_string();
    }
    return j;
}

/// Matrix tuple file: {"n": int, "mats": [[[scalar]]]}, over `f` unless the file names a field.
inline MatrixTuple tuple_from_json(const json& j, const FieldPtr& f) {
    MatrixTuple t;
    try {
        t.field = j.contains("field") ? FieldSpec::parse(j.at("field").get<std::string>()) : f;
        t.n = j.at("n").get<std::size_t>();
        for (const json& M : j.at("mats")) {
            t.mats.push_back(scalar_matrix_from_json(M, t.field));
            if (t.mats.back().rows() != t.n || t.mats.back().cols() != t.n) {
                throw FormatError("matrix " + std::to_string(t.mats.size()) + " is not " + std::to_string(t.n) + "x" +
                                  std::to_string(t.n));
            }
        }
        if (j.contains("generator_image")) {
            t.generator_image = Scalar::parse(t.field, j.at("generator_image").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed matrix tuple: ") + e.what());
    }
    return t;
}

inline json to_json(const ZeroVerdict& v, Expr r) {
    json j;
    j["verdict"] = v.nonzero() ? "nonzero" : "probably_zero";
    if (v.witness) {
        j["witness"] = to_json(*v.witness);
        j["route"] = v.route;
    }
    j["trials"] = v.trials;
    j["size"] = v.size;
    j["dimension"] = r.dimension();
    j["skipped"] = v.skipped;
    return j;
}

// ---------------------------------------------------------------------------
// Actions

inline json to_json(const ActionSpec& a) {
    json j;
    j["field"] = a.field->to_string();
    j["m"] = a.m;
    json table = json::array();
    for (std::size_t g = 0; g < a.group.order(); ++g) {
        json row = json::array();
        for (std::size_t h = 0; h < a.group.order(); ++h) {
            row.push_back(a.group.mul(g, h));
        }
        table.push_back(std::move(row));
    }
    j["group"] = {{"order", a.group.order()}, {"table", std::move(table)}};
    json images = json::object();
    for (std::size_t g = 1; g < a.group.order(); ++g) {
        json row = json::array();
        for (Expr e : a.images[g]) {
            row.push_back(to_string(e));
        }
        images[std::to_string(g)] = std::move(row);
    }
    j["images"] = std::move(images);
    return j;
}

/// {"field", "m", "group": {"order", "table"?}, "images": {"<id>": [...]}}; a missing table
/// means the cyclic group with g*h = g+h mod n, and a missing id means the identity map.
/// The action axioms are checked unless `verify` is false.
inline ActionSpec action_from_json(const json& j, FieldPtr field_override = nullptr, bool verify = true,
                                   const RitConfig& cfg = {}) {
    try {
        FieldPtr f = field_override ? field_override : FieldSpec::parse(j.value("field", std::string("Q")));
        const std::size_t m = j.at("m").get<std::size_t>();
        const json& gj = j.at("group");
        const std::size_t order = gj.at("order").get<std::size_t>();
        FiniteGroup G = gj.contains("table")
                            ? FiniteGroup::from_table(gj.at("table").get<std::vector<std::vector<std::size_t>>>())
                            : FiniteGroup::cyclic(order);
        if (G.order() != order) {
            throw FormatError("group order " + std::to_string(order) + " does not match its table");
        }
        std::vector<std::vector<Expr>> images(order);
        for (auto it = j.at("images").begin(); it != j.at("images").end(); ++it) {
            std::size_t g = 0;
            try {
                g = std::stoul(it.key());
            } catch (const std::exception&) {
                throw FormatError("element id '" + it.key() + "' is not a number");
            }
            if (g >= order) {
                throw FormatError("element id " + it.key() + " is outside the group");
            }
            for (const json& s : it.value()) {
                images[g].push_back(parse_expr(s.get<std::string>(), m, f));
            }
        }
        for (std::size_t g = 0; g < order; ++g) {
            if (images[g].empty()) {
                images[g] = identity_images(m);
            }
        }
        ActionSpec a = make_action(std::move(G), m, f, std::move(images));
        if (verify) {
            verify_action(a, cfg);
        }
        return a;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed action file: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Presentations

inline json to_json(const Presentation& p) {
    json j;
    j["algorithm"] = p.algorithm;
    j["field"] = p.field->to_string();
    j["m"] = p.m;
    j["group_order"] = p.group_order;
    j["effective_order"] = p.effective_order;
    j["d"] = p.d();
    j["t"] = p.t();
    j["basis"] = p.basis_labels;
    json bexpr = json::array();
    for (Expr b : p.basis) {
        bexpr.push_back(to_string(b));
    }
    j["basis_exprs"] = std::move(bexpr);
    json X = json::array(), tags = json::array();
    for (std::size_t l = 0; l < p.X.size(); ++l) {
        X.push_back(to_json(p.X[l]));
        json tg = json::array();
        for (std::size_t r = 0; r < p.tags[l].rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < p.tags[l].cols(); ++c) {
                row.push_back(tag_name(p.tags[l](r, c)));
            }
            tg.push_back(std::move(row));
        }
        tags.push_back(std::move(tg));
    }
    j["X"] = std::move(X);
    j["tags"] = std::move(tags);
    json gens = json::array(), z = json::array();
    for (Expr g : p.gens) {
        gens.push_back(to_string(g));
    }
    for (Expr g : p.z) {
        z.push_back(to_string(g));
    }
    j["generators"] = std::move(gens);
    j["z"] = std::move(z);
    json affine = json::array();
    for (const auto& Ai : p.affine) {
        json row = json::array();
        for (const auto& A : Ai) {
            row.push_back(to_json(A));
        }
        affine.push_back(std::move(row));
    }
    j["affine"] = std::move(affine);
    j["reduction_size"] = p.reduction_size;
    j["notes"] = p.notes;
    return j;
}

/// A presentation together with its action, enough to rebuild the relations.
inline json to_json(const Presentation& p, const ActionSpec& a) {
    json j = to_json(p);
    j["action"] = to_json(a);
    return j;
}

struct LoadedPresentation {
    Presentation presentation;
    ActionSpec action;
};

inline LoadedPresentation presentation_from_json(const json& j) {
    try {
        LoadedPresentation out;
        out.action = action_from_json(j.at("action"));
        Presentation& p = out.presentation;
        const FieldPtr f = out.action.field;
        p.field = f;
        p.m = j.at("m").get<std::size_t>();
        p.algorithm = j.value("algorithm", std::string());
        p.group_order = out.action.group.order();
        p.effective_order = j.value("effective_order", p.group_order);
        p.basis_labels = j.at("basis").get<std::vector<std::string>>();
        for (const json& s : j.at("basis_exprs")) {
            p.basis.push_back(parse_expr(s.get<std::string>(), p.m, f));
        }
        for (const json& g : j.at("X")) {
            p.X.push_back(expr_matrix_from_json(g, p.m, f));
        }
        for (const json& g : j.at("tags")) {
            const auto grid = g.get<std::vector<std::vector<std::string>>>();
            Mat<EntryTag> t(grid.size(), grid.empty() ? 0 : grid[0].size(), EntryTag::zero);
            for (std::size_t r = 0; r < grid.size(); ++r) {
                for (std::size_t c = 0; c < grid[r].size(); ++c) {
                    const std::string& s = grid[r][c];
                    t(r, c) = s == "one" ? EntryTag::one : s == "coefficient" ? EntryTag::coefficient : EntryTag::zero;
                }
            }
            p.tags.push_back(std::move(t));
        }
        for (const json& s : j.value("generators", json::array())) {
            p.gens.push_back(parse_expr(s.get<std::string>(), p.m, f));
        }
        for (const json& s : j.at("z")) {
            p.z.push_back(parse_expr(s.get<std::string>(), p.m, f));
        }
        for (const json& Ai : j.at("affine")) {
            std::vector<Mat<Scalar>> row;
            for (const json& A : Ai) {
                row.push_back(scalar_matrix_from_json(A, f));
            }
            if (row.size() != p.z.size() + 1) {
                throw FormatError("affine data needs " + std::to_string(p.z.size() + 1) + " matrices per variable");
            }
            p.affine.push_back(std::move(row));
        }
        if (p.affine.size() != p.m || p.X.size() != p.m) {
            throw FormatError("presentation needs one X matrix and one affine list per variable");
        }
        p.reduction_size = j.value("reduction_size", std::size_t{0});
        return out;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed presentation: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Relations and reports

inline json to_json(const RelationSet& R, const FreenessVerdict& v) {
    json j;
    j["source"] = source_name(R.source);
    j["t"] = R.t;
    json fx = json::array();
    for (const auto& M : R.frakX) {
        fx.push_back(to_json(M, 'z'));
    }
    j["frakX"] = std::move(fx);
    json rels = json::array();
    std::size_t k = 0;
    for (std::size_t i = 0; i < R.relations.size(); ++i) {
        json r;
        r["label"] = R.labels[i];
        r["expr"] = to_string(R.relations[i], 'z');
        const bool bad = k < v.indices.size() && v.indices[k] == i;
        r["verdict"] = bad ? "nonzero" : "probably_zero";
        if (bad) {
            r["witness"] = to_json(v.witnesses[k]);
            ++k;
        }
        rels.push_back(std::move(r));
    }
    j["relations"] = std::move(rels);
    j["verdict"] = v.all_vanish ? "AllVanish" : "RelationsPresent";
    return j;
}

inline json to_json(const ScenarioReport& rep) {
    json j;
    j["name"] = rep.name;
    j["field"] = rep.field->to_string();
    j["passed"] = rep.passed();
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json cj;
        cj["description"] = c.description;
        cj["expected"] = c.expected;
        cj["verdict"] = c.verdict;
        cj["pass"] = c.pass;
        if (c.witness) {
            cj["witness"] = to_json(*c.witness);
        }
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    json gens = json::array();
    for (Expr g : rep.generators) {
        gens.push_back(to_string(g));
    }
    j["generators"] = std::move(gens);
    if (rep.presentation) {
        j["presentation"] = to_json(*rep.presentation);
    }
    if (rep.relations && rep.freeness) {
        j["relations"] = to_json(*rep.relations, *rep.freeness);
    }
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

} // namespace skewfield

#endif
